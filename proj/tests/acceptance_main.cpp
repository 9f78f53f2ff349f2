// Acceptance suite driver: one pass/fail line per criterion; nonzero exit
// when any criterion fails.  --quick keeps cutoffs at 100 and below.

#include "tbh/acceptance.hpp"

#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
    tbh::accept::Mode mode = tbh::accept::Mode::full;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) mode = tbh::accept::Mode::quick;
    auto results = tbh::accept::run_acceptance(mode, std::cout);
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}
