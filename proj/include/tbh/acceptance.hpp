#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tbh::accept {

enum class Mode { quick, full };

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the verification suite, one pass/fail line per criterion on `log`.
// Quick mode keeps cutoffs at 100 or below; full adds the lambda = 200 legs.
std::vector<CriterionResult> run_acceptance(Mode mode, std::ostream& log);

} // namespace tbh::accept
