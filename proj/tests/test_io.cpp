#include "tbh/io.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <sstream>

using namespace tbh;

TEST_CASE("field json round trip preserves every bit") {
    rng::pcg32 gen(3);
    SpectralField1D u = test::random_field(12, gen);
    io::json j = io::field_to_json(u);
    CHECK(j.at("im")[0].get<double>() == 0.0);
    SpectralField1D v = io::field_from_json(j);
    CHECK(test::max_coeff_diff(u, v) == 0.0);
}

TEST_CASE("field json validation") {
    io::json j{{"lambda", 3}, {"re", {1.0, 0.0, 0.0}}, {"im", {0.0, 0.0, 0.0}}};
    CHECK_THROWS_AS(io::field_from_json(j), std::invalid_argument); // wrong length
    io::json k{{"lambda", 2}, {"re", {1.0, 0.0, 0.0}}, {"im", {0.5, 0.0, 0.0}}};
    CHECK_THROWS_AS(io::field_from_json(k), std::invalid_argument); // im[0] != 0
}

TEST_CASE("ndjson lines parse back strictly") {
    std::ostringstream os;
    DiagnosticRecord d;
    d.t = 0.5;
    d.u0 = 0.0;
    d.energy = 1.25;
    d.energy_total = 7.0;
    d.hamiltonian = -0.125;
    io::write_ndjson(os, io::diagnostics_to_json(d));
    io::write_ndjson(os, io::field_to_json(SpectralField1D(2)));
    std::istringstream is(os.str());
    std::string line;
    int lines = 0;
    while (std::getline(is, line)) {
        io::json j = io::json::parse(line); // strict: throws on malformed
        CHECK(j.is_object());
        ++lines;
    }
    CHECK(lines == 2);
}

TEST_CASE("madelung state json") {
    mad::MadelungState st;
    st.n = 4;
    st.rho = {1.0, 1.1, 1.0, 0.9};
    st.s = {0.0, 0.1, 0.0, -0.1};
    st.winding = 1.0;
    st.kappa = 2.0 * M_PI;
    io::json j = io::madelung_to_json(st);
    mad::MadelungState back = io::madelung_from_json(j);
    CHECK(back.n == 4);
    CHECK(back.rho == st.rho);
    CHECK(back.s == st.s);

    j["rho"] = {1.0, 1.0};
    CHECK_THROWS_AS(io::madelung_from_json(j), std::invalid_argument);
}

TEST_CASE("csv rows parse back strictly") {
    std::ostringstream os;
    io::write_csv_header(os, {"t", "value"});
    io::write_csv_row(os, {0.5, -1.25e-9});
    io::write_csv_row(os, {1.0, 3.0});
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "t,value");
    int rows = 0;
    while (std::getline(is, line)) {
        size_t comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        size_t used = 0;
        (void)std::stod(line.substr(0, comma), &used);
        CHECK(used == comma);
        (void)std::stod(line.substr(comma + 1), &used);
        CHECK(used == line.size() - comma - 1);
        ++rows;
    }
    CHECK(rows == 2);
}

TEST_CASE("fnv1a64 is stable") {
    const char* s = "tbhlab";
    CHECK(io::fnv1a64(s, 6) == io::fnv1a64(s, 6));
    CHECK(io::fnv1a64(s, 6) != io::fnv1a64(s, 5));
}
