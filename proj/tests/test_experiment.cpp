#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "properties.hpp"

using namespace fvpost;

TEST_CASE("experimental order of convergence") {
    const auto a = eoc({0.4, 0.2, 0.1});
    REQUIRE(a.size() == 2);
    CHECK(*a[0] == doctest::Approx(1.0));
    CHECK(*a[1] == doctest::Approx(1.0));
    CHECK(std::abs(*eoc({0.09584, 0.04780})[0] - 1.00) <= 0.005);
    CHECK(*eoc({1.0, 1.0})[0] == 0.0);
    CHECK_FALSE(eoc({1.0, 0.0})[0].has_value());
    CHECK(eoc({1.0}).empty());
}

TEST_CASE("reference specifications") {
    CHECK(parse_reference("exact").kind == ReferenceSpec::Kind::Exact);
    CHECK(parse_reference("none").kind == ReferenceSpec::Kind::None);
    const auto f = parse_reference("fine:12");
    CHECK(f.kind == ReferenceSpec::Kind::Fine);
    CHECK(f.level == 12);
    CHECK(to_string(f) == "fine:12");
    for (const char* bad : {"fine:", "fine:x", "fine:-1", "fine:3x", "coarse"}) {
        CHECK_THROWS_AS(parse_reference(bad), ConfigError);
    }
}

TEST_CASE("case defaults") {
    const auto a = make_case("psys-2raref");
    CHECK(a.left[0] == 1.0);
    CHECK(a.left[1] == -2.0);
    CHECK(a.right[1] == 2.0);
    CHECK(a.t0 == 0.5);
    CHECK(a.T == 1.0);
    CHECK(a.cfl == 0.9);
    CHECK(a.sigma == 0.1);
    CHECK(a.x_min == -5.0);
    CHECK(a.x_max == 5.0);
    const auto b = make_case("psys-raref-shock");
    CHECK(b.left[0] == 0.15);
    CHECK(b.right[0] == 0.1);
    CHECK(b.T == 1.5);
    const auto c = make_case("burgers-curved");
    REQUIRE(c.pieces);
    CHECK(c.pieces->value(-4.5)[0] == 10.0);
    CHECK(c.pieces->value(-1.0)[0] == doctest::Approx(1.0));
    CHECK(c.pieces->value(3.0)[0] == -7.0);
    CHECK(c.reference.kind == ReferenceSpec::Kind::Fine);
    CHECK_THROWS_AS(make_case("sod"), ConfigError);
}

TEST_CASE("piecewise-linear averages are exact") {
    const auto c = make_case("burgers-curved");
    // Over [-4, 0] the data is -2 - 3x with mean -2 + 6 = 4.
    CHECK(c.pieces->average(-4.0, 0.0)[0] == doctest::Approx(4.0));
    CHECK(c.pieces->average(-5.0, -4.0)[0] == doctest::Approx(10.0));
    CHECK(c.pieces->average(-0.5, 0.5)[0] == doctest::Approx(0.5 * (-2.0 + 0.75) + 0.5 * -7.0));
}

TEST_CASE("restriction and prolongation") {
    std::vector<State> fine(16);
    for (std::size_t j = 0; j < 16; ++j) fine[j] = make_state(std::sin(0.3 * j), 0.1 * j);
    const auto coarse = restrict_average(fine, 4);
    REQUIRE(coarse.size() == 4);
    CHECK(coarse[1][1] == doctest::Approx(0.1 * 5.5));
    const auto again = restrict_average(prolong_constant(coarse, 16), 4);
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(std::abs(again[j][0] - coarse[j][0]) <= 1e-14);
        CHECK(std::abs(again[j][1] - coarse[j][1]) <= 1e-14);
    }
    CHECK(restrict_average(fine, 16) == fine);
    CHECK_THROWS_AS(restrict_average(fine, 5), ConfigError);
    CHECK_THROWS_AS(prolong_constant(coarse, 10), ConfigError);
}

TEST_CASE("L1 distance") {
    const std::size_t J = 40;
    const double dx = 10.0 / J;
    std::vector<State> u(J), v(J);
    for (std::size_t j = 0; j < J; ++j) {
        u[j] = make_state(std::cos(0.1 * j), 1.0);
        v[j] = u[j] + make_state(-0.25, 0.05);
    }
    CHECK(l1_distance(u, v, dx, 2) == doctest::Approx(10 * 0.25));
    CHECK(l1_distance(u, u, dx, 2) == 0.0);
    CHECK(l1_distance(u, v, dx, 1) == doctest::Approx(10 * 0.25));
}

TEST_CASE("errors against the solution itself vanish") {
    auto c = make_case("psys-raref-shock");
    const auto sol = solve_case(c, 6);
    CHECK(linf_l1_error(sol, sol) == 0.0);
    CHECK_THROWS_AS(fine_reference_errors(c, 6, {&sol}), ConfigError);
}

TEST_CASE("constant custom data reports zeros") {
    CaseConfig c = make_case("custom");
    c.left = c.right = make_state(0.5);
    c.reference = parse_reference("exact");
    c.level = 5;
    const auto r = run_case(c);
    CHECK(r.result.estimate.epsilon == 0.0);
    CHECK(r.result.estimate.estimate_surge == 0.0);
    CHECK(r.result.estimate.estimate_smooth == 0.0);
    REQUIRE(r.result.error);
    CHECK(*r.result.error == 0.0);
}

TEST_CASE("run configuration errors") {
    CaseConfig c = make_case("burgers-curved");
    c.reference = parse_reference("exact");
    CHECK_THROWS_AS(run_case(c), ConfigError);
    c.reference = parse_reference("fine:6");
    c.level = 6;
    CHECK_THROWS_AS(run_case(c), ConfigError);
    CHECK_THROWS_AS(converge(make_case("psys-2raref"), 6, 6), ConfigError);
}

TEST_CASE("fine reference errors do not depend on batching") {
    auto c = make_case("burgers-curved");
    c.reference = parse_reference("fine:9");
    const auto a = solve_case(c, 6), b = solve_case(c, 7);
    const auto both = fine_reference_errors(c, 9, {&a, &b});
    CHECK(both[0] == fine_reference_errors(c, 9, {&a})[0]);
    CHECK(both[1] == fine_reference_errors(c, 9, {&b})[0]);
    CHECK(both[1] < both[0]);
    // A stored reference gives the same answer as the streamed one.
    const auto fine = solve_case(c, 9);
    CHECK(linf_l1_error(a, fine) == doctest::Approx(both[0]).epsilon(1e-12));
}

TEST_CASE("outputs are deterministic") {
    auto c = make_case("psys-raref-shock");
    c.level = 6;
    const auto r1 = run_case(c), r2 = run_case(c);
    std::ostringstream j1, j2;
    write_report_json(j1, c, r1.result);
    write_report_json(j2, c, r2.result);
    CHECK(j1.str() == j2.str());
    const auto doc = nlohmann::json::parse(j1.str());
    CHECK(doc["case"] == "psys-raref-shock");
    CHECK(doc["level"] == 6);
    CHECK(doc["epsilon"].get<double>() == r1.result.estimate.epsilon);
    CHECK(doc["slabs"].size() == r1.result.estimate.slabs.size());

    const auto t1 = converge(c, 5, 6), t2 = converge(c, 5, 6);
    std::ostringstream e1, e2;
    write_eoc_csv(e1, t1);
    write_eoc_csv(e2, t2);
    CHECK(e1.str() == e2.str());
    CHECK(e1.str().rfind("L,eps,EoC_eps,eps13,E_S,EoC_E_S,E_G,EoC_E_G,linf_l1_err,EoC_err\n", 0) == 0);
}

TEST_CASE("two-rarefaction error at L = 9 against the benchmark value") {
    auto c = make_case("psys-2raref");
    c.level = 9;
    const auto r = run_case(c);
    REQUIRE(r.result.error);
    CHECK(std::abs(*r.result.error / 0.19232 - 1.0) <= 0.15);
}
