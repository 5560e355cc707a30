#include <doctest.h>

#include <cmath>

#include "fvpost/grid.hpp"
#include "fvpost/riemann.hpp"

using namespace fvpost;

namespace {

const auto B = ConservationLaw::burgers();
const auto P = ConservationLaw::psystem();

// Rankine-Hugoniot defect scaled as in the fan invariant.
double rh_defect(const ConservationLaw& m, const State& lo, const State& hi, double s) {
    const State d = m.flux(hi) - m.flux(lo) - s * (hi - lo);
    return linf(abs(d), m.components()) / (1.0 + linf(abs(m.flux(lo)), m.components()));
}

double invariant(const ConservationLaw& m, const State& u, int family) {
    const double v = u[1] / u[0];
    const double w = 2.0 * m.sound_speed(u[0]) / (m.gamma() - 1.0);
    return family == 0 ? v + w : v - w;
}

}  // namespace

TEST_CASE("equal states give an empty fan") {
    const auto fan = solve_riemann(P, make_state(0.7, 0.2), make_state(0.7, 0.2));
    CHECK(fan.trivial());
    for (double xi : {-10.0, 0.0, 3.0}) {
        CHECK(sample(fan, xi) == make_state(0.7, 0.2));
    }
    const auto bf = solve_riemann(B, make_state(2.0), make_state(2.0));
    CHECK(bf.trivial());
}

TEST_CASE("Burgers shock and rarefaction") {
    const auto shock = solve_riemann(B, make_state(1.0), make_state(-1.0));
    CHECK(shock.waves[0].type == WaveType::Shock);
    CHECK(shock.waves[0].lo == 0.0);
    CHECK(sample(shock, -0.1)[0] == 1.0);
    CHECK(sample(shock, 0.1)[0] == -1.0);
    const auto raref = solve_riemann(B, make_state(-1.0), make_state(1.0));
    CHECK(raref.waves[0].type == WaveType::Rarefaction);
    CHECK(sample(raref, 0.5)[0] == doctest::Approx(0.5));
    CHECK(sample(raref, -2.0)[0] == -1.0);
    CHECK(sample(raref, 2.0)[0] == 1.0);
}

TEST_CASE("p-system two rarefactions") {
    const auto fan = solve_riemann(P, make_state(1.0, -2.0), make_state(1.0, 2.0));
    REQUIRE(fan.waves[0].type == WaveType::Rarefaction);
    REQUIRE(fan.waves[1].type == WaveType::Rarefaction);
    CHECK(std::abs(fan.star[1]) <= 1e-12);
    CHECK(fan.star[0] > 0.0);
    CHECK(fan.star[0] < 1.0);
    // Riemann invariants are constant across each fan.
    CHECK(std::abs(invariant(P, fan.left, 0) - invariant(P, fan.star, 0)) <= 1e-10);
    CHECK(std::abs(invariant(P, fan.right, 1) - invariant(P, fan.star, 1)) <= 1e-10);
    for (double xi = fan.waves[0].lo; xi <= fan.waves[0].hi; xi += 0.05) {
        CHECK(std::abs(invariant(P, sample(fan, xi), 0) - invariant(P, fan.left, 0)) <= 1e-10);
    }
    const State s0 = sample(fan, 0.0);
    CHECK(s0[0] == doctest::Approx(fan.star[0]).epsilon(1e-14));
    CHECK(std::abs(s0[1]) <= 1e-12);
}

TEST_CASE("mirror symmetry of the two-rarefaction fan") {
    const auto fan = solve_riemann(P, make_state(1.0, -2.0), make_state(1.0, 2.0));
    for (double xi = 0.05; xi < 4.0; xi += 0.1) {
        const State a = sample(fan, xi), b = sample(fan, -xi);
        CHECK(std::abs(a[0] - b[0]) <= 1e-10);
        CHECK(std::abs(a[1] / a[0] + b[1] / b[0]) <= 1e-10);
    }
}

TEST_CASE("p-system rarefaction and shock") {
    const auto fan = solve_riemann(P, make_state(0.15, 0.0), make_state(0.1, 0.0));
    REQUIRE(fan.waves[0].type == WaveType::Rarefaction);
    REQUIRE(fan.waves[1].type == WaveType::Shock);
    CHECK(rh_defect(P, fan.star, fan.right, fan.waves[1].lo) <= 1e-10);
    CHECK(std::abs(invariant(P, fan.left, 0) - invariant(P, fan.star, 0)) <= 1e-10);
    CHECK(fan.waves[0].hi <= fan.waves[1].lo);
    // Lax condition for the 2-shock.
    const double s = fan.waves[1].lo;
    CHECK(P.wave_speeds(fan.star)[1] > s);
    CHECK(P.wave_speeds(fan.right)[1] < s);
}

TEST_CASE("p-system shocks on both sides") {
    const auto fan = solve_riemann(P, make_state(1.0, 1.0), make_state(1.0, -1.0));
    REQUIRE(fan.waves[0].type == WaveType::Shock);
    REQUIRE(fan.waves[1].type == WaveType::Shock);
    CHECK(rh_defect(P, fan.left, fan.star, fan.waves[0].lo) <= 1e-10);
    CHECK(rh_defect(P, fan.star, fan.right, fan.waves[1].lo) <= 1e-10);
    CHECK(fan.star[0] > 1.0);
}

TEST_CASE("vacuum is reported") {
    CHECK_THROWS_AS(solve_riemann(P, make_state(1.0, -7.0), make_state(1.0, 7.0)), VacuumError);
    CHECK_THROWS_AS(solve_riemann(P, make_state(-1.0, 0.0), make_state(1.0, 0.0)), DomainError);
}

TEST_CASE("sampling far outside the fan returns the data") {
    const auto fan = solve_riemann(P, make_state(0.15, 0.0), make_state(0.1, 0.0));
    CHECK(sample(fan, fan.min_speed() - 1.0) == fan.left);
    CHECK(sample(fan, fan.max_speed() + 1.0) == fan.right);
}

TEST_CASE("cell averages at t = 0 mix the step") {
    const auto g = uniform_grid(-1.0, 1.0, 5);  // origin 0 sits in the middle of cell 2
    const auto fan = solve_riemann(B, make_state(3.0), make_state(1.0));
    const auto u = cell_average_exact(fan, 0.0, 0.0, g);
    CHECK(u[0][0] == 3.0);
    CHECK(u[1][0] == 3.0);
    CHECK(u[2][0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(u[3][0] == 1.0);
    CHECK(u[4][0] == 1.0);
    const auto v = cell_average_exact(fan, 0.3, 0.0, g);  // origin inside cell 3 at fraction 0.25
    CHECK(v[3][0] == doctest::Approx(0.25 * 3.0 + 0.75 * 1.0).epsilon(1e-14));
}

TEST_CASE("constant fans average to constants") {
    const auto g = build_grid(-5, 5, 3);
    const auto fan = solve_riemann(P, make_state(0.4, 0.1), make_state(0.4, 0.1));
    for (const auto& u : cell_average_exact(fan, 0.0, 2.0, g)) CHECK(u == make_state(0.4, 0.1));
}

TEST_CASE("Burgers shock averages away from the shock are exact") {
    const auto g = uniform_grid(-5, 5, 11);  // x = 0 is interior to cell 5
    const auto fan = solve_riemann(B, make_state(1.0), make_state(-1.0));
    const auto u = cell_average_exact(fan, 0.0, 1.0, g);
    for (std::size_t j = 0; j < 5; ++j) CHECK(u[j][0] == 1.0);
    for (std::size_t j = 6; j < 11; ++j) CHECK(u[j][0] == -1.0);
    CHECK(u[5][0] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("rarefaction averages match the closed form") {
    const auto fan = solve_riemann(B, make_state(-1.0), make_state(1.0));
    // At t = 1 the fan is u = x on [-1, 1]; the average over [0.2, 0.7] is 0.45.
    CHECK(interval_average(fan, 0.0, 1.0, 0.2, 0.7)[0] == doctest::Approx(0.45).epsilon(1e-12));
    // Over [-2, 0.5]: (-1*1 + (0.25 - 1)/2) / 2.5.
    CHECK(interval_average(fan, 0.0, 1.0, -2.0, 0.5)[0] == doctest::Approx((-1.0 - 0.375) / 2.5).epsilon(1e-12));
}

TEST_CASE("fan conservation over a large interval") {
    const double A = 8.0, t = 1.3;
    for (auto [l, r] : {std::pair{make_state(1.0, -2.0), make_state(1.0, 2.0)},
                        std::pair{make_state(0.15, 0.0), make_state(0.1, 0.0)},
                        std::pair{make_state(1.0, 1.0), make_state(1.0, -1.0)}}) {
        const auto fan = solve_riemann(P, l, r);
        const State mass = 2.0 * A * interval_average(fan, 0.0, t, -A, A);
        const State expect = A * (l + r) + t * (P.flux(l) - P.flux(r));
        CHECK(mass[0] == doctest::Approx(expect[0]).epsilon(1e-10));
        CHECK(mass[1] == doctest::Approx(expect[1]).epsilon(1e-10));
    }
}
