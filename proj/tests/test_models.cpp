#include <doctest.h>

#include <cmath>
#include <random>

#include "properties.hpp"

using namespace fvpost;

namespace {
const auto B = ConservationLaw::burgers();
const auto P = ConservationLaw::psystem();
const double s14 = std::sqrt(1.4);
}  // namespace

TEST_CASE("model parameters") {
    CHECK(B.components() == 1);
    CHECK(P.components() == 2);
    CHECK(P.pressure_constant() == 1.0);
    CHECK(P.gamma() == 1.4);
    CHECK(parse_model("burgers").kind() == ModelKind::Burgers);
    CHECK(parse_model("psystem").kind() == ModelKind::PSystem);
    CHECK_THROWS_AS(parse_model("euler"), ConfigError);
}

TEST_CASE("flux examples") {
    CHECK(B.flux(make_state(2.0))[0] == 2.0);
    const State f = P.flux(make_state(1.0, 2.0));
    CHECK(f[0] == 2.0);
    CHECK(f[1] == doctest::Approx(5.0).epsilon(1e-15));
    const State g = P.flux(make_state(1.0, 0.0));
    CHECK(g[0] == 0.0);
    CHECK(g[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("the p-system rejects non-positive density") {
    CHECK_THROWS_AS(P.flux(make_state(0.0, 1.0)), DomainError);
    CHECK_THROWS_AS(P.wave_speeds(make_state(-1.0, 0.0)), DomainError);
    CHECK_THROWS_AS(P.entropy(make_state(-0.5, 0.0)), DomainError);
    CHECK(B.in_domain(make_state(-100.0)));
}

TEST_CASE("wave speed examples") {
    CHECK(B.wave_speeds(make_state(-7.0))[0] == -7.0);
    const State a = P.wave_speeds(make_state(1.0, 0.0));
    CHECK(a[0] == doctest::Approx(-s14).epsilon(1e-14));
    CHECK(a[1] == doctest::Approx(s14).epsilon(1e-14));
    const State b = P.wave_speeds(make_state(1.0, 2.0));
    CHECK(b[0] == doctest::Approx(2.0 - s14).epsilon(1e-14));
    CHECK(b[1] == doctest::Approx(2.0 + s14).epsilon(1e-14));
}

TEST_CASE("strict hyperbolicity of the p-system") {
    for (double rho : {1e-4, 0.1, 1.0, 10.0}) {
        const State l = P.wave_speeds(make_state(rho, 0.3));
        CHECK(l[1] - l[0] == doctest::Approx(2.0 * P.sound_speed(rho)));
        CHECK(l[1] > l[0]);
    }
}

TEST_CASE("entropy pair examples") {
    CHECK(B.entropy(make_state(2.0)) == 2.0);
    CHECK(B.entropy_flux(make_state(2.0)) == doctest::Approx(8.0 / 3.0));
    CHECK(P.entropy(make_state(1.0, 0.0)) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(P.entropy_flux(make_state(1.0, 0.0)) == 0.0);
    CHECK(B.entropy(make_state(0.0)) == 0.0);
    CHECK(B.entropy_flux(make_state(0.0)) == 0.0);
}

TEST_CASE("numerical flux examples") {
    const auto llf = FluxKind::LaxFriedrichs, god = FluxKind::GodunovBurgers;
    CHECK(numerical_flux(llf, B, make_state(1.0), make_state(-1.0))[0] == 1.5);
    CHECK(numerical_flux(god, B, make_state(1.0), make_state(0.0))[0] == 0.5);
    CHECK(numerical_flux(god, B, make_state(0.0), make_state(-1.0))[0] == 0.5);
    CHECK(numerical_flux(god, B, make_state(-1.0), make_state(1.0))[0] == 0.0);
    CHECK(numerical_flux(FluxKind::EngquistOsherBurgers, B, make_state(-1.0), make_state(1.0))[0] == 0.0);
    CHECK(numerical_flux(FluxKind::EngquistOsherBurgers, B, make_state(1.0), make_state(-1.0))[0] == 1.0);
}

TEST_CASE("numerical flux consistency for every kind") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-5, 5), R(0.05, 5);
    for (int i = 0; i < 200; ++i) {
        const State u = make_state(U(rng));
        for (auto k : {FluxKind::LaxFriedrichs, FluxKind::GodunovBurgers, FluxKind::EngquistOsherBurgers}) {
            CHECK(numerical_flux(k, B, u, u)[0] == doctest::Approx(B.flux(u)[0]).epsilon(1e-12));
        }
        const State v = make_state(R(rng), U(rng));
        const State f = numerical_flux(FluxKind::LaxFriedrichs, P, v, v), g = P.flux(v);
        CHECK(f[0] == doctest::Approx(g[0]).epsilon(1e-12));
        CHECK(f[1] == doctest::Approx(g[1]).epsilon(1e-12));
        CHECK(numerical_entropy_flux(P, v, v) == doctest::Approx(P.entropy_flux(v)).epsilon(1e-12));
        CHECK(numerical_entropy_flux(B, u, u) == doctest::Approx(B.entropy_flux(u)).epsilon(1e-12));
    }
}

TEST_CASE("numerical entropy flux examples") {
    CHECK(numerical_entropy_flux(B, make_state(1.0), make_state(0.0)) == doctest::Approx(5.0 / 12.0).epsilon(1e-14));
    CHECK(numerical_entropy_flux(B, make_state(0.0), make_state(-1.0)) ==
          doctest::Approx(-5.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("Burgers-only fluxes are rejected for the p-system") {
    CHECK_THROWS_AS(check_flux_supported(FluxKind::GodunovBurgers, P), ConfigError);
    CHECK_THROWS_AS(check_flux_supported(FluxKind::EngquistOsherBurgers, P), ConfigError);
    CHECK_NOTHROW(check_flux_supported(FluxKind::LaxFriedrichs, P));
    CHECK_THROWS_AS(numerical_flux(FluxKind::GodunovBurgers, P, make_state(1, 0), make_state(1, 0)), ConfigError);
    CHECK(parse_flux_kind("godunov") == FluxKind::GodunovBurgers);
    CHECK_THROWS_AS(parse_flux_kind("roe"), ConfigError);
}

TEST_CASE("entropy compatibility by finite differences") {
    std::mt19937_64 rng(2024);
    const auto b = props::entropy_compatibility(B, rng);
    const auto p = props::entropy_compatibility(P, rng);
    INFO(props::describe(b), " / ", props::describe(p));
    CHECK(b.ok);
    CHECK(p.ok);
}
