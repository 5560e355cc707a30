#include <doctest.h>

#include <cmath>
#include <vector>

#include "fvpost/grid.hpp"
#include "fvpost/solver.hpp"

using namespace fvpost;

TEST_CASE("build_grid cell count and width") {
    const auto g0 = build_grid(-5, 5, 0);
    CHECK(g0.cells == 2);
    CHECK(g0.dx == 5.0);
    const auto g7 = build_grid(-5, 5, 7);
    CHECK(g7.cells == 256);
    CHECK(g7.dx == doctest::Approx(10.0 / 256).epsilon(1e-15));
    const auto g3 = build_grid(0, 1, 3);
    CHECK(g3.cells == 16);
    CHECK(g3.dx == 0.0625);
}

TEST_CASE("build_grid rejects an empty domain") {
    CHECK_THROWS_AS(build_grid(1, 1, 2), ConfigError);
    CHECK_THROWS_AS(build_grid(2, -1, 2), ConfigError);
}

TEST_CASE("cells tile the domain") {
    const auto g = build_grid(-5, 5, 4);
    CHECK(g.face(0) == -5.0);
    CHECK(g.face(g.cells) == doctest::Approx(5.0).epsilon(1e-15));
    for (std::size_t j = 0; j < g.cells; ++j) {
        CHECK(g.face(j + 1) - g.face(j) == doctest::Approx(g.dx).epsilon(1e-12));
        CHECK(g.center(j) == doctest::Approx(0.5 * (g.face(j) + g.face(j + 1))));
    }
}

TEST_CASE("cfl_timestep examples") {
    const auto g = uniform_grid(0, 1, 10);
    const auto burgers = ConservationLaw::burgers();
    std::vector<State> two(10, make_state(2.0));
    CHECK(cfl_timestep(two, two.front(), two.back(), burgers, g, 0.9, 1.0) == doctest::Approx(0.045).epsilon(1e-14));
    std::vector<State> mixed{make_state(1.0), make_state(-3.0), make_state(1.0), make_state(1.0), make_state(1.0),
                             make_state(1.0), make_state(1.0), make_state(1.0), make_state(1.0), make_state(1.0)};
    CHECK(cfl_timestep(mixed, mixed.front(), mixed.back(), burgers, g, 0.9, 1.0) ==
          doctest::Approx(0.03).epsilon(1e-14));
    const auto ps = ConservationLaw::psystem();
    std::vector<State> rest(10, make_state(1.0, 0.0));
    CHECK(cfl_timestep(rest, rest.front(), rest.back(), ps, g, 0.9, 1.0) ==
          doctest::Approx(0.9 * 0.1 / std::sqrt(1.4)).epsilon(1e-12));
}

TEST_CASE("cfl_timestep scans the ghost states") {
    const auto g = uniform_grid(0, 1, 4);
    std::vector<State> u(4, make_state(1.0));
    CHECK(cfl_timestep(u, make_state(5.0), make_state(1.0), ConservationLaw::burgers(), g, 0.5, 1.0) ==
          doctest::Approx(0.5 * 0.25 / 5.0));
}

TEST_CASE("cfl_timestep returns the maximum step for a non-propagating state") {
    const auto g = uniform_grid(0, 1, 4);
    std::vector<State> u(4, make_state(0.0));
    CHECK(cfl_timestep(u, u.front(), u.back(), ConservationLaw::burgers(), g, 0.9, 0.25) == 0.25);
}
