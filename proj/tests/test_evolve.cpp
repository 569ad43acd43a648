#include "doctest.h"

#include "sel/errors.hpp"
#include "sel/evolve.hpp"
#include "sel/resolvent.hpp"

#include <algorithm>
#include <cmath>

using namespace sel;

namespace {

GridFunction bump_initial(const LogGrid& g, int N = 3, double lo = 0.5, double hi = 2.0) {
    return sample(g, [&](double r) { return bump(r, lo, hi); }, N, 2.0);
}

GridFunction indicator_initial(const LogGrid& g, int N = 3) {
    return sample(g, [](double r) { return (r >= 1.0 && r <= 2.0) ? 1.0 : 0.0; }, N, 2.0);
}

}  // namespace

TEST_CASE("alpha = 2 norm bound e^{-f(N/p) t}") {
    const OperatorParams prm{3, 2, 0, 0};
    auto g = LogGrid::default_for(2.0);
    for (auto u0 : {bump_initial(g), indicator_initial(g)}) {
        auto run = evolve(prm, 2.0, u0, 1e-3, 1.0);
        REQUIRE(run.bound_exponent);
        CHECK(*run.bound_exponent == doctest::Approx(0.75));
        CHECK(run.bound_ok);
        CHECK(run.worst_bound_ratio <= 1.05);
        CHECK(run.times.size() == 1001);
        CHECK(run.times.back() == doctest::Approx(1.0));
        for (std::size_t k = 0; k < run.times.size(); ++k)
            CHECK(run.norm_history[k] <= std::exp(0.75 * run.times[k]) * run.norm_history[0] * 1.05);
    }
    // b < 0: the exponent is -f(N/p), not b - omega_p
    const OperatorParams neg{3, 2, -0.2, 0.1};
    auto run = evolve(neg, 3.0, bump_initial(g), 1e-3, 0.5);
    CHECK(*run.bound_exponent == doctest::Approx(-f_eval(neg, 1.0)));
    CHECK(run.bound_ok);
}

TEST_CASE("positivity and the zero solution") {
    for (auto prm : {OperatorParams{3, 0, 0, 0}, OperatorParams{3, 1, 0.3, 0.2}, OperatorParams{3, 3, 0, 3},
                     OperatorParams{4, 2, -0.5, 0}}) {
        auto g = LogGrid::default_for(prm.alpha);
        auto run = evolve(prm, 2.0, indicator_initial(g, prm.N), 1e-2, 1.0);
        CHECK(run.positive);
        for (double m : run.min_history) CHECK(m >= -1e-12);
        for (double x : run.norm_history) CHECK(std::isfinite(x));
        auto zero = sample(g, [](double) { return 0.0; }, prm.N, 2.0);
        auto z = evolve(prm, 2.0, zero, 1e-2, 0.5, TimeScheme::CrankNicolson);
        for (double v : z.final_state.values) CHECK(v == 0.0);
    }
}

TEST_CASE("semigroup property") {
    const OperatorParams prm{3, 1, 0.3, 0.2};
    auto g = LogGrid::default_for(prm.alpha);
    auto u0 = bump_initial(g);
    for (auto scheme : {TimeScheme::ImplicitEuler, TimeScheme::CrankNicolson}) {
        auto a = evolve(prm, 2.0, u0, 1e-2, 0.3, scheme);
        auto b = evolve(prm, 2.0, a.final_state, 1e-2, 0.5, scheme);
        auto c = evolve(prm, 2.0, u0, 1e-2, 0.8, scheme);
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK(std::abs(b.final_state.values[i] - c.final_state.values[i]) <= 1e-13);
    }
    // split at a time that is not step-aligned for the finer run: agreement to the scheme error
    auto fine = evolve(prm, 2.0, u0, 1e-4, 0.8);
    auto ie = evolve(prm, 2.0, u0, 1e-2, 0.8);
    auto cn = evolve(prm, 2.0, u0, 1e-2, 0.8, TimeScheme::CrankNicolson);
    const double n = lp_norm(fine.final_state, 2.0);
    auto gap = [&](const EvolutionRun& r) {
        GridFunction d = r.final_state;
        for (std::size_t i = 0; i < d.size(); ++i) d.values[i] -= fine.final_state.values[i];
        return lp_norm(d, 2.0) / n;
    };
    CHECK(gap(ie) < 2e-2);
    CHECK(gap(cn) < 2e-3);
    CHECK(gap(cn) < gap(ie));
}

TEST_CASE("one implicit Euler step is the resolvent at 1/dt") {
    const OperatorParams prm{3, 0.5, 0.2, 0.1};
    auto g = LogGrid::make(-10, 10, 2001);
    auto u0 = bump_initial(g);
    const double dt = 0.05;
    auto run = evolve(prm, 2.0, u0, dt, dt);
    GridFunction f = u0;
    for (auto& v : f.values) v /= dt;
    auto rep = fd_solve(prm, 1.0 / dt, f, BoundaryMode::annulus(std::exp(-10 + g.h() / 4)));
    double peak = 0;
    for (double v : run.final_state.values) peak = std::max(peak, std::abs(v));
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(std::abs(run.final_state.values[i] - rep.solution.values[i].real()) <= 1e-10 * peak);
}

TEST_CASE("analytic smoothing: t ||L u(t)|| stays bounded") {
    for (auto prm : {OperatorParams{3, 0, 0, 0}, OperatorParams{3, 3, 0, 3}}) {
        auto g = LogGrid::default_for(prm.alpha);
        auto probe = smoothing_probe(prm, 2.0, indicator_initial(g), 1e-5, {1e-3, 3e-3, 1e-2});
        REQUIRE(probe.size() == 3);
        const double n0 = lp_norm(indicator_initial(g), 2.0);
        for (auto [t, x] : probe) {
            CAPTURE(t);
            CHECK(std::isfinite(x));
            CHECK(x <= 2.0 * n0);
        }
    }
}

TEST_CASE("evolve input checks") {
    auto g = LogGrid::default_for(0.0);
    auto u0 = bump_initial(g);
    CHECK_THROWS_AS(evolve({3, 0, 0, 0}, 2.0, u0, 0.0, 1.0), InvalidInput);
    CHECK_THROWS_AS(evolve({3, 0, 0, 0}, 1.0, u0, 1e-2, 1.0), InvalidInput);
    CHECK_THROWS_AS(evolve({3, 3, 0, 0}, 2.0, u0, 1e-2, 1.0), InvalidInput);  // no realization generates
    CHECK_NOTHROW(evolve({3, 3, 0, 0}, 2.0, u0, 1e-2, 0.1, TimeScheme::ImplicitEuler, {.require_generation = false}));
    CHECK(parse_time_scheme("cn") == TimeScheme::CrankNicolson);
    CHECK(!parse_time_scheme("rk4"));
}
