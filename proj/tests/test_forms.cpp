#include "doctest.h"

#include "sel/errors.hpp"
#include "sel/forms.hpp"

#include <cmath>

using namespace sel;

namespace {

TestFunction bump_tf(int n = 0, double p = 2.0, double c = 0.0, double w = 1.5) {
    return TestFunction::make(c - w - 0.05, c + w + 0.05, 2001, [&](double s) {
        const double x = (s - c) / w;
        return std::abs(x) < 1 ? std::complex<double>(std::pow(1 - x * x, 4)) : 0.0;
    }, n, p);
}

}  // namespace

TEST_CASE("dissipativity: Laplacian bump and harmonic shift") {
    const OperatorParams lap{3, 0, 0, 0};
    auto r0 = dissipativity_form(lap, bump_tf());
    CHECK(r0.margin_used == doctest::Approx(0.25));
    CHECK(r0.real_part > 0.0);
    CHECK(r0.passed);
    CHECK(r0.identity_residual < 1e-7);
    CHECK(std::abs(r0.imaginary_part) < 1e-14 * r0.scale);
    // n = 2 adds lambda_2 int |x|^{alpha-2}|u|^p, which is lambda_2 * lower_bound / margin here
    auto r2 = dissipativity_form(lap, bump_tf(2));
    CHECK(harmonic_eigenvalue(3, 2) == 6.0);
    CHECK(r2.real_part - r0.real_part == doctest::Approx(6.0 * r0.lower_bound / r0.margin_used).epsilon(1e-8));
}

TEST_CASE("zero test function gives zero forms") {
    auto zero = TestFunction::make(-1, 1, 101, [](double) { return std::complex<double>(0.0); });
    auto r = dissipativity_form({3, 0, 0, 0}, zero);
    CHECK(r.real_part == 0.0);
    CHECK(r.imaginary_part == 0.0);
    CHECK(r.passed);
    auto c = weighted_coercivity({5, 0, 1, 0}, 2.0, zero);
    CHECK(c.real_part == 0.0);
    CHECK(c.lower_bound == 0.0);
}

TEST_CASE("dissipativity sign law and sectoriality on random draws") {
    for (double p : {1.5, 2.0, 3.0}) {
        for (auto prm : {OperatorParams{3, 0, 0, 0}, OperatorParams{4, 1, 0.5, 0.3}}) {
            auto suite = dissipativity_suite(prm, p, 7, 200);
            CAPTURE(p);
            CHECK(suite.passes == 200);
            for (const auto& r : suite.reports) {
                CHECK(r.l_alpha);
                CHECK(r.imag_bound_ok);
                CHECK(r.identity_residual < 1e-6);
                CHECK(r.regularization_gap < 1e-10);
            }
        }
    }
}

TEST_CASE("violation sweep when the margin is negative") {
    // f(1/2) = b + 1/4 = -0.1
    auto sweep = violation_sweep({3, 0, -0.35, 0}, 2.0);
    REQUIRE(sweep.first_violation);
    CHECK(sweep.min_ratio <= -1e-3);
    CHECK(sweep.reports.back().margin_used == doctest::Approx(-0.1));
    // larger delta is not violating: the sweep really crosses zero
    CHECK(sweep.reports.front().real_part > 0.0);
    // margin -0.05: still found, at a smaller delta
    auto weak = violation_sweep({3, 0, -0.3, 0}, 2.0);
    REQUIRE(weak.first_violation);
    CHECK(*weak.first_violation < *sweep.first_violation);
    // positive margin: nothing is found on the same family
    auto none = violation_sweep({3, 0, 0, 0}, 2.0);
    CHECK(!none.first_violation);
}

TEST_CASE("weighted coercivity") {
    const OperatorParams prm{5, 0, 1, 0};
    auto suite = coercivity_suite(prm, 2.0, 7, 20);
    CHECK(suite.passes == 20);
    CHECK(suite.reports.front().margin_used == doctest::Approx(9.0 / 4.0));
    // plateau near-optimisers approach equality
    double prev = 1e9;
    for (double P : {5.0, 10.0, 20.0}) {
        auto r = weighted_coercivity(prm, 2.0, coercivity_near_optimizer(prm, 2.0, P));
        const double ratio = r.real_part / r.lower_bound;
        CHECK(ratio >= 1.0);
        CHECK(ratio < prev);
        prev = ratio;
    }
    CHECK(prev < 1.1);
    // p != 2 and alpha != 0
    auto s3 = coercivity_suite({4, 0.5, 0.5, 0.2}, 3.0, 11, 20);
    CHECK(s3.passes == 20);
}

TEST_CASE("log-Hardy inequality") {
    for (double p : {1.5, 2.0, 3.0}) {
        auto suite = log_hardy_suite(p, 7, 50);
        CHECK(suite.passes == 50);
        CHECK(suite.reports.front().margin_used == doctest::Approx((p - 1) / (p * p)));
        // constant-then-linear ramp (smoothed): strict slack
        RadialProfile ramp;
        ramp.t_min = 1e-12;
        ramp.t_max = 200;
        ramp.eval = [](double t) {
            const double e = std::exp(-std::pow(t / 20, 4));
            if (t < 1) return std::pair{t * e, e - t * e * 4 * std::pow(t / 20, 4) / t};
            return std::pair{e, -e * 4 * std::pow(t / 20, 4) / t};
        };
        auto r = log_hardy(p, ramp);
        CHECK(r.real_part > 1.1 * r.lower_bound);
        // near-optimisers: ratio decreases towards 1
        double prev = 1e9;
        for (double R : {1e2, 1e4, 1e8}) {
            auto q = log_hardy(p, log_hardy_near_optimizer(p, R));
            const double ratio = q.real_part / q.lower_bound;
            CHECK(ratio > 1.0);
            CHECK(ratio < prev);
            prev = ratio;
        }
    }
    RadialProfile zero;
    zero.eval = [](double) { return std::pair{0.0, 0.0}; };
    auto z = log_hardy(2.0, zero);
    CHECK(z.real_part == 0.0);
    CHECK(z.passed);
}

TEST_CASE("interpolation probe") {
    const OperatorParams prm{3, 0.5, 0.2, 0.1};
    auto grid = LogGrid::make(-8, 8, 3201);
    auto corpus = interpolation_corpus(grid, 50, 7, 3, 2.0);
    auto rep = interpolation_probe(prm, 2.0, corpus);
    CHECK(rep.bounded);
    for (double c : rep.max_constant) CHECK(c < 10.0);

    // dilation by a whole number of nodes leaves every constant unchanged
    auto shifted = corpus;
    const std::size_t k = 200;
    for (auto& u : shifted) {
        std::vector<double> v(u.size(), 0.0);
        for (std::size_t i = k; i < u.size(); ++i) v[i - k] = u.values[i];
        u.values = v;
    }
    auto rs = interpolation_probe(prm, 2.0, shifted);
    for (std::size_t e = 0; e < rep.epsilons.size(); ++e)
        for (std::size_t j = 0; j < corpus.size(); ++j)
            CHECK(rs.constants[e][j] == doctest::Approx(rep.constants[e][j]).epsilon(1e-10));

    // grid refinement
    auto fine = interpolation_probe(prm, 2.0, interpolation_corpus(LogGrid::make(-8, 8, 6401), 50, 7, 3, 2.0));
    for (std::size_t e = 0; e < rep.epsilons.size(); ++e)
        CHECK(fine.max_constant[e] == doctest::Approx(rep.max_constant[e]).epsilon(0.2));

    // flat profile: only the cutoff region contributes to the left side
    auto flat = sample(grid, [](double r) {
        const double s = std::log(r);
        const double x = std::clamp((6 - std::abs(s)) / 1.0, 0.0, 1.0);
        return x * x * x * (10 + x * (-15 + 6 * x));
    });
    CHECK(interpolation_probe(prm, 2.0, {flat}).bounded);
}

TEST_CASE("forms input checks") {
    CHECK_THROWS_AS(TestFunction::make(-1, 1, 5, [](double) { return std::complex<double>(1.0); }), InvalidInput);
    auto tf = bump_tf();
    tf.g[0] = 1.0;
    CHECK_THROWS_AS(dissipativity_form({3, 0, 0, 0}, tf), InvalidInput);
    CHECK_THROWS_AS(harmonic_eigenvalue(3, -1), InvalidInput);
    CHECK_THROWS_AS(log_hardy(1.0, log_hardy_near_optimizer(2.0, 10)), InvalidInput);
}
