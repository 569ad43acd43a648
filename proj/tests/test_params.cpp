#include "doctest.h"

#include "sel/errors.hpp"
#include "sel/params.hpp"

#include <cmath>
#include <random>

using namespace sel;

namespace {

// symbolic expansion of b + s(N-2+c-s) as -s^2 + (N-2+c)s + b
double f_expanded(const OperatorParams& p, double s) { return -s * s + (p.N - 2 + p.c) * s + p.b; }

Rational rq(long a, long b = 1) { return Rational(a) / Rational(b); }

}  // namespace

TEST_CASE("f_eval examples") {
    CHECK(f_eval({3, 0, 0, 0}, 0.0) == 0.0);
    CHECK(f_eval({3, 0, 0, 0}, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(f_eval({3, 1, 1, 2}, 2.0) == doctest::Approx(3.0).epsilon(1e-15));
    OperatorParams p{5, 0.7, -1.3, 2.1};
    for (double s = -3; s <= 3; s += 0.37) CHECK(f_eval(p, s) == doctest::Approx(f_expanded(p, s)).epsilon(1e-13));
}

TEST_CASE("spectral_summary examples") {
    auto a = spectral_summary({3, 0, 0, 0});
    CHECK(a.kind == RootKind::Distinct);
    CHECK(a.discriminant == 0.25);
    CHECK(a.s1 == 0.0);
    CHECK(a.s2 == 1.0);

    auto b = spectral_summary({4, 0, -1, 0});
    CHECK(b.kind == RootKind::Double);
    CHECK(b.discriminant == 0.0);
    CHECK(b.s0 == 1.0);

    auto c = spectral_summary({3, 0, -1, 0});
    CHECK(c.kind == RootKind::Complex);
    CHECK(c.discriminant == -0.75);
    CHECK(std::isnan(c.s1));
}

TEST_CASE("adjoint and kelvin maps") {
    auto id = adjoint_params(OperatorParams{3, 0, 0, 0});
    CHECK(id.b == 0.0);
    CHECK(id.c == 0.0);

    auto a = adjoint_params(OperatorParams{3, 1, 1, 2});
    CHECK(a.c == 0.0);
    CHECK(a.b == 3.0);

    auto k = kelvin_params(OperatorParams{3, 0, 0, 0});
    CHECK(k.alpha == 4.0);
    CHECK(k.b == 0.0);
    auto k1 = kelvin_params(OperatorParams{3, 0, 0, 1});
    CHECK(k1.alpha == 4.0);
    CHECK(k1.c == -1.0);
    CHECK(k1.b == 1.0);
}

TEST_CASE("algebraic identities on random parameters") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        OperatorParams p{1 + static_cast<int>(rng() % 6), u(rng), u(rng), u(rng)};
        auto a = adjoint_params(p);
        auto aa = adjoint_params(a);
        CHECK(aa.b == doctest::Approx(p.b).epsilon(1e-12));
        CHECK(aa.c == doctest::Approx(p.c).epsilon(1e-12));
        double s = u(rng);
        CHECK(f_eval(a, s) == doctest::Approx(f_eval(p, p.N + p.alpha - 2 - s)).epsilon(1e-12));
        auto S = spectral_summary(p), Sa = spectral_summary(a), Sk = spectral_summary(kelvin_params(p));
        CHECK(Sa.discriminant == doctest::Approx(S.discriminant).epsilon(1e-12));
        CHECK(Sk.discriminant == doctest::Approx(S.discriminant).epsilon(1e-12));
        CHECK(f_eval(p, p.s0()) == S.discriminant);
        if (S.kind == RootKind::Distinct) {
            CHECK(S.s1 + S.s2 == doctest::Approx(p.N - 2 + p.c).epsilon(1e-12));
            CHECK(std::abs(f_eval(p, S.s1)) < 1e-12 * (1 + S.s1 * S.s1));
            CHECK(Sa.s1 == doctest::Approx(S.s1 + p.alpha - p.c).epsilon(1e-12));
            CHECK(Sa.s2 == doctest::Approx(S.s2 + p.alpha - p.c).epsilon(1e-12));
        }
    }
}

TEST_CASE("classify: paper examples") {
    auto lap = classify({3, 0, 0, 0}, 2.0);
    CHECK(lap.verdict == Verdict::GeneratesIntOnly);
    REQUIRE(lap.interval);
    CHECK(lap.interval->lo == 0.0);
    CHECK(lap.interval->hi == 3.0);
    CHECK_FALSE(lap.interval->lo_closed);
    CHECK_FALSE(lap.lint_equals_min);
    CHECK_FALSE(lap.lint_equals_max);

    auto crit = classify({4, 0, -1, 0}, 4.0);
    CHECK(crit.verdict == Verdict::GeneratesMax);
    CHECK(crit.generates);
    CHECK(crit.lint_equals_max);
    CHECK(crit.interval->lo_closed);
    CHECK(crit.interval->hi_closed);
    REQUIRE(crit.theta0);
    CHECK(*crit.theta0 == 0.0);

    for (double p : {1.1, 2.0, 3.0, 10.0}) {
        auto none = classify({2, 3, 0, 0}, p);
        CHECK(none.verdict == Verdict::NoRealizationGenerates);
        CHECK(none.interval->lo == -1.0);
        CHECK(none.interval->hi == 0.0);
    }

    CHECK(classify({3, 2, -7, 1}, 1.5).verdict == Verdict::Alpha2AllP);
    CHECK(classify({3, 0, -1, 0}, 2.0).verdict == Verdict::NegativeDiscriminant);
}

TEST_CASE("classify: Laplacian coincides with min iff p <= N/2, with max iff p >= N/(N-2)") {
    // N = 5: min for N/p in [2,5), max for N/p in (0,3]
    CHECK(classify({5, 0, 0, 0}, 2.5).lint_equals_min);   // N/p = 2 endpoint
    CHECK_FALSE(classify({5, 0, 0, 0}, 2.6).lint_equals_min);
    CHECK(classify({5, 0, 0, 0}, 5.0 / 3.0).lint_equals_max);  // N/p = 3 endpoint
    CHECK_FALSE(classify({5, 0, 0, 0}, 1.6).lint_equals_max);
    CHECK(classify({5, 0, 0, 0}, 2.0).verdict == Verdict::GeneratesMinAndMax);
}

TEST_CASE("classify: exact path agrees with floating path off endpoints") {
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int t = 0; t < 400; ++t) {
        RationalParams rp{1 + static_cast<int>(rng() % 6), rq(static_cast<long>(rng() % 13) - 4, 2),
                          rq(static_cast<long>(rng() % 25) - 12, 4), rq(static_cast<long>(rng() % 13) - 6, 2)};
        Rational p = rq(static_cast<long>(rng() % 40) + 11, 10);
        auto ex = classify_exact(rp, p);
        auto fl = classify(rp.to_double(), to_double(p));
        if (fl.endpoint_tie) continue;
        ++checked;
        CHECK(ex.verdict == fl.verdict);
        CHECK(ex.lint_equals_min == fl.lint_equals_min);
        CHECK(ex.lint_equals_max == fl.lint_equals_max);
        CHECK(ex.theta_interval.has_value() == fl.theta_interval.has_value());
    }
    CHECK(checked > 200);
}

TEST_CASE("classify: duality min(params,p) <=> max(adjoint,p')") {
    for (int N : {1, 2, 3, 5}) {
        for (long ia = -2; ia <= 8; ++ia) {
            for (long ib = -6; ib <= 6; ib += 2) {
                for (long ic = -3; ic <= 4; ++ic) {
                    for (long ip = 11; ip <= 60; ip += 7) {
                        RationalParams rp{N, rq(ia, 2), rq(ib, 4), rq(ic, 1)};
                        Rational p = rq(ip, 10);
                        Rational pp = p / (p - 1);
                        auto a = classify_exact(rp, p);
                        auto d = classify_exact(adjoint_params(rp), pp);
                        CHECK(a.lint_equals_min == d.lint_equals_max);
                        CHECK(a.lint_equals_max == d.lint_equals_min);
                        CHECK(a.generates == d.generates);
                    }
                }
            }
        }
    }
}

TEST_CASE("classify: ball and exterior") {
    CHECK(classify({3, 2.5, 0, 0}, 2.0, DomainKind::Ball).all_p);
    CHECK(classify({3, 1.0, 0, 0}, 2.0, DomainKind::Exterior).all_p);
    // ball, alpha<2: s1 < N/p < s2 + 2 - alpha; N=3, b=c=0, alpha=1 -> (0, 2)
    CHECK(classify({3, 1, 0, 0}, 2.0, DomainKind::Ball).generates);   // 1.5
    CHECK_FALSE(classify({3, 1, 0, 0}, 1.4, DomainKind::Ball).generates);  // 2.14
    // exterior, alpha>2: s1 + 2 - alpha < N/p < s2; N=3, b=c=0, alpha=3 -> (-1, 1)
    CHECK(classify({3, 3, 0, 0}, 4.0, DomainKind::Exterior).generates);
    CHECK_FALSE(classify({3, 3, 0, 0}, 2.0, DomainKind::Exterior).generates);
}

TEST_CASE("classify: self-adjointness threshold") {
    // c = alpha = 0, p = 2: b >= -(N-2)^2/4 + 1
    auto yes = classify({3, 0, 0.75, 0}, 2.0);
    REQUIRE(yes.selfadjoint);
    CHECK(*yes.selfadjoint);
    auto no = classify({3, 0, 0.7, 0}, 2.0);
    REQUIRE(no.selfadjoint);
    CHECK_FALSE(*no.selfadjoint);
    CHECK_FALSE(classify({3, 0, 0.75, 0}, 3.0).selfadjoint.has_value());
    CHECK_FALSE(classify({3, 1, 0.75, 0}, 2.0).selfadjoint.has_value());
}

TEST_CASE("classify rejects bad p") {
    CHECK_THROWS_AS(classify({3, 0, 0, 0}, 1.0), InvalidInput);
    CHECK_THROWS_AS(classify({3, 0, 0, 0}, std::nan("")), InvalidInput);
    CHECK_THROWS_AS(classify({0, 0, 0, 0}, 2.0), InvalidInput);
}

TEST_CASE("dissipativity margin and sectoriality constant") {
    CHECK(dissipativity_margin({3, 0, 0, 0}, 3.0) == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
    CHECK(dissipativity_margin({3, 0, -0.3, 0}, 2.0) == doctest::Approx(-0.05).epsilon(1e-12));
    // vertex: (N+alpha-2)/p = s0 with N=3, alpha=2, p=2 -> margin = D
    CHECK(dissipativity_margin({3, 2, 0, 1}, 3.0) == doctest::Approx(1.0).epsilon(1e-14));

    auto l0 = sectoriality_constant({3, 0, 0, 0}, 2.0);
    REQUIRE(l0);
    CHECK(*l0 == 0.0);
    auto l1 = sectoriality_constant({3, 0, 1, 0}, 3.0);
    REQUIRE(l1);
    double expect = std::sqrt(1.0 / 8.0 + (0.5 - 1.0 / 3.0) * (0.5 - 1.0 / 3.0) / (1.0 + 2.0 / 9.0));
    CHECK(*l1 == doctest::Approx(expect).epsilon(1e-14));
    CHECK_FALSE(sectoriality_constant({3, 0, -0.3, 0}, 2.0).has_value());
    // critical vertex case: D = 0 with (N+alpha-2)/p = s0
    auto lc = sectoriality_constant({4, 0, -1, 0}, 2.0);
    REQUIRE(lc);
    CHECK(*lc == 0.0);
}

TEST_CASE("theta_data examples") {
    auto t = theta_data({3, 0, 0, 0}, 2.0);
    REQUIRE(t.interval);
    CHECK(t.interval->lo == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(t.interval->hi == doctest::Approx(0.75).epsilon(1e-14));
    CHECK_FALSE(t.interval->lo_closed);
    CHECK_FALSE(t.interval->hi_closed);

    auto c = theta_data({4, 0, -1, 0}, 2.0);
    CHECK_FALSE(c.interval);
    REQUIRE(c.theta0);
    CHECK(*c.theta0 == doctest::Approx(0.5).epsilon(1e-14));

    // 1 in I iff L_min's interior condition; 0 in I iff L_max's
    auto m = classify({5, 0, 0, 0}, 2.0);
    REQUIRE(m.theta_interval);
    CHECK(m.theta_interval->lo_closed);
    CHECK(m.theta_interval->hi_closed);
    CHECK_THROWS_AS(theta_data({3, 2, 0, 0}, 2.0), InvalidInput);
}

TEST_CASE("parse_rational") {
    CHECK(*parse_rational("3") == Rational(3));
    CHECK(*parse_rational("-1/4") == rq(-1, 4));
    CHECK(*parse_rational("0.75") == rq(3, 4));
    CHECK(*parse_rational("1e-3") == rq(1, 1000));
    CHECK(*parse_rational("2.5e1") == Rational(25));
    CHECK_FALSE(parse_rational("abc"));
    CHECK_FALSE(parse_rational("1/0"));
    CHECK_FALSE(parse_rational(""));
}
