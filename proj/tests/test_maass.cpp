#include "doctest.h"

#include "support.hpp"
#include "tlift/inputs.hpp"
#include "tlift/maass.hpp"
#include "tlift/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

using namespace tlift;
using tlift::test::pow10;
namespace bmp = boost::multiprecision;

namespace {

long double kloosterman_oracle(long a, long b, long c) {
    long double s = 0;
    for (long d = 0; d < c; ++d) {
        if (std::gcd(d, c) != 1) continue;
        long dbar = 1;
        while ((d * dbar) % c != 1 % c) ++dbar;
        s += std::cos(2 * std::numbers::pi_v<long double> * static_cast<long double>(a * d + b * dbar) / c);
    }
    return s;
}

int divisor_count(long n) {
    int t = 0;
    for (long d = 1; d <= n; ++d) t += n % d == 0;
    return t;
}

}  // namespace

TEST_SUITE("maass") {

TEST_CASE("Kloosterman sums against direct summation, symmetry and the Weil bound") {
    PrecisionGuard g(30);
    for (long c = 1; c <= 40; ++c)
        for (long a = -3; a <= 4; ++a)
            for (long b : {-2L, 1L, 3L, 7L}) {
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(c);
                Real s = kloosterman(a, b, c);
                CHECK(std::fabs(s.convert_to<long double>() - kloosterman_oracle(a, b, c)) < 1e-12L);
                CHECK(bmp::abs(s - kloosterman(b, a, c)) < pow10(-25));
                long gab = std::gcd(std::gcd(std::labs(a), std::labs(b)), c);
                CHECK(s.convert_to<double>() <= divisor_count(c) * std::sqrt(double(gab)) * std::sqrt(double(c)) + 1e-9);
            }
}

TEST_CASE("weight -8 Poincaré series is E4/Δ") {
    PrecisionGuard g(30);
    PoincareOptions po;
    po.k = 4;
    po.terms = 6;
    po.digits = 30;
    po.c_max = 3000;
    po.tolerance_digits = 12;
    PoincareForm p = build_poincare(po);
    QSeries ref = parse_form_expression("E4/Delta", 10);
    CHECK(p.hol_coeff(-1) == 1);
    for (int n = 0; n < 6; ++n) {
        CAPTURE(n);
        Real r = to_real(ref.coeff(n));
        CHECK(bmp::abs(p.hol_coeff(n) - r) <= pow10(-10) * (1 + bmp::abs(r)));
    }
    // no cusp forms of weight 10
    for (const Real& c : p.xi) CHECK(bmp::abs(c) < pow10(-8));
    CHECK_FALSE(p.lambda().has_value());
}

TEST_CASE("non-convergence is reported") {
    PrecisionGuard g(40);
    PoincareOptions po;
    po.k = 5;
    po.terms = 4;
    po.digits = 40;
    po.c_min = 10;
    po.c_max = 20;
    CHECK_THROWS_AS(build_poincare(po), ConvergenceError);
}

TEST_CASE("k = 5 Poincaré series: ξF = λΔ with λ = 1/<Δ,Δ>") {
    auto p = tlift::test::poincare_k5();
    PrecisionGuard g(40);
    REQUIRE(p->lambda().has_value());
    const Real lambda = *p->lambda();
    QSeries delta = standard_series(StandardForm::Delta, 60);
    for (int n = 1; n <= 40; ++n) {
        CAPTURE(n);
        Real expect = lambda * to_real(delta.coeff(n));
        CHECK(bmp::abs(p->xi[n - 1] - expect) <= pow10(-20) * bmp::abs(lambda * bmp::pow(Real(n), 6)));
        CHECK(bmp::abs(p->nonhol_coeff(n) + p->xi[n - 1] / bmp::pow(4 * pi() * n, 11)) <=
              pow10(-30) * bmp::abs(p->nonhol_coeff(n)));
    }
    // <Δ,Δ> over the fundamental domain, Δ from its product expansion
    Real petersson;
    {
        PrecisionGuard low(20);
        RSeries d = to_real(standard_series(StandardForm::Delta, 40));
        auto inner = [&](const Real& x) {
            Real y0 = bmp::sqrt(1 - x * x);
            return integrate_panels(RealFn([&](const Real& y) {
                                        Real a = abs(evaluate_raw(d, Complex(x, y)));
                                        return a * a * bmp::pow(y, 10);
                                    }),
                                    y0, Real(9), 24, 20);
        };
        petersson = integrate_panels(RealFn(inner), Real("-0.5"), Real("0.5"), 6, 20);
    }
    CHECK(bmp::abs(petersson / Real("1.035362056804320922347816812225e-6") - 1) < pow10(-12));
    CHECK(bmp::abs(lambda * petersson - 1) < pow10(-12));
}

TEST_CASE("k = 5 Poincaré series is modular of weight -10") {
    auto p = tlift::test::poincare_k5();
    PrecisionGuard g(40);
    HarmonicTermSeries t = harmonic_terms(*p);
    for (const auto& [x, y] : {std::pair{"0.1", "1.2"}, {"-0.3", "1.0"}}) {
        Complex z{Real(x), Real(y)};
        Complex expect = pow(z, -10) * evaluate_terms(t, z);
        Complex got = evaluate_terms(t, act(Mat2i::S(), z));
        CHECK(abs(got - expect) / abs(expect) < pow10(-20));
    }
    // the ξ image of the raised tower descends from F⁻ only
    CHECK(t.part(true).terms.size() > 0);
    CHECK(t.part(false).terms.size() > 0);
}

TEST_CASE("Poincaré JSON round trip") {
    auto p = tlift::test::poincare_k5();
    PrecisionGuard g(40);
    PoincareForm q = poincare_from_json(poincare_to_json(*p));
    CHECK(q.k == p->k);
    CHECK(q.m == p->m);
    REQUIRE(q.hol.size() == p->hol.size());
    for (std::size_t i = 0; i < q.hol.size(); ++i) CHECK(bmp::abs(q.hol[i] - p->hol[i]) <= pow10(-35) * (1 + bmp::abs(p->hol[i])));
    CHECK(poincare_to_json(q) == poincare_to_json(*p));
}

TEST_CASE("term-algebra raising matches the exact raising of q-series") {
    PrecisionGuard g(50);
    QSeries f = parse_form_expression("E4^2E6/Delta^2", 200);
    HarmonicTermSeries t = harmonic_terms(f);
    for (int n : {1, 3, 5}) {
        CAPTURE(n);
        HarmonicTermSeries rt = raise_harmonic(t, n);
        CHECK(rt.weight == f.weight + 2 * n);
        RaisedForm r = raise(f, n);
        Complex z(Real("0.21"), Real("1.3"));
        Complex a = evaluate_terms(rt, z), b = evaluate_raised(r, z, EvalPolicy{45, true});
        CHECK(abs(a - b) / abs(b) < pow10(-40));
    }
}

TEST_CASE("harmonic inputs") {
    PrecisionGuard g(40);
    HarmonicInput h = HarmonicInput::from_series(parse_form_expression("E4E6/Delta", 60));
    CHECK(h.k == 1);
    CHECK(h.pole_order() == 1);
    CHECK(h.plus_coeff(0) == -240);
    CHECK_FALSE(h.has_nonholomorphic());
    CHECK_THROWS_AS(HarmonicInput::from_series(standard_series(StandardForm::Delta, 10)), std::invalid_argument);
    auto p = tlift::test::poincare_k5();
    HarmonicInput hp = HarmonicInput::from_poincare(p, Real(2));
    CHECK(hp.has_nonholomorphic());
    CHECK(hp.plus_coeff(-1) == 2);
    CHECK(bmp::abs(hp.xi_image().coeff(1) - 2 * *p->lambda()) < pow10(-30));
}

}  // TEST_SUITE
