#include "doctest.h"

#include "support.hpp"
#include "tlift/inputs.hpp"
#include "tlift/traces.hpp"

using namespace tlift;
using tlift::test::pow10;
namespace bmp = boost::multiprecision;

namespace {

ModularFunction J_function(int terms = 200) {
    return as_function(standard_series(StandardForm::J, terms), EvalPolicy{50, true}, "J");
}

}  // namespace

TEST_SUITE("traces") {

TEST_CASE("traces of singular moduli") {
    PrecisionGuard g(60);
    ModularFunction J = J_function();
    // Tr_d(J) for d = 3, 4, 7, 8, 11, 12
    const std::pair<int, int> table[] = {{3, -248}, {4, 492}, {7, -4119}, {8, 7256}, {11, -33512}, {12, 53008}};
    for (auto [d, expect] : table) {
        CAPTURE(d);
        TraceValue t = trace_cm(J, 1, d);
        CHECK(abs(t.combined - Complex(expect)) < pow10(-40));
        CHECK(abs(t.plus - t.combined) == 0);
        CHECK(abs(t.minus - t.plus) < pow10(-40));
    }
    CHECK(trace_cm(J, 1, 23).class_count == 3);
}

TEST_CASE("twisted traces") {
    PrecisionGuard g(60);
    ModularFunction J = J_function();
    TraceValue t = trace_cm(J, -4, 3);
    CHECK(abs(t.combined - Complex(53256)) < pow10(-35));
    // Δ < 0: the negative definite classes enter with the opposite sign
    for (std::int64_t delta : {-3, -4, -7, -8}) {
        for (std::int64_t d : {1, 4, 5, 8}) {
            CAPTURE(delta);
            CAPTURE(d);
            TraceValue v = trace_cm(J, delta, d);
            CHECK(abs(v.minus + v.plus) < pow10(-35) * (1 + abs(v.plus)));
        }
    }
}

TEST_CASE("empty class sets give exact zeros") {
    PrecisionGuard g(40);
    int calls = 0;
    ModularFunction f{0, [&](const Complex&) {
                          ++calls;
                          return Complex(1);
                      }};
    TraceValue t = trace_cm(f, 1, 1);  // -1 is not a discriminant
    CHECK(t.class_count == 0);
    CHECK(abs(t.combined) == 0);
    CHECK(calls == 0);
    TraceValue u = trace_cm(f, -3, 2);
    CHECK(u.class_count == 0);
    CHECK(calls == 0);
}

TEST_CASE("traces of the constant function count weighted classes") {
    PrecisionGuard g(40);
    ModularFunction one{0, [](const Complex&) { return Complex(1); }};
    // Hurwitz class numbers: H(3) = 1/3, H(4) = 1/2, H(23) = 3, H(15) = 2
    CHECK(abs(trace_cm(one, 1, 3).combined - Complex(Real(1) / 3)) < pow10(-40));
    CHECK(abs(trace_cm(one, 1, 4).combined - Complex(Real(1) / 2)) < pow10(-40));
    CHECK(abs(trace_cm(one, 1, 23).combined - Complex(3)) < pow10(-40));
    CHECK(abs(trace_cm(one, 1, 15).combined - Complex(2)) < pow10(-40));
    // imprimitive classes of discriminant -12 include 2[1,1,1], weighted by 1/3
    CHECK(abs(trace_cm(one, 1, 12).combined - Complex(Real(4) / 3)) < pow10(-40));
}

TEST_CASE("principal part terms") {
    PrecisionGuard g(40);
    HarmonicInput J = HarmonicInput::from_series(standard_series(StandardForm::J, 40));
    // a⁺(-1) = 1 and (Δ/1) = 1
    CHECK(abs(principal_part_term(J, -3, 0, 1) - Complex(2)) < pow10(-40));
    CHECK(abs(principal_part_term(J, -4, 0, 1) - Complex(2)) < pow10(-40));
    CHECK(abs(principal_part_term(J, -3, 0, 2)) == 0);
    HarmonicInput F = HarmonicInput::from_series(parse_form_expression("E4^2E6/Delta^2", 40));
    // k = 5, Δ = 1, b = 1: -2i (2πi)^{-5} Σ_{n<0} a⁺(n) (4πn)^5 over the poles q^{-2}, q^{-1}
    Complex expect;
    for (int n : {-1, -2})
        expect += Complex(Real(0), Real(-2)) * pow(Complex(Real(0), 2 * pi()), -5) * bmp::pow(4 * pi() * n, 5) *
                  F.plus_coeff(n);
    CHECK(F.plus_coeff(-1) == 24);
    CHECK(abs(principal_part_term(F, 1, 5, 1) - expect) < pow10(-35) * abs(expect));
}

TEST_CASE("constant term") {
    PrecisionGuard g(40);
    HarmonicInput F1 = HarmonicInput::from_series(parse_form_expression("E4E6/Delta", 40));  // a⁺(0) = -240
    // -1!/(2π²) · (-240) · 2ζ(2) = 40
    CHECK(abs(constant_term(F1, 1, 1) - Complex(40)) < pow10(-35));
    CHECK_THROWS_AS(constant_term(F1, 1, 5), std::domain_error);
    HarmonicInput F2 = HarmonicInput::from_series(parse_form_expression("E4^2/Delta", 40));  // k = 2
    CHECK(abs(constant_term(F2, 2, 1)) == 0);
    HarmonicInput J = HarmonicInput::from_series(standard_series(StandardForm::J, 40));
    CHECK(abs(constant_term(J, 0, -3)) == 0);
}

TEST_CASE("cycle traces converge to their error estimate") {
    PrecisionGuard g(40);
    RSeries delta = to_real(standard_series(StandardForm::Delta, 200));
    CycleOptions loose, tight;
    loose.rel_tol = pow10(-15);
    tight.rel_tol = pow10(-30);
    for (std::int64_t d : {1, 4, 5}) {
        CAPTURE(d);
        CycleTrace a = trace_cycle(delta, 1, d, loose), b = trace_cycle(delta, 1, d, tight);
        CHECK(abs(a.value - b.value) <= pow10(-13) * abs(b.value));
        CHECK(b.class_count >= 1);
    }
    CycleTrace t1 = trace_cycle(delta, 1, 1, tight);
    CHECK(abs(t1.value - Complex(Real("1.544879360395027206e-3"))) < pow10(-20));
}

}  // TEST_SUITE
