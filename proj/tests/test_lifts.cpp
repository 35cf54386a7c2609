#include "doctest.h"

#include "support.hpp"
#include "tlift/inputs.hpp"
#include "tlift/lifts.hpp"

#include "json.hpp"

using namespace tlift;
using tlift::test::pow10;
namespace bmp = boost::multiprecision;

namespace {

HarmonicInput series_input(const std::string& expr, int terms = 400) {
    return HarmonicInput::from_series(parse_form_expression(expr, terms), expr);
}

LiftOptions options(int digits) {
    LiftOptions o;
    o.policy = EvalPolicy{digits, true};
    o.cycles.rel_tol = pow10(-digits);
    return o;
}

void check_plus_space(const LiftExpansion& e) {
    for (const auto& [d, c] : e.holo)
        if (!in_plus_space(e.kind, e.k, d)) CHECK(abs(c) == 0);
    for (const auto& [d, c] : e.nonholo)
        if (!in_plus_space(e.kind, e.k, d)) CHECK(abs(c) == 0);
    for (const auto& [d, c] : e.principal) CHECK(in_plus_space(e.kind, e.k, d));
}

// Sum of principal(-|Δ|b²) · G(|Δ|b²) over the principal part of a Millson lift.
Complex pairing(const LiftExpansion& m, const LiftExpansion& s) {
    Complex sum;
    for (const auto& [n, c] : m.principal) sum += c * s.holo.at(-n);
    return sum;
}

}  // namespace

TEST_SUITE("lifts") {

TEST_CASE("plus-space support pattern") {
    CHECK(in_plus_space(LiftKind::Millson, 0, 4));
    CHECK(in_plus_space(LiftKind::Millson, 0, -3));
    CHECK_FALSE(in_plus_space(LiftKind::Millson, 0, 2));
    CHECK(in_plus_space(LiftKind::Millson, 1, 3));
    CHECK_FALSE(in_plus_space(LiftKind::Millson, 1, 1));
    CHECK(in_plus_space(LiftKind::Shintani, 5, 1));
    CHECK(in_plus_space(LiftKind::Shintani, 5, 4));
    CHECK_FALSE(in_plus_space(LiftKind::Shintani, 5, 3));
    CHECK(parity_vanishes(0, 5));
    CHECK(parity_vanishes(1, -3));
    CHECK_FALSE(parity_vanishes(0, -3));
    CHECK_FALSE(parity_vanishes(5, 1));
}

TEST_CASE("Millson lift of J reproduces Zagier's weight 1/2 forms") {
    PrecisionGuard g(50);
    HarmonicInput J = series_input("J");
    LiftOptions opt = options(40);
    // 2 f_3 and 2 f_4 with f_3 = q^{-3} - 248q + 26752q^4 - ..., f_4 = q^{-4} + 492q + 143376q^4 + ...
    const std::vector<std::pair<std::int64_t, std::vector<std::pair<int, long>>>> cases = {
        {-3, {{1, -496}, {4, 53504}, {5, -171990}, {8, 3414528}, {9, -8192496}}},
        {-4, {{1, 984}, {4, 286752}, {5, 1131520}, {8, 36946000}, {9, 102360024}}},
    };
    for (const auto& [delta, coeffs] : cases) {
        CAPTURE(delta);
        LiftExpansion e = millson_expansion(J, delta, 12, opt);
        for (auto [d, c] : coeffs) CHECK(abs(e.holo.at(d) - Complex(Real(c))) < pow10(-30));
        CHECK(abs(e.principal.at(delta) - Complex(2)) < pow10(-40));
        CHECK(abs(e.constant) == 0);
        for (const auto& [d, c] : e.nonholo) CHECK(abs(c) == 0);
        check_plus_space(e);
        CHECK(e.warnings.empty());
    }
}

TEST_CASE("integrality of the Millson lift of J") {
    PrecisionGuard g(50);
    HarmonicInput J = series_input("J");
    LiftOptions opt = options(40);
    for (std::int64_t delta : {-3, -4, -7, -8}) {
        LiftExpansion e = millson_expansion(J, delta, 25, opt);
        for (const auto& [d, c] : e.holo) {
            CAPTURE(delta);
            CAPTURE(d);
            Real six = 6 * c.re / e.normalization.value;
            CHECK(bmp::abs(six - bmp::round(six)) < pow10(-20));
            CHECK(bmp::abs(c.im) < pow10(-20));
        }
    }
}

TEST_CASE("the parity gate returns the zero expansion") {
    PrecisionGuard g(40);
    LiftOptions opt = options(30);
    LiftExpansion e = millson_expansion(series_input("J"), 5, 10, opt);
    CHECK(e.holo.empty());
    CHECK(e.principal.empty());
    CHECK(e.nonholo.empty());
    CHECK(abs(e.constant) == 0);
    CHECK(e.warnings.size() == 1);
    LiftExpansion f = millson_expansion(series_input("E4E6/Delta"), -3, 10, opt);
    CHECK(f.holo.empty());
    CHECK(f.warnings.size() == 1);
    RSeries delta = to_real(standard_series(StandardForm::Delta, 100));
    LiftExpansion s = shintani_expansion(delta, -4, 10, opt);
    CHECK(s.holo.empty());
    CHECK(s.warnings.size() == 1);
}

TEST_CASE("unsupported inputs are rejected") {
    PrecisionGuard g(40);
    LiftOptions opt = options(30);
    // a⁺(0) != 0 with a twist, or with k = 0
    CHECK_THROWS_AS(millson_expansion(series_input("E4E6/Delta"), 5, 4, opt), std::domain_error);
    CHECK_THROWS_AS(millson_expansion(series_input("j"), -3, 4, opt), std::domain_error);
    CHECK_THROWS_AS(shintani_expansion(to_real(standard_series(StandardForm::E4, 20)), 1, 4, opt),
                    std::invalid_argument);
    RSeries e12 = to_real(mul(standard_series(StandardForm::E6, 20), standard_series(StandardForm::E6, 20)));
    CHECK_THROWS_AS(shintani_expansion(e12, 1, 4, opt), std::invalid_argument);
}

TEST_CASE("Millson expansions transform like forms of weight 1/2 - k on Γ0(4)") {
    PrecisionGuard g(50);
    LiftOptions opt = options(40);
    const Complex tau(Real("-0.25"), Real("0.25"));
    const std::vector<std::pair<std::string, std::int64_t>> cases = {
        {"J", -3}, {"J", -4}, {"J", -7}, {"E4E6/Delta", 1}, {"E4^2E6/Delta^2", 1}, {"J", -8}, {"E6/Delta", 1}};
    for (const auto& [expr, delta] : cases) {
        CAPTURE(expr);
        CAPTURE(delta);
        LiftExpansion e = millson_expansion(series_input(expr), delta, 150, opt);
        check_plus_space(e);
        CHECK(transformation_defect(e, tau) < pow10(-30));
    }
    // a wrong sign of the principal part breaks modularity
    LiftExpansion e = millson_expansion(series_input("J"), -3, 150, opt);
    e.principal.begin()->second = -e.principal.begin()->second;
    CHECK(transformation_defect(e, tau) > pow10(-3));
}

TEST_CASE("Shintani lift of Δ transforms with weight 13/2 and pairs to zero with Millson lifts") {
    PrecisionGuard g(40);
    LiftOptions opt = options(30);
    RSeries delta = to_real(standard_series(StandardForm::Delta, 300));
    LiftExpansion s = shintani_expansion(delta, 1, 60, opt);
    check_plus_space(s);
    CHECK(abs(s.holo.at(1)) > 0);
    const Complex tau(Real("-0.25"), Real("0.25"));
    CHECK(transformation_defect(s, tau) < pow10(-20));
    // weakly holomorphic input: the principal part pairs to zero with the Shintani lift of the cusp form
    LiftExpansion m = millson_expansion(series_input("E4^2E6/Delta^2"), 1, 4, opt);
    REQUIRE(m.principal.size() == 2);
    Complex p = pairing(m, s);
    Real scale = abs(m.principal.at(-1) * s.holo.at(1));
    CHECK(scale > 1);
    CHECK(abs(p) < pow10(-25) * scale);
}

TEST_CASE("JSON and CSV output") {
    PrecisionGuard g(40);
    LiftOptions opt = options(30);
    LiftExpansion e = millson_expansion(series_input("J"), -3, 8, opt);
    std::string a = lift_to_json(e, 20, R"({"digits":40})"), b = lift_to_json(e, 20, R"({"digits":40})");
    CHECK(a == b);
    auto j = nlohmann::json::parse(a);
    CHECK(j["kind"] == "millson");
    CHECK(j["delta"] == -3);
    CHECK(j["config"]["digits"] == 40);
    CHECK(j["normalization"]["value"].get<std::string>().rfind("1", 0) == 0);
    CHECK(j["holo"].contains("4"));
    CHECK(j["principal"].contains("-3"));
    std::string csv = lift_to_csv(e, 20);
    CHECK(csv.rfind("family,index,re,im,est_error", 0) == 0);
}

TEST_CASE("central L-value of Δ") {
    PrecisionGuard g(40);
    CHECK(bmp::abs(central_l_value_delta() - Real("0.792122838646030569356")) < pow10(-20));
}

TEST_CASE("non-vanishing probe for a weakly holomorphic input") {
    PrecisionGuard g(40);
    NonvanishingReport r = nonvanishing_probe(series_input("E4^2E6/Delta^2"), 8, options(30));
    CHECK(r.holomorphic);
    CHECK(r.lambda == 0);
    CHECK(r.l_value > Real("0.79"));
    CHECK(r.consistent);
    CHECK_THROWS_AS(nonvanishing_probe(series_input("J"), 8, options(30)), std::invalid_argument);
}

}  // TEST_SUITE

TEST_SUITE("lifts_poincare") {

TEST_CASE("Millson lift of the Poincaré input") {
    auto p = tlift::test::poincare_k5();
    PrecisionGuard g(40);
    LiftOptions opt = options(24);
    HarmonicInput F = HarmonicInput::from_poincare(p);
    LiftExpansion e = millson_expansion(F, 1, 40, opt);
    check_plus_space(e);
    CHECK(transformation_defect(e, Complex(Real("-0.25"), Real("0.25"))) < pow10(-15));
    for (const auto& [d, c] : e.nonholo)
        if (in_plus_space(LiftKind::Millson, 5, d)) CHECK(abs(c) > 0);
}

TEST_CASE("ξ-relation: constant ratio 2^{2k+1} between the two coefficient formulas") {
    auto p = tlift::test::poincare_k5();
    PrecisionGuard g(40);
    HarmonicInput F = HarmonicInput::from_poincare(p);
    XiRelationReport r = xi_relation_check(F, 1, 8, options(24), Real(2048));
    CHECK(bmp::abs(r.observed_ratio - 2048) < pow10(-15) * 2048);
    CHECK(r.ratio_spread < pow10(-15));
    CHECK(r.max_deviation < pow10(-15));
    int nonzero = 0;
    for (const auto& row : r.rows) nonzero += abs(row.rhs) > 0;
    CHECK(nonzero >= 4);
}

TEST_CASE("non-vanishing probe for the Poincaré input") {
    auto p = tlift::test::poincare_k5();
    PrecisionGuard g(40);
    NonvanishingReport r = nonvanishing_probe(HarmonicInput::from_poincare(p), 8, options(24));
    CHECK_FALSE(r.holomorphic);
    CHECK(r.lambda > 0);
    CHECK(r.consistent);
}

}  // TEST_SUITE
