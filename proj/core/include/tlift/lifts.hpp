#pragma once

#include "tlift/cycles.hpp"
#include "tlift/maass.hpp"
#include "tlift/traces.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tlift {

enum class LiftKind { Millson, Shintani };

struct Normalization {
    std::string description;
    Real value = Real(1);
};

struct LiftExpansion {
    LiftKind kind = LiftKind::Millson;
    int k = 0;
    std::int64_t delta = 1;
    std::map<std::int64_t, Complex> holo;       // d > 0
    std::map<std::int64_t, Complex> principal;  // index -|Δ|b²
    Complex constant;
    std::map<std::int64_t, Complex> nonholo;    // d < 0, coefficient of Γ(1/2+k, 4π|d|v) q^d
    Normalization normalization;
    std::vector<std::string> warnings;
    std::map<std::int64_t, Real> quadrature_errors;  // by |d|
    std::map<std::int64_t, int> class_counts;        // by discriminant
};

struct LiftOptions {
    EvalPolicy policy{40, true};
    CycleOptions cycles;
};

// Kohnen plus-space support: Millson (-1)^k n ≡ 0,1 mod 4 on the signed index n, Shintani (-1)^{k+1} d ≡ 0,1 mod 4.
bool in_plus_space(LiftKind kind, int k, std::int64_t n);
// (-1)^k Δ > 0: the lift vanishes identically.
bool parity_vanishes(int k, std::int64_t delta);

LiftExpansion millson_expansion(const HarmonicInput& F, std::int64_t delta, std::int64_t d_max,
                                const LiftOptions& opt = {});
LiftExpansion shintani_expansion(const RSeries& G, std::int64_t delta, std::int64_t d_max,
                                 const LiftOptions& opt = {});

struct XiRelationRow {
    std::int64_t n = 0;
    Complex lhs;  // -conj(nonholo(-n)) (4πn)^{k+1/2}
    Complex rhs;  // -(√|Δ|/2) · Shintani holo(n) of ξF
    Complex ratio;   // lhs / rhs, 0 when rhs vanishes
    Real deviation;  // |lhs - expected_ratio · rhs| / max(|lhs|, tiny)
};
struct XiRelationReport {
    int k = 0;
    std::int64_t delta = 1;
    Real expected_ratio;  // 1 for the relation ξI^M = -(√|Δ|/2) I^Sh(ξF) as stated
    Real max_deviation;
    Real observed_ratio;  // lhs/rhs at the first row with rhs != 0
    Real ratio_spread;    // max relative distance of the other ratios from observed_ratio
    std::vector<XiRelationRow> rows;
};
// With the coefficient formulas of both lifts the observed ratio is 2^{2k+1}, independent of n.
XiRelationReport xi_relation_check(const HarmonicInput& F, std::int64_t delta, std::int64_t n_max,
                                   const LiftOptions& opt = {}, const Real& expected_ratio = Real(1));

// Value of the expansion at τ; nonholo terms carry Γ(1/2+k, 4π|d|v).
Complex evaluate_expansion(const LiftExpansion& e, const Complex& tau);
// |f(γτ) - j(γ,τ)^{2κ} f(τ)| / |f(γτ)| for γ = [[1,0],[4,1]] ∈ Γ0(4), j(γ,τ) = θ(γτ)/θ(τ), κ the weight
// (1/2-k for Millson, 3/2+k for Shintani). Only meaningful when the expansion is long enough for Im τ.
Real transformation_defect(const LiftExpansion& e, const Complex& tau);

// L(Δ, 6) from Λ(6) = 2 Σ τ(n) (2πn)^{-6} Γ(6, 2πn).
Real central_l_value_delta(int terms = 0);

struct NonvanishingReport {
    bool holomorphic = false;  // every computed nonholo coefficient vanishes below tolerance
    Real l_value;              // L(Δ, 6)
    Real lambda;               // ξF = λΔ
    Real max_nonholo;
    bool consistent = false;   // holomorphic ⟺ λ L(Δ,6) = 0
};
NonvanishingReport nonvanishing_probe(const HarmonicInput& F, std::int64_t d_max, const LiftOptions& opt = {});

std::string lift_to_json(const LiftExpansion& e, int digits, const std::string& config_json = "{}");
std::string lift_to_csv(const LiftExpansion& e, int digits);

}  // namespace tlift
