#pragma once

#include "tlift/maass.hpp"
#include "tlift/modforms.hpp"
#include "tlift/qforms.hpp"

#include <vector>

namespace tlift {

// The level-one form/vector dictionary: a form of discriminant D plays the role of a vector with
// 4|m|N = D. Returns (-2√(|m|N) i)^{kp} · i = (-√D i)^{kp} · i.
Complex cycle_prefactor(std::int64_t D, int kp);
// (4|m|N)^e = D^e
Real dictionary_power(std::int64_t D, int e);

struct CycleOptions {
    Real rel_tol = Real("1e-30");
    int max_nodes = 1 << 14;
    EvalPolicy policy{40, true};  // used where this module evaluates q-series itself
};

struct CycleIntegralResult {
    Complex value;
    Real error;     // estimate for |value - exact|
    long nodes = 0;
    Real l1_mass;   // ∫ |integrand| over the same range, including the prefactor modulus
    QuadForm representative;
    GeodesicFrame frame;
};

// 𝒞(G, Q) = (-√D i)^{k'} i ∫_1^{ε²} G(g iy) j(g, iy)^{-w} y^{k'} dy with w = 2k'+2 = weight of G.
CycleIntegralResult cycle_integral_closed(const ModularFunction& G, const QuadForm& Q, const CycleOptions& opt = {});
// Same with an explicitly supplied frame (any g with Q∘g = [0, -√D, 0]).
CycleIntegralResult cycle_integral_closed(const ModularFunction& G, const GeodesicFrame& frame,
                                          const CycleOptions& opt = {});

// Square D: ∫ over the whole geodesic of a cusp form, split at y = split as
// ∫_split^∞ G_g(iy) y^k dy + (-1)^{k+1} ∫_{1/split}^∞ G_{gS}(iy) y^k dy.
CycleIntegralResult cycle_integral_infinite(const RSeries& G, const QuadForm& Q, const CycleOptions& opt = {},
                                            const Real& split = Real(1));

// Regularized cycle integral of R^{2j+1}F along the infinite geodesic of Q (D a square), built from F⁻.
// With boundary_from_plus the boundary values of F⁻ are replaced by minus those of F⁺.
struct RegularizedParts {
    Complex value;
    Complex boundary;   // prefactor · (Σ C_{ℓ,j} R^{2ℓ}F⁻_g(i) + (-1)^{k+1} Σ C_{ℓ,j} R^{2ℓ}F⁻_{gS}(i))
    Complex integrals;  // prefactor · (∫ + (-1)^{k+1} ∫)
    Real error;
};
RegularizedParts regularized_cycle_integral(const HarmonicInput& F, int j, const QuadForm& Q,
                                            const CycleOptions& opt = {}, bool boundary_from_plus = false);

// C_{ℓ,j} = 2(-1)^{ℓ+j} Π_{t=ℓ+1}^{j} (2t)(2k-2t+1)
BigInt regularization_constant(int l, int j, int k);

// k = j = 0 comparison with the analytically continued regularization.
struct BfkComparison {
    Complex reg;        // regularized integral from F⁻
    Complex bfk;        // continuation value from the Fourier coefficients
    Complex predicted;  // -2i a_g(0) + 2i a_{gS}(0)
};
BfkComparison bfk_comparison(const HarmonicInput& F, const QuadForm& Q, const CycleOptions& opt = {});

// j!(k-j)!(2k)! / (k!(2k-2j)!) · D^{-(k-j)}
Real cycle_identity_constant(int k, int j, std::int64_t D);

struct CycleIdentityRow {
    int j = 0;
    Complex lhs;         // 𝒞(R^{2j+1}F, Q)
    Complex rhs;         // constant · conj(𝒞(ξF, Q))
    Real constant;
    Real abs_dev;
    Real rel_dev;
    Real lhs_l1_mass;
};
struct CycleIdentityReport {
    QuadForm form;
    Complex xi_integral;  // 𝒞(ξF, Q)
    std::vector<CycleIdentityRow> rows;
};
// Closed geodesics (non-square D) only.
CycleIdentityReport cycle_identity_check(const HarmonicInput& F, const QuadForm& Q, const std::vector<int>& j_list,
                                         const EvalPolicy& policy, const CycleOptions& opt = {});

}  // namespace tlift
