#pragma once

#include "tlift/cycles.hpp"
#include "tlift/maass.hpp"
#include "tlift/modforms.hpp"
#include "tlift/qforms.hpp"

#include <cstdint>

namespace tlift {

struct TraceValue {
    std::int64_t d = 0;
    std::int64_t delta = 1;
    Complex plus;      // positive definite classes of discriminant -d|Δ|
    Complex minus;     // negative definite classes, via [a,b,c] -> [-a,b,-c]
    Complex combined;  // the value entering the lift: t⁺
    int class_count = 0;
};

// Σ_{Q ∈ 𝒬_{-d|Δ|}/Γ} χ_Δ(Q) f(α_Q) / |Γ̄_Q| for a Γ-invariant f (weight 0).
// An empty class set (−d|Δ| ≢ 0,1 mod 4) gives exact zeros without evaluating f.
TraceValue trace_cm(const ModularFunction& f, std::int64_t delta, std::int64_t d);

struct CycleTrace {
    Complex value;
    Real error;
    int class_count = 0;
};

// Σ_{Q ∈ 𝒬_{d|Δ|}/Γ} χ_Δ(Q) 𝒞(G, Q) for a cusp form G of weight 2k+2.
CycleTrace trace_cycle(const RSeries& G, std::int64_t delta, std::int64_t d, const CycleOptions& opt = {});

// -2iε (1/(2πi|Δ|))^k Σ_{n<0} (Δ/|n|) a⁺(nb) (4πn)^k with ε = 1 (Δ > 0) or i (Δ < 0).
// (Δ/|n|) rather than (Δ/n): the two differ by sgn Δ, and only (Δ/|n|) gives a modular expansion for Δ < 0.
Complex principal_part_term(const HarmonicInput& F, std::int64_t delta, int k, std::int64_t b);

// 0 for even k; ((-1)^k k! / (2π^{k+1})) a⁺(0) 2ζ(k+1) for odd k. The twisted case (Δ ≠ 1) with
// a⁺(0) ≠ 0 is not supported and throws std::domain_error, for every k.
Complex constant_term(const HarmonicInput& F, int k, std::int64_t delta = 1);

}  // namespace tlift
