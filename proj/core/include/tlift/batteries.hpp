#pragma once

#include "tlift/numeric.hpp"

#include <string>
#include <vector>

namespace tlift {

struct BatteryRow {
    std::string label;
    Complex value;      // independent evaluation (quadrature / numerical differentiation)
    Complex reference;  // closed form
    Real rel_error;
    bool pass = false;
};

struct BatteryReport {
    std::string name;
    Real tolerance;
    std::vector<BatteryRow> rows;

    bool passed() const;
    Real max_error() const;
};

// ∫_R (t+ib)^{-1} e^{-a²t²} e^{2πitw} dt = -iπ e^{a²b²} e^{2πbw} erfc(ab + πw/a), b > 0,
// over a, b ∈ {1/2, 1, 2} and w ∈ {-1, -0.3, 0.3, 1}.
BatteryReport fourier_lemma_battery(const Real& tolerance = Real("1e-20"));

// d/dv [v^{-1} e^{-v} U(1/2, -1/2, v)] = -v^{-2} e^{-v} U(-1/2, -1/2, v), U by quadrature,
// derivative by a 5-point stencil.
BatteryReport kummer_lemma_battery(const Real& tolerance = Real("1e-10"));

// e^{-v} U(1/2-k, 1/2-k, v) = Γ(1/2+k, v) for k ∈ {0,1,2}, v ∈ {0.5, 1, 4}.
BatteryReport u_relation_battery(const Real& tolerance = Real("1e-15"));

// Γ(s+1,x) - sΓ(s,x) - x^s e^{-x} = 0 over s ∈ {1/2, 1, ..., 11/2}, x ∈ {0.1, 0.5, 1, 2, 5, 10}.
BatteryReport incomplete_gamma_battery(const Real& tolerance);

}  // namespace tlift
