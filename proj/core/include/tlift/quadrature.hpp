#pragma once

#include "tlift/numeric.hpp"

#include <functional>
#include <vector>

namespace tlift {

using RealFn = std::function<Real(const Real&)>;
using ComplexFn = std::function<Complex(const Real&)>;

struct GLRule {
    std::vector<Real> nodes;    // on [-1, 1]
    std::vector<Real> weights;
};

// Gauss–Legendre rule of order n at the current working precision (cached).
const GLRule& gauss_legendre(int n);

struct QuadResult {
    Complex value;
    Real error;  // |difference between the last two refinements|
    long evaluations = 0;
};

// Composite Gauss–Legendre with equal panels.
Complex integrate_panels(const ComplexFn& f, const Real& a, const Real& b, int panels, int order = 20);
Real integrate_panels(const RealFn& f, const Real& a, const Real& b, int panels, int order = 20);

// Panel doubling until two successive values agree to tol (absolute).
QuadResult integrate_adaptive(const ComplexFn& f, const Real& a, const Real& b, const Real& tol,
                              int start_panels = 4, int max_panels = 4096, int order = 20);

// Integral over [a, ∞): panels of width `width` until a panel contributes less than tol.
QuadResult integrate_to_infinity(const ComplexFn& f, const Real& a, const Real& width, const Real& tol,
                                 int order = 20, int max_panels = 100000);

// Trapezoid rule for a smooth periodic integrand on one period [a, b]; doubles n until
// successive values agree to tol. Converges geometrically for analytic periodic integrands.
QuadResult integrate_periodic(const ComplexFn& f, const Real& a, const Real& b, const Real& tol,
                              int start_nodes = 16, int max_nodes = 1 << 16);

}  // namespace tlift
