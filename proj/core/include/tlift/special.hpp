#pragma once

#include "tlift/numeric.hpp"

namespace tlift {

// All functions evaluate at the ambient working precision (see PrecisionGuard).

BigInt factorial(int n);
// Γ(s) for s = two_s/2, s not a non-positive integer.
Real gamma_half(int two_s);

// Γ(s, x) for s = two_s/2. x > 0 is required when s <= 0.
Real inc_gamma_upper(int two_s, const Real& x);

Real erfc(const Real& x);

// E_1(x) = Γ(0, x), x > 0.
Real expint_e1(const Real& x);

// ζ(s, ρ) for integer s >= 2, ρ > 0 (Euler–Maclaurin).
Real hurwitz_zeta(int s, const Real& rho);
Real zeta(int s);

// ψ(1-r) - ψ(r) = π cot(π r), 0 < r < 1.
Real digamma_cot_term(const Rational& r);

// Physicists' Hermite polynomial via H_{n+1} = 2x H_n - 2n H_{n-1}.
Complex hermite(int n, const Complex& x);

// Bessel functions of order nu = two_nu/2 >= 0 by ascending series.
Real bessel_i(int two_nu, const Real& x);
Real bessel_j(int two_nu, const Real& x);

// Exact Bernoulli number B_n.
Rational bernoulli(int n);

// Kummer's confluent hypergeometric U(a, b, v), a = two_a/2, b = two_b/2, evaluated from its
// Laplace-integral representation by quadrature. Verification use only.
Real kummer_u(int two_a, int two_b, const Real& v);

}  // namespace tlift
