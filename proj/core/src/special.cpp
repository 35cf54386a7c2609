#include "tlift/special.hpp"

#include "tlift/quadrature.hpp"

#include <boost/math/constants/constants.hpp>

#include <mutex>
#include <stdexcept>
#include <vector>

namespace tlift {

namespace bmp = boost::multiprecision;

namespace {

unsigned working_digits() { return Real::default_precision(); }

Real eps() { return bmp::pow(Real(10), -Real(working_digits())); }

}  // namespace

BigInt factorial(int n) {
    if (n < 0) throw std::domain_error("factorial of negative integer");
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

Real gamma_half(int two_s) {
    if (two_s <= 0 && two_s % 2 == 0) throw std::domain_error("gamma pole at non-positive integer");
    if (two_s % 2 == 0) return to_real(factorial(two_s / 2 - 1));
    // Γ(1/2) = √π, recurrence both ways
    Real g = bmp::sqrt(pi());
    int s2 = 1;
    while (s2 < two_s) {
        g *= Real(s2) / 2;
        s2 += 2;
    }
    while (s2 > two_s) {
        s2 -= 2;
        g /= Real(s2) / 2;
    }
    return g;
}

Real erfc(const Real& x) {
    if (x < 0) return 2 - erfc(-x);
    if (x == 0) return Real(1);
    if (x <= 4) {
        // erf(x) = 2/√π e^{-x²} Σ 2^n x^{2n+1} / (2n+1)!!, all terms positive;
        // the 1 - erf cancellation costs about x²/ln 10 digits, so raise precision first.
        const unsigned base = working_digits();
        unsigned extra = static_cast<unsigned>((x * x / bmp::log(Real(10))).convert_to<double>()) + 10;
        Real out;
        {
            PrecisionGuard guard(static_cast<int>(base + extra));
            Real xw = with_digits(x, base + extra);
            Real x2 = xw * xw;
            Real term = xw;
            Real sum = term;
            Real tol = eps();
            for (int n = 1; n < 100000; ++n) {
                term *= 2 * x2 / (2 * n + 1);
                sum += term;
                if (term < tol * sum) break;
            }
            Real erf = 2 / bmp::sqrt(pi()) * bmp::exp(-x2) * sum;
            out = 1 - erf;
        }
        return with_digits(out, base);
    }
    // continued fraction erfc(x) = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), modified Lentz
    const Real tiny = bmp::pow(Real(10), -Real(working_digits()) * 3);
    Real f = x;
    Real C = x;
    Real D = 0;
    Real tol = eps();
    for (int n = 1; n < 200000; ++n) {
        Real an = Real(n) / 2;
        D = x + an * D;
        if (D == 0) D = tiny;
        C = x + an / C;
        if (C == 0) C = tiny;
        D = 1 / D;
        Real delta = C * D;
        f *= delta;
        if (bmp::abs(delta - 1) < tol) break;
    }
    return bmp::exp(-x * x) / (bmp::sqrt(pi()) * f);
}

Real expint_e1(const Real& x) {
    if (x <= 0) throw std::domain_error("E1 requires x > 0");
    if (x <= 2) {
        // -γ - ln x - Σ (-x)^n / (n n!)
        Real sum(0);
        Real term(1);
        for (int n = 1; n < 100000; ++n) {
            term *= -x / n;
            Real t = term / n;
            sum += t;
            if (bmp::abs(t) < eps() * bmp::abs(sum) && n > 2) break;
        }
        return -boost::math::constants::euler<Real>() - bmp::log(x) - sum;
    }
    const Real tiny = bmp::pow(Real(10), -Real(working_digits()) * 3);
    Real b = x + 1;
    Real c = 1 / tiny;
    Real d = 1 / b;
    Real h = d;
    for (int i = 1; i < 200000; ++i) {
        Real an = -Real(i) * Real(i);
        b += 2;
        d = 1 / (an * d + b);
        c = b + an / c;
        Real del = c * d;
        h *= del;
        if (bmp::abs(del - 1) < eps()) break;
    }
    return h * bmp::exp(-x);
}

Real inc_gamma_upper(int two_s, const Real& x) {
    if (x < 0) throw std::domain_error("inc_gamma_upper: x must be non-negative");
    if (two_s <= 0 && x == 0) throw std::domain_error("inc_gamma_upper: divergent for s <= 0 at x = 0");
    if (x == 0) return gamma_half(two_s);
    Real ex = bmp::exp(-x);
    if (two_s % 2 == 0) {
        int s = two_s / 2;
        if (s >= 1) {
            // (s-1)! e^{-x} Σ_{j<s} x^j/j!
            Real term(1), sum(1);
            for (int j = 1; j < s; ++j) {
                term *= x / j;
                sum += term;
            }
            return to_real(factorial(s - 1)) * ex * sum;
        }
        Real g = expint_e1(x);
        // Γ(s,x) = (Γ(s+1,x) - x^s e^{-x}) / s, stepping down from s = 0
        for (int t = 0; t > s; --t) g = (g - bmp::pow(x, t - 1) * ex) / Real(t - 1);
        return g;
    }
    Real g = bmp::sqrt(pi()) * erfc(bmp::sqrt(x));
    int s2 = 1;
    while (s2 < two_s) {
        Real s = Real(s2) / 2;
        g = s * g + bmp::pow(x, s) * ex;
        s2 += 2;
    }
    while (s2 > two_s) {
        Real s = Real(s2 - 2) / 2;  // Γ(s,x) = (Γ(s+1,x) - x^s e^{-x}) / s
        g = (g - bmp::pow(x, s) * ex) / s;
        s2 -= 2;
    }
    return g;
}

Rational bernoulli(int n) {
    static std::mutex mu;
    static std::vector<Rational> cache{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= n) {
        int m = static_cast<int>(cache.size());
        // Σ_{k=0}^{m} C(m+1,k) B_k = 0
        Rational s = 0;
        BigInt binom = 1;
        for (int k = 0; k < m; ++k) {
            s += Rational(binom) * cache[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        cache.push_back(-s / Rational(m + 1));
    }
    return cache[n];
}

Real hurwitz_zeta(int s, const Real& rho) {
    if (s < 2) throw std::domain_error("hurwitz_zeta: s must be an integer >= 2");
    if (rho <= 0) throw std::domain_error("hurwitz_zeta: rho must be positive");
    const int digits = static_cast<int>(working_digits());
    const int N = digits + 10;
    const int M = digits;
    Real sum(0);
    for (int n = 0; n < N; ++n) sum += bmp::pow(rho + n, -s);
    Real a = rho + N;
    sum += bmp::pow(a, 1 - s) / (s - 1) + bmp::pow(a, -s) / 2;
    // Σ B_{2j}/(2j)! s(s+1)...(s+2j-2) a^{-s-2j+1}
    Real rising(s);  // s (s+1) ... (s+2j-2)
    Real fact(2);    // (2j)!
    Real apow = bmp::pow(a, -s - 1);
    Real a2 = a * a;
    for (int j = 1; j <= M; ++j) {
        Real t = to_real(bernoulli(2 * j)) / fact * rising * apow;
        sum += t;
        if (bmp::abs(t) < eps() * bmp::abs(sum)) break;
        rising *= Real(s + 2 * j - 1) * Real(s + 2 * j);
        fact *= Real(2 * j + 1) * Real(2 * j + 2);
        apow /= a2;
    }
    return sum;
}

Real zeta(int s) { return hurwitz_zeta(s, Real(1)); }

Real digamma_cot_term(const Rational& r) {
    if (r <= 0 || r >= 1) throw std::domain_error("digamma_cot_term: argument must lie in (0,1)");
    if (r == Rational(1, 2)) return Real(0);
    Real x = pi() * to_real(r);
    return pi() * bmp::cos(x) / bmp::sin(x);
}

Complex hermite(int n, const Complex& x) {
    if (n < 0) throw std::domain_error("hermite: n must be non-negative");
    Complex h0(1);
    if (n == 0) return h0;
    Complex h1 = Real(2) * x;
    for (int k = 1; k < n; ++k) {
        Complex h2 = Real(2) * x * h1 - Real(2 * k) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

namespace {

Real bessel_series(int two_nu, const Real& x, bool alternating) {
    if (two_nu < 0) throw std::domain_error("bessel: order must be non-negative");
    if (x <= 0) throw std::domain_error("bessel: x must be positive");
    Real nu = Real(two_nu) / 2;
    Real h = x / 2;
    Real h2 = h * h;
    Real term = bmp::pow(h, nu) / gamma_half(two_nu + 2);
    Real sum = term;
    Real tol = eps();
    for (int j = 1; j < 1000000; ++j) {
        term *= h2 / (Real(j) * (Real(j) + nu));
        if (alternating) term = -term;
        sum += term;
        if (Real(j) > h && bmp::abs(term) < tol * bmp::abs(sum)) break;
    }
    return sum;
}

}  // namespace

Real bessel_i(int two_nu, const Real& x) { return bessel_series(two_nu, x, false); }

Real bessel_j(int two_nu, const Real& x) {
    // terms peak near e^x / √x while J is O(1/√x): carry x/ln10 extra digits
    const unsigned base = working_digits();
    unsigned extra = static_cast<unsigned>((x / bmp::log(Real(10))).convert_to<double>()) + 10;
    Real out;
    {
        PrecisionGuard guard(static_cast<int>(base + extra));
        out = bessel_series(two_nu, with_digits(x, base + extra), true);
    }
    return with_digits(out, base);
}

Real kummer_u(int two_a, int two_b, const Real& v) {
    if (v <= 0) throw std::domain_error("kummer_u: v must be positive");
    if (two_a <= 0) {
        // U(a,b,v) = v^{1-b} U(a-b+1, 2-b, v)
        int ta = two_a - two_b + 2;
        int tb = 4 - two_b;
        if (ta <= 0) throw std::domain_error("kummer_u: unsupported parameters");
        return bmp::pow(v, 1 - Real(two_b) / 2) * kummer_u(ta, tb, v);
    }
    // u = s²: U = 2/Γ(a) ∫_0^∞ s^{2a-1} (1+s²)^{b-a-1} e^{-v s²} ds
    Real a = Real(two_a) / 2, b = Real(two_b) / 2;
    ComplexFn f = [&](const Real& s) -> Complex {
        Real s2 = s * s;
        Real val = 2 * bmp::pow(1 + s2, b - a - 1) * bmp::exp(-v * s2);
        if (two_a != 1) val *= bmp::pow(s, 2 * a - 1);
        return Complex(val);
    };
    Real width = 1 / bmp::sqrt(v);
    Real tol = eps() * Real(1e-5);
    auto res = integrate_to_infinity(f, Real(0), width / 2, tol, 40);
    return res.value.re / gamma_half(two_a);
}

}  // namespace tlift
