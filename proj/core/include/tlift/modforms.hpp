#pragma once

#include "tlift/numeric.hpp"
#include "tlift/qforms.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace tlift {

// Truncated Laurent series Σ_{n0 <= n < n0 + coeffs.size()} c(n) q^n + O(q^order()).
template <class C>
struct LaurentSeries {
    int weight = 0;
    int n0 = 0;
    std::vector<C> coeffs;
    // true when the series is the q-expansion of a (weakly holomorphic) modular form of `weight`
    bool modular = true;

    int order() const { return n0 + static_cast<int>(coeffs.size()); }
    C coeff(int n) const {
        if (n < n0 || n >= order()) return C(0);
        return coeffs[static_cast<std::size_t>(n - n0)];
    }
    bool known(int n) const { return n < order(); }
};

using QSeries = LaurentSeries<Rational>;
using RSeries = LaurentSeries<Real>;

QSeries strip_leading_zeros(QSeries s);
QSeries truncate(const QSeries& s, int order);
QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries scale(const QSeries& a, const Rational& c);
QSeries mul(const QSeries& a, const QSeries& b);
QSeries inverse(const QSeries& a);
QSeries div(const QSeries& a, const QSeries& b);
QSeries pow(const QSeries& a, int e);
// θ = q d/dq; the result is not modular in general.
QSeries theta(const QSeries& a, int times = 1);
// θ^{2k+1} F for F of weight -2k, modular of weight 2k+2 by Bol's identity.
QSeries bol_derivative(const QSeries& f);

RSeries to_real(const QSeries& s);

enum class StandardForm { E4, E6, Delta, j, J };
StandardForm parse_standard_form(const std::string& name);
// At least `terms` coefficients starting at the leading exponent.
QSeries standard_series(StandardForm which, int terms);

struct FundamentalReduction {
    Complex z;
    Mat2i gamma;  // gamma·z = z_red
    Complex z_red;
};
FundamentalReduction reduce_to_fundamental(const Complex& z);

// Number of terms needed for absolute error 10^-target at Im z >= y0 for a series with
// leading exponent -m0 (m0 >= 1) and polynomial coefficient growth of degree `poly`.
int terms_needed(int m0, const Real& y0, int target_digits, int poly = 12);

// Σ c(n) e^{2πinz} using the stored coefficients only.
Complex evaluate_raw(const RSeries& s, const Complex& z);

struct EvalPolicy {
    int target_digits = 50;
    bool strict_truncation = true;  // throw when the series is too short for the target
};

Complex evaluate(const RSeries& s, const Complex& z, const EvalPolicy& policy);
Complex evaluate(const QSeries& s, const Complex& z, const EvalPolicy& policy);

// R^n F = (-4π)^n Σ_r (4πy)^{-r} h_r(z), with exact h_r; component g_r = (-4π)^n h_r.
struct RaisedForm {
    int base_weight = 0;
    int n = 0;
    std::vector<QSeries> h;

    int weight() const { return base_weight + 2 * n; }
    RSeries component(int r) const;
};

RaisedForm raised_identity(const QSeries& f);
RaisedForm raise(const QSeries& f, int n);

// Σ_r (4π Im z)^{-r} g_r(z) with fundamental-domain reduction of weight w + 2n.
Complex evaluate_raised(const RaisedForm& r, const Complex& z, const EvalPolicy& policy);

// A function on ℍ that transforms like a modular form of weight `weight` for SL2(Z).
struct ModularFunction {
    int weight = 0;
    std::function<Complex(const Complex&)> at;
    std::string description;
};

ModularFunction as_function(const QSeries& s, const EvalPolicy& policy, std::string description = {});
ModularFunction as_function(const RaisedForm& r, const EvalPolicy& policy, std::string description = {});

// Plain-data export for the CLI: {weight, n0, coeffs[]} with rationals rendered exactly.
std::string to_json(const QSeries& s);

}  // namespace tlift
