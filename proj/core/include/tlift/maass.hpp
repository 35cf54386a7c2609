#pragma once

#include "tlift/modforms.hpp"
#include "tlift/numeric.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlift {

// S(a,b;c) = Σ_{d mod c, (d,c)=1} e((a d + b d̄)/c).
Real kloosterman(std::int64_t a, std::int64_t b, std::int64_t c);

struct PoincareOptions {
    int k = 5;   // input weight -2k
    int m = 1;   // principal part q^{-m}
    int terms = 40;       // holomorphic a⁺(0..terms-1) and ξ-coefficients 1..terms
    int c_max = 5000;
    int c_min = 50;
    int digits = 40;      // working digits of the build
    int tolerance_digits = 0;  // stabilization target 10^-t; 0 means digits - 16
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate) {}
    double estimate() const { return estimate_; }

private:
    double estimate_;
};

// Maass–Poincaré series F = q^{-m} + Σ_{n>=0} a⁺(n) q^n + Σ_{n>0} a⁻(-n) Γ(2k+1, 4πny) q^{-n}
// of weight -2k, with ξ_{-2k}F = Σ_{n>0} c_ξ(n) q^n.
struct PoincareForm {
    int k = 0;
    int m = 1;
    int digits = 0;
    int c_max = 0;
    int c_used = 0;
    double error_estimate = 0;
    std::vector<Real> hol;  // a⁺(n), n = 0 .. terms-1
    std::vector<Real> xi;   // c_ξ(n), n = 1 .. terms (index n-1)

    int weight() const { return -2 * k; }
    int terms() const { return static_cast<int>(hol.size()); }
    // a⁺(n) for any n (principal part included); n beyond the stored range throws.
    Real hol_coeff(int n) const;
    // a⁻(-n), n > 0: -c_ξ(n) / (4πn)^{2k+1}
    Real nonhol_coeff(int n) const;
    // ξF as a real q-series of weight 2k+2.
    RSeries xi_series() const;
    // ξF = λ Δ when 2k+2 = 12.
    std::optional<Real> lambda() const;
};

PoincareForm build_poincare(const PoincareOptions& opt);

std::string poincare_to_json(const PoincareForm& f);
PoincareForm poincare_from_json(const std::string& text);

// Uses <cache_dir>/poincare_k{k}_m{m}_d{digits}_c{c_max}_n{terms}.json when present, else builds and stores it.
// An empty cache_dir disables caching.
PoincareForm load_or_build_poincare(const PoincareOptions& opt, const std::string& cache_dir);

// One Fourier term coeff · y^p · e^{-2πμy} · [Γ(s, 4π|ν|y)] · e^{2πiνx}.
struct HarmonicTerm {
    int nu = 0;
    int mu = 0;
    int p = 0;
    int two_s = 0;  // 0: no incomplete-gamma factor
    bool minus = false;  // descends from the non-holomorphic part F⁻
    Real coeff;
};

// Finite sum of HarmonicTerm; closed under the raising operator.
struct HarmonicTermSeries {
    int weight = 0;
    int raised = 0;  // number of raisings applied to the base form
    int pole_order = 1;  // largest m with a q^{-m} term in the base form
    int known_order = 0;  // holomorphic coefficients are known for exponents < known_order
    std::vector<HarmonicTerm> terms;

    HarmonicTermSeries part(bool minus) const;
};

// Expansion of a Poincaré form (or a plain q-series) in the term algebra.
HarmonicTermSeries harmonic_terms(const PoincareForm& f);
HarmonicTermSeries harmonic_terms(const QSeries& f);

// n-fold raising R^n, term by term.
HarmonicTermSeries raise_harmonic(const HarmonicTermSeries& f, int n);

// Direct evaluation of the stored terms (no reduction, no truncation checks).
Complex evaluate_terms(const HarmonicTermSeries& f, const Complex& z);

// Smallest Im z at which the truncated series meets 10^-target (for reduced points this must be <= √3/2).
Real convergence_height(const HarmonicTermSeries& f, int target_digits);

// Evaluation with fundamental-domain reduction; only valid for modular term series (both parts together).
Complex evaluate_harmonic(const HarmonicTermSeries& f, const Complex& z, const EvalPolicy& policy);
Complex evaluate_harmonic(const PoincareForm& f, const Complex& z, const EvalPolicy& policy);

ModularFunction as_function(const HarmonicTermSeries& f, const EvalPolicy& policy, std::string description = {});

// Input space of the lifts: weakly holomorphic q-series or a Maass–Poincaré series.
struct HarmonicInput {
    enum class Kind { Series, Poincare };
    Kind kind = Kind::Series;
    int k = 0;  // weight -2k
    QSeries series;
    std::shared_ptr<const PoincareForm> poincare;
    Real scale = Real(1);  // overall factor applied to a Poincaré input
    std::string description;

    static HarmonicInput from_series(const QSeries& f, std::string description = {});
    static HarmonicInput from_poincare(std::shared_ptr<const PoincareForm> f, const Real& scale = Real(1),
                                       std::string description = {});

    int weight() const { return -2 * k; }
    bool has_nonholomorphic() const;
    // a⁺(n); exact for series inputs.
    Real plus_coeff(int n) const;
    // Largest m with a⁺(-m) != 0.
    int pole_order() const;
    HarmonicTermSeries terms() const;
    // ξ_{-2k}F as a weight 2k+2 real q-series (empty coefficients for weakly holomorphic inputs).
    RSeries xi_image() const;
};

}  // namespace tlift
