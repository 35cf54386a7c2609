#include "tlift/maass.hpp"

#include "tlift/special.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace tlift {

namespace bmp = boost::multiprecision;

namespace {

std::int64_t mod_pos(std::int64_t a, std::int64_t c) {
    std::int64_t r = a % c;
    return r < 0 ? r + c : r;
}

// Inverse of d modulo c for gcd(d, c) = 1.
std::int64_t inverse_mod(std::int64_t d, std::int64_t c) {
    std::int64_t r0 = c, r1 = mod_pos(d, c), s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    }
    return mod_pos(s0, c);
}

int tolerance_digits(const PoincareOptions& opt) {
    return opt.tolerance_digits > 0 ? opt.tolerance_digits : opt.digits - 16;
}

Real sigma_neg(int m, int e) {
    // Σ_{d|m} d^{-e}
    Real s = 0;
    for (int d = 1; d <= m; ++d)
        if (m % d == 0) s += 1 / bmp::pow(Real(d), e);
    return s;
}

}  // namespace

Real kloosterman(std::int64_t a, std::int64_t b, std::int64_t c) {
    if (c < 1) throw std::invalid_argument("kloosterman: c must be positive");
    Real s = 0;
    Real tau = 2 * pi() / Real(c);
    for (std::int64_t d = 0; d < c; ++d) {
        if (std::gcd(d, c) != 1) continue;
        std::int64_t dbar = inverse_mod(d, c);
        std::int64_t r = mod_pos(mod_pos(a, c) * d % c + mod_pos(b, c) * dbar % c, c);
        s += bmp::cos(tau * Real(r));
    }
    return s;
}

Real PoincareForm::hol_coeff(int n) const {
    if (n < 0) return n == -m ? Real(1) : Real(0);
    if (n >= terms()) throw std::out_of_range("Poincare coefficient a+(" + std::to_string(n) + ") not computed");
    return hol[static_cast<std::size_t>(n)];
}

Real PoincareForm::nonhol_coeff(int n) const {
    if (n <= 0 || n > static_cast<int>(xi.size()))
        throw std::out_of_range("Poincare coefficient a-(" + std::to_string(-n) + ") not computed");
    return -xi[static_cast<std::size_t>(n - 1)] / bmp::pow(4 * pi() * n, 2 * k + 1);
}

RSeries PoincareForm::xi_series() const {
    RSeries s;
    s.weight = 2 * k + 2;
    s.n0 = 1;
    s.coeffs = xi;
    return s;
}

std::optional<Real> PoincareForm::lambda() const {
    if (2 * k + 2 != 12 || xi.empty()) return std::nullopt;
    return xi[0];
}

PoincareForm build_poincare(const PoincareOptions& opt) {
    if (opt.k < 1) throw std::invalid_argument("build_poincare: k must be at least 1");
    if (opt.m < 1) throw std::invalid_argument("build_poincare: m must be positive");
    if (opt.terms < 1) throw std::invalid_argument("build_poincare: terms must be positive");
    PrecisionGuard guard(Precision(opt.digits));

    const int k = opt.k, m = opt.m, N = opt.terms;
    const int w = 2 * k + 2;
    const int two_nu = 2 * (w - 1);
    const Real sgn = (k + 1) % 2 == 0 ? Real(1) : Real(-1);  // i^w = i^{-w}
    const Real twopi = 2 * pi();
    const Real tol = bmp::pow(Real(10), -tolerance_digits(opt));

    // running c-sums for a⁺(n) (n >= 1) and p(n) (n >= 1)
    std::vector<Real> sum_i(static_cast<std::size_t>(N), Real(0)), sum_j(static_cast<std::size_t>(N), Real(0));
    std::vector<Real> pre_i(static_cast<std::size_t>(N)), pre_j(static_cast<std::size_t>(N));
    std::vector<Real> arg(static_cast<std::size_t>(N));
    for (int n = 1; n < N + 1; ++n) {
        Real ratio = Real(m) / Real(n);
        pre_i[n - 1] = -twopi * sgn * bmp::pow(ratio, Real(w - 1) / 2);
        pre_j[n - 1] = twopi * sgn * bmp::pow(1 / ratio, Real(w - 1) / 2);
        arg[n - 1] = 2 * twopi * bmp::sqrt(Real(m) * n);
    }
    const int window = 10;
    std::vector<std::vector<Real>> hist_i(static_cast<std::size_t>(N)), hist_j(static_cast<std::size_t>(N));

    int c_used = 0;
    double estimate = 0;
    bool converged = false;
    std::vector<Real> cosines;
    std::vector<std::int64_t> units, inverses;
    for (int c = 1; c <= opt.c_max; ++c) {
        cosines.resize(static_cast<std::size_t>(c));
        for (int r = 0; r < c; ++r) cosines[r] = bmp::cos(twopi * r / c);
        units.clear();
        inverses.clear();
        for (std::int64_t d = 0; d < c; ++d)
            if (std::gcd(d, static_cast<std::int64_t>(c)) == 1) {
                units.push_back(d);
                inverses.push_back(inverse_mod(d, c));
            }
        for (int n = 1; n <= N; ++n) {
            Real k1 = 0, k2 = 0;  // S(-m,n;c), S(m,n;c)
            for (std::size_t t = 0; t < units.size(); ++t) {
                std::int64_t dm = mod_pos(static_cast<std::int64_t>(m) * units[t], c);
                std::int64_t nd = mod_pos(static_cast<std::int64_t>(n) * inverses[t], c);
                k1 += cosines[static_cast<std::size_t>(mod_pos(nd - dm, c))];
                k2 += cosines[static_cast<std::size_t>(mod_pos(nd + dm, c))];
            }
            Real x = arg[n - 1] / c;
            if (k1 != 0) sum_i[n - 1] += k1 / c * bessel_i(two_nu, x);
            if (k2 != 0) sum_j[n - 1] += k2 / c * bessel_j(two_nu, x);
        }
        c_used = c;
        // stabilization: spread of the last `window` partial sums, scaled up as a tail proxy
        double worst = 0;
        for (int n = 1; n <= N; ++n) {
            Real vi = pre_i[n - 1] * sum_i[n - 1];
            Real vj = pre_j[n - 1] * sum_j[n - 1] + (n == m ? 1 : 0);
            auto push = [&](std::vector<Real>& h, const Real& v) {
                h.push_back(v);
                if (static_cast<int>(h.size()) > window) h.erase(h.begin());
            };
            push(hist_i[n - 1], vi);
            push(hist_j[n - 1], vj);
            if (c < window) continue;
            auto spread = [&](const std::vector<Real>& h, const Real& v) {
                auto [lo, hi] = std::minmax_element(h.begin(), h.end());
                Real scale = bmp::abs(v) > 1 ? Real(bmp::abs(v)) : Real(1);
                Real s = (*hi - *lo) / scale;
                return s.convert_to<double>();
            };
            worst = std::max({worst, spread(hist_i[n - 1], vi), spread(hist_j[n - 1], vj)});
        }
        estimate = worst * std::max(1.0, c / 10.0);
        if (c >= std::max(opt.c_min, window) && estimate < tol.convert_to<double>()) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream os;
        os << "Poincare c-sum did not stabilize by c = " << opt.c_max << " (estimate " << estimate << ")";
        throw ConvergenceError(os.str(), estimate);
    }

    PoincareForm f;
    f.k = k;
    f.m = m;
    f.digits = opt.digits;
    f.c_max = opt.c_max;
    f.c_used = c_used;
    f.error_estimate = estimate;
    f.hol.resize(static_cast<std::size_t>(N));
    f.hol[0] = -bmp::pow(twopi, w) * sgn * bmp::pow(Real(m), w - 1) * sigma_neg(m, w - 1) /
               (to_real(factorial(w - 1)) * zeta(w));
    for (int n = 1; n < N; ++n) f.hol[n] = pre_i[n - 1] * sum_i[n - 1];
    Real xi_scale = bmp::pow(2 * twopi * m, w - 1) / to_real(factorial(w - 2));
    f.xi.resize(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) f.xi[n - 1] = xi_scale * (pre_j[n - 1] * sum_j[n - 1] + (n == m ? 1 : 0));
    return f;
}

std::string poincare_to_json(const PoincareForm& f) {
    nlohmann::json j;
    j["k"] = f.k;
    j["m"] = f.m;
    j["digits"] = f.digits;
    j["c_max"] = f.c_max;
    j["c_used"] = f.c_used;
    j["error_estimate"] = f.error_estimate;
    nlohmann::json hol = nlohmann::json::object(), xi = nlohmann::json::object();
    for (int n = 0; n < f.terms(); ++n) hol[std::to_string(n)] = f.hol[n].str(0, std::ios_base::scientific);
    for (std::size_t n = 0; n < f.xi.size(); ++n) xi[std::to_string(n + 1)] = f.xi[n].str(0, std::ios_base::scientific);
    j["coeffs"] = hol;
    j["xi"] = xi;
    return j.dump(1);
}

PoincareForm poincare_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    PoincareForm f;
    f.k = j.at("k");
    f.m = j.at("m");
    f.digits = j.at("digits");
    f.c_max = j.at("c_max");
    f.c_used = j.at("c_used");
    f.error_estimate = j.at("error_estimate");
    PrecisionGuard guard(Precision(f.digits));
    const auto& hol = j.at("coeffs");
    f.hol.resize(hol.size());
    for (std::size_t n = 0; n < hol.size(); ++n) f.hol[n] = Real(hol.at(std::to_string(n)).get<std::string>());
    const auto& xi = j.at("xi");
    f.xi.resize(xi.size());
    for (std::size_t n = 0; n < xi.size(); ++n) f.xi[n] = Real(xi.at(std::to_string(n + 1)).get<std::string>());
    return f;
}

PoincareForm load_or_build_poincare(const PoincareOptions& opt, const std::string& cache_dir) {
    if (cache_dir.empty()) return build_poincare(opt);
    namespace fs = std::filesystem;
    std::ostringstream name;
    name << "poincare_k" << opt.k << "_m" << opt.m << "_d" << opt.digits << "_t" << tolerance_digits(opt) << "_c"
         << opt.c_max << "_n" << opt.terms << ".json";
    fs::path path = fs::path(cache_dir) / name.str();
    if (fs::exists(path)) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        return poincare_from_json(ss.str());
    }
    PoincareForm f = build_poincare(opt);
    fs::create_directories(cache_dir);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << poincare_to_json(f);
    }
    fs::rename(tmp, path);
    return f;
}

HarmonicTermSeries HarmonicTermSeries::part(bool want_minus) const {
    HarmonicTermSeries r = *this;
    r.terms.clear();
    for (const auto& t : terms)
        if (t.minus == want_minus) r.terms.push_back(t);
    return r;
}

HarmonicTermSeries harmonic_terms(const PoincareForm& f) {
    HarmonicTermSeries s;
    s.weight = f.weight();
    s.pole_order = f.m;
    s.known_order = f.terms();
    s.terms.push_back({-f.m, -f.m, 0, 0, false, Real(1)});
    for (int n = 0; n < f.terms(); ++n)
        if (f.hol[n] != 0) s.terms.push_back({n, n, 0, 0, false, f.hol[n]});
    for (int n = 1; n <= static_cast<int>(f.xi.size()); ++n) {
        Real a = f.nonhol_coeff(n);
        // Γ(s, 4πny) q^{-n}: ν = -n, μ = -n
        if (a != 0) s.terms.push_back({-n, -n, 0, 2 * (2 * f.k + 1), true, a});
    }
    return s;
}

HarmonicTermSeries harmonic_terms(const QSeries& f) {
    HarmonicTermSeries s;
    s.weight = f.weight;
    s.pole_order = std::max(1, -f.n0);
    s.known_order = f.order();
    for (int n = f.n0; n < f.order(); ++n) {
        Rational c = f.coeff(n);
        if (c != 0) s.terms.push_back({n, n, 0, 0, false, to_real(c)});
    }
    return s;
}

HarmonicTermSeries raise_harmonic(const HarmonicTermSeries& f, int n) {
    if (n < 1) throw std::invalid_argument("raise_harmonic: n must be at least 1");
    using Key = std::tuple<int, bool, int, int, int>;  // nu, minus, two_s, mu, p
    HarmonicTermSeries cur = f;
    const Real twopi = 2 * pi();
    for (int step = 0; step < n; ++step) {
        const int kappa = cur.weight;
        std::map<Key, Real> acc;
        auto put = [&](int nu, bool minus, int two_s, int mu, int p, const Real& c) {
            if (c == 0) return;
            auto [it, fresh] = acc.try_emplace(Key{nu, minus, two_s, mu, p}, c);
            if (!fresh) it->second += c;
        };
        for (const auto& t : cur.terms) {
            // R_κ(φ e(νx)) = (φ' - 2πνφ + κφ/y) e(νx), φ = y^p e^{-2πμy} G
            put(t.nu, t.minus, t.two_s, t.mu, t.p - 1, t.coeff * (t.p + kappa));
            put(t.nu, t.minus, t.two_s, t.mu, t.p, -t.coeff * twopi * (t.mu + t.nu));
            if (t.two_s != 0) {
                if (t.two_s % 2 != 0) throw std::domain_error("raise_harmonic: half-integral Γ order unsupported");
                int s = t.two_s / 2;
                int lam = 2 * std::abs(t.nu);  // λ = 4π|ν| = 2π·lam
                // G' = -λ^s y^{s-1} e^{-λy}
                put(t.nu, t.minus, 0, t.mu + lam, t.p + s - 1, -t.coeff * bmp::pow(twopi * lam, s));
            }
        }
        HarmonicTermSeries next;
        next.weight = kappa + 2;
        next.raised = cur.raised + 1;
        next.pole_order = cur.pole_order;
        next.known_order = cur.known_order;
        for (auto& [key, c] : acc) {
            if (c == 0) continue;
            auto [nu, minus, two_s, mu, p] = key;
            next.terms.push_back({nu, mu, p, two_s, minus, c});
        }
        cur = std::move(next);
    }
    return cur;
}

Complex evaluate_terms(const HarmonicTermSeries& f, const Complex& z) {
    const Real twopi = 2 * pi();
    const Real& y = z.im;
    std::map<int, Real> exps;
    std::map<int, Real> ypow;
    std::map<std::pair<int, int>, Real> gammas;
    std::map<int, Complex> chars;
    auto exp_mu = [&](int mu) -> const Real& {
        auto it = exps.find(mu);
        if (it == exps.end()) it = exps.emplace(mu, bmp::exp(-twopi * mu * y)).first;
        return it->second;
    };
    auto y_p = [&](int p) -> const Real& {
        auto it = ypow.find(p);
        if (it == ypow.end()) it = ypow.emplace(p, p == 0 ? Real(1) : bmp::pow(y, p)).first;
        return it->second;
    };
    Complex total;
    for (const auto& t : f.terms) {
        Real v = t.coeff * y_p(t.p) * exp_mu(t.mu);
        if (t.two_s != 0) {
            auto key = std::make_pair(t.two_s, std::abs(t.nu));
            auto it = gammas.find(key);
            if (it == gammas.end()) it = gammas.emplace(key, inc_gamma_upper(t.two_s, 2 * twopi * std::abs(t.nu) * y)).first;
            v *= it->second;
        }
        auto ci = chars.find(t.nu);
        if (ci == chars.end()) ci = chars.emplace(t.nu, expi(twopi * t.nu * z.re)).first;
        total += ci->second * v;
    }
    return total;
}

Real convergence_height(const HarmonicTermSeries& f, int target_digits) {
    const int poly = 12 + f.raised;
    auto ok = [&](double y) {
        return terms_needed(f.pole_order, Real(y), target_digits, poly) <= f.known_order;
    };
    double lo = 0.05, hi = 0.05;
    while (!ok(hi)) {
        hi *= 2;
        if (hi > 1e6) throw std::domain_error("convergence_height: series too short");
    }
    if (hi == lo) return Real(lo);
    for (int it = 0; it < 40; ++it) {
        double mid = (lo + hi) / 2;
        (ok(mid) ? hi : lo) = mid;
    }
    return Real(hi);
}

namespace {

Complex evaluate_reduced(const HarmonicTermSeries& f, const Complex& z, const EvalPolicy& policy) {
    if (z.im <= 0) throw std::domain_error("evaluate_harmonic: Im z must be positive");
    const Real height = bmp::sqrt(Real(3)) / 2 - Real(1e-12);
    FundamentalReduction fr{z, Mat2i::identity(), z};
    if (z.im < height) fr = reduce_to_fundamental(z);
    if (policy.strict_truncation && fr.z_red.im < convergence_height(f, policy.target_digits))
        throw std::domain_error("evaluate_harmonic: truncated series does not meet the target at Im z = " +
                                format_real(fr.z_red.im, 6));
    Complex v = evaluate_terms(f, fr.z_red);
    if (fr.gamma == Mat2i::identity()) return v;
    return v * pow(automorphy(fr.gamma, z), -f.weight);
}

}  // namespace

Complex evaluate_harmonic(const HarmonicTermSeries& f, const Complex& z, const EvalPolicy& policy) {
    return evaluate_reduced(f, z, policy);
}

Complex evaluate_harmonic(const PoincareForm& f, const Complex& z, const EvalPolicy& policy) {
    return evaluate_reduced(harmonic_terms(f), z, policy);
}

ModularFunction as_function(const HarmonicTermSeries& f, const EvalPolicy& policy, std::string description) {
    auto shared = std::make_shared<HarmonicTermSeries>(f);
    ModularFunction out;
    out.weight = f.weight;
    out.description = std::move(description);
    out.at = [shared, policy](const Complex& z) { return evaluate_reduced(*shared, z, policy); };
    return out;
}

HarmonicInput HarmonicInput::from_series(const QSeries& f, std::string description) {
    if (f.weight > 0 || f.weight % 2 != 0) throw std::invalid_argument("harmonic input must have weight -2k");
    if (!f.modular) throw std::invalid_argument("harmonic input series must be modular");
    HarmonicInput h;
    h.kind = Kind::Series;
    h.k = -f.weight / 2;
    h.series = f;
    h.description = std::move(description);
    return h;
}

HarmonicInput HarmonicInput::from_poincare(std::shared_ptr<const PoincareForm> f, const Real& scale,
                                           std::string description) {
    HarmonicInput h;
    h.kind = Kind::Poincare;
    h.k = f->k;
    h.poincare = std::move(f);
    h.scale = scale;
    h.description = std::move(description);
    return h;
}

bool HarmonicInput::has_nonholomorphic() const {
    if (kind == Kind::Series || scale == 0) return false;
    return std::any_of(poincare->xi.begin(), poincare->xi.end(), [](const Real& c) { return c != 0; });
}

Real HarmonicInput::plus_coeff(int n) const {
    if (kind == Kind::Poincare) return scale * poincare->hol_coeff(n);
    if (!series.known(n)) throw std::out_of_range("coefficient a+(" + std::to_string(n) + ") beyond truncation");
    return to_real(series.coeff(n));
}

int HarmonicInput::pole_order() const {
    if (kind == Kind::Poincare) return scale == 0 ? 0 : poincare->m;
    for (int n = series.n0; n < 0; ++n)
        if (series.coeff(n) != 0) return -n;
    return 0;
}

HarmonicTermSeries HarmonicInput::terms() const {
    if (kind == Kind::Series) return harmonic_terms(series);
    HarmonicTermSeries s = harmonic_terms(*poincare);
    if (scale != 1)
        for (auto& t : s.terms) t.coeff *= scale;
    return s;
}

RSeries HarmonicInput::xi_image() const {
    if (kind == Kind::Poincare) {
        RSeries s = poincare->xi_series();
        for (auto& c : s.coeffs) c *= scale;
        return s;
    }
    RSeries s;
    s.weight = 2 * k + 2;
    s.n0 = 1;
    s.coeffs.assign(static_cast<std::size_t>(std::max(1, series.order())), Real(0));
    return s;
}

}  // namespace tlift
