#include "tlift/lifts.hpp"

#include "tlift/special.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

namespace tlift {

namespace bmp = boost::multiprecision;

namespace {

std::int64_t mod4(std::int64_t n) { return ((n % 4) + 4) % 4; }

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

ModularFunction raised_function(const HarmonicInput& F, const EvalPolicy& policy) {
    if (F.kind == HarmonicInput::Kind::Series) {
        if (F.k == 0) return as_function(F.series, policy, "F");
        return as_function(raise(F.series, F.k), policy, "R^k F");
    }
    HarmonicTermSeries t = F.terms();
    return as_function(F.k == 0 ? t : raise_harmonic(t, F.k), policy, "R^k F");
}

bool all_zero(const RSeries& s) {
    for (const auto& c : s.coeffs)
        if (c != 0) return false;
    return true;
}

}  // namespace

bool in_plus_space(LiftKind kind, int k, std::int64_t n) {
    int e = kind == LiftKind::Millson ? k : k + 1;
    std::int64_t v = e % 2 == 0 ? n : -n;
    std::int64_t r = mod4(v);
    return r == 0 || r == 1;
}

bool parity_vanishes(int k, std::int64_t delta) { return (k % 2 == 0) ? delta > 0 : delta < 0; }

LiftExpansion millson_expansion(const HarmonicInput& F, std::int64_t delta, std::int64_t d_max,
                                const LiftOptions& opt) {
    GenusCharContext ctx(delta);
    const int k = F.k;
    LiftExpansion e;
    e.kind = LiftKind::Millson;
    e.k = k;
    e.delta = delta;
    e.normalization = {"holo(d) = (2/sqrt(d)) (2 pi sqrt(|delta| d))^-k t+(R^k F; d); no extra rescaling", Real(1)};
    if (parity_vanishes(k, delta)) {
        e.warnings.push_back("parity: (-1)^k * delta > 0, the lift vanishes identically");
        return e;
    }
    if (F.plus_coeff(0) != 0 && (k == 0 || delta != 1))
        throw std::domain_error("millson_expansion: a+(0) != 0 is only supported for delta = 1 and k > 0");
    const std::int64_t ad = abs64(delta);

    ModularFunction f = raised_function(F, opt.policy);
    for (std::int64_t d = 1; d <= d_max; ++d) {
        if (!in_plus_space(LiftKind::Millson, k, d)) {
            e.holo[d] = Complex();
            continue;
        }
        TraceValue t = trace_cm(f, delta, d);
        e.class_counts[-d * ad] = t.class_count;
        Real c = 2 / bmp::sqrt(Real(d)) * bmp::pow(2 * pi() * bmp::sqrt(Real(ad * d)), -k);
        e.holo[d] = t.combined * c;
    }
    for (std::int64_t b = 1; b <= F.pole_order(); ++b) e.principal[-ad * b * b] = principal_part_term(F, delta, k, b);
    e.constant = constant_term(F, k, delta);

    RSeries xi = F.xi_image();
    const bool holomorphic_input = all_zero(xi);
    for (std::int64_t n = 1; n <= d_max; ++n) {
        const std::int64_t d = -n;
        if (holomorphic_input || !in_plus_space(LiftKind::Millson, k, d)) {
            e.nonholo[d] = Complex();
            continue;
        }
        CycleTrace t = trace_cycle(xi, delta, n, opt.cycles);
        e.class_counts[n * ad] = t.class_count;
        e.quadrature_errors[n] = t.error;
        Real c = 2 * bmp::pow(pi() * n, Real(2 * k + 1) / 2) * bmp::pow(Real(ad), Real(k) / 2);
        e.nonholo[d] = -conj(t.value) / c;
    }
    return e;
}

LiftExpansion shintani_expansion(const RSeries& G, std::int64_t delta, std::int64_t d_max, const LiftOptions& opt) {
    GenusCharContext ctx(delta);
    if (G.weight < 2 || G.weight % 2 != 0) throw std::invalid_argument("shintani_expansion: weight must be 2k+2");
    for (int e = G.n0; e <= 0 && e < G.order(); ++e)
        if (G.coeff(e) != 0) throw std::invalid_argument("shintani_expansion: input is not a cusp form");
    const int k = (G.weight - 2) / 2;
    LiftExpansion e;
    e.kind = LiftKind::Shintani;
    e.k = k;
    e.delta = delta;
    e.normalization = {"holo(d) = -|delta|^(-(k+1)/2) sum chi(Q) C(G,Q); no extra rescaling", Real(1)};
    if (parity_vanishes(k, delta)) {
        e.warnings.push_back("parity: (-1)^k * delta > 0, outside the range of the lift");
        return e;
    }
    const std::int64_t ad = abs64(delta);
    const Real c = -bmp::pow(Real(ad), -Real(k + 1) / 2);
    const bool zero_input = all_zero(G);
    for (std::int64_t d = 1; d <= d_max; ++d) {
        if (zero_input || !in_plus_space(LiftKind::Shintani, k, d)) {
            e.holo[d] = Complex();
            continue;
        }
        CycleTrace t = trace_cycle(G, delta, d, opt.cycles);
        e.class_counts[d * ad] = t.class_count;
        e.quadrature_errors[d] = t.error;
        e.holo[d] = t.value * c;
    }
    return e;
}

XiRelationReport xi_relation_check(const HarmonicInput& F, std::int64_t delta, std::int64_t n_max,
                                   const LiftOptions& opt, const Real& expected_ratio) {
    XiRelationReport rep;
    rep.k = F.k;
    rep.delta = delta;
    rep.expected_ratio = expected_ratio;
    rep.max_deviation = 0;
    rep.observed_ratio = 0;
    rep.ratio_spread = 0;
    bool have_ratio = false;
    LiftExpansion m = millson_expansion(F, delta, n_max, opt);
    LiftExpansion s = shintani_expansion(F.xi_image(), delta, n_max, opt);
    const Real half_root = bmp::sqrt(Real(abs64(delta))) / 2;
    const Real tiny = bmp::pow(Real(10), -Real(Real::default_precision()));
    for (std::int64_t n = 1; n <= n_max; ++n) {
        XiRelationRow row;
        row.n = n;
        auto mn = m.nonholo.find(-n);
        auto sn = s.holo.find(n);
        Complex nonholo = mn == m.nonholo.end() ? Complex() : mn->second;
        Complex shin = sn == s.holo.end() ? Complex() : sn->second;
        row.lhs = -conj(nonholo) * bmp::pow(4 * pi() * n, Real(2 * F.k + 1) / 2);
        row.rhs = -shin * half_root;
        row.ratio = abs(row.rhs) > tiny ? row.lhs / row.rhs : Complex();
        Real scale = abs(row.lhs);
        if (scale < tiny) scale = Real(1);
        row.deviation = abs(row.lhs - row.rhs * rep.expected_ratio) / scale;
        if (row.deviation > rep.max_deviation) rep.max_deviation = row.deviation;
        if (abs(row.rhs) > tiny) {
            if (!have_ratio) {
                rep.observed_ratio = row.ratio.re;
                have_ratio = true;
            } else {
                Real spread = abs(row.ratio - Complex(rep.observed_ratio)) / bmp::abs(rep.observed_ratio);
                if (spread > rep.ratio_spread) rep.ratio_spread = spread;
            }
        }
        rep.rows.push_back(row);
    }
    return rep;
}

namespace {

Complex qpow(const Complex& tau, std::int64_t n) { return cexp(Complex(Real(0), 2 * pi() * Real(n)) * tau); }

Complex theta(const Complex& tau) {
    Complex s(1);
    const Real v = tau.im;
    for (std::int64_t n = 1;; ++n) {
        Real size = bmp::exp(-2 * pi() * Real(n * n) * v);
        if (size < bmp::pow(Real(10), -Real(Real::default_precision())) && n > 1) break;
        s += Real(2) * qpow(tau, n * n);
    }
    return s;
}

}  // namespace

Complex evaluate_expansion(const LiftExpansion& e, const Complex& tau) {
    Complex s = e.constant;
    for (const auto& [d, v] : e.holo) s += v * qpow(tau, d);
    for (const auto& [d, v] : e.principal) s += v * qpow(tau, d);
    for (const auto& [d, v] : e.nonholo) {
        if (v.re == 0 && v.im == 0) continue;
        s += v * inc_gamma_upper(2 * e.k + 1, 4 * pi() * Real(-d) * tau.im) * qpow(tau, d);
    }
    return s;
}

Real transformation_defect(const LiftExpansion& e, const Complex& tau) {
    const Complex gt = tau / (Complex(4) * tau + Complex(1));
    const int two_kappa = e.kind == LiftKind::Millson ? 1 - 2 * e.k : 3 + 2 * e.k;
    const Complex j = pow(theta(gt) / theta(tau), two_kappa);
    const Complex lhs = evaluate_expansion(e, gt);
    const Real scale = abs(lhs);
    const Real diff = abs(lhs - j * evaluate_expansion(e, tau));
    return scale == 0 ? diff : diff / scale;
}

Real central_l_value_delta(int terms) {
    // e^{-2πn} decay: digits/2.7 terms reach the working precision
    if (terms <= 0) terms = static_cast<int>(Real::default_precision()) / 2 + 10;
    QSeries tau = standard_series(StandardForm::Delta, terms);
    Real lam = 0;
    for (int n = 1; n <= terms; ++n) {
        Real x = 2 * pi() * n;
        lam += 2 * to_real(tau.coeff(n)) * bmp::pow(x, -6) * inc_gamma_upper(12, x);
    }
    return lam * bmp::pow(2 * pi(), 6) / 120;
}

NonvanishingReport nonvanishing_probe(const HarmonicInput& F, std::int64_t d_max, const LiftOptions& opt) {
    if (F.k != 5) throw std::invalid_argument("nonvanishing_probe: needs k = 5");
    NonvanishingReport r;
    r.l_value = central_l_value_delta();
    RSeries xi = F.xi_image();
    r.lambda = xi.coeffs.empty() ? Real(0) : xi.coeff(1);
    LiftExpansion e = millson_expansion(F, 1, d_max, opt);
    r.max_nonholo = 0;
    for (const auto& [d, c] : e.nonholo)
        if (abs(c) > r.max_nonholo) r.max_nonholo = abs(c);
    const Real tol = bmp::pow(Real(10), -Real(opt.policy.target_digits) / 2);
    r.holomorphic = r.max_nonholo <= tol;
    const bool l_zero = bmp::abs(r.lambda * r.l_value) <= tol;
    r.consistent = r.holomorphic == l_zero;
    return r;
}

namespace {

nlohmann::ordered_json complex_json(const Complex& z, int digits) {
    return nlohmann::ordered_json{{"re", format_real(z.re, digits)}, {"im", format_real(z.im, digits)}};
}

nlohmann::ordered_json family_json(const std::map<std::int64_t, Complex>& m, int digits) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [n, v] : m) j[std::to_string(n)] = complex_json(v, digits);
    return j;
}

}  // namespace

std::string lift_to_json(const LiftExpansion& e, int digits, const std::string& config_json) {
    nlohmann::ordered_json j;
    j["tool"] = "tlift";
    j["version"] = TLIFT_VERSION;
    j["kind"] = e.kind == LiftKind::Millson ? "millson" : "shintani";
    j["k"] = e.k;
    j["delta"] = e.delta;
    j["digits"] = digits;
    j["config"] = nlohmann::ordered_json::parse(config_json);
    j["normalization"] = {{"description", e.normalization.description},
                          {"value", format_real(e.normalization.value, digits)}};
    j["holo"] = family_json(e.holo, digits);
    j["principal"] = family_json(e.principal, digits);
    j["constant"] = complex_json(e.constant, digits);
    j["nonholo"] = family_json(e.nonholo, digits);
    nlohmann::ordered_json qe = nlohmann::ordered_json::object(), cc = nlohmann::ordered_json::object();
    for (const auto& [n, v] : e.quadrature_errors) qe[std::to_string(n)] = format_real(v, 3);
    for (const auto& [n, v] : e.class_counts) cc[std::to_string(n)] = v;
    j["diagnostics"] = {{"quadrature_errors", qe}, {"class_counts", cc}, {"warnings", e.warnings}};
    return j.dump(2);
}

std::string lift_to_csv(const LiftExpansion& e, int digits) {
    std::ostringstream os;
    os << "family,index,re,im,est_error\n";
    auto rows = [&](const char* name, const std::map<std::int64_t, Complex>& m) {
        for (const auto& [n, v] : m) {
            auto it = e.quadrature_errors.find(n < 0 ? -n : n);
            std::string err = it != e.quadrature_errors.end() ? format_real(it->second, 3) : "0";
            os << name << ',' << n << ',' << format_real(v.re, digits) << ',' << format_real(v.im, digits) << ','
               << err << '\n';
        }
    };
    rows("holo", e.holo);
    rows("principal", e.principal);
    os << "constant,0," << format_real(e.constant.re, digits) << ',' << format_real(e.constant.im, digits) << ",0\n";
    rows("nonholo", e.nonholo);
    return os.str();
}

}  // namespace tlift
