#include "tlift/batteries.hpp"
#include "tlift/cycles.hpp"
#include "tlift/inputs.hpp"
#include "tlift/lifts.hpp"
#include "tlift/maass.hpp"
#include "tlift/modforms.hpp"
#include "tlift/qforms.hpp"
#include "tlift/traces.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using namespace tlift;
using json = nlohmann::ordered_json;

namespace {

enum Exit { Ok = 0, BatteryFailure = 1, InvalidInput = 2, StrictWarning = 3 };

struct RunConfig {
    int digits = 60;
    int terms = 0;  // 0: automatic
    int c_max = 5000;
    int panels = 1 << 14;
    std::string format = "json";
    bool strict = false;
    std::string cache_dir;

    int series_terms() const { return terms > 0 ? terms : 120; }
    int poincare_terms() const { return terms > 0 ? std::min(terms, 80) : 60; }
    int poincare_digits() const { return std::clamp(digits, 30, 40); }
    int poincare_tolerance() const { return poincare_digits() - 16; }

    json to_json() const {
        json j;
        j["digits"] = digits;
        j["qseries_terms"] = series_terms();
        j["poincare_terms"] = poincare_terms();
        j["poincare_digits"] = poincare_digits();
        j["poincare_tolerance_digits"] = poincare_tolerance();
        j["c_max"] = c_max;
        j["quadrature_panels"] = panels;
        j["output"] = format;
        return j;
    }
};

class InvalidInputError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(const Real& x, int digits) { return format_real(x, digits); }

json cnum(const Complex& z, int digits) { return json{{"re", num(z.re, digits)}, {"im", num(z.im, digits)}}; }

json envelope(const RunConfig& cfg, const std::string& command) {
    json j;
    j["tool"] = "tlift";
    j["version"] = version();
    j["command"] = command;
    j["config"] = cfg.to_json();
    return j;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
    return r + "\"";
}

void emit_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int finish(const RunConfig& cfg, const std::vector<std::string>& warnings) {
    emit_warnings(warnings);
    return cfg.strict && !warnings.empty() ? StrictWarning : Ok;
}

LiftOptions lift_options(const RunConfig& cfg, bool poincare) {
    LiftOptions opt;
    opt.policy = {poincare ? cfg.poincare_tolerance() : cfg.digits, true};
    // Poincaré coefficients carry ~10^-tolerance noise, so the quadrature target follows them
    const int target = poincare ? cfg.poincare_tolerance() - 4 : std::max(cfg.digits - 10, 10);
    opt.cycles.rel_tol = boost::multiprecision::pow(Real(10), -Real(target));
    opt.cycles.max_nodes = cfg.panels;
    opt.cycles.policy = opt.policy;
    return opt;
}

HarmonicInput harmonic_input(const RunConfig& cfg, const InputSpec& spec) {
    if (spec.kind == InputSpec::Kind::Series) {
        if (spec.series.weight > 0) throw InvalidInputError("input '" + spec.text + "' has positive weight");
        return HarmonicInput::from_series(spec.series, spec.text);
    }
    PoincareOptions po;
    po.k = spec.k;
    po.m = spec.m;
    po.terms = cfg.poincare_terms();
    po.c_max = cfg.c_max;
    po.digits = cfg.poincare_digits();
    po.tolerance_digits = cfg.poincare_tolerance();
    auto form = std::make_shared<const PoincareForm>(load_or_build_poincare(po, cfg.cache_dir));
    return HarmonicInput::from_poincare(form, Real(1), spec.text);
}

// R^k F for an input of weight -2k, as a weight 0 function.
ModularFunction raised_input(const RunConfig& cfg, const InputSpec& spec) {
    if (spec.kind == InputSpec::Kind::Series) {
        if (spec.series.weight > 0) throw InvalidInputError("trace cm needs an input of weight <= 0");
        EvalPolicy policy{cfg.digits, true};
        if (spec.k == 0) return as_function(spec.series, policy, spec.text);
        return as_function(raise(spec.series, spec.k), policy, spec.text);
    }
    HarmonicInput F = harmonic_input(cfg, spec);
    EvalPolicy policy{cfg.poincare_tolerance(), true};
    return as_function(raise_harmonic(F.terms(), spec.k), policy, spec.text);
}

RSeries cusp_input(const RunConfig& cfg, const std::string& text, int k) {
    InputSpec spec = parse_input(text, cfg.series_terms());
    if (spec.kind != InputSpec::Kind::Series) throw InvalidInputError("expected a cusp form q-series");
    const QSeries& s = spec.series;
    if (s.weight != 2 * k + 2)
        throw InvalidInputError("input '" + text + "' has weight " + std::to_string(s.weight) + ", expected " +
                                std::to_string(2 * k + 2));
    for (int n = s.n0; n <= 0; ++n)
        if (s.coeff(n) != 0) throw InvalidInputError("input '" + text + "' is not a cusp form");
    return to_real(s);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

// ---- forms ----

int cmd_forms(const RunConfig& cfg, const std::string& which, std::int64_t D, std::optional<std::int64_t> delta) {
    if (!is_discriminant(D) || D == 0)
        throw InvalidInputError("invalid discriminant " + std::to_string(D) + " (must be nonzero and 0,1 mod 4)");
    std::optional<GenusCharContext> ctx;
    if (delta) {
        if (!is_fundamental(*delta)) throw InvalidInputError("not a fundamental discriminant: " + std::to_string(*delta));
        ctx.emplace(*delta);
    }
    ClassSet cs = enumerate_classes(D);
    std::vector<std::string> warnings;
    if (delta && D % *delta != 0) warnings.push_back("delta does not divide the discriminant; chi is 0");
    else if (delta && !is_genus_character(*delta, D))
        warnings.push_back("D/delta is not a discriminant: chi uses the represented value of least |n|");
    json rows = json::array();
    std::ostringstream csv;
    csv << "a,b,c,stabilizer,automorph" << (ctx ? ",chi" : "") << "\n";
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const QuadForm& q = cs.representatives[i];
        json r;
        r["form"] = {q.a, q.b, q.c};
        r["stabilizer"] = cs.stabilizer_orders[i];
        std::string aut;
        if (cs.automorphs[i]) {
            const Mat2Big& m = *cs.automorphs[i];
            r["automorph"] = json::array({json::array({m.a.str(), m.b.str()}), json::array({m.c.str(), m.d.str()})});
            aut = "[[" + m.a.str() + " " + m.b.str() + "] [" + m.c.str() + " " + m.d.str() + "]]";
        } else {
            r["automorph"] = nullptr;
        }
        csv << q.a << ',' << q.b << ',' << q.c << ',' << cs.stabilizer_orders[i] << ',' << aut;
        if (ctx) {
            int chi = genus_character(*ctx, q);
            r["chi"] = chi;
            csv << ',' << chi;
        }
        csv << "\n";
        rows.push_back(r);
    }
    if (cfg.format == "csv") {
        std::cout << csv.str();
    } else {
        json out = envelope(cfg, "forms " + which);
        out["discriminant"] = D;
        if (delta) out["delta"] = *delta;
        out["class_number"] = cs.size();
        out["classes"] = rows;
        out["warnings"] = warnings;
        std::cout << out.dump(2) << "\n";
    }
    return finish(cfg, warnings);
}

// ---- trace ----

int cmd_trace_cm(const RunConfig& cfg, std::int64_t delta, std::int64_t d, const std::string& input) {
    if (!is_fundamental(delta)) throw InvalidInputError("not a fundamental discriminant: " + std::to_string(delta));
    if (d <= 0) throw InvalidInputError("d must be positive");
    InputSpec spec = parse_input(input, cfg.series_terms());
    std::vector<std::string> warnings;
    const std::int64_t disc = -d * (delta < 0 ? -delta : delta);
    if (!is_discriminant(disc)) warnings.push_back("empty class set: " + std::to_string(disc) + " is not 0,1 mod 4");
    else if (!is_genus_character(delta, disc))
        warnings.push_back("d is outside the plus space: chi uses the represented value of least |n|");
    if (parity_vanishes(spec.k, delta)) warnings.push_back("(-1)^k * delta > 0: outside the range of the Millson lift");
    ModularFunction f = raised_input(cfg, spec);
    TraceValue t = trace_cm(f, delta, d);
    const int out_digits = spec.kind == InputSpec::Kind::Poincare ? cfg.poincare_tolerance() : cfg.digits;
    if (cfg.format == "csv") {
        std::cout << "d,delta,discriminant,plus_re,plus_im,minus_re,minus_im,class_count\n"
                  << d << ',' << delta << ',' << disc << ',' << num(t.plus.re, out_digits) << ','
                  << num(t.plus.im, out_digits) << ',' << num(t.minus.re, out_digits) << ','
                  << num(t.minus.im, out_digits) << ',' << t.class_count << "\n";
    } else {
        json out = envelope(cfg, "trace cm");
        out["input"] = spec.text;
        out["k"] = spec.k;
        out["delta"] = delta;
        out["d"] = d;
        out["discriminant"] = disc;
        out["plus"] = cnum(t.plus, out_digits);
        out["minus"] = cnum(t.minus, out_digits);
        out["combined"] = cnum(t.combined, out_digits);
        out["class_count"] = t.class_count;
        out["warnings"] = warnings;
        std::cout << out.dump(2) << "\n";
    }
    return finish(cfg, warnings);
}

int cmd_trace_cycle(const RunConfig& cfg, int k, std::int64_t delta, std::int64_t d, const std::string& input) {
    if (!is_fundamental(delta)) throw InvalidInputError("not a fundamental discriminant: " + std::to_string(delta));
    if (d <= 0) throw InvalidInputError("d must be positive");
    RSeries G = cusp_input(cfg, input, k);
    std::vector<std::string> warnings;
    const std::int64_t disc = d * (delta < 0 ? -delta : delta);
    if (!is_discriminant(disc)) warnings.push_back("empty class set: " + std::to_string(disc) + " is not 0,1 mod 4");
    if (parity_vanishes(k, delta)) warnings.push_back("(-1)^k * delta > 0: outside the range of the Shintani lift");
    CycleTrace t = trace_cycle(G, delta, d, lift_options(cfg, false).cycles);
    if (cfg.format == "csv") {
        std::cout << "d,delta,discriminant,re,im,est_error,class_count\n"
                  << d << ',' << delta << ',' << disc << ',' << num(t.value.re, cfg.digits) << ','
                  << num(t.value.im, cfg.digits) << ',' << num(t.error, 3) << ',' << t.class_count << "\n";
    } else {
        json out = envelope(cfg, "trace cycle");
        out["input"] = input;
        out["k"] = k;
        out["delta"] = delta;
        out["d"] = d;
        out["discriminant"] = disc;
        out["value"] = cnum(t.value, cfg.digits);
        out["est_error"] = num(t.error, 3);
        out["class_count"] = t.class_count;
        out["warnings"] = warnings;
        std::cout << out.dump(2) << "\n";
    }
    return finish(cfg, warnings);
}

// ---- lift ----

int emit_lift(const RunConfig& cfg, const LiftExpansion& e, const std::string& command, const std::string& input,
              int out_digits) {
    if (cfg.format == "csv") {
        std::cout << lift_to_csv(e, out_digits);
    } else {
        json config = cfg.to_json();
        config["command"] = command;
        config["input"] = input;
        std::cout << lift_to_json(e, out_digits, config.dump()) << "\n";
    }
    return finish(cfg, e.warnings);
}

int cmd_lift_millson(const RunConfig& cfg, std::optional<int> k, std::int64_t delta, std::int64_t dmax,
                     const std::string& input) {
    if (!is_fundamental(delta)) throw InvalidInputError("not a fundamental discriminant: " + std::to_string(delta));
    InputSpec spec = parse_input(input, cfg.series_terms());
    if (k && *k != spec.k)
        throw InvalidInputError("--k " + std::to_string(*k) + " does not match the input weight -" +
                                std::to_string(2 * spec.k));
    const bool poincare = spec.kind == InputSpec::Kind::Poincare;
    HarmonicInput F = harmonic_input(cfg, spec);
    LiftExpansion e = millson_expansion(F, delta, dmax < 0 ? -dmax : dmax, lift_options(cfg, poincare));
    return emit_lift(cfg, e, "lift millson", input, poincare ? cfg.poincare_tolerance() : cfg.digits);
}

int cmd_lift_shintani(const RunConfig& cfg, std::optional<int> k, std::int64_t delta, std::int64_t dmax,
                      const std::string& input) {
    if (!is_fundamental(delta)) throw InvalidInputError("not a fundamental discriminant: " + std::to_string(delta));
    InputSpec spec = parse_input(input, cfg.series_terms());
    if (spec.kind != InputSpec::Kind::Series || spec.series.weight < 2)
        throw InvalidInputError("shintani needs a cusp form q-series");
    const int kk = (spec.series.weight - 2) / 2;
    if (k && *k != kk) throw InvalidInputError("--k does not match the input weight");
    RSeries G = cusp_input(cfg, input, kk);
    LiftExpansion e = shintani_expansion(G, delta, dmax < 0 ? -dmax : dmax, lift_options(cfg, false));
    return emit_lift(cfg, e, "lift shintani", input, cfg.digits);
}

// ---- verify ----

int emit_battery(const RunConfig& cfg, const BatteryReport& rep) {
    const int digits = 6;
    if (cfg.format == "csv") {
        std::cout << "label,value_re,value_im,reference_re,reference_im,rel_error,pass\n";
        for (const auto& r : rep.rows)
            std::cout << csv_escape(r.label) << ',' << num(r.value.re, digits) << ',' << num(r.value.im, digits) << ','
                      << num(r.reference.re, digits) << ',' << num(r.reference.im, digits) << ','
                      << num(r.rel_error, 3) << ',' << (r.pass ? "1" : "0") << "\n";
    } else {
        json out = envelope(cfg, "verify " + rep.name);
        out["tolerance"] = num(rep.tolerance, 3);
        out["max_error"] = num(rep.max_error(), 3);
        out["pass"] = rep.passed();
        json rows = json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"label", r.label},
                            {"value", cnum(r.value, digits)},
                            {"reference", cnum(r.reference, digits)},
                            {"rel_error", num(r.rel_error, 3)},
                            {"pass", r.pass}});
        out["rows"] = rows;
        std::cout << out.dump(2) << "\n";
    }
    std::cerr << (rep.passed() ? "PASS " : "FAIL ") << rep.name << " (max error " << num(rep.max_error(), 3)
              << ", tolerance " << num(rep.tolerance, 3) << ")\n";
    return rep.passed() ? Ok : BatteryFailure;
}

int cmd_verify_cycle_identity(const RunConfig& cfg, int k, std::int64_t D, const std::string& jlist,
                              const std::string& input, const std::string& tol_text) {
    if (D <= 0 || !is_discriminant(D) || is_square(D))
        throw InvalidInputError("cycle-identity needs a non-square discriminant D > 0");
    std::vector<int> js;
    for (const auto& s : split(jlist, ',')) {
        try {
            js.push_back(std::stoi(s));
        } catch (const std::exception&) {
            throw InvalidInputError("bad --j list '" + jlist + "'");
        }
        if (js.back() < 0 || js.back() > k) throw InvalidInputError("j must lie in 0..k");
    }
    InputSpec spec = parse_input(input.empty() ? "poincare:" + std::to_string(k) + ",1" : input, cfg.series_terms());
    if (spec.k != k) throw InvalidInputError("input weight does not match --k");
    const bool poincare = spec.kind == InputSpec::Kind::Poincare;
    HarmonicInput F = harmonic_input(cfg, spec);
    LiftOptions opt = lift_options(cfg, poincare);
    Real tol(tol_text);
    ClassSet cs = enumerate_classes(D);
    bool pass = true;
    json forms = json::array();
    std::ostringstream csv;
    csv << "form,j,constant,lhs_re,lhs_im,rhs_re,rhs_im,rel_dev,pass\n";
    const int digits = 20;
    for (const QuadForm& q : cs.representatives) {
        CycleIdentityReport rep = cycle_identity_check(F, q, js, opt.policy, opt.cycles);
        json rows = json::array();
        for (const auto& r : rep.rows) {
            // weakly holomorphic input: the right side is 0, measure against the integrand's L1 mass
            bool zero_rhs = abs(r.rhs) == 0;
            Real measure = zero_rhs ? Real(r.abs_dev / r.lhs_l1_mass) : r.rel_dev;
            bool ok = measure <= tol;
            pass = pass && ok;
            rows.push_back({{"j", r.j},
                            {"constant", num(r.constant, digits)},
                            {"lhs", cnum(r.lhs, digits)},
                            {"rhs", cnum(r.rhs, digits)},
                            {"deviation", num(measure, 3)},
                            {"deviation_kind", zero_rhs ? "absolute / L1 mass" : "relative"},
                            {"pass", ok}});
            csv << csv_escape(q.str()) << ',' << r.j << ',' << num(r.constant, digits) << ',' << num(r.lhs.re, digits)
                << ',' << num(r.lhs.im, digits) << ',' << num(r.rhs.re, digits) << ',' << num(r.rhs.im, digits) << ','
                << num(measure, 3) << ',' << (ok ? 1 : 0) << "\n";
        }
        forms.push_back({{"form", {q.a, q.b, q.c}}, {"xi_integral", cnum(rep.xi_integral, digits)}, {"rows", rows}});
    }
    if (cfg.format == "csv") {
        std::cout << csv.str();
    } else {
        json out = envelope(cfg, "verify cycle-identity");
        out["input"] = spec.text;
        out["k"] = k;
        out["discriminant"] = D;
        out["tolerance"] = num(tol, 3);
        out["pass"] = pass;
        out["forms"] = forms;
        std::cout << out.dump(2) << "\n";
    }
    std::cerr << (pass ? "PASS" : "FAIL") << " cycle-identity\n";
    return pass ? Ok : BatteryFailure;
}

int cmd_verify_xi_relation(const RunConfig& cfg, int k, std::int64_t delta, std::int64_t nmax, const std::string& input,
                           const std::string& tol_text, const std::string& ratio_text) {
    if (!is_fundamental(delta)) throw InvalidInputError("not a fundamental discriminant: " + std::to_string(delta));
    InputSpec spec = parse_input(input.empty() ? "poincare:" + std::to_string(k) + ",1" : input, cfg.series_terms());
    if (spec.k != k) throw InvalidInputError("input weight does not match --k");
    const bool poincare = spec.kind == InputSpec::Kind::Poincare;
    HarmonicInput F = harmonic_input(cfg, spec);
    Real tol(tol_text), expected(ratio_text);
    XiRelationReport rep = xi_relation_check(F, delta, nmax, lift_options(cfg, poincare), expected);
    const bool pass = rep.max_deviation <= tol;
    const int digits = 20;
    if (cfg.format == "csv") {
        std::cout << "n,lhs_re,lhs_im,rhs_re,rhs_im,ratio_re,ratio_im,deviation\n";
        for (const auto& r : rep.rows)
            std::cout << r.n << ',' << num(r.lhs.re, digits) << ',' << num(r.lhs.im, digits) << ','
                      << num(r.rhs.re, digits) << ',' << num(r.rhs.im, digits) << ',' << num(r.ratio.re, digits) << ','
                      << num(r.ratio.im, digits) << ',' << num(r.deviation, 3) << "\n";
    } else {
        json out = envelope(cfg, "verify xi-relation");
        out["input"] = spec.text;
        out["k"] = k;
        out["delta"] = delta;
        out["expected_ratio"] = num(expected, digits);
        out["observed_ratio"] = num(rep.observed_ratio, digits);
        out["ratio_spread"] = num(rep.ratio_spread, 3);
        out["max_deviation"] = num(rep.max_deviation, 3);
        out["tolerance"] = num(tol, 3);
        out["pass"] = pass;
        json rows = json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"n", r.n},
                            {"lhs", cnum(r.lhs, digits)},
                            {"rhs", cnum(r.rhs, digits)},
                            {"ratio", cnum(r.ratio, digits)},
                            {"deviation", num(r.deviation, 3)}});
        out["rows"] = rows;
        std::cout << out.dump(2) << "\n";
    }
    std::cerr << (pass ? "PASS" : "FAIL") << " xi-relation (lhs/rhs = " << num(rep.observed_ratio, 12)
              << ", expected " << num(expected, 12) << ")\n";
    return pass ? Ok : BatteryFailure;
}

int run(int argc, char** argv) {
    CLI::App app{"Twisted Millson and Shintani lifts at level one"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version()));

    RunConfig cfg;
    cfg.digits = default_precision().digits;
    app.add_option("--digits", cfg.digits, "working precision in decimal digits (default: $TLIFT_DIGITS or 60)")
        ->check(CLI::Range(15, 2000));
    app.add_option("--terms", cfg.terms, "q-series terms (0: automatic)")->check(CLI::NonNegativeNumber);
    app.add_option("--cmax", cfg.c_max, "Poincare series: largest Kloosterman modulus")->check(CLI::PositiveNumber);
    app.add_option("--panels", cfg.panels, "cycle integrals: largest number of quadrature nodes")
        ->check(CLI::Range(16, 1 << 24));
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--strict", cfg.strict, "exit 3 when warnings were issued");
    app.add_option("--cache-dir", cfg.cache_dir, "directory for cached Poincare coefficients");
    app.fallthrough();

    std::int64_t disc = 0, delta = 1, d = 1, dmax = 8, nmax = 8;
    std::optional<std::int64_t> chi_delta;
    std::optional<int> k_opt;
    int k = 5;
    std::string input = "J", jlist = "0,1,2", tol = "1e-8", ratio = "1", cyc_input;

    auto* forms = app.add_subcommand("forms", "binary quadratic form classes")->require_subcommand(1);
    auto* f_enum = forms->add_subcommand("enumerate", "class representatives, stabilizers, automorphs");
    f_enum->add_option("--disc", disc, "discriminant")->required();
    auto* f_chi = forms->add_subcommand("chi", "classes with genus character values");
    f_chi->add_option("--disc", disc, "discriminant")->required();
    f_chi->add_option("--delta", chi_delta, "fundamental discriminant")->required();

    auto* trace = app.add_subcommand("trace", "twisted traces")->require_subcommand(1);
    auto* t_cm = trace->add_subcommand("cm", "CM trace of R^k F");
    t_cm->add_option("--delta", delta)->required();
    t_cm->add_option("--d", d)->required();
    t_cm->add_option("--input", input, "J | raised:k | poincare:k,m | weaklyhol:<expr>");
    auto* t_cyc = trace->add_subcommand("cycle", "cycle-integral trace of a cusp form");
    t_cyc->add_option("--k", k)->required();
    t_cyc->add_option("--delta", delta)->required();
    t_cyc->add_option("--d", d)->required();
    t_cyc->add_option("--input", cyc_input, "cusp form, e.g. delta12")->required();

    auto* lift = app.add_subcommand("lift", "Fourier expansions of the twisted lifts")->require_subcommand(1);
    auto* l_m = lift->add_subcommand("millson", "Millson lift of a harmonic Maass form of weight -2k");
    l_m->add_option("--k", k_opt, "checked against the input weight");
    l_m->add_option("--delta", delta)->required();
    l_m->add_option("--dmax", dmax, "largest |d| (sign ignored)");
    l_m->add_option("--input", input)->required();
    auto* l_s = lift->add_subcommand("shintani", "Shintani lift of a cusp form of weight 2k+2");
    l_s->add_option("--k", k_opt, "checked against the input weight");
    l_s->add_option("--delta", delta)->required();
    l_s->add_option("--dmax", dmax, "largest d");
    l_s->add_option("--input", input)->required();

    auto* verify = app.add_subcommand("verify", "numerical identity batteries")->require_subcommand(1);
    auto* v_ci = verify->add_subcommand("cycle-identity", "C(R^{2j+1}F, Q) against conj(C(xi F, Q))");
    v_ci->add_option("--k", k)->required();
    v_ci->add_option("--disc", disc)->required();
    v_ci->add_option("--j", jlist, "comma separated j values");
    v_ci->add_option("--input", cyc_input, "default poincare:k,1");
    v_ci->add_option("--tol", tol);
    auto* v_xi = verify->add_subcommand("xi-relation", "non-holomorphic Millson coefficients against the Shintani lift");
    v_xi->add_option("--k", k)->required();
    v_xi->add_option("--delta", delta);
    v_xi->add_option("--nmax", nmax);
    v_xi->add_option("--input", cyc_input, "default poincare:k,1");
    v_xi->add_option("--tol", tol);
    v_xi->add_option("--expected-ratio", ratio, "lhs/rhs predicted by the relation (default 1)");
    auto* v_fl = verify->add_subcommand("fourier-lemma", "Gaussian Fourier transform against erfc");
    auto* v_kl = verify->add_subcommand("kummer-lemma", "derivative identity for Kummer's U");
    auto* v_ur = verify->add_subcommand("u-relation", "U(1/2-k, 1/2-k, v) against the incomplete gamma function");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Ok : InvalidInput;
    }

    PrecisionGuard guard(Precision(cfg.digits));
    try {
        if (f_enum->parsed()) return cmd_forms(cfg, "enumerate", disc, std::nullopt);
        if (f_chi->parsed()) return cmd_forms(cfg, "chi", disc, chi_delta);
        if (t_cm->parsed()) return cmd_trace_cm(cfg, delta, d, input);
        if (t_cyc->parsed()) return cmd_trace_cycle(cfg, k, delta, d, cyc_input);
        if (l_m->parsed()) return cmd_lift_millson(cfg, k_opt, delta, dmax, input);
        if (l_s->parsed()) return cmd_lift_shintani(cfg, k_opt, delta, dmax, input);
        if (v_ci->parsed()) return cmd_verify_cycle_identity(cfg, k, disc, jlist, cyc_input, tol);
        if (v_xi->parsed()) return cmd_verify_xi_relation(cfg, k, delta, nmax, cyc_input, tol, ratio);
        if (v_fl->parsed()) return emit_battery(cfg, fourier_lemma_battery());
        if (v_kl->parsed()) return emit_battery(cfg, kummer_lemma_battery());
        if (v_ur->parsed()) return emit_battery(cfg, u_relation_battery());
    } catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return InvalidInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return InvalidInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return InvalidInput;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BatteryFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BatteryFailure;
    }
    return InvalidInput;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
