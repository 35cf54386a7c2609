#include "tlift/cycles.hpp"

#include "tlift/quadrature.hpp"
#include "tlift/special.hpp"

#include <stdexcept>

namespace tlift {

namespace bmp = boost::multiprecision;

Complex cycle_prefactor(std::int64_t D, int kp) {
    if (D <= 0) throw std::invalid_argument("cycle_prefactor: D must be positive");
    // (-√D i)^{kp} = D^{kp/2} (-i)^{kp}
    Real mod = bmp::pow(bmp::sqrt(Real(D)), kp);
    return ipow(-kp) * mod * Complex(Real(0), Real(1));
}

Real dictionary_power(std::int64_t D, int e) { return bmp::pow(Real(D), e); }

namespace {

int half_weight_shift(int weight) {
    if (weight % 2 != 0) throw std::invalid_argument("cycle integrals need even weight");
    return (weight - 2) / 2;
}

Real tiny() { return bmp::pow(Real(10), -Real(Real::default_precision()) * 2); }

// ∫_lo^∞ f(y) dy for exponentially decaying f, in the variable y = lo·e^u (f is analytic for Re y > 0,
// i.e. |Im u| < π/2). Tolerance relative to the first panel.
QuadResult tail_integral(const ComplexFn& f, const Real& lo, const Real& rel_tol) {
    ComplexFn g = [&](const Real& u) {
        Real y = lo * bmp::exp(u);
        return f(y) * y;
    };
    const Real width(Real(1) / 2);
    Complex first = integrate_panels(g, Real(0), width, 2, 20);
    Real scale = abs(first);
    if (scale < tiny()) scale = tiny();
    QuadResult r = integrate_to_infinity(g, Real(0), width, rel_tol * scale, 20);
    return r;
}

// Cusp factorizations of g·diag(√s, 1/√s) and g·diag(√s, 1/√s)·S with s chosen so both have the same α.
// Any such rescaling is again a frame of Q.
struct FramePieces {
    CuspFactorization g, gS;
};

FramePieces balanced_frame(const GeodesicFrame& frame) {
    CuspFactorization a = cusp_factorization(frame, false);
    CuspFactorization b = cusp_factorization(frame, true);
    Real rs = bmp::sqrt(bmp::abs(b.alpha / a.alpha));
    a.alpha *= rs;
    a.beta /= rs;
    b.alpha /= rs;
    b.beta *= rs;
    return {a, b};
}

}  // namespace

CycleIntegralResult cycle_integral_closed(const ModularFunction& G, const QuadForm& Q, const CycleOptions& opt) {
    return cycle_integral_closed(G, geodesic_frame(Q), opt);
}

CycleIntegralResult cycle_integral_closed(const ModularFunction& G, const GeodesicFrame& frame, const CycleOptions& opt) {
    if (frame.infinite || !frame.epsilon) throw std::invalid_argument("cycle_integral_closed: square discriminant");
    const int kp = half_weight_shift(G.weight);
    const std::int64_t D = frame.form.disc();
    const Real period = 2 * bmp::log(*frame.epsilon);
    const Mat2r& g = frame.g;

    auto integrand = [&](const Real& u) {
        Real y = bmp::exp(u);
        Complex iy(Real(0), y);
        Complex val = G.at(act(g, iy)) * pow(automorphy(g, iy), -G.weight);
        return val * bmp::pow(y, kp + 1);
    };

    // periodic trapezoid with doubling; the integrand is invariant under the automorph
    int n = 16;
    Real h = period / n;
    Complex sum;
    Real abs_sum = 0;
    for (int i = 0; i < n; ++i) {
        Complex v = integrand(h * i);
        sum += v;
        abs_sum += abs(v);
    }
    Complex prev = sum * h;
    Real diff;
    for (;;) {
        Complex add;
        Real abs_add = 0;
        for (int i = 0; i < n; ++i) {
            Complex v = integrand(h * (Real(i) + Real(0.5)));
            add += v;
            abs_add += abs(v);
        }
        sum += add;
        abs_sum += abs_add;
        n *= 2;
        h /= 2;
        Complex cur = sum * h;
        diff = abs(cur - prev);
        prev = cur;
        Real mass = abs_sum * h;
        if (diff <= opt.rel_tol * (mass > tiny() ? mass : tiny())) break;
        if (n >= opt.max_nodes)
            throw std::runtime_error("cycle_integral_closed: no convergence within " + std::to_string(n) +
                                     " nodes (last change " + format_real(diff, 3) + ")");
    }
    Complex pre = cycle_prefactor(D, kp);
    CycleIntegralResult r;
    r.value = pre * prev;
    r.error = abs(pre) * diff;
    r.nodes = n;
    r.l1_mass = abs(pre) * abs_sum * h;
    r.representative = frame.form;
    r.frame = frame;
    return r;
}

CycleIntegralResult cycle_integral_infinite(const RSeries& G, const QuadForm& Q, const CycleOptions& opt,
                                            const Real& split) {
    std::int64_t n;
    const std::int64_t D = Q.disc();
    if (D <= 0 || !is_square(D, &n)) throw std::invalid_argument("cycle_integral_infinite: D must be a positive square");
    if (!G.modular) throw std::invalid_argument("cycle_integral_infinite: G must be modular");
    for (int e = G.n0; e <= 0 && e < G.order(); ++e)
        if (G.coeff(e) != 0) throw std::invalid_argument("cycle_integral_infinite: G is not cuspidal");
    if (split <= 0) throw std::invalid_argument("cycle_integral_infinite: split point must be positive");
    const int kp = half_weight_shift(G.weight);
    GeodesicFrame frame = geodesic_frame(Q);
    const FramePieces fp = balanced_frame(frame);

    auto half = [&](bool times_S, const Real& lo) {
        const CuspFactorization& cf = times_S ? fp.gS : fp.g;
        Real a2 = cf.alpha * cf.alpha;
        Real ab = cf.alpha * cf.beta;
        Real factor = bmp::pow(cf.alpha, G.weight);
        ComplexFn f = [&](const Real& y) {
            Complex z(ab, a2 * y);
            return evaluate(G, z, opt.policy) * factor * bmp::pow(y, kp);
        };
        return tail_integral(f, lo, opt.rel_tol);
    };
    QuadResult r1 = half(false, split);
    QuadResult r2 = half(true, 1 / split);
    Real sign = (kp + 1) % 2 == 0 ? Real(1) : Real(-1);
    Complex pre = cycle_prefactor(D, kp);
    CycleIntegralResult out;
    out.value = pre * (r1.value + r2.value * sign);
    out.error = abs(pre) * (r1.error + r2.error);
    out.nodes = r1.evaluations + r2.evaluations;
    out.l1_mass = abs(pre) * (abs(r1.value) + abs(r2.value));
    out.representative = Q;
    out.frame = frame;
    return out;
}

BigInt regularization_constant(int l, int j, int k) {
    if (l < 0 || l > j) throw std::invalid_argument("regularization_constant: need 0 <= l <= j");
    BigInt c = 2;
    for (int t = l + 1; t <= j; ++t) c *= BigInt(2 * t) * BigInt(2 * k - 2 * t + 1);
    return (l + j) % 2 == 0 ? c : BigInt(-c);
}

namespace {

FramePieces square_frame(const QuadForm& Q) {
    std::int64_t n;
    if (Q.disc() <= 0 || !is_square(Q.disc(), &n))
        throw std::invalid_argument("regularized cycle integral: D must be a positive square");
    return balanced_frame(geodesic_frame(Q));
}

// (T|_w A)(iy) for A = [[α, β], [0, 1/α]]
Complex slash_value(const HarmonicTermSeries& T, const CuspFactorization& cf, const Real& y) {
    Complex z(cf.alpha * cf.beta, cf.alpha * cf.alpha * y);
    return evaluate_terms(T, z) * bmp::pow(cf.alpha, T.weight);
}

struct MinusIntegrals {
    Complex g, gS;
    Real error;
};

MinusIntegrals minus_integrals(const HarmonicTermSeries& R, const FramePieces& fp, int kp, const CycleOptions& opt) {
    HarmonicTermSeries minus = R.part(true);
    MinusIntegrals out;
    out.error = 0;
    if (minus.terms.empty()) return out;
    auto run = [&](const CuspFactorization& cf) {
        ComplexFn f = [&](const Real& y) { return slash_value(minus, cf, y) * bmp::pow(y, kp); };
        QuadResult q = tail_integral(f, Real(1), opt.rel_tol);
        out.error += q.error;
        return q.value;
    };
    out.g = run(fp.g);
    out.gS = run(fp.gS);
    return out;
}

}  // namespace

RegularizedParts regularized_cycle_integral(const HarmonicInput& F, int j, const QuadForm& Q, const CycleOptions& opt,
                                            bool boundary_from_plus) {
    if (j < 0) throw std::invalid_argument("regularized_cycle_integral: j must be non-negative");
    const int k = F.k;
    const FramePieces fp = square_frame(Q);
    const Real sign = (k + 1) % 2 == 0 ? Real(1) : Real(-1);
    const HarmonicTermSeries base = F.terms();

    Complex boundary;
    for (int l = 0; l <= j; ++l) {
        HarmonicTermSeries R = l == 0 ? base : raise_harmonic(base, 2 * l);
        HarmonicTermSeries part = R.part(!boundary_from_plus);
        if (boundary_from_plus) {
            Real h = std::min(fp.g.alpha * fp.g.alpha, fp.gS.alpha * fp.gS.alpha);
            if (opt.policy.strict_truncation && h < convergence_height(R, opt.policy.target_digits))
                throw std::domain_error("regularized_cycle_integral: F+ boundary values below the convergence height");
        }
        Complex b = slash_value(part, fp.g, Real(1)) + slash_value(part, fp.gS, Real(1)) * sign;
        if (boundary_from_plus) b = -b;
        boundary += b * to_real(BigInt(regularization_constant(l, j, k)));
    }
    const int kp = -k + 2 * j;
    HarmonicTermSeries R = raise_harmonic(base, 2 * j + 1);
    MinusIntegrals mi = minus_integrals(R, fp, kp, opt);

    Complex pre = cycle_prefactor(Q.disc(), kp);
    RegularizedParts out;
    out.boundary = pre * boundary;
    out.integrals = pre * (mi.g + mi.gS * sign);
    out.value = out.boundary + out.integrals;
    out.error = abs(pre) * mi.error;
    return out;
}

BfkComparison bfk_comparison(const HarmonicInput& F, const QuadForm& Q, const CycleOptions& opt) {
    if (F.k != 0) throw std::invalid_argument("bfk_comparison: only defined for weight 0 inputs");
    const FramePieces fp = square_frame(Q);
    BfkComparison out;
    out.reg = regularized_cycle_integral(F, 0, Q, opt).value;

    const HarmonicTermSeries base = F.terms();
    const HarmonicTermSeries R = raise_harmonic(base, 1);
    MinusIntegrals mi = minus_integrals(R, fp, 0, opt);
    const Complex I(Real(0), Real(1));
    const Real twopi = 2 * pi();
    // Σ_{n≠0} a_h(n) e^{-2π n_h} with F⁺_h(z) = Σ a(n) e(nαβ) e(nα² z)
    auto continued = [&](const CuspFactorization& cf) {
        Complex s;
        for (const auto& t : base.terms) {
            if (t.minus || t.nu == 0) continue;
            s += expi(twopi * t.nu * cf.alpha * cf.beta) *
                 (t.coeff * bmp::exp(-twopi * t.nu * cf.alpha * cf.alpha));
        }
        return s;
    };
    Complex part_g = Complex(Real(0), Real(-2)) * continued(fp.g) + I * mi.g;
    Complex part_gS = Complex(Real(0), Real(-2)) * continued(fp.gS) + I * mi.gS;
    out.bfk = part_g - part_gS;
    Real a0 = F.plus_coeff(0);
    // weight 0: the constant term of F|A equals a⁺(0) for both frames
    out.predicted = Complex(Real(0), Real(-2)) * a0 + Complex(Real(0), Real(2)) * a0;
    return out;
}

Real cycle_identity_constant(int k, int j, std::int64_t D) {
    if (j < 0 || j > k) throw std::invalid_argument("cycle_identity_constant: need 0 <= j <= k");
    Rational c(factorial(j) * factorial(k - j) * factorial(2 * k), factorial(k) * factorial(2 * k - 2 * j));
    return to_real(c) * dictionary_power(D, -(k - j));
}

CycleIdentityReport cycle_identity_check(const HarmonicInput& F, const QuadForm& Q, const std::vector<int>& j_list,
                                         const EvalPolicy& policy, const CycleOptions& opt) {
    const std::int64_t D = Q.disc();
    if (D <= 0 || is_square(D)) throw std::invalid_argument("cycle_identity_check: needs non-square D > 0");
    CycleIdentityReport rep;
    rep.form = Q;
    RSeries xi = F.xi_image();
    bool xi_zero = true;
    for (const auto& c : xi.coeffs)
        if (c != 0) xi_zero = false;
    if (!xi_zero) {
        auto shared = std::make_shared<RSeries>(xi);
        ModularFunction G;
        G.weight = xi.weight;
        G.at = [shared, policy](const Complex& z) { return evaluate(*shared, z, policy); };
        rep.xi_integral = cycle_integral_closed(G, Q, opt).value;
    }
    const HarmonicTermSeries base = F.terms();
    for (int j : j_list) {
        CycleIdentityRow row;
        row.j = j;
        row.constant = cycle_identity_constant(F.k, j, D);
        auto res = cycle_integral_closed(as_function(raise_harmonic(base, 2 * j + 1), policy), Q, opt);
        row.lhs = res.value;
        row.lhs_l1_mass = res.l1_mass;
        row.rhs = conj(rep.xi_integral) * row.constant;
        row.abs_dev = abs(row.lhs - row.rhs);
        Real scale = abs(row.rhs);
        row.rel_dev = scale > 0 ? Real(row.abs_dev / scale) : row.abs_dev;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace tlift
