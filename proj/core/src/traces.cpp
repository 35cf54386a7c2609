#include "tlift/traces.hpp"

#include "tlift/special.hpp"

#include <stdexcept>

namespace tlift {

namespace bmp = boost::multiprecision;

namespace {

bool valid_disc(std::int64_t D) { return D != 0 && (((D % 4) + 4) % 4 == 0 || ((D % 4) + 4) % 4 == 1); }

}  // namespace

TraceValue trace_cm(const ModularFunction& f, std::int64_t delta, std::int64_t d) {
    if (d <= 0) throw std::invalid_argument("trace_cm: d must be positive");
    if (f.weight != 0) throw std::invalid_argument("trace_cm: the function must have weight 0");
    GenusCharContext ctx(delta);
    TraceValue t;
    t.d = d;
    t.delta = delta;
    const std::int64_t D = -checked_mul(d, delta < 0 ? -delta : delta);
    if (!valid_disc(D)) return t;
    ClassSet cs = enumerate_classes(D);
    t.class_count = static_cast<int>(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const QuadForm& q = cs.representatives[i];
        const Real order(cs.stabilizer_orders[i]);
        int chi_p = genus_character(ctx, q);
        int chi_m = genus_character(ctx, q.sign_flip());
        if (chi_p == 0 && chi_m == 0) continue;
        Complex alpha = cm_point(q);
        if (chi_p != 0) t.plus += f.at(alpha) * (Real(chi_p) / order);
        // the CM point of [-a,b,-c] in ℍ is -conj(α_Q)
        if (chi_m != 0) t.minus += f.at(Complex(-alpha.re, alpha.im)) * (Real(chi_m) / order);
    }
    t.combined = t.plus;
    return t;
}

CycleTrace trace_cycle(const RSeries& G, std::int64_t delta, std::int64_t d, const CycleOptions& opt) {
    if (d <= 0) throw std::invalid_argument("trace_cycle: d must be positive");
    GenusCharContext ctx(delta);
    CycleTrace out;
    const std::int64_t D = checked_mul(d, delta < 0 ? -delta : delta);
    if (!valid_disc(D)) return out;
    ClassSet cs = enumerate_classes(D);
    out.class_count = static_cast<int>(cs.size());
    const bool square = is_square(D);
    std::shared_ptr<RSeries> shared;
    ModularFunction fn;
    if (!square) {
        shared = std::make_shared<RSeries>(G);
        fn.weight = G.weight;
        EvalPolicy policy = opt.policy;
        fn.at = [shared, policy](const Complex& z) { return evaluate(*shared, z, policy); };
    }
    out.error = 0;
    for (const auto& q : cs.representatives) {
        int chi = genus_character(ctx, q);
        if (chi == 0) continue;
        CycleIntegralResult r = square ? cycle_integral_infinite(G, q, opt) : cycle_integral_closed(fn, q, opt);
        out.value += r.value * Real(chi);
        out.error += r.error;
    }
    return out;
}

Complex principal_part_term(const HarmonicInput& F, std::int64_t delta, int k, std::int64_t b) {
    if (b <= 0) throw std::invalid_argument("principal_part_term: b must be positive");
    const std::int64_t ad = delta < 0 ? -delta : delta;
    const int pole = F.pole_order();
    Complex sum;
    for (std::int64_t n = -1; -n * b <= pole; --n) {
        // (Δ/|n|): with (Δ/n) the q^{-|Δ|b²} term has the wrong sign for Δ < 0 (the expansion then
        // fails the Γ0(4) transformation law)
        int chi = kronecker(delta, -n);
        if (chi == 0) continue;
        Real a = F.plus_coeff(static_cast<int>(n * b));
        if (a == 0) continue;
        sum += Complex(a * Real(chi) * bmp::pow(4 * pi() * Real(n), k));
    }
    // (1/(2πi|Δ|))^k = (2π|Δ|)^{-k} i^{-k}
    Complex c = ipow(-k) * bmp::pow(2 * pi() * Real(ad), -k);
    Complex eps = delta > 0 ? Complex(1) : Complex(Real(0), Real(1));
    return Complex(Real(0), Real(-2)) * eps * c * sum;
}

Complex constant_term(const HarmonicInput& F, int k, std::int64_t delta) {
    Real a0 = F.plus_coeff(0);
    if (a0 == 0) return Complex();
    if (delta != 1) throw std::domain_error("constant_term: twisted lift with a+(0) != 0 is not supported");
    if (k % 2 == 0) return Complex();
    Real c = -to_real(factorial(k)) / (2 * bmp::pow(pi(), k + 1));  // (-1)^k = -1
    return Complex(c * a0 * 2 * zeta(k + 1));
}

}  // namespace tlift
