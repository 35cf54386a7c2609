#include "tlift/batteries.hpp"

#include "tlift/quadrature.hpp"
#include "tlift/special.hpp"

#include <sstream>

namespace tlift {

namespace bmp = boost::multiprecision;

namespace {

BatteryRow make_row(std::string label, const Complex& value, const Complex& reference, const Real& tol) {
    BatteryRow r;
    r.label = std::move(label);
    r.value = value;
    r.reference = reference;
    Real scale = abs(reference);
    r.rel_error = abs(value - reference) / (scale == 0 ? Real(1) : scale);
    r.pass = r.rel_error <= tol;
    return r;
}

std::string real_label(const Real& x) { return format_real(x, 3); }

}  // namespace

bool BatteryReport::passed() const {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return !rows.empty();
}

Real BatteryReport::max_error() const {
    Real m = 0;
    for (const auto& r : rows)
        if (r.rel_error > m) m = r.rel_error;
    return m;
}

BatteryReport fourier_lemma_battery(const Real& tolerance) {
    BatteryReport rep;
    rep.name = "fourier-lemma";
    rep.tolerance = tolerance;
    const std::vector<Real> ab = {Real(1) / 2, Real(1), Real(2)};
    const std::vector<Real> ws = {Real(-1), Real("-0.3"), Real("0.3"), Real(1)};
    const Real digits = Real(Real::default_precision());
    for (const Real& a : ab) {
        // e^{-a²T²} below the working precision
        const Real T = bmp::sqrt(digits * bmp::log(Real(10)) + 10) / a;
        const int panels = static_cast<int>(bmp::ceil(8 * T).convert_to<double>());
        for (const Real& b : ab)
            for (const Real& w : ws) {
                ComplexFn f = [&](const Real& t) {
                    return Complex(bmp::exp(-a * a * t * t)) * expi(2 * pi() * t * w) / Complex(t, b);
                };
                Complex q = integrate_panels(f, -T, T, panels, 30);
                Real m = bmp::exp(a * a * b * b + 2 * pi() * b * w) * pi() * erfc(a * b + pi() * w / a);
                Complex ref(Real(0), -m);
                std::ostringstream label;
                label << "a=" << real_label(a) << " b=" << real_label(b) << " w=" << real_label(w);
                rep.rows.push_back(make_row(label.str(), q, ref, tolerance));
            }
    }
    return rep;
}

BatteryReport kummer_lemma_battery(const Real& tolerance) {
    BatteryReport rep;
    rep.name = "kummer-lemma";
    rep.tolerance = tolerance;
    auto g = [](const Real& v) { return bmp::exp(-v) * kummer_u(1, -1, v) / v; };
    const Real h = bmp::pow(Real(10), -Real(Real::default_precision()) / 6);
    for (const char* vs : {"0.5", "1", "2", "4"}) {
        Real v(vs);
        Real deriv = (g(v - 2 * h) - 8 * g(v - h) + 8 * g(v + h) - g(v + 2 * h)) / (12 * h);
        Real ref = -bmp::exp(-v) * kummer_u(-1, -1, v) / (v * v);
        rep.rows.push_back(make_row(std::string("v=") + vs, Complex(deriv), Complex(ref), tolerance));
    }
    return rep;
}

BatteryReport u_relation_battery(const Real& tolerance) {
    BatteryReport rep;
    rep.name = "u-relation";
    rep.tolerance = tolerance;
    for (int k = 0; k <= 2; ++k)
        for (const char* vs : {"0.5", "1", "4"}) {
            Real v(vs);
            Real lhs = bmp::exp(-v) * kummer_u(1 - 2 * k, 1 - 2 * k, v);
            Real rhs = inc_gamma_upper(2 * k + 1, v);
            std::ostringstream label;
            label << "k=" << k << " v=" << vs;
            rep.rows.push_back(make_row(label.str(), Complex(lhs), Complex(rhs), tolerance));
        }
    return rep;
}

BatteryReport incomplete_gamma_battery(const Real& tolerance) {
    BatteryReport rep;
    rep.name = "incomplete-gamma-recurrence";
    rep.tolerance = tolerance;
    for (int two_s = 1; two_s <= 11; ++two_s)
        for (const char* xs : {"0.1", "0.5", "1", "2", "5", "10"}) {
            Real x(xs), s = Real(two_s) / 2;
            Real lhs = inc_gamma_upper(two_s + 2, x);
            Real rhs = s * inc_gamma_upper(two_s, x) + bmp::pow(x, s) * bmp::exp(-x);
            std::ostringstream label;
            label << "s=" << two_s << "/2 x=" << xs;
            rep.rows.push_back(make_row(label.str(), Complex(lhs), Complex(rhs), tolerance));
        }
    return rep;
}

}  // namespace tlift
