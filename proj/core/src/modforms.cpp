#include "tlift/modforms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tlift {

namespace bmp = boost::multiprecision;

QSeries strip_leading_zeros(QSeries s) {
    std::size_t k = 0;
    while (k < s.coeffs.size() && s.coeffs[k] == 0) ++k;
    if (k == s.coeffs.size()) {
        // identically zero up to the known order; keep the order information
        s.n0 = s.order();
        s.coeffs.clear();
        return s;
    }
    s.coeffs.erase(s.coeffs.begin(), s.coeffs.begin() + static_cast<std::ptrdiff_t>(k));
    s.n0 += static_cast<int>(k);
    return s;
}

QSeries truncate(const QSeries& s, int order) {
    QSeries r = s;
    if (order < r.order()) r.coeffs.resize(static_cast<std::size_t>(std::max(0, order - r.n0)));
    return r;
}

namespace {

QSeries combine(const QSeries& a, const QSeries& b, int sign) {
    if (a.weight != b.weight) throw std::invalid_argument("adding series of different weights");
    QSeries r;
    r.weight = a.weight;
    r.modular = a.modular && b.modular;
    r.n0 = std::min(a.n0, b.n0);
    int ord = std::min(a.order(), b.order());
    for (int n = r.n0; n < ord; ++n) r.coeffs.push_back(a.coeff(n) + Rational(sign) * b.coeff(n));
    return r;
}

}  // namespace

QSeries add(const QSeries& a, const QSeries& b) { return combine(a, b, 1); }
QSeries sub(const QSeries& a, const QSeries& b) { return combine(a, b, -1); }

QSeries scale(const QSeries& a, const Rational& c) {
    QSeries r = a;
    for (auto& x : r.coeffs) x *= c;
    return r;
}

namespace {

// Integer numerators over a common denominator: a_i = num[i] / den.
struct ScaledCoeffs {
    std::vector<BigInt> num;
    BigInt den = 1;
};

ScaledCoeffs scaled(const std::vector<Rational>& c) {
    ScaledCoeffs s;
    for (const Rational& x : c) {
        const BigInt& d = boost::multiprecision::denominator(x);
        if (d != 1) s.den = boost::multiprecision::lcm(s.den, d);
    }
    s.num.reserve(c.size());
    for (const Rational& x : c)
        s.num.push_back(boost::multiprecision::numerator(x) * (s.den / boost::multiprecision::denominator(x)));
    return s;
}

}  // namespace

QSeries mul(const QSeries& a, const QSeries& b) {
    QSeries r;
    r.weight = a.weight + b.weight;
    r.modular = a.modular && b.modular;
    r.n0 = a.n0 + b.n0;
    int ord = std::min(a.order() + b.n0, b.order() + a.n0);
    int len = std::max(0, ord - r.n0);
    const ScaledCoeffs sa = scaled(a.coeffs), sb = scaled(b.coeffs);
    const BigInt den = sa.den * sb.den;
    const int na = static_cast<int>(sa.num.size()), nb = static_cast<int>(sb.num.size());
    r.coeffs.assign(static_cast<std::size_t>(len), Rational(0));
    BigInt s;
    for (int i = 0; i < len; ++i) {
        s = 0;
        for (int j = std::max(0, i - nb + 1); j <= std::min(i, na - 1); ++j) {
            if (sa.num[j] == 0) continue;
            s += sa.num[j] * sb.num[i - j];
        }
        r.coeffs[i] = den == 1 ? Rational(s) : Rational(s, den);
    }
    return r;
}

QSeries inverse(const QSeries& a0) {
    QSeries a = strip_leading_zeros(a0);
    if (a.coeffs.empty()) throw std::domain_error("inverse of a series with zero leading coefficient");
    QSeries r;
    r.weight = -a.weight;
    r.modular = a.modular;
    r.n0 = -a.n0;
    std::size_t len = a.coeffs.size();
    r.coeffs.assign(len, Rational(0));
    if (a.coeffs[0] == 1 || a.coeffs[0] == -1) {
        const ScaledCoeffs sa = scaled(a.coeffs);
        if (sa.den == 1) {
            // unit leading coefficient and integral coefficients: exact integer recursion
            const BigInt c0 = sa.num[0];
            std::vector<BigInt> ri(len);
            ri[0] = c0;
            BigInt acc;
            for (std::size_t i = 1; i < len; ++i) {
                acc = 0;
                for (std::size_t j = 1; j <= i; ++j)
                    if (sa.num[j] != 0) acc += sa.num[j] * ri[i - j];
                ri[i] = -acc * c0;
            }
            for (std::size_t i = 0; i < len; ++i) r.coeffs[i] = Rational(ri[i]);
            return r;
        }
    }
    Rational inv0 = Rational(1) / a.coeffs[0];
    r.coeffs[0] = inv0;
    for (std::size_t i = 1; i < len; ++i) {
        Rational s = 0;
        for (std::size_t j = 1; j <= i; ++j) s += a.coeffs[j] * r.coeffs[i - j];
        r.coeffs[i] = -s * inv0;
    }
    return r;
}

QSeries div(const QSeries& a, const QSeries& b) { return mul(a, inverse(b)); }

QSeries pow(const QSeries& a, int e) {
    if (e < 0) return inverse(pow(a, -e));
    QSeries r;
    r.weight = 0;
    r.n0 = 0;
    r.modular = a.modular;
    r.coeffs.assign(static_cast<std::size_t>(std::max(1, a.order() - a.n0)), Rational(0));
    r.coeffs[0] = 1;
    QSeries base = a;
    bool first = true;
    while (e > 0) {
        if (e & 1) {
            r = first ? base : mul(r, base);
            first = false;
        }
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return r;
}

QSeries theta(const QSeries& a, int times) {
    QSeries r = a;
    for (int t = 0; t < times; ++t)
        for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] *= Rational(r.n0 + static_cast<int>(i));
    r.weight += 2 * times;
    r.modular = false;
    return r;
}

QSeries bol_derivative(const QSeries& f) {
    if (f.weight > 0 || f.weight % 2 != 0) throw std::invalid_argument("bol_derivative expects weight -2k, k >= 0");
    int k = -f.weight / 2;
    QSeries r = theta(f, 2 * k + 1);
    r.modular = f.modular;
    return r;
}

RSeries to_real(const QSeries& s) {
    RSeries r;
    r.weight = s.weight;
    r.n0 = s.n0;
    r.modular = s.modular;
    r.coeffs.reserve(s.coeffs.size());
    for (const auto& c : s.coeffs) r.coeffs.push_back(to_real(c));
    return r;
}

StandardForm parse_standard_form(const std::string& name) {
    if (name == "E4") return StandardForm::E4;
    if (name == "E6") return StandardForm::E6;
    if (name == "Delta" || name == "delta12" || name == "Delta12") return StandardForm::Delta;
    if (name == "j") return StandardForm::j;
    if (name == "J") return StandardForm::J;
    throw std::invalid_argument("unknown standard form: " + name);
}

namespace {

QSeries eisenstein(int weight, int terms) {
    // E_k = 1 + c Σ σ_{k-1}(n) q^n with c = 240 (k=4), -504 (k=6)
    Rational c = weight == 4 ? Rational(240) : Rational(-504);
    QSeries r;
    r.weight = weight;
    r.n0 = 0;
    r.coeffs.assign(static_cast<std::size_t>(terms), Rational(0));
    r.coeffs[0] = 1;
    for (int n = 1; n < terms; ++n) {
        BigInt sigma = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) sigma += bmp::pow(BigInt(d), static_cast<unsigned>(weight - 1));
        r.coeffs[n] = c * Rational(sigma);
    }
    return r;
}

}  // namespace

QSeries standard_series(StandardForm which, int terms) {
    if (terms < 1) throw std::invalid_argument("standard_series: terms must be positive");
    switch (which) {
        case StandardForm::E4: return eisenstein(4, terms);
        case StandardForm::E6: return eisenstein(6, terms);
        default: break;
    }
    QSeries e4 = eisenstein(4, terms + 1);
    QSeries e6 = eisenstein(6, terms + 1);
    QSeries delta = strip_leading_zeros(scale(sub(pow(e4, 3), pow(e6, 2)), Rational(1, 1728)));
    delta = truncate(delta, delta.n0 + terms);
    if (which == StandardForm::Delta) return delta;
    QSeries j = truncate(div(pow(e4, 3), delta), -1 + terms);
    if (which == StandardForm::j) return j;
    j.coeffs[1] -= 744;
    return j;
}

FundamentalReduction reduce_to_fundamental(const Complex& z) {
    if (z.im <= 0) throw std::domain_error("point is not in the upper half-plane");
    FundamentalReduction fr;
    fr.z = z;
    Mat2i g = Mat2i::identity();
    Complex w = z;
    for (int it = 0; it < 10000; ++it) {
        Real shift = bmp::round(w.re);
        if (shift != 0) {
            auto n = shift.convert_to<long long>();
            w.re -= shift;
            g = Mat2i::T(-n) * g;
        }
        if (norm(w) < 1) {
            w = Complex(-1) / w;
            g = Mat2i::S() * g;
            continue;
        }
        break;
    }
    fr.gamma = g;
    fr.z_red = w;
    return fr;
}

int terms_needed(int m0, const Real& y0, int target_digits, int poly) {
    m0 = std::max(1, m0);
    double y = y0.convert_to<double>();
    double rhs = -(target_digits + 5) * std::log(10.0);
    for (int P = 1; P < 10000000; ++P) {
        double lhs = 4 * M_PI * std::sqrt(double(m0) * P) + poly * std::log(double(P)) - 2 * M_PI * P * y;
        if (lhs < rhs) return P;
    }
    throw std::domain_error("terms_needed: no finite truncation at this height");
}

Complex evaluate_raw(const RSeries& s, const Complex& z) {
    if (s.coeffs.empty()) return Complex();
    Complex q = cexp(Complex(Real(0), 2 * pi()) * z);
    Complex acc(s.coeffs.back());
    for (std::size_t i = s.coeffs.size() - 1; i-- > 0;) {
        acc *= q;
        acc += Complex(s.coeffs[i]);
    }
    if (s.n0 != 0) acc *= pow(q, s.n0);
    return acc;
}

namespace {

const Real& fundamental_height() {
    thread_local Real h;
    thread_local unsigned prec = 0;
    if (prec != Real::default_precision()) {
        h = bmp::sqrt(Real(3)) / 2 - bmp::pow(Real(10), -Real(Real::default_precision()) / 2);
        prec = Real::default_precision();
    }
    return h;
}

void check_truncation(int n0, int order, const Real& y, const EvalPolicy& policy, int poly) {
    if (!policy.strict_truncation) return;
    int needed = terms_needed(std::max(1, -n0), y, policy.target_digits, poly);
    if (order < needed)
        throw std::domain_error("series truncated at q^" + std::to_string(order) + " but " + std::to_string(needed) +
                                " terms are needed at Im z = " + format_real(y, 6));
}

}  // namespace

Complex evaluate(const RSeries& s, const Complex& z, const EvalPolicy& policy) {
    if (z.im <= 0) throw std::domain_error("evaluate: Im z must be positive");
    if (z.im >= fundamental_height() || !s.modular) {
        check_truncation(s.n0, s.order(), z.im, policy, 12);
        return evaluate_raw(s, z);
    }
    auto fr = reduce_to_fundamental(z);
    check_truncation(s.n0, s.order(), fr.z_red.im, policy, 12);
    Complex v = evaluate_raw(s, fr.z_red);
    // f(γz) = j(γ,z)^w f(z)
    return v * pow(automorphy(fr.gamma, z), -s.weight);
}

Complex evaluate(const QSeries& s, const Complex& z, const EvalPolicy& policy) {
    return evaluate(to_real(s), z, policy);
}

RSeries RaisedForm::component(int r) const {
    RSeries s = to_real(h.at(static_cast<std::size_t>(r)));
    Real f = bmp::pow(-4 * pi(), n);
    for (auto& c : s.coeffs) c *= f;
    return s;
}

RaisedForm raised_identity(const QSeries& f) {
    RaisedForm r;
    r.base_weight = f.weight;
    r.n = 0;
    r.h = {f};
    return r;
}

RaisedForm raise(const QSeries& f, int n) {
    if (n < 1) throw std::invalid_argument("raise: n must be at least 1");
    RaisedForm r = raised_identity(f);
    int w = f.weight;
    for (int step = 0; step < n; ++step) {
        std::vector<QSeries> next(r.h.size() + 1);
        for (std::size_t i = 0; i < next.size(); ++i) {
            QSeries acc;
            bool have = false;
            if (i < r.h.size()) {
                acc = theta(r.h[i]);
                have = true;
            }
            if (i >= 1) {
                int rr = static_cast<int>(i);
                QSeries t = scale(r.h[i - 1], Rational(-(w - rr + 1)));
                if (have) {
                    t.weight = acc.weight;
                    acc = add(acc, t);
                } else {
                    acc = t;
                }
            }
            acc.weight = w + 2;
            acc.modular = false;
            next[i] = acc;
        }
        r.h = std::move(next);
        w += 2;
        r.n += 1;
    }
    return r;
}

namespace {

Complex evaluate_components(const std::vector<RSeries>& comps, int n, const Complex& z, const EvalPolicy& policy) {
    Real fy = 4 * pi() * z.im;
    Complex total;
    Real yp(1);
    for (std::size_t r = 0; r < comps.size(); ++r) {
        if (!comps[r].coeffs.empty()) {
            check_truncation(comps[r].n0, comps[r].order(), z.im, policy, 12 + n);
            total += evaluate_raw(comps[r], z) / yp;
        }
        yp *= fy;
    }
    return total;
}

Complex evaluate_raised_impl(const std::vector<RSeries>& comps, int n, int weight, const Complex& z,
                             const EvalPolicy& policy) {
    if (z.im <= 0) throw std::domain_error("evaluate_raised: Im z must be positive");
    if (z.im >= fundamental_height()) return evaluate_components(comps, n, z, policy);
    auto fr = reduce_to_fundamental(z);
    Complex v = evaluate_components(comps, n, fr.z_red, policy);
    return v * pow(automorphy(fr.gamma, z), -weight);
}

std::vector<RSeries> real_components(const RaisedForm& r) {
    std::vector<RSeries> out;
    for (int i = 0; i <= r.n; ++i) out.push_back(r.component(i));
    return out;
}

}  // namespace

Complex evaluate_raised(const RaisedForm& r, const Complex& z, const EvalPolicy& policy) {
    return evaluate_raised_impl(real_components(r), r.n, r.weight(), z, policy);
}

ModularFunction as_function(const QSeries& s, const EvalPolicy& policy, std::string description) {
    if (!s.modular) throw std::invalid_argument("as_function: series is not declared modular");
    auto rs = std::make_shared<RSeries>(to_real(s));
    ModularFunction f;
    f.weight = s.weight;
    f.description = std::move(description);
    f.at = [rs, policy](const Complex& z) { return evaluate(*rs, z, policy); };
    return f;
}

ModularFunction as_function(const RaisedForm& r, const EvalPolicy& policy, std::string description) {
    auto comps = std::make_shared<std::vector<RSeries>>(real_components(r));
    ModularFunction f;
    f.weight = r.weight();
    f.description = std::move(description);
    int n = r.n, w = r.weight();
    f.at = [comps, n, w, policy](const Complex& z) { return evaluate_raised_impl(*comps, n, w, z, policy); };
    return f;
}

std::string to_json(const QSeries& s) {
    std::ostringstream os;
    os << "{\"weight\":" << s.weight << ",\"n0\":" << s.n0 << ",\"coeffs\":[";
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        if (i) os << ',';
        os << '"' << s.coeffs[i] << '"';
    }
    os << "]}";
    return os.str();
}

}  // namespace tlift
