#include "tlift/qforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tlift {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
    if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
        throw std::overflow_error("quadratic form coefficient exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// x*v - u*y = 1 for coprime (x, y).
std::pair<std::int64_t, std::int64_t> complete_column(std::int64_t x, std::int64_t y) {
    // extended gcd on (x, y): s*x + t*y = 1  =>  v = s, u = -t
    std::int64_t old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t q = floor_div(old_r, r);
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    if (old_r == -1) {
        old_s = -old_s;
        old_t = -old_t;
    } else if (old_r != 1) {
        throw std::logic_error("complete_column: entries not coprime");
    }
    return {-old_t, old_s};
}

bool squarefree(std::int64_t n) {
    n = n < 0 ? -n : n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
        if (n % p == 0) n /= p;
    }
    return true;
}

}  // namespace

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("integer overflow");
    return r;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("integer overflow");
    return r;
}

std::int64_t Mat2i::det() const { return checked_add(checked_mul(a, d), -checked_mul(b, c)); }

Mat2i Mat2i::operator*(const Mat2i& o) const {
    return {checked_add(checked_mul(a, o.a), checked_mul(b, o.c)),
            checked_add(checked_mul(a, o.b), checked_mul(b, o.d)),
            checked_add(checked_mul(c, o.a), checked_mul(d, o.c)),
            checked_add(checked_mul(c, o.b), checked_mul(d, o.d))};
}

Mat2i Mat2i::inverse() const {
    std::int64_t dt = det();
    if (dt == 1) return {d, -b, -c, a};
    if (dt == -1) return {-d, b, c, -a};
    throw std::domain_error("matrix not unimodular");
}

Mat2r Mat2r::operator*(const Mat2r& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2r Mat2r::from(const Mat2i& m) { return {Real(m.a), Real(m.b), Real(m.c), Real(m.d)}; }

Complex act(const Mat2r& g, const Complex& z) { return (g.a * z + Complex(g.b)) / (g.c * z + Complex(g.d)); }
Complex act(const Mat2i& g, const Complex& z) { return act(Mat2r::from(g), z); }
Complex automorphy(const Mat2r& g, const Complex& z) { return g.c * z + Complex(g.d); }
Complex automorphy(const Mat2i& g, const Complex& z) { return automorphy(Mat2r::from(g), z); }

std::int64_t QuadForm::disc() const {
    return narrow(static_cast<i128>(b) * b - static_cast<i128>(4) * a * c);
}

std::int64_t QuadForm::content() const { return std::gcd(std::gcd(a, b), c); }

QuadForm QuadForm::primitive() const {
    std::int64_t g = content();
    if (g == 0) return *this;
    return {a / g, b / g, c / g};
}

std::int64_t QuadForm::value(std::int64_t x, std::int64_t y) const {
    i128 v = static_cast<i128>(a) * x * x + static_cast<i128>(b) * x * y + static_cast<i128>(c) * y * y;
    return narrow(v);
}

QuadForm QuadForm::transform(const Mat2i& g) const {
    i128 A = a, B = b, C = c;
    i128 al = g.a, be = g.b, ga = g.c, de = g.d;
    i128 na = A * al * al + B * al * ga + C * ga * ga;
    i128 nb = 2 * A * al * be + B * (al * de + be * ga) + 2 * C * ga * de;
    i128 nc = A * be * be + B * be * de + C * de * de;
    return {narrow(na), narrow(nb), narrow(nc)};
}

std::string QuadForm::str() const {
    std::ostringstream os;
    os << '[' << a << ',' << b << ',' << c << ']';
    return os.str();
}

std::int64_t isqrt(std::int64_t n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<i128>(r) * r > n) --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(std::int64_t n, std::int64_t* root) {
    if (n < 0) return false;
    std::int64_t r = isqrt(n);
    if (root) *root = r;
    return r * r == n;
}

bool is_discriminant(std::int64_t D) {
    std::int64_t r = mod_pos(D, 4);
    return D != 0 && (r == 0 || r == 1);
}

Reduction reduce_definite(const QuadForm& q) {
    if (!q.positive_definite()) throw std::invalid_argument("reduce_definite: form " + q.str() + " is not positive definite");
    QuadForm f = q;
    Mat2i g = Mat2i::identity();
    for (;;) {
        // normalize b into (-a, a]
        std::int64_t n = floor_div(f.a - f.b, 2 * f.a);
        if (n != 0) {
            Mat2i t = Mat2i::T(n);
            f = f.transform(t);
            g = g * t;
        }
        if (f.c < f.a || (f.c == f.a && f.b < 0)) {
            f = f.transform(Mat2i::S());
            g = g * Mat2i::S();
            continue;
        }
        break;
    }
    return {f, g};
}

Reduction reduce_square(const QuadForm& q) {
    std::int64_t D = q.disc();
    std::int64_t n;
    if (!is_square(D, &n) || D == 0) throw std::invalid_argument("reduce_square: discriminant is not a positive square");
    std::vector<std::pair<std::int64_t, std::int64_t>> roots;
    if (q.a == 0) {
        roots.emplace_back(1, 0);
        std::int64_t g = std::gcd(q.c, q.b);
        roots.emplace_back(-q.c / g, q.b / g);
    } else {
        for (std::int64_t s : {std::int64_t(1), std::int64_t(-1)}) {
            std::int64_t x = -q.b + s * n, y = 2 * q.a;
            std::int64_t g = std::gcd(x, y);
            roots.emplace_back(x / g, y / g);
        }
    }
    for (auto [x, y] : roots) {
        auto [u, v] = complete_column(x, y);
        Mat2i gm{x, u, y, v};
        QuadForm f = q.transform(gm);
        if (f.a != 0) throw std::logic_error("reduce_square: root did not clear a");
        if (f.b != n) continue;
        std::int64_t t = -floor_div(f.c, n);
        Mat2i tm = Mat2i::T(t);
        return {f.transform(tm), gm * tm};
    }
    throw std::logic_error("reduce_square: no root gives b = +sqrt(D)");
}

bool is_reduced_indefinite(const QuadForm& q) {
    std::int64_t D = q.disc();
    std::int64_t s = isqrt(D);
    if (q.b <= 0 || q.b > s) return false;  // 0 < b < sqrt(D)
    std::int64_t a2 = 2 * (q.a < 0 ? -q.a : q.a);
    // sqrt(D) - b < 2|a|  <=>  2|a| + b > sqrt(D)  <=>  2|a| + b >= s + 1
    // 2|a| < sqrt(D) + b  <=>  2|a| - b <= s
    return a2 + q.b >= s + 1 && a2 - q.b <= s;
}

Reduction rho(const QuadForm& q) {
    if (q.c == 0) throw std::invalid_argument("rho: c = 0 (square discriminant)");
    std::int64_t D = q.disc();
    std::int64_t s = isqrt(D);
    std::int64_t ac = q.c < 0 ? -q.c : q.c;
    std::int64_t m = 2 * ac;
    std::int64_t lo = (ac > s) ? -ac + 1 : s + 1 - m;
    std::int64_t target = mod_pos(-q.b, m);
    std::int64_t bp = lo + mod_pos(target - lo, m);
    std::int64_t t = (bp + q.b) / (2 * q.c);
    Mat2i g{0, -1, 1, t};
    QuadForm f = q.transform(g);
    return {f, g};
}

Reduction reduce_indefinite(const QuadForm& q) {
    QuadForm f = q;
    Mat2i g = Mat2i::identity();
    for (int it = 0; it < 100000; ++it) {
        if (is_reduced_indefinite(f)) return {f, g};
        auto r = rho(f);
        f = r.form;
        g = g * r.gamma;
    }
    throw std::runtime_error("reduce_indefinite: no convergence for " + q.str());
}

namespace {

std::vector<Reduction> cycle_of(const QuadForm& reduced) {
    std::vector<Reduction> out;
    QuadForm f = reduced;
    Mat2i g = Mat2i::identity();
    do {
        out.push_back({f, g});
        auto r = rho(f);
        f = r.form;
        g = g * r.gamma;
        if (out.size() > 1000000) throw std::runtime_error("cycle_of: cycle too long");
    } while (f != reduced);
    return out;
}

}  // namespace

Reduction canonical_indefinite(const QuadForm& q) {
    auto red = reduce_indefinite(q);
    auto cyc = cycle_of(red.form);
    // smallest form with a > 0 (reduced cycles alternate in the sign of a), else smallest overall
    auto best = std::min_element(cyc.begin(), cyc.end(), [](const Reduction& x, const Reduction& y) {
        if ((x.form.a > 0) != (y.form.a > 0)) return x.form.a > 0;
        return x.form < y.form;
    });
    return {best->form, red.gamma * best->gamma};
}

QuadForm canonical_form(const QuadForm& q) {
    std::int64_t D = q.disc();
    if (D < 0) {
        if (q.a > 0) return reduce_definite(q).form;
        return reduce_definite(q.sign_flip()).form.sign_flip();
    }
    if (is_square(D)) return reduce_square(q).form;
    return canonical_indefinite(q).form;
}

int stabilizer_order(const QuadForm& q) {
    if (q.disc() >= 0) return 1;
    QuadForm p = q.a > 0 ? q.primitive() : q.sign_flip().primitive();
    QuadForm r = reduce_definite(p).form;
    if (r.a == r.c && r.b == 0) return 2;
    if (r.a == r.b && r.b == r.c) return 3;
    return 1;
}

PellSolution pell4(std::int64_t D) {
    if (D <= 0 || is_square(D)) throw std::invalid_argument("pell4: D must be positive and non-square");
    if (!is_discriminant(D)) throw std::invalid_argument("pell4: D must be 0 or 1 mod 4");
    // The proper cycle of the principal form yields the generator of its automorphism group.
    std::int64_t b0 = D % 2;
    QuadForm principal{1, b0, (b0 * b0 - D) / 4};
    auto red = reduce_indefinite(principal);
    QuadForm f = red.form;
    BigInt ma = 1, mb = 0, mc = 0, md = 1;
    do {
        auto r = rho(f);
        BigInt na = ma * r.gamma.a + mb * r.gamma.c;
        BigInt nb = ma * r.gamma.b + mb * r.gamma.d;
        BigInt nc = mc * r.gamma.a + md * r.gamma.c;
        BigInt nd = mc * r.gamma.b + md * r.gamma.d;
        ma = na;
        mb = nb;
        mc = nc;
        md = nd;
        f = r.form;
    } while (f != red.form);
    // automorph of f = [A,B,C]: [[(t-Bu)/2, -Cu],[Au, (t+Bu)/2]]
    BigInt t = ma + md;
    BigInt u = mc / f.a;
    if (t < 0) {
        t = -t;
        u = -u;
    }
    if (u < 0) u = -u;
    if (t * t - BigInt(D) * u * u != 4) throw std::logic_error("pell4: cycle product is not an automorph");
    return {t, u};
}

Mat2Big automorph(const QuadForm& q) {
    std::int64_t D = q.disc();
    if (D <= 0 || is_square(D)) throw std::invalid_argument("automorph: discriminant must be positive and non-square");
    QuadForm p = q.primitive();
    auto [t, u] = pell4(p.disc());
    BigInt a(p.a), b(p.b), c(p.c);
    return {(t - b * u) / 2, -c * u, a * u, (t + b * u) / 2};
}

ClassSet enumerate_classes(std::int64_t D) {
    if (!is_discriminant(D)) throw std::invalid_argument("discriminant must be nonzero and 0 or 1 mod 4");
    ClassSet cs;
    cs.discriminant = D;
    if (D < 0) {
        std::int64_t amax = isqrt(-D / 3);
        for (std::int64_t a = 1; a <= amax; ++a) {
            for (std::int64_t b = -a + 1; b <= a; ++b) {
                std::int64_t num = b * b - D;
                if (num % (4 * a) != 0) continue;
                std::int64_t c = num / (4 * a);
                if (c < a) continue;
                if (c == a && b < 0) continue;
                cs.representatives.push_back({a, b, c});
            }
        }
        std::sort(cs.representatives.begin(), cs.representatives.end());
        for (auto& q : cs.representatives) {
            cs.stabilizer_orders.push_back(stabilizer_order(q));
            cs.automorphs.emplace_back();
        }
        return cs;
    }
    std::int64_t n;
    if (is_square(D, &n)) {
        for (std::int64_t c = 0; c < n; ++c) {
            cs.representatives.push_back({0, n, c});
            cs.stabilizer_orders.push_back(1);
            cs.automorphs.emplace_back();
        }
        return cs;
    }
    std::int64_t s = isqrt(D);
    std::set<QuadForm> reduced;
    for (std::int64_t b = 1; b <= s; ++b) {
        if ((b - D) % 2 != 0) continue;
        std::int64_t ac = (b * b - D) / 4;  // negative
        std::int64_t m = -ac;
        for (std::int64_t d = 1; d <= m; ++d) {
            if (m % d != 0) continue;
            for (std::int64_t a : {d, -d}) {
                QuadForm f{a, b, ac / a};
                if (is_reduced_indefinite(f)) reduced.insert(f);
            }
        }
    }
    std::set<QuadForm> seen;
    for (const auto& f : reduced) {
        if (seen.count(f)) continue;
        for (auto& r : cycle_of(f)) seen.insert(r.form);
        cs.representatives.push_back(canonical_indefinite(f).form);
    }
    std::sort(cs.representatives.begin(), cs.representatives.end());
    for (auto& q : cs.representatives) {
        cs.stabilizer_orders.push_back(1);
        cs.automorphs.emplace_back(automorph(q));
    }
    return cs;
}

int kronecker(std::int64_t a, std::int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    while (n % 2 == 0) {
        if (a % 2 == 0) return 0;
        n /= 2;
        std::int64_t r = mod_pos(a, 8);
        if (r == 3 || r == 5) result = -result;
    }
    // Jacobi symbol (a/n), n odd positive
    std::int64_t x = mod_pos(a, n);
    std::int64_t m = n;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            std::int64_t r = m % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(x, m);
        if (x % 4 == 3 && m % 4 == 3) result = -result;
        x %= m;
    }
    return m == 1 ? result : 0;
}

bool is_fundamental(std::int64_t delta) {
    if (delta == 1) return true;
    if (delta == 0) return false;
    std::int64_t r = mod_pos(delta, 4);
    if (r == 1) return squarefree(delta);
    if (r == 0) {
        std::int64_t m = mod_pos(delta / 4, 4);
        return (m == 2 || m == 3) && squarefree(delta / 4);
    }
    return false;
}

GenusCharContext::GenusCharContext(std::int64_t d) : delta(d) {
    if (!is_fundamental(d)) throw std::invalid_argument("not a fundamental discriminant: " + std::to_string(d));
}

int genus_character(const GenusCharContext& ctx, const QuadForm& q) {
    const std::int64_t delta = ctx.delta;
    std::int64_t D = q.disc();
    if (D % delta != 0) return 0;
    if (std::gcd(q.content(), delta) != 1) return 0;
    if (delta == 1) return 1;
    const std::int64_t ad = delta < 0 ? -delta : delta;
    std::int64_t r = mod_pos(D / delta, 4);
    if (r != 0 && r != 1) {
        // D/Δ is not a discriminant: (Δ/n) depends on the represented n. Use the represented value
        // coprime to Δ of least |n| (positive on ties) of the reduced form, a class invariant.
        QuadForm red = canonical_form(q);
        const std::int64_t bound = 2 * ad + 2;
        std::int64_t best = 0;
        for (std::int64_t x = -bound; x <= bound; ++x)
            for (std::int64_t y = -bound; y <= bound; ++y) {
                std::int64_t n = red.value(x, y);
                if (n == 0 || std::gcd(n, ad) != 1) continue;
                std::int64_t an = n < 0 ? -n : n, ab = best < 0 ? -best : best;
                if (best == 0 || an < ab || (an == ab && n > best)) best = n;
            }
        if (best == 0) throw std::logic_error("genus_character: no represented value coprime to Delta");
        return kronecker(delta, best);
    }
    const std::int64_t cap = 10 * ad;
    for (std::int64_t box = 1; box <= cap; ++box) {
        for (std::int64_t x = -box; x <= box; ++x) {
            for (std::int64_t y = -box; y <= box; ++y) {
                if (std::max(x < 0 ? -x : x, y < 0 ? -y : y) != box) continue;
                std::int64_t n = q.value(x, y);
                if (n == 0) continue;
                if (std::gcd(n, ad) == 1) return kronecker(delta, n);
            }
        }
    }
    throw std::logic_error("genus_character: no represented value coprime to Delta within box " + std::to_string(cap));
}

bool is_genus_character(std::int64_t delta, std::int64_t D) {
    if (delta == 0 || D % delta != 0) return false;
    std::int64_t r = mod_pos(D / delta, 4);
    return r == 0 || r == 1;
}

Complex cm_point(const QuadForm& q) {
    if (!q.positive_definite()) throw std::invalid_argument("cm_point: form must be positive definite");
    Real sd = boost::multiprecision::sqrt(Real(-q.disc()));
    Real den(2 * q.a);
    return Complex(Real(-q.b) / den, sd / den);
}

GeodesicFrame geodesic_frame(const QuadForm& q) {
    std::int64_t D = q.disc();
    if (D <= 0) throw std::invalid_argument("geodesic_frame: discriminant must be positive");
    GeodesicFrame f;
    f.form = q;
    f.infinite = is_square(D);
    Real sd = boost::multiprecision::sqrt(Real(D));
    if (q.a != 0) {
        Real two_a(2 * q.a);
        Real r1 = (Real(-q.b) + sd) / two_a;
        Real r2 = (Real(-q.b) - sd) / two_a;
        Real delta = Real(q.a) / sd;
        f.g = {r1, r2 * delta, Real(1), delta};
        f.endpoints = {r2, r1};
    } else if (q.b > 0) {
        Real cb = Real(-q.c) / Real(q.b);
        f.g = {cb, Real(-1), Real(1), Real(0)};
        f.endpoints = {Real(0), cb};
        f.endpoint_at_infinity = {true, false};
    } else {
        Real cb = Real(-q.c) / Real(q.b);
        f.g = {Real(1), cb, Real(0), Real(1)};
        f.endpoints = {cb, Real(0)};
        f.endpoint_at_infinity = {false, true};
    }
    if (!f.infinite) {
        QuadForm p = q.primitive();
        auto [t, u] = pell4(p.disc());
        f.epsilon = (to_real(t) + to_real(u) * boost::multiprecision::sqrt(Real(p.disc()))) / 2;
    }
    return f;
}

CuspFactorization cusp_factorization(const GeodesicFrame& frame, bool times_S) {
    const QuadForm& q = frame.form;
    std::int64_t n;
    if (!is_square(q.disc(), &n)) throw std::invalid_argument("cusp_factorization: discriminant is not a square");
    // cusp h(oo) as p/r, with (1, 0) standing for oo
    std::int64_t p, r;
    if (q.a != 0) {
        p = -q.b + (times_S ? -n : n);
        r = 2 * q.a;
    } else if ((q.b > 0) != times_S) {
        p = -q.c;
        r = q.b;
    } else {
        p = 1;
        r = 0;
    }
    std::int64_t g = std::gcd(p, r);
    p /= g;
    r /= g;
    if (r < 0 || (r == 0 && p < 0)) {
        p = -p;
        r = -r;
    }
    auto [u, v] = complete_column(p, r);
    Mat2i gamma{p, u, r, v};
    Mat2r h = times_S ? frame.g * Mat2r::from(Mat2i::S()) : frame.g;
    Mat2r A = Mat2r::from(gamma.inverse()) * h;
    if (boost::multiprecision::abs(A.c) > boost::multiprecision::pow(Real(10), -Real(Real::default_precision()) / 2))
        throw std::logic_error("cusp_factorization: lower-left entry does not vanish");
    return {gamma, A.a, A.b};
}

}  // namespace tlift
