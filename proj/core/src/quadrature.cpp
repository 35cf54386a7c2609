#include "tlift/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace tlift {

namespace bmp = boost::multiprecision;

namespace {

GLRule compute_rule(int n) {
    GLRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const Real eps = bmp::pow(Real(10), -Real(Real::default_precision()) + 2);
    const Real p = pi();
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        Real x = bmp::cos(p * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
        Real dp;
        for (int it = 0; it < 100; ++it) {
            Real p0(1), p1 = x;
            for (int k = 2; k <= n; ++k) {
                Real p2 = (Real(2 * k - 1) * x * p1 - Real(k - 1) * p0) / Real(k);
                p0 = p1;
                p1 = p2;
            }
            dp = Real(n) * (x * p1 - p0) / (x * x - 1);
            Real dx = p1 / dp;
            x -= dx;
            if (bmp::abs(dx) < eps) {
                // refresh derivative at the converged node
                p0 = 1;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    Real p2 = (Real(2 * k - 1) * x * p1 - Real(k - 1) * p0) / Real(k);
                    p0 = p1;
                    p1 = p2;
                }
                dp = Real(n) * (x * p1 - p0) / (x * x - 1);
                break;
            }
        }
        Real w = 2 / ((1 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

}  // namespace

const GLRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
    static std::mutex mu;
    static std::map<std::pair<int, unsigned>, std::unique_ptr<GLRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, Real::default_precision());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<GLRule>(compute_rule(n))).first;
    return *it->second;
}

Complex integrate_panels(const ComplexFn& f, const Real& a, const Real& b, int panels, int order) {
    const GLRule& rule = gauss_legendre(order);
    Real h = (b - a) / panels;
    Complex total;
    for (int p = 0; p < panels; ++p) {
        Real lo = a + h * p;
        Real mid = lo + h / 2;
        Complex s;
        for (int i = 0; i < order; ++i) s += rule.weights[i] * f(mid + h / 2 * rule.nodes[i]);
        total += s * (h / 2);
    }
    return total;
}

Real integrate_panels(const RealFn& f, const Real& a, const Real& b, int panels, int order) {
    const GLRule& rule = gauss_legendre(order);
    Real h = (b - a) / panels;
    Real total(0);
    for (int p = 0; p < panels; ++p) {
        Real lo = a + h * p;
        Real mid = lo + h / 2;
        Real s(0);
        for (int i = 0; i < order; ++i) s += rule.weights[i] * f(mid + h / 2 * rule.nodes[i]);
        total += s * (h / 2);
    }
    return total;
}

QuadResult integrate_adaptive(const ComplexFn& f, const Real& a, const Real& b, const Real& tol, int start_panels,
                              int max_panels, int order) {
    QuadResult res;
    int panels = start_panels;
    Complex prev = integrate_panels(f, a, b, panels, order);
    res.evaluations += static_cast<long>(panels) * order;
    for (;;) {
        panels *= 2;
        Complex cur = integrate_panels(f, a, b, panels, order);
        res.evaluations += static_cast<long>(panels) * order;
        res.error = abs(cur - prev);
        res.value = cur;
        if (res.error <= tol || panels >= max_panels) break;
        prev = cur;
    }
    return res;
}

QuadResult integrate_to_infinity(const ComplexFn& f, const Real& a, const Real& width, const Real& tol, int order,
                                 int max_panels) {
    QuadResult res;
    Real lo = a;
    int quiet = 0;
    for (int p = 0; p < max_panels; ++p) {
        Real hi = lo + width;
        // two-level estimate per panel
        Complex coarse = integrate_panels(f, lo, hi, 1, order);
        Complex fine = integrate_panels(f, lo, hi, 2, order);
        res.evaluations += 3L * order;
        res.value += fine;
        res.error += abs(fine - coarse);
        if (abs(fine) < tol) {
            if (++quiet >= 2) return res;
        } else {
            quiet = 0;
        }
        lo = hi;
    }
    throw std::runtime_error("integrate_to_infinity: integrand did not decay within the panel budget");
}

QuadResult integrate_periodic(const ComplexFn& f, const Real& a, const Real& b, const Real& tol, int start_nodes,
                              int max_nodes) {
    QuadResult res;
    int n = start_nodes;
    Real h = (b - a) / n;
    Complex sum;
    for (int i = 0; i < n; ++i) sum += f(a + h * i);
    res.evaluations = n;
    Complex prev = sum * h;
    for (;;) {
        // midpoints of the current grid
        Complex add;
        for (int i = 0; i < n; ++i) add += f(a + h * (Real(i) + Real(0.5)));
        res.evaluations += n;
        sum += add;
        n *= 2;
        h /= 2;
        Complex cur = sum * h;
        res.error = abs(cur - prev);
        res.value = cur;
        if (res.error <= tol || n >= max_nodes) break;
        prev = cur;
    }
    return res;
}

}  // namespace tlift
