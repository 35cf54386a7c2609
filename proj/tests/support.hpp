#pragma once

#include "tlift/maass.hpp"
#include "tlift/numeric.hpp"

#include <memory>
#include <string>

namespace tlift::test {

// Shared Poincaré input: k = 5, m = 1 at the CLI defaults, cached under the build tree.
inline PoincareOptions poincare_k5_options() {
    PoincareOptions po;
    po.k = 5;
    po.m = 1;
    po.terms = 60;
    po.digits = 40;
    po.c_max = 5000;
    return po;
}

inline std::shared_ptr<const PoincareForm> poincare_k5() {
    static std::shared_ptr<const PoincareForm> cached = [] {
        PrecisionGuard g(40);
        return std::make_shared<const PoincareForm>(load_or_build_poincare(poincare_k5_options(), TLIFT_TEST_CACHE));
    }();
    return cached;
}

inline Real rel_diff(const Complex& a, const Complex& b) {
    Real s = abs(b);
    return s == 0 ? abs(a) : abs(a - b) / s;
}

inline Real pow10(int e) { return boost::multiprecision::pow(Real(10), e); }

}  // namespace tlift::test
