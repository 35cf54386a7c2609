#include "tlift/numeric.hpp"

#include <boost/math/constants/constants.hpp>

#include <cstdlib>
#include <stdexcept>

namespace tlift {

Precision::Precision(int d) : digits(d) {
    if (d < 15) throw std::invalid_argument("precision must be at least 15 digits");
}

Real Precision::tolerance() const { return boost::multiprecision::pow(Real(10), 5 - digits); }

Precision default_precision() {
    if (const char* env = std::getenv("TLIFT_DIGITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 15 && v <= 2000) return Precision(static_cast<int>(v));
    }
    return Precision(60);
}

const char* version() { return TLIFT_VERSION; }

PrecisionGuard::PrecisionGuard(const Precision& p, int guard_digits)
    : saved_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(p.digits + guard_digits));
}

PrecisionGuard::PrecisionGuard(int working_digits) : saved_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(working_digits));
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

Real with_digits(const Real& x, unsigned digits) { return Real(x, digits); }

Real pi() { return boost::math::constants::pi<Real>(); }

Real to_real(const BigInt& v) { return Real(v); }

Real to_real(const Rational& v) {
    return Real(boost::multiprecision::numerator(v)) / Real(boost::multiprecision::denominator(v));
}

Real real_from_string(const std::string& s) { return Real(s); }

Complex& Complex::operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}

Complex& Complex::operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
}

Complex& Complex::operator/=(const Complex& o) {
    Real d = o.re * o.re + o.im * o.im;
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator*(Complex a, const Real& s) { return a *= s; }
Complex operator*(const Real& s, Complex a) { return a *= s; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }
Complex operator/(Complex a, const Real& s) { return Complex(a.re / s, a.im / s); }

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
Real abs(const Complex& z) { return boost::multiprecision::sqrt(z.re * z.re + z.im * z.im); }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Complex cexp(const Complex& z) {
    Real m = boost::multiprecision::exp(z.re);
    return Complex(m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im));
}

Complex expi(const Real& t) { return Complex(boost::multiprecision::cos(t), boost::multiprecision::sin(t)); }

Complex ipow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return Complex(1, 0);
        case 1: return Complex(0, 1);
        case 2: return Complex(-1, 0);
        default: return Complex(0, -1);
    }
}

Complex pow(const Complex& z, int n) {
    if (n < 0) return Complex(1) / pow(z, -n);
    Complex result(1);
    Complex base = z;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

Complex csqrt(const Complex& z) {
    Real r = abs(z);
    if (r == 0) return Complex();
    Real a = boost::multiprecision::sqrt((r + abs(z.re)) / 2);
    if (z.re >= 0) return Complex(a, z.im / (2 * a));
    Real b = z.im >= 0 ? a : Real(-a);
    return Complex(abs(z.im) / (2 * a), b);
}

Complex clog(const Complex& z) {
    return Complex(boost::multiprecision::log(abs(z)), boost::multiprecision::atan2(z.im, z.re));
}

std::string format_real(const Real& x, int sig_digits) {
    if (x == 0) return "0";
    return x.str(sig_digits, std::ios_base::scientific);
}

}  // namespace tlift
