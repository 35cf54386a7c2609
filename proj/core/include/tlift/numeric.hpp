#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>

namespace tlift {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Target significant decimal digits for a computation.
struct Precision {
    int digits = 60;

    Precision() = default;
    explicit Precision(int d);

    // Tolerance 10^(5 - digits) used for "to working precision" checks.
    Real tolerance() const;
};

// Default digits: TLIFT_DIGITS from the environment when set, else 60.
Precision default_precision();

// Library version string.
const char* version();

// Sets the MPFR default precision for the lifetime of the guard.
class PrecisionGuard {
public:
    explicit PrecisionGuard(const Precision& p, int guard_digits = 10);
    explicit PrecisionGuard(int working_digits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

// Copy of x carried at `digits` decimal digits (copies otherwise keep the source precision).
Real with_digits(const Real& x, unsigned digits);

Real pi();
Real to_real(const BigInt& v);
Real to_real(const Rational& v);
Real real_from_string(const std::string& s);

struct Complex {
    Real re;
    Real im;

    Complex() : re(0), im(0) {}
    Complex(const Real& r) : re(r), im(0) {}  // NOLINT
    Complex(const Real& r, const Real& i) : re(r), im(i) {}
    Complex(int r) : re(r), im(0) {}  // NOLINT
    Complex(double r, double i) : re(r), im(i) {}

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator*=(const Real& s);
    Complex& operator/=(const Complex& o);
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator-(const Complex& a);
Complex operator*(Complex a, const Complex& b);
Complex operator*(Complex a, const Real& s);
Complex operator*(const Real& s, Complex a);
Complex operator/(Complex a, const Complex& b);
Complex operator/(Complex a, const Real& s);

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);
Complex cexp(const Complex& z);
// e^{i t}
Complex expi(const Real& t);
Complex ipow(int n);  // i^n
Complex pow(const Complex& z, int n);
Complex csqrt(const Complex& z);
Complex clog(const Complex& z);

// Scientific notation with `sig_digits` digits after the point (deterministic); zero renders as "0".
std::string format_real(const Real& x, int sig_digits);

}  // namespace tlift
