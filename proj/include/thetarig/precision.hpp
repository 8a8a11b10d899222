#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>

#include "thetarig/errors.hpp"

namespace thetarig {

namespace bmp = boost::multiprecision;

// Arbitrary-precision real scalar (MPFR-backed, runtime precision). Values
// carry the precision they were constructed with; newly constructed values
// take the current working precision.
using Real = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;

unsigned working_digits();
void set_working_digits(unsigned digits10);

// RAII bump of the working precision. Used where intermediate growth eats
// digits (lattice-shifted theta arguments, S-transformed tau).
class ScopedDigits {
public:
    explicit ScopedDigits(unsigned digits10) : saved_(working_digits()) {
        set_working_digits(digits10);
    }
    ~ScopedDigits() { set_working_digits(saved_); }
    ScopedDigits(const ScopedDigits&) = delete;
    ScopedDigits& operator=(const ScopedDigits&) = delete;

private:
    unsigned saved_;
};

Real pi_real(); // pi at the working precision
Real pow10(long e); // 10^e at the working precision

// Complex scalar over Real. All elementary functions use principal branches:
// arg in (-pi, pi], so sqrt has arg in (-pi/2, pi/2].
class Complex {
public:
    Complex() : re_(0), im_(0) {}
    Complex(int v) : re_(v), im_(0) {}
    Complex(long v) : re_(v), im_(0) {}
    Complex(const Real& re) : re_(re), im_(0) {}
    Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }

    Complex operator-() const { return Complex(-re_, -im_); }

    Complex& operator+=(const Complex& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        Real r = re_ * o.re_ - im_ * o.im_;
        Real i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    Complex& operator*=(const Real& s) {
        re_ *= s;
        im_ *= s;
        return *this;
    }
    Complex& operator/=(const Complex& o);

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator*(Complex a, const Real& s) { return a *= s; }
    friend Complex operator*(const Real& s, Complex a) { return a *= s; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }

    friend bool operator==(const Complex& a, const Complex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

private:
    Real re_, im_;
};

inline Complex conj(const Complex& z) { return Complex(z.re(), -z.im()); }

Real abs(const Complex& z);
Real norm(const Complex& z); // |z|^2
Real arg(const Complex& z);

Complex exp(const Complex& z);
Complex log(const Complex& z); // principal
Complex sqrt(const Complex& z); // principal
Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex inverse(const Complex& z);
Complex pow_int(const Complex& z, long n);

bool is_finite(const Complex& z);

inline Complex i_unit() { return Complex(Real(0), Real(1)); }

// exp(i pi x) for real rational-ish x given as Complex; kept for clarity at
// call sites building unit roots.
Complex exp_i_pi(const Real& x);

// Re-precision a value in place (same binary value, new working width).
// Binary operations inherit the left operand's precision, so raising the
// working precision only takes effect on values promoted through these.
Real at_digits(Real x, unsigned digits10);
Complex at_digits(const Complex& z, unsigned digits10);

// Decimal-string parsing at the working precision. parse_complex accepts
// forms like "2", "-0.4+1.1i", "i", "1e-3-2i".
Real parse_real(const std::string& s);
Complex parse_complex(const std::string& s);

std::string to_string(const Real& x, unsigned digits);
std::string to_string(const Complex& z, unsigned digits);

} // namespace thetarig
