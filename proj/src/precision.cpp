#include "thetarig/precision.hpp"

#include <mpfr.h>

#include <cctype>
#include <sstream>

namespace thetarig {

unsigned working_digits() { return static_cast<unsigned>(Real::default_precision()); }

void set_working_digits(unsigned digits10) {
    if (digits10 == 0) throw domain_error("working precision must be positive");
    Real::default_precision(digits10);
}

Real pi_real() {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

Real pow10(long e) {
    Real r;
    mpfr_ui_pow_ui(r.backend().data(), 10u, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
    if (e < 0) r = 1 / r;
    return r;
}

Complex& Complex::operator/=(const Complex& o) {
    Real d = o.re_ * o.re_ + o.im_ * o.im_;
    if (d.is_zero()) throw inversion_error("division by complex zero");
    Real r = (re_ * o.re_ + im_ * o.im_) / d;
    Real i = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

Real abs(const Complex& z) {
    Real r;
    mpfr_hypot(r.backend().data(), z.re().backend().data(), z.im().backend().data(), MPFR_RNDN);
    return r;
}

Real norm(const Complex& z) { return z.re() * z.re() + z.im() * z.im(); }

Real arg(const Complex& z) {
    Real a;
    mpfr_atan2(a.backend().data(), z.im().backend().data(), z.re().backend().data(), MPFR_RNDN);
    return a;
}

Complex exp(const Complex& z) {
    Real m = bmp::exp(z.re());
    Real s, c;
    mpfr_sin_cos(s.backend().data(), c.backend().data(), z.im().backend().data(), MPFR_RNDN);
    return Complex(m * c, m * s);
}

Complex log(const Complex& z) { return Complex(bmp::log(abs(z)), arg(z)); }

Complex sqrt(const Complex& z) {
    Real r = abs(z);
    if (r.is_zero()) return Complex(0);
    Real half_arg = arg(z) / 2;
    Real s, c;
    mpfr_sin_cos(s.backend().data(), c.backend().data(), half_arg.backend().data(), MPFR_RNDN);
    Real m = bmp::sqrt(r);
    return Complex(m * c, m * s);
}

Complex sin(const Complex& z) {
    // sin(x+iy) = sin x cosh y + i cos x sinh y
    Real sx, cx;
    mpfr_sin_cos(sx.backend().data(), cx.backend().data(), z.re().backend().data(), MPFR_RNDN);
    Real sh = bmp::sinh(z.im()), ch = bmp::cosh(z.im());
    return Complex(sx * ch, cx * sh);
}

Complex cos(const Complex& z) {
    Real sx, cx;
    mpfr_sin_cos(sx.backend().data(), cx.backend().data(), z.re().backend().data(), MPFR_RNDN);
    Real sh = bmp::sinh(z.im()), ch = bmp::cosh(z.im());
    return Complex(cx * ch, -sx * sh);
}

Complex inverse(const Complex& z) {
    Real d = norm(z);
    if (d.is_zero()) throw inversion_error("inverse of complex zero");
    return Complex(z.re() / d, -z.im() / d);
}

Complex pow_int(const Complex& z, long n) {
    if (n < 0) return inverse(pow_int(z, -n));
    Complex acc(1), base = z;
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
        if (e & 1u) acc *= base;
        base *= base;
        e >>= 1u;
    }
    return acc;
}

bool is_finite(const Complex& z) {
    return mpfr_number_p(z.re().backend().data()) && mpfr_number_p(z.im().backend().data());
}

Complex exp_i_pi(const Real& x) {
    Real a = pi_real() * x;
    Real s, c;
    mpfr_sin_cos(s.backend().data(), c.backend().data(), a.backend().data(), MPFR_RNDN);
    return Complex(c, s);
}

Real at_digits(Real x, unsigned digits10) {
    x.precision(static_cast<unsigned>(digits10));
    return x;
}

Complex at_digits(const Complex& z, unsigned digits10) {
    return Complex(at_digits(z.re(), digits10), at_digits(z.im(), digits10));
}

Real parse_real(const std::string& s) {
    if (s.empty()) throw input_error("empty number literal");
    try {
        return Real(s);
    } catch (const std::exception&) {
        throw input_error("bad number literal: '" + s + "'");
    }
}

Complex parse_complex(const std::string& raw) {
    std::string s;
    s.reserve(raw.size());
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw input_error("empty complex literal");

    const bool has_i = (s.back() == 'i' || s.back() == 'I' || s.back() == 'j');
    if (!has_i) return Complex(parse_real(s));

    s.pop_back(); // drop the trailing i
    // Split at the last top-level sign that is not an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_of = [](const std::string& t) -> Real {
        if (t.empty() || t == "+") return Real(1);
        if (t == "-") return Real(-1);
        return parse_real(t);
    };
    if (split == std::string::npos) return Complex(Real(0), imag_of(s));
    return Complex(parse_real(s.substr(0, split)), imag_of(s.substr(split)));
}

std::string to_string(const Real& x, unsigned digits) {
    return x.str(static_cast<int>(digits), std::ios_base::scientific);
}

std::string to_string(const Complex& z, unsigned digits) {
    std::ostringstream os;
    os << to_string(z.re(), digits);
    if (mpfr_signbit(z.im().backend().data()))
        os << to_string(z.im(), digits) << "i";
    else
        os << "+" << to_string(z.im(), digits) << "i";
    return os.str();
}

} // namespace thetarig
