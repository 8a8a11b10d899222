#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thetarig/precision.hpp"

using namespace thetarig;

namespace {
struct Setup {
    Setup() { set_working_digits(60); }
};
Setup setup_once;

Real tol(long e) { return pow10(e); }
} // namespace

TEST_CASE("complex arithmetic basics") {
    Complex a(Real("0.3"), Real("0.8"));
    Complex b(Real("-1.25"), Real("2"));
    CHECK(abs((a + b) - Complex(Real("-0.95"), Real("2.8"))) < tol(-55));
    CHECK(abs(a * b - Complex(Real("-1.975"), Real("-0.4"))) < tol(-55));
    CHECK(abs(a / b * b - a) < tol(-55));
    CHECK(abs(inverse(a) * a - Complex(1)) < tol(-55));
    CHECK(abs(pow_int(a, 5) - a * a * a * a * a) < tol(-55));
    CHECK(abs(pow_int(a, -3) * pow_int(a, 3) - Complex(1)) < tol(-55));
}

TEST_CASE("elementary functions satisfy defining identities") {
    Complex z(Real("0.7"), Real("-0.4"));
    CHECK(abs(exp(log(z)) - z) < tol(-55));
    CHECK(abs(sqrt(z) * sqrt(z) - z) < tol(-55));
    CHECK(abs(sin(z) * sin(z) + cos(z) * cos(z) - Complex(1)) < tol(-55));
    // exp(i pi) = -1
    CHECK(abs(exp_i_pi(Real(1)) + Complex(1)) < tol(-55));
}

TEST_CASE("principal sqrt lands in the right half plane") {
    Complex z(Real("-2"), Real("0.001"));
    CHECK(sqrt(z).re() >= 0);
    Complex w(Real("-2"), Real("-0.001"));
    CHECK(sqrt(w).re() >= 0);
    // on tau/i for tau in H the real part is positive
    Complex tau(Real("0.3"), Real("0.8"));
    Complex ti = tau * inverse(Complex(Real(0), Real(1)));
    CHECK(ti.re() > 0);
    CHECK(sqrt(ti).re() > 0);
}

TEST_CASE("complex literal parsing") {
    CHECK(abs(parse_complex("i") - Complex(Real(0), Real(1))) == 0);
    CHECK(abs(parse_complex("-i") + Complex(Real(0), Real(1))) == 0);
    CHECK(abs(parse_complex("2") - Complex(2)) == 0);
    CHECK(abs(parse_complex("0.3+0.8i") - Complex(Real("0.3"), Real("0.8"))) == 0);
    CHECK(abs(parse_complex("-0.4+1.1i") - Complex(Real("-0.4"), Real("1.1"))) == 0);
    CHECK(abs(parse_complex("1e-3-2.5e-1i") - Complex(Real("1e-3"), Real("-0.25"))) == 0);
    CHECK(abs(parse_complex(" 1 + 2i ") - Complex(Real(1), Real(2))) == 0);
    CHECK_THROWS_AS(parse_complex(""), input_error);
    CHECK_THROWS_AS(parse_complex("zz"), input_error);
}

TEST_CASE("string round trip at working precision") {
    Complex z(Real("0.123456789012345678901234567890123456789"), Real("-7.5e-12"));
    Complex back = parse_complex(to_string(z, 60));
    CHECK(abs(back - z) < tol(-55));
}

TEST_CASE("at_digits re-precisions values") {
    Real x = Real(1) / 3;
    Real y = at_digits(x, 120);
    CHECK(y.precision() >= 120);
    {
        ScopedDigits scope(120);
        Real z = y + pow10(-100); // left operand carries 120 digits
        CHECK(bmp::abs(z - y) > 0);
    }
    CHECK(working_digits() == 60);
}
