#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thetarig/taylor.hpp"

using namespace thetarig;

namespace {
struct Setup {
    Setup() { set_working_digits(60); }
};
Setup setup_once;

Real tol(long e) { return pow10(e); }
} // namespace

TEST_CASE("exp_linear has coefficients e^a b^k / k!") {
    Complex a(Real("0.2"), Real("0.1")), b(Real("-1.5"), Real("0.7"));
    TaylorSeries s = TaylorSeries::exp_linear(a, b, 6);
    Complex bpow = exp(a); // e^a b^k
    Real fact(1);
    for (unsigned k = 0; k <= 6; ++k) {
        if (k > 0) {
            bpow *= b;
            fact *= k;
        }
        CHECK(abs(s.coeff(k) - bpow * Complex(Real(1) / fact)) < tol(-50));
    }
}

TEST_CASE("product of exponentials adds the exponents") {
    Complex b1(Real("0.4"), Real("1")), b2(Real("-0.3"), Real("0.2"));
    TaylorSeries p = TaylorSeries::exp_linear(Complex(0), b1, 8) *
                     TaylorSeries::exp_linear(Complex(0), b2, 8);
    TaylorSeries q = TaylorSeries::exp_linear(Complex(0), b1 + b2, 8);
    for (unsigned k = 0; k <= 8; ++k) CHECK(abs(p.coeff(k) - q.coeff(k)) < tol(-50));
}

TEST_CASE("inverse is a two-sided inverse modulo order") {
    TaylorSeries f = TaylorSeries::exp_linear(Complex(Real("0.3"), Real(0)),
                                              Complex(Real("2"), Real("-1")), 7);
    TaylorSeries g = f.inverse();
    TaylorSeries prod = f * g;
    CHECK(abs(prod.coeff(0) - Complex(1)) < tol(-50));
    for (unsigned k = 1; k <= 7; ++k) CHECK(abs(prod.coeff(k)) < tol(-50));
    CHECK_THROWS_AS(TaylorSeries::zero(3).inverse(), inversion_error);
}

TEST_CASE("derivative of exp_linear multiplies by b") {
    Complex b(Real("0.9"), Real("0.2"));
    TaylorSeries f = TaylorSeries::exp_linear(Complex(0), b, 6);
    TaylorSeries d = f.derivative();
    for (unsigned k = 0; k <= 5; ++k) CHECK(abs(d.coeff(k) - b * f.coeff(k)) < tol(-50));
}

TEST_CASE("scalars combine with series without clipping the order") {
    TaylorSeries s = TaylorSeries::scalar(Complex(2));
    TaylorSeries f = TaylorSeries::exp_linear(Complex(0), Complex(1), 5);
    TaylorSeries p = s * f;
    CHECK(p.order() == 5);
    CHECK(abs(p.coeff(5) - Complex(2) * f.coeff(5)) < tol(-50));
    TaylorSeries q = f + s;
    CHECK(q.order() == 5);
    CHECK(abs(q.coeff(0) - (f.coeff(0) + Complex(2))) < tol(-50));
}
