#pragma once

#include <vector>

#include "thetarig/precision.hpp"

namespace thetarig {

// Truncated univariate Taylor series sum_k c_k w^k over Complex.
//
// A "scalar" series represents a constant with no truncation, so it combines
// with any order without clipping it; proper series combine to the smaller
// order (truncation semantics).
class TaylorSeries {
public:
    TaylorSeries() : c_(1, Complex(0)), scalar_(true) {} // scalar zero

    static TaylorSeries scalar(Complex value) {
        TaylorSeries s;
        s.c_[0] = std::move(value);
        return s;
    }
    static TaylorSeries zero(unsigned order) {
        TaylorSeries s;
        s.scalar_ = false;
        s.c_.assign(order + 1, Complex(0));
        return s;
    }
    // e^{a + b w} truncated: coefficients e^a b^k / k!
    static TaylorSeries exp_linear(const Complex& a, const Complex& b, unsigned order);
    // c + b w
    static TaylorSeries linear(const Complex& c, const Complex& b, unsigned order);
    static TaylorSeries from_coeffs(std::vector<Complex> coeffs) {
        TaylorSeries s;
        s.scalar_ = false;
        s.c_ = std::move(coeffs);
        if (s.c_.empty()) s.c_.assign(1, Complex(0));
        return s;
    }

    void set_coeff(unsigned k, Complex v) {
        if (scalar_ && k > 0) throw domain_error("set_coeff on scalar Taylor series");
        if (k < c_.size()) c_[k] = std::move(v);
    }

    bool is_scalar() const { return scalar_; }
    unsigned order() const { return static_cast<unsigned>(c_.size()) - 1; }
    Complex coeff(unsigned k) const {
        if (k < c_.size()) return c_[k];
        return Complex(0);
    }
    const Complex& constant() const { return c_[0]; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }

    TaylorSeries& operator+=(const TaylorSeries& o);
    TaylorSeries& operator-=(const TaylorSeries& o);
    TaylorSeries& operator*=(const TaylorSeries& o);
    TaylorSeries& scale(const Complex& s);

    friend TaylorSeries operator+(TaylorSeries a, const TaylorSeries& b) { return a += b; }
    friend TaylorSeries operator-(TaylorSeries a, const TaylorSeries& b) { return a -= b; }
    friend TaylorSeries operator*(TaylorSeries a, const TaylorSeries& b) { return a *= b; }

    TaylorSeries inverse() const; // needs nonzero constant term
    TaylorSeries derivative() const;

private:
    // Unify two operand shapes: result order is min over proper series.
    static unsigned combined_order(const TaylorSeries& a, const TaylorSeries& b);

    std::vector<Complex> c_;
    bool scalar_;
};

} // namespace thetarig
