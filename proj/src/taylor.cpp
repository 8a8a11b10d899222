#include "thetarig/taylor.hpp"

#include <algorithm>

namespace thetarig {

TaylorSeries TaylorSeries::exp_linear(const Complex& a, const Complex& b, unsigned order) {
    TaylorSeries s = zero(order);
    Complex term = exp(a);
    s.c_[0] = term;
    for (unsigned k = 1; k <= order; ++k) {
        term *= b;
        term *= Real(1) / Real(k);
        s.c_[k] = term;
    }
    return s;
}

TaylorSeries TaylorSeries::linear(const Complex& c, const Complex& b, unsigned order) {
    TaylorSeries s = zero(order);
    s.c_[0] = c;
    if (order >= 1) s.c_[1] = b;
    return s;
}

unsigned TaylorSeries::combined_order(const TaylorSeries& a, const TaylorSeries& b) {
    if (a.scalar_) return b.order();
    if (b.scalar_) return a.order();
    return std::min(a.order(), b.order());
}

TaylorSeries& TaylorSeries::operator+=(const TaylorSeries& o) {
    if (scalar_ && o.scalar_) {
        c_[0] += o.c_[0];
        return *this;
    }
    unsigned ord = combined_order(*this, o);
    TaylorSeries r = zero(ord);
    for (unsigned k = 0; k <= ord; ++k) r.c_[k] = coeff(k) + o.coeff(k);
    *this = std::move(r);
    return *this;
}

TaylorSeries& TaylorSeries::operator-=(const TaylorSeries& o) {
    if (scalar_ && o.scalar_) {
        c_[0] -= o.c_[0];
        return *this;
    }
    unsigned ord = combined_order(*this, o);
    TaylorSeries r = zero(ord);
    for (unsigned k = 0; k <= ord; ++k) r.c_[k] = coeff(k) - o.coeff(k);
    *this = std::move(r);
    return *this;
}

TaylorSeries& TaylorSeries::operator*=(const TaylorSeries& o) {
    if (scalar_ && o.scalar_) {
        c_[0] *= o.c_[0];
        return *this;
    }
    if (o.scalar_) return scale(o.c_[0]);
    if (scalar_) {
        Complex s = c_[0];
        *this = o;
        return scale(s);
    }
    unsigned ord = combined_order(*this, o);
    TaylorSeries r = zero(ord);
    for (unsigned i = 0; i <= ord && i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (unsigned j = 0; i + j <= ord && j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    *this = std::move(r);
    return *this;
}

TaylorSeries& TaylorSeries::scale(const Complex& s) {
    for (auto& c : c_) c *= s;
    return *this;
}

TaylorSeries TaylorSeries::inverse() const {
    if (c_[0].is_zero()) throw inversion_error("Taylor inverse: zero constant term");
    if (scalar_) return scalar(thetarig::inverse(c_[0]));
    unsigned ord = order();
    TaylorSeries r = zero(ord);
    Complex inv0 = thetarig::inverse(c_[0]);
    r.c_[0] = inv0;
    for (unsigned k = 1; k <= ord; ++k) {
        Complex acc(0);
        for (unsigned j = 1; j <= k; ++j) acc += coeff(j) * r.c_[k - j];
        r.c_[k] = -(inv0 * acc);
    }
    return r;
}

TaylorSeries TaylorSeries::derivative() const {
    if (scalar_) return scalar(Complex(0));
    unsigned ord = order();
    if (ord == 0) return zero(0);
    TaylorSeries r = zero(ord - 1);
    for (unsigned k = 1; k <= ord; ++k) r.c_[k - 1] = c_[k] * Real(k);
    return r;
}

} // namespace thetarig
