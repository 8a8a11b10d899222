#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <string>

#include "thetarig/errors.hpp"
#include "thetarig/jets.hpp"
#include "thetarig/precision.hpp"
#include "thetarig/taylor.hpp"

namespace thetarig {

// Exponent on the (1/8)Z>=0 grid: value = eighths/8. The grid carries the
// q^{1/8} theta prefactors and the q^{n-1/2} tower exponents exactly.
struct QExp {
    long eighths = 0;

    static QExp integer(long n) { return QExp{8 * n}; }
    static QExp half_odd(long n) { return QExp{8 * n - 4}; } // n - 1/2
    static QExp eighth(long e) { return QExp{e}; }

    friend QExp operator+(QExp a, QExp b) { return QExp{a.eighths + b.eighths}; }
    friend QExp operator-(QExp a, QExp b) { return QExp{a.eighths - b.eighths}; }
    friend auto operator<=>(const QExp&, const QExp&) = default;
};

std::string to_string(QExp e); // exponent as a reduced fraction

// Coefficient-ring glue used by QSeries<C>.
template <class C>
struct RingTraits;

template <>
struct RingTraits<Complex> {
    static Complex one() { return Complex(1); }
    static Complex from_scalar(const Complex& s) { return s; }
    static Complex inverse(const Complex& c) { return thetarig::inverse(c); }
    static bool is_zero(const Complex& c) { return c.is_zero(); }
};

template <>
struct RingTraits<Jet> {
    static Jet one() { return Jet::scalar(Complex(1)); }
    static Jet from_scalar(const Complex& s) { return Jet::scalar(s); }
    static Jet inverse(const Jet& c) { return c.inverse(); }
    static bool is_zero(const Jet& c) { return c.is_zero(); }
};

template <>
struct RingTraits<TaylorSeries> {
    static TaylorSeries one() { return TaylorSeries::scalar(Complex(1)); }
    static TaylorSeries from_scalar(const Complex& s) { return TaylorSeries::scalar(s); }
    static TaylorSeries inverse(const TaylorSeries& c) { return c.inverse(); }
    static bool is_zero(const TaylorSeries& c) { return c.is_zero(); }
};

// Series in q with exponents on the (1/8)Z>=0 grid and coefficients in C.
// Arithmetic is exact modulo exponents > truncation.
template <class C>
class QSeries {
public:
    explicit QSeries(QExp truncation) : trunc_(truncation) {}

    static QSeries one(QExp truncation) {
        QSeries s(truncation);
        s.set_coeff(QExp{0}, RingTraits<C>::one());
        return s;
    }
    static QSeries monomial(QExp e, C coeff, QExp truncation) {
        QSeries s(truncation);
        s.set_coeff(e, std::move(coeff));
        return s;
    }

    QExp truncation() const { return trunc_; }
    const std::map<QExp, C>& coeffs() const { return c_; }

    C coeff(QExp e) const {
        auto it = c_.find(e);
        return it == c_.end() ? C{} : it->second;
    }

    void set_coeff(QExp e, C v) {
        if (e.eighths < 0) throw domain_error("negative q-exponent");
        if (e > trunc_) return;
        if (RingTraits<C>::is_zero(v))
            c_.erase(e);
        else
            c_.insert_or_assign(e, std::move(v));
    }

    bool is_zero() const { return c_.empty(); }

    QSeries& operator+=(const QSeries& o) {
        trunc_ = std::min(trunc_, o.trunc_);
        drop_tail();
        for (const auto& [e, v] : o.c_) {
            if (e > trunc_) continue;
            auto [it, inserted] = c_.try_emplace(e, v);
            if (!inserted) {
                it->second += v;
                if (RingTraits<C>::is_zero(it->second)) c_.erase(it);
            }
        }
        return *this;
    }

    QSeries& operator-=(const QSeries& o) {
        QSeries neg = o;
        for (auto& [e, v] : neg.c_) v = C{} - v;
        return *this += neg;
    }

    QSeries& operator*=(const QSeries& o) {
        QExp trunc = std::min(trunc_, o.trunc_);
        QSeries r(trunc);
        for (const auto& [ea, va] : c_) {
            if (ea > trunc) continue;
            for (const auto& [eb, vb] : o.c_) {
                QExp e = ea + eb;
                if (e > trunc) break; // map is ordered by exponent
                C prod = va * vb;
                if (RingTraits<C>::is_zero(prod)) continue;
                auto it = r.c_.find(e);
                if (it == r.c_.end())
                    r.c_.emplace(e, std::move(prod));
                else
                    it->second += prod;
            }
        }
        // re-prune
        for (auto it = r.c_.begin(); it != r.c_.end();) {
            if (RingTraits<C>::is_zero(it->second))
                it = r.c_.erase(it);
            else
                ++it;
        }
        *this = std::move(r);
        return *this;
    }

    QSeries& scale(const C& s) {
        for (auto& [e, v] : c_) v = v * s;
        for (auto it = c_.begin(); it != c_.end();) {
            if (RingTraits<C>::is_zero(it->second))
                it = c_.erase(it);
            else
                ++it;
        }
        return *this;
    }

    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(QSeries a, const QSeries& b) { return a *= b; }

    // Multiplicative inverse modulo truncation; the constant term must be a
    // unit of C.
    QSeries inverse() const {
        C c0 = coeff(QExp{0});
        if (RingTraits<C>::is_zero(c0))
            throw inversion_error("q-series inverse: zero constant term");
        C inv0 = RingTraits<C>::inverse(c0);
        QSeries r(trunc_);
        r.set_coeff(QExp{0}, inv0);
        for (long e = 1; e <= trunc_.eighths; ++e) {
            C acc{};
            for (const auto& [f, af] : c_) {
                if (f.eighths < 1 || f.eighths > e) continue;
                C b = r.coeff(QExp{e - f.eighths});
                if (RingTraits<C>::is_zero(b)) continue;
                acc += af * b;
            }
            if (RingTraits<C>::is_zero(acc)) continue;
            C v = C{} - inv0 * acc;
            r.set_coeff(QExp{e}, std::move(v));
        }
        return r;
    }

    // Apply a map to every coefficient (e.g. Jet integration, ch evaluation).
    template <class F>
    auto map(F&& f) const -> QSeries<std::decay_t<decltype(f(std::declval<const C&>()))>> {
        using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
        QSeries<D> r(trunc_);
        for (const auto& [e, v] : c_) r.set_coeff(e, f(v));
        return r;
    }

private:
    void drop_tail() {
        for (auto it = c_.begin(); it != c_.end();) {
            if (it->first > trunc_)
                it = c_.erase(it);
            else
                ++it;
        }
    }

    QExp trunc_;
    std::map<QExp, C> c_;
};

// Truncated product of factors j = 1, 2, ... where factor j deviates from 1
// only at exponents >= min_exponent_of(j). Factors entirely above the
// truncation are skipped; a schedule that fails to grow diverges.
template <class C>
QSeries<C> product_expand(const std::function<QSeries<C>(unsigned)>& factor_at,
                          const std::function<QExp(unsigned)>& min_exponent_of, QExp truncation) {
    QSeries<C> acc = QSeries<C>::one(truncation);
    QExp last{-1};
    unsigned stall = 0;
    for (unsigned j = 1;; ++j) {
        QExp mj = min_exponent_of(j);
        if (mj < last) throw divergence_error("product_expand: decreasing exponent schedule");
        stall = (mj == last) ? stall + 1 : 0;
        if (stall > 4096) throw divergence_error("product_expand: exponent schedule stalls");
        last = mj;
        if (mj > truncation) break;
        acc *= factor_at(j);
    }
    return acc;
}

// Evaluate a scalar q-series at the nome of tau: q^{e/8} = e^{2 pi i tau e/8}.
class Tau; // theta.hpp
Complex qseries_eval(const QSeries<Complex>& s, const Tau& tau);

std::string to_string(const QSeries<Complex>& s, unsigned digits);

} // namespace thetarig
