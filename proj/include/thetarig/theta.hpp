#pragma once

#include <vector>

#include "thetarig/precision.hpp"
#include "thetarig/qseries.hpp"
#include "thetarig/taylor.hpp"

namespace thetarig {

// The four Jacobi theta functions in the convention
//   theta  (v,tau) = 2 q^{1/8} sin(pi v) prod (1-q^j)(1-e+ q^j)(1-e- q^j)
//   theta1 (v,tau) = 2 q^{1/8} cos(pi v) prod (1-q^j)(1+e+ q^j)(1+e- q^j)
//   theta2 (v,tau) =              prod (1-q^j)(1-e+ q^{j-1/2})(1-e- q^{j-1/2})
//   theta3 (v,tau) =              prod (1-q^j)(1+e+ q^{j-1/2})(1+e- q^{j-1/2})
// with q = e^{2 pi i tau} and e+- = e^{+-2 pi i v}. theta is odd in v, the
// other three are even.
enum class ThetaKind { theta, theta1, theta2, theta3 };

const char* to_string(ThetaKind k);

// Modular parameter tau in the upper half-plane. Fractional q-powers are
// taken in the tau-form q^{e/8} = e^{2 pi i tau e/8}, which keeps theta
// single-valued in tau (a principal 8th root of q would branch-jump under
// tau -> tau+1). Both nome conventions are exposed: q_full = e^{2 pi i tau}
// is the one all series here use; q_half = e^{pi i tau} appears in the
// quasi-periodicity literature and satisfies q_half^2 = q_full.
class Tau {
public:
    explicit Tau(Complex v);

    const Complex& value() const { return v_; }
    Complex q_full() const { return q_pow_eighths(8); }
    Complex q_half() const { return q_pow_eighths(4); }
    Complex q_pow_eighths(long e) const;
    const Real& abs_q() const { return abs_q_; }

    Tau s_image() const; // -1/tau
    Tau t_image() const; // tau+1

private:
    Complex v_;
    Real abs_q_;
};

struct PrecisionConfig {
    unsigned digits = 60;
    unsigned product_order = 0; // 0 = derive from digits and |q|

    // Number of product factors N with |q|^N below the target tail,
    // including the growth of |e^{+-2 pi i v}| for off-axis v.
    unsigned order_for(const Tau& tau, const Real& max_abs_im_v) const;
    unsigned order_for(const Tau& tau) const { return order_for(tau, Real(0)); }

    Real tolerance() const { return pow10(-static_cast<long>(digits)); }
};

Complex theta_eval(ThetaKind k, const Complex& v, const Tau& tau, const PrecisionConfig& cfg);

// Taylor coefficients of w -> theta_k(v + w, tau) through w^order, computed
// by term-wise differentiation of the product (every factor is expanded as a
// short exponential jet in w).
std::vector<Complex> theta_taylor(ThetaKind k, const Complex& v, const Tau& tau, unsigned order,
                                  const PrecisionConfig& cfg);

// k-th v-derivative; order 0 reduces to theta_eval.
Complex theta_v_deriv(ThetaKind k, const Complex& v, const Tau& tau, unsigned order,
                      const PrecisionConfig& cfg);

// theta'(0,tau) = 2 pi q^{1/8} prod (1-q^j)^3, directly from the product.
Complex theta_prime0(const Tau& tau, const PrecisionConfig& cfg);

// |theta'(0,tau) - pi theta1 theta2 theta3 (0,tau)|
Real jacobi_identity_residual(const Tau& tau, const PrecisionConfig& cfg);

// Lattice-shift multipliers c with theta_k(v + shift, tau) = c theta_k(v, tau).
// Shift by 1: (-1, -1, +1, +1). Shift by tau: s q_full^{-1/2} e^{-2 pi i v}
// with s = (-1, +1, -1, +1) in kind order.
enum class LatticeShift { one, tau };
Complex quasi_period_factor(ThetaKind k, LatticeShift shift, const Complex& v, const Tau& tau);

// Modular images under the SL2(Z) generators acting by S(v,tau) = (v/tau,
// -1/tau) and T(v,tau) = (v, tau+1):
//   theta_k(gen(v, tau)) = prefactor * theta_{kind}(v, tau).
// S maps (theta, theta1, theta2, theta3) -> (theta, theta2, theta1, theta3)
// with prefactor sqrt(tau/i) e^{pi i v^2/tau} (times 1/i for theta only);
// T fixes theta, theta1 with prefactor e^{pi i/4} and swaps theta2 <-> theta3
// with prefactor 1. sqrt is principal; tau/i has positive real part on H.
enum class ModularGen { S, T };
struct ModularImage {
    ThetaKind kind;
    Complex prefactor;
    Complex v;
    Tau tau;
};
ModularImage modular_image(ThetaKind k, ModularGen gen, const Complex& v, const Tau& tau);

// ---------------------------------------------------------------------------
// q-expansions of the theta-quotient towers, generic over the coefficient
// ring (Complex for isolated points, Jet over Chern roots, TaylorSeries for
// log-derivative coefficient extraction). ep/em stand for e^{+-2 pi i w}
// where w is the theta argument.
// ---------------------------------------------------------------------------

// prod_{j>=1} (1 + s ep q^{j-h})(1 + s em q^{j-h}) / (1 + s q^{j-h})^2,
// h = 1/2 on the half grid: the Lambda_{s q^{j-h}} tower of a reduced
// conjugate pair. Equals theta-quotients:
//   s=+1, h=0  : theta1(w)/theta1(0) / cos(pi w)
//   s=-1, h=1/2: theta2(w)/theta2(0)
//   s=+1, h=1/2: theta3(w)/theta3(0)
//   s=-1, h=0  : pi theta(w) / (sin(pi w) theta'(0))
template <class C>
QSeries<C> lambda_tower_pair(const C& ep, const C& em, int sign, bool half_grid, QExp trunc) {
    auto factor = [&](unsigned j) {
        QExp e = half_grid ? QExp::half_odd(static_cast<long>(j)) : QExp::integer(static_cast<long>(j));
        Complex s(sign);
        QSeries<C> num = QSeries<C>::one(trunc);
        num.set_coeff(e, RingTraits<C>::from_scalar(s) * ep);
        QSeries<C> num2 = QSeries<C>::one(trunc);
        num2.set_coeff(e, RingTraits<C>::from_scalar(s) * em);
        QSeries<Complex> den = QSeries<Complex>::one(trunc);
        den.set_coeff(e, s);
        QSeries<Complex> deninv = den.inverse();
        QSeries<C> d = deninv.map([](const Complex& c) { return RingTraits<C>::from_scalar(c); });
        return num * num2 * d * d;
    };
    auto min_exp = [&](unsigned j) {
        return half_grid ? QExp::half_odd(static_cast<long>(j)) : QExp::integer(static_cast<long>(j));
    };
    return product_expand<C>(factor, min_exp, trunc);
}

// prod_{j>=1} (1-q^j)^2 / ((1-ep q^j)(1-em q^j)): the S_{q^j} tower of a
// reduced conjugate pair; equals sin(pi w)/pi * theta'(0)/theta(w).
template <class C>
QSeries<C> s_tower_pair(const C& ep, const C& em, QExp trunc) {
    auto factor = [&](unsigned j) {
        QExp e = QExp::integer(static_cast<long>(j));
        QSeries<C> den = QSeries<C>::one(trunc);
        den.set_coeff(e, C{} - ep);
        QSeries<C> den2 = QSeries<C>::one(trunc);
        den2.set_coeff(e, C{} - em);
        QSeries<Complex> num = QSeries<Complex>::one(trunc);
        num.set_coeff(e, Complex(-1));
        QSeries<C> n = num.map([](const Complex& c) { return RingTraits<C>::from_scalar(c); });
        return n * n * den.inverse() * den2.inverse();
    };
    auto min_exp = [&](unsigned j) { return QExp::integer(static_cast<long>(j)); };
    return product_expand<C>(factor, min_exp, trunc);
}

} // namespace thetarig
