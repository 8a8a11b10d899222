#include "thetarig/theta.hpp"

#include <mpfr.h>

#include "thetarig/errors.hpp"

namespace thetarig {

const char* to_string(ThetaKind k) {
    switch (k) {
    case ThetaKind::theta: return "theta";
    case ThetaKind::theta1: return "theta1";
    case ThetaKind::theta2: return "theta2";
    case ThetaKind::theta3: return "theta3";
    }
    return "?";
}

Tau::Tau(Complex v) : v_(std::move(v)) {
    if (!(v_.im() > 0))
        throw domain_error("tau must lie in the upper half-plane, got Im tau = " +
                           to_string(v_.im(), 6));
    abs_q_ = bmp::exp(-2 * pi_real() * v_.im());
}

Complex Tau::q_pow_eighths(long e) const {
    // e^{2 pi i tau e/8}, single-valued in tau
    Complex a = Complex(Real(0), pi_real() * Real(e) / Real(4)) * v_;
    return exp(a);
}

Tau Tau::s_image() const { return Tau(-inverse(v_)); }
Tau Tau::t_image() const { return Tau(v_ + Complex(1)); }

unsigned PrecisionConfig::order_for(const Tau& tau, const Real& max_abs_im_v) const {
    if (product_order > 0) return product_order;
    // need |q|^N e^{2 pi |Im v|} < 10^{-(digits+10)}
    Real ln10 = bmp::log(Real(10));
    Real target = Real(static_cast<long>(digits) + 10) * ln10 + 2 * pi_real() * max_abs_im_v;
    Real denom = -bmp::log(tau.abs_q());
    long n = static_cast<long>(bmp::ceil(target / denom + 4).convert_to<double>());
    if (n < 8) n = 8;
    return static_cast<unsigned>(n);
}

namespace {

struct KindShape {
    bool has_prefactor; // 2 q^{1/8} sin/cos
    bool odd;           // sin (theta) vs cos (theta1)
    int sign;           // +-1 in (1 +- e q^{...})
    bool half_grid;     // exponents j - 1/2
};

KindShape shape_of(ThetaKind k) {
    switch (k) {
    case ThetaKind::theta: return {true, true, -1, false};
    case ThetaKind::theta1: return {true, false, +1, false};
    case ThetaKind::theta2: return {false, false, -1, true};
    case ThetaKind::theta3: return {false, false, +1, true};
    }
    throw domain_error("bad theta kind");
}

} // namespace

Complex theta_eval(ThetaKind k, const Complex& v, const Tau& tau, const PrecisionConfig& cfg) {
    const KindShape sh = shape_of(k);
    const unsigned N = cfg.order_for(tau, bmp::abs(v.im()));
    const Real pi = pi_real();
    const Complex two_pi_i(Real(0), 2 * pi);
    const Complex ep = exp(two_pi_i * v);
    const Complex em = inverse(ep);
    const Complex q = tau.q_full();
    const Complex s(sh.sign);

    Complex acc(1);
    Complex qj(1);
    for (unsigned j = 1; j <= N; ++j) {
        qj *= q;
        acc *= Complex(1) - qj;
        Complex e = sh.half_grid ? tau.q_pow_eighths(8 * static_cast<long>(j) - 4) : qj;
        acc *= Complex(1) + s * ep * e;
        acc *= Complex(1) + s * em * e;
    }
    if (sh.has_prefactor) {
        Complex trig = sh.odd ? sin(pi * v) : cos(pi * v);
        acc *= Complex(2) * tau.q_pow_eighths(1) * trig;
    }
    if (!is_finite(acc))
        throw precision_error("theta product overflowed at the requested precision");
    return acc;
}

std::vector<Complex> theta_taylor(ThetaKind k, const Complex& v, const Tau& tau, unsigned order,
                                  const PrecisionConfig& cfg) {
    const KindShape sh = shape_of(k);
    const unsigned N = cfg.order_for(tau, bmp::abs(v.im()));
    const Real pi = pi_real();
    const Complex i2pi(Real(0), 2 * pi);
    const Complex q = tau.q_full();
    const Complex s(sh.sign);

    // e^{+-2 pi i (v + w)} as Taylor jets in w
    TaylorSeries ep = TaylorSeries::exp_linear(i2pi * v, i2pi, order);
    TaylorSeries em = TaylorSeries::exp_linear(-(i2pi * v), -i2pi, order);

    TaylorSeries acc = TaylorSeries::scalar(Complex(1));
    Complex qj(1);
    for (unsigned j = 1; j <= N; ++j) {
        qj *= q;
        Complex e = sh.half_grid ? tau.q_pow_eighths(8 * static_cast<long>(j) - 4) : qj;
        TaylorSeries f1 = ep;
        f1.scale(s * e);
        f1 += TaylorSeries::scalar(Complex(1));
        TaylorSeries f2 = em;
        f2.scale(s * e);
        f2 += TaylorSeries::scalar(Complex(1));
        acc *= f1;
        acc *= f2;
        acc.scale(Complex(1) - qj);
    }
    if (sh.has_prefactor) {
        // sin(pi(v+w)) = (e^{i pi v} e^{i pi w} - e^{-i pi v} e^{-i pi w}) / 2i
        const Complex ipi(Real(0), pi);
        TaylorSeries plus = TaylorSeries::exp_linear(ipi * v, ipi, order);
        TaylorSeries minus = TaylorSeries::exp_linear(-(ipi * v), -ipi, order);
        TaylorSeries trig = sh.odd ? plus - minus : plus + minus;
        trig.scale(sh.odd ? inverse(Complex(Real(0), Real(2))) : Complex(Real(1) / Real(2)));
        acc *= trig;
        acc.scale(Complex(2) * tau.q_pow_eighths(1));
    }
    std::vector<Complex> out(order + 1);
    for (unsigned j = 0; j <= order; ++j) out[j] = acc.coeff(j);
    return out;
}

Complex theta_v_deriv(ThetaKind k, const Complex& v, const Tau& tau, unsigned order,
                      const PrecisionConfig& cfg) {
    if (order == 0) return theta_eval(k, v, tau, cfg);
    auto coeffs = theta_taylor(k, v, tau, order, cfg);
    Real fact(1);
    for (unsigned j = 2; j <= order; ++j) fact *= j;
    return coeffs[order] * fact;
}

Complex theta_prime0(const Tau& tau, const PrecisionConfig& cfg) {
    const unsigned N = cfg.order_for(tau);
    const Complex q = tau.q_full();
    Complex acc(1);
    Complex qj(1);
    for (unsigned j = 1; j <= N; ++j) {
        qj *= q;
        Complex f = Complex(1) - qj;
        acc *= f * f * f;
    }
    return Complex(2) * pi_real() * tau.q_pow_eighths(1) * acc;
}

Real jacobi_identity_residual(const Tau& tau, const PrecisionConfig& cfg) {
    Complex lhs = theta_prime0(tau, cfg);
    Complex rhs = pi_real() * theta_eval(ThetaKind::theta1, Complex(0), tau, cfg) *
                  theta_eval(ThetaKind::theta2, Complex(0), tau, cfg) *
                  theta_eval(ThetaKind::theta3, Complex(0), tau, cfg);
    return abs(lhs - rhs);
}

Complex quasi_period_factor(ThetaKind k, LatticeShift shift, const Complex& v, const Tau& tau) {
    if (shift == LatticeShift::one) {
        switch (k) {
        case ThetaKind::theta:
        case ThetaKind::theta1: return Complex(-1);
        case ThetaKind::theta2:
        case ThetaKind::theta3: return Complex(1);
        }
    }
    // v -> v + tau: s * q_full^{-1/2} e^{-2 pi i v}
    Complex base = inverse(tau.q_half()) * exp(Complex(Real(0), -2 * pi_real()) * v);
    switch (k) {
    case ThetaKind::theta:
    case ThetaKind::theta2: return -base;
    case ThetaKind::theta1:
    case ThetaKind::theta3: return base;
    }
    throw domain_error("bad theta kind");
}

ModularImage modular_image(ThetaKind k, ModularGen gen, const Complex& v, const Tau& tau) {
    if (gen == ModularGen::T) {
        Complex e8 = exp_i_pi(Real(1) / Real(4));
        switch (k) {
        case ThetaKind::theta: return {ThetaKind::theta, e8, v, tau};
        case ThetaKind::theta1: return {ThetaKind::theta1, e8, v, tau};
        case ThetaKind::theta2: return {ThetaKind::theta3, Complex(1), v, tau};
        case ThetaKind::theta3: return {ThetaKind::theta2, Complex(1), v, tau};
        }
    }
    // S: theta_k(v/tau, -1/tau) = pref * theta_{k'}(v, tau)
    Complex root = sqrt(tau.value() * inverse(i_unit())); // principal; Re > 0 on H
    Complex gauss = exp(Complex(Real(0), pi_real()) * v * v * inverse(tau.value()));
    Complex pref = root * gauss;
    switch (k) {
    case ThetaKind::theta: return {ThetaKind::theta, pref * inverse(i_unit()), v, tau};
    case ThetaKind::theta1: return {ThetaKind::theta2, pref, v, tau};
    case ThetaKind::theta2: return {ThetaKind::theta1, pref, v, tau};
    case ThetaKind::theta3: return {ThetaKind::theta3, pref, v, tau};
    }
    throw domain_error("bad theta kind");
}

Complex qseries_eval(const QSeries<Complex>& s, const Tau& tau) {
    Complex acc(0);
    for (const auto& [e, c] : s.coeffs()) acc += c * tau.q_pow_eighths(e.eighths);
    return acc;
}

std::string to_string(QExp e) {
    long n = e.eighths, d = 8;
    if (n == 0) return "0";
    long g = std::gcd(n, d);
    n /= g;
    d /= g;
    if (d == 1) return std::to_string(n);
    return std::to_string(n) + "/" + std::to_string(d);
}

std::string to_string(const QSeries<Complex>& s, unsigned digits) {
    if (s.coeffs().empty()) return "0";
    std::string out;
    for (const auto& [e, c] : s.coeffs()) {
        if (!out.empty()) out += " + ";
        out += "(" + to_string(c, digits) + ")";
        if (e.eighths != 0) out += "*q^{" + to_string(e) + "}";
    }
    return out;
}

} // namespace thetarig
