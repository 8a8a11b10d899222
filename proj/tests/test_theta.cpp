#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "thetarig/theta.hpp"

using namespace thetarig;

namespace {
struct Setup {
    Setup() { set_working_digits(60); }
};
Setup setup_once;

Real tol(long e) { return pow10(e); }

const PrecisionConfig cfg{}; // 60 digits, auto order

std::vector<Tau> test_taus() {
    return {Tau(parse_complex("i")), Tau(parse_complex("0.3+0.8i")),
            Tau(parse_complex("-0.4+1.1i")), Tau(parse_complex("2i"))};
}

std::vector<Complex> test_vs() {
    return {parse_complex("0.17+0.05i"), parse_complex("-0.33+0.21i"),
            parse_complex("0.08-0.12i"), parse_complex("0.41+0.02i"),
            parse_complex("-0.26-0.07i")};
}

const ThetaKind kinds[4] = {ThetaKind::theta, ThetaKind::theta1, ThetaKind::theta2,
                            ThetaKind::theta3};
} // namespace

TEST_CASE("tau must lie in the upper half-plane") {
    CHECK_THROWS_AS(Tau(parse_complex("0.5")), domain_error);
    CHECK_THROWS_AS(Tau(parse_complex("1-2i")), domain_error);
    CHECK_NOTHROW(Tau(parse_complex("0.5+0.01i")));
}

TEST_CASE("structural zeros: theta at 0 and theta1 at 1/2") {
    Tau tau(parse_complex("i"));
    CHECK(abs(theta_eval(ThetaKind::theta, Complex(0), tau, cfg)) == 0);
    CHECK(abs(theta_eval(ThetaKind::theta1, Complex(Real(1) / Real(2), Real(0)), tau, cfg)) <
          tol(-55));
}

TEST_CASE("truncation-doubling oracle: theta2 at P=60") {
    Tau tau(parse_complex("0.3+0.8i"));
    PrecisionConfig coarse = cfg;
    coarse.product_order = coarse.order_for(tau);
    PrecisionConfig fine = cfg;
    fine.product_order = 2 * coarse.product_order;
    Complex a = theta_eval(ThetaKind::theta2, Complex(0), tau, coarse);
    Complex b = theta_eval(ThetaKind::theta2, Complex(0), tau, fine);
    CHECK(abs(a - b) < tol(-60));
}

TEST_CASE("parity in v") {
    for (const auto& tau : test_taus()) {
        for (const auto& v : test_vs()) {
            CHECK(abs(theta_eval(ThetaKind::theta, -v, tau, cfg) +
                      theta_eval(ThetaKind::theta, v, tau, cfg)) < tol(-50));
            for (int k = 1; k < 4; ++k)
                CHECK(abs(theta_eval(kinds[k], -v, tau, cfg) -
                          theta_eval(kinds[k], v, tau, cfg)) < tol(-50));
        }
    }
}

TEST_CASE("jacobi identity residual below 1e-50 at P=60") {
    for (const auto& tau : test_taus()) CHECK(jacobi_identity_residual(tau, cfg) < tol(-50));
}

TEST_CASE("jacobi residual decreases monotonically as the product order doubles") {
    Tau tau(parse_complex("0.3+0.8i"));
    Real last(1);
    for (unsigned order : {4u, 8u, 16u, 32u}) {
        PrecisionConfig c = cfg;
        c.product_order = order;
        Real r = jacobi_identity_residual(tau, c);
        CHECK(r <= last);
        last = r;
    }
}

TEST_CASE("derivatives: theta'(0) equals the Jacobi product and even orders vanish") {
    for (const auto& tau : test_taus()) {
        Complex dp = theta_v_deriv(ThetaKind::theta, Complex(0), tau, 1, cfg);
        Complex prod = pi_real() * theta_eval(ThetaKind::theta1, Complex(0), tau, cfg) *
                       theta_eval(ThetaKind::theta2, Complex(0), tau, cfg) *
                       theta_eval(ThetaKind::theta3, Complex(0), tau, cfg);
        CHECK(abs(dp - prod) < tol(-50));
        CHECK(abs(dp - theta_prime0(tau, cfg)) < tol(-50));
        // theta odd in v: even derivatives vanish at 0
        CHECK(abs(theta_v_deriv(ThetaKind::theta, Complex(0), tau, 2, cfg)) < tol(-50));
        CHECK(abs(theta_v_deriv(ThetaKind::theta, Complex(0), tau, 4, cfg)) < tol(-50));
    }
}

TEST_CASE("first derivative matches a central finite difference") {
    Tau tau(parse_complex("i"));
    Complex v = parse_complex("0.2");
    Complex h = parse_complex("1e-10");
    for (auto kind : kinds) {
        Complex d = theta_v_deriv(kind, v, tau, 1, cfg);
        Complex fd = (theta_eval(kind, v + h, tau, cfg) - theta_eval(kind, v - h, tau, cfg)) /
                     (Complex(2) * h);
        CHECK(abs(d - fd) < tol(-15));
    }
}

TEST_CASE("theta_v_deriv at order 0 reduces to theta_eval") {
    Tau tau(parse_complex("0.3+0.8i"));
    Complex v = parse_complex("0.11+0.07i");
    for (auto kind : kinds)
        CHECK(abs(theta_v_deriv(kind, v, tau, 0, cfg) - theta_eval(kind, v, tau, cfg)) == 0);
}

TEST_CASE("quasi-periodicity multipliers under v -> v+1 and v -> v+tau") {
    for (const auto& tau : test_taus()) {
        for (const auto& v : test_vs()) {
            for (auto kind : kinds) {
                Complex lhs1 = theta_eval(kind, v + Complex(1), tau, cfg);
                Complex c1 = quasi_period_factor(kind, LatticeShift::one, v, tau);
                CHECK(abs(lhs1 - c1 * theta_eval(kind, v, tau, cfg)) < tol(-50));

                Complex lhs2 = theta_eval(kind, v + tau.value(), tau, cfg);
                Complex c2 = quasi_period_factor(kind, LatticeShift::tau, v, tau);
                CHECK(abs(lhs2 - c2 * theta_eval(kind, v, tau, cfg)) < tol(-50));
            }
        }
    }
}

TEST_CASE("the tabulated shift-by-one multipliers") {
    Tau tau(parse_complex("i"));
    Complex v = parse_complex("0.1");
    CHECK(abs(quasi_period_factor(ThetaKind::theta, LatticeShift::one, v, tau) + Complex(1)) ==
          0);
    CHECK(abs(quasi_period_factor(ThetaKind::theta1, LatticeShift::one, v, tau) + Complex(1)) ==
          0);
    CHECK(abs(quasi_period_factor(ThetaKind::theta2, LatticeShift::one, v, tau) - Complex(1)) ==
          0);
    CHECK(abs(quasi_period_factor(ThetaKind::theta3, LatticeShift::one, v, tau) - Complex(1)) ==
          0);
}

TEST_CASE("modular images under S and T at 5 points each") {
    for (const auto& tau : test_taus()) {
        Tau tauS = tau.s_image();
        Tau tauT = tau.t_image();
        for (const auto& v : test_vs()) {
            for (auto kind : kinds) {
                // S: theta_kind(v/tau, -1/tau) = c theta_{kind'}(v, tau)
                ModularImage im = modular_image(kind, ModularGen::S, v, tau);
                Complex lhs = theta_eval(kind, v * inverse(tau.value()), tauS, cfg);
                Complex rhs = im.prefactor * theta_eval(im.kind, im.v, im.tau, cfg);
                CHECK(abs(lhs - rhs) < tol(-50));

                // T: theta_kind(v, tau+1) = c theta_{kind'}(v, tau)
                ModularImage imT = modular_image(kind, ModularGen::T, v, tau);
                Complex lhsT = theta_eval(kind, v, tauT, cfg);
                Complex rhsT = imT.prefactor * theta_eval(imT.kind, imT.v, imT.tau, cfg);
                CHECK(abs(lhsT - rhsT) < tol(-50));
            }
        }
    }
}

TEST_CASE("the S image kinds swap theta1 <-> theta2 and fix theta, theta3") {
    Tau tau(parse_complex("i"));
    Complex v = parse_complex("0.2");
    CHECK(modular_image(ThetaKind::theta, ModularGen::S, v, tau).kind == ThetaKind::theta);
    CHECK(modular_image(ThetaKind::theta1, ModularGen::S, v, tau).kind == ThetaKind::theta2);
    CHECK(modular_image(ThetaKind::theta2, ModularGen::S, v, tau).kind == ThetaKind::theta1);
    CHECK(modular_image(ThetaKind::theta3, ModularGen::S, v, tau).kind == ThetaKind::theta3);
    // T swaps theta2 <-> theta3 with unit prefactor
    auto imT2 = modular_image(ThetaKind::theta2, ModularGen::T, v, tau);
    CHECK(imT2.kind == ThetaKind::theta3);
    CHECK(abs(imT2.prefactor - Complex(1)) == 0);
    // theta picks e^{pi i/4} under T
    auto imT0 = modular_image(ThetaKind::theta, ModularGen::T, v, tau);
    CHECK(abs(imT0.prefactor - exp_i_pi(Real(1) / Real(4))) < tol(-55));
}

TEST_CASE("theta-prime transforms with weight 3/2 under S") {
    for (const auto& tau : test_taus()) {
        Complex lhs = theta_prime0(tau.s_image(), cfg);
        Complex w = sqrt(tau.value() * inverse(i_unit()));
        Complex rhs = w * w * w * theta_prime0(tau, cfg);
        CHECK(abs(lhs - rhs) < tol(-50));
    }
}

TEST_CASE("S applied twice is the inversion v -> -v") {
    // theta_k(v/tau / (-1/tau)^{-1}...) composing the two images lands back at
    // (-v, tau) up to the accumulated prefactors; check numerically.
    Tau tau(parse_complex("0.3+0.8i"));
    for (const auto& v : test_vs()) {
        for (auto kind : kinds) {
            ModularImage first = modular_image(kind, ModularGen::S, v, tau);
            // second application at the S-image point (v' = v/tau, tau' = -1/tau)
            Tau tauS = tau.s_image();
            Complex vS = v * inverse(tau.value());
            ModularImage second = modular_image(first.kind, ModularGen::S, vS, tauS);
            // theta_kind(vS / tauS, -1/tauS) = theta_kind(-v, tau)
            Complex lhs = theta_eval(kind, vS * inverse(tauS.value()), tauS.s_image(), cfg);
            Complex composed =
                second.prefactor * theta_eval(second.kind, vS, tauS, cfg);
            CHECK(abs(lhs - composed) < tol(-48));
            Complex direct = theta_eval(kind, -v, tau, cfg);
            CHECK(abs(lhs - direct) < tol(-48));
        }
    }
}

TEST_CASE("tower q-series sum to their theta quotients at small q") {
    // tau = 2i keeps |q| ~ 3.5e-6, so a q^6 truncation resolves 1e-27
    Tau tau(parse_complex("2i"));
    QExp trunc = QExp{48};
    for (const auto& v : test_vs()) {
        Complex ep = exp(Complex(Real(0), 2 * pi_real()) * v);
        Complex em = inverse(ep);

        auto sum = [&](const QSeries<Complex>& s) { return qseries_eval(s, tau); };
        Complex th0 = theta_eval(ThetaKind::theta, v, tau, cfg);
        Complex th1 = theta_eval(ThetaKind::theta1, v, tau, cfg);
        Complex th2 = theta_eval(ThetaKind::theta2, v, tau, cfg);
        Complex th3 = theta_eval(ThetaKind::theta3, v, tau, cfg);
        Complex th1_0 = theta_eval(ThetaKind::theta1, Complex(0), tau, cfg);
        Complex th2_0 = theta_eval(ThetaKind::theta2, Complex(0), tau, cfg);
        Complex th3_0 = theta_eval(ThetaKind::theta3, Complex(0), tau, cfg);
        const Real pi = pi_real();

        Complex t1 = sum(lambda_tower_pair<Complex>(ep, em, +1, false, trunc));
        CHECK(abs(t1 - th1 / (th1_0 * cos(pi * v))) < tol(-25));
        Complex t2 = sum(lambda_tower_pair<Complex>(ep, em, -1, true, trunc));
        CHECK(abs(t2 - th2 / th2_0) < tol(-25));
        Complex t3 = sum(lambda_tower_pair<Complex>(ep, em, +1, true, trunc));
        CHECK(abs(t3 - th3 / th3_0) < tol(-25));
        Complex t0 = sum(lambda_tower_pair<Complex>(ep, em, -1, false, trunc));
        CHECK(abs(t0 - pi_real() * th0 / (sin(pi * v) * theta_prime0(tau, cfg))) < tol(-25));
        Complex ts = sum(s_tower_pair<Complex>(ep, em, trunc));
        CHECK(abs(ts - sin(pi * v) * theta_prime0(tau, cfg) / (pi_real() * th0)) < tol(-25));
    }
}
