#pragma once

// Shared builders for synthetic fixed-point data used across the test suites.

#include "thetarig/lefschetz.hpp"

namespace thetarig::testing {

inline FixedComponent isolated_component(std::vector<std::pair<int, int>> normal_mm,
                                         std::vector<std::pair<int, int>> v_np, int sigma) {
    FixedComponent c;
    c.s = 0;
    c.sigma = sigma;
    c.u = Jet::scalar(Complex(0));
    for (auto [m, mult] : normal_mm)
        c.normal.push_back({Jet::scalar(Complex(0)), m, static_cast<unsigned>(mult)});
    for (auto [n, pairs] : v_np)
        c.v_parts.push_back({Jet::scalar(Complex(0)), n, static_cast<unsigned>(pairs)});
    c.functional.top_degree = 0;
    c.cap = 0;
    return c;
}

// CP^1 with the rotation action: fixed points at 0 and infinity, tangent
// weights +-1, L = T^{1,0} so sigma = +-1. Passing a different sigma at
// infinity produces the anomaly-violating control.
inline EquivariantData cp1_data(Lambda lambda = Lambda::q2, int sigma_infinity = -1) {
    EquivariantData d;
    d.sel = CaseSelector{DimClass::dim_4k_plus_2, lambda, 0};
    d.components.push_back(isolated_component({{1, 1}}, {}, 1));
    d.components.push_back(isolated_component({{-1, 1}}, {}, sigma_infinity));
    return d;
}

// One odd-degree trace slot w and one even curvature slot a of degree 2.
struct OddToy {
    VarTablePtr vars;
    OddEData e;
    int cap;
};

inline OddToy odd_toy_e(int cap = 7, int rank_n = 4) {
    VarTable t;
    int w_id = t.add("w", 1);
    int a_id = t.add("a2", 2);
    auto vars = std::make_shared<VarTable>(std::move(t));
    OddEData e;
    e.rank_n = rank_n;
    TraceTerm tt;
    tt.w = Jet::variable(vars, w_id, cap);
    tt.a = Jet::variable(vars, a_id, cap);
    e.trace.push_back(std::move(tt));
    e.c3_is_zero = false;
    return {vars, std::move(e), cap};
}

// Toeplitz-class instance passing 3 p1(L) + p1(V) = p1(TM):
// sigma = 1, n = (1), m = (2): 3 + 1 = 4.
inline EquivariantData odd_toy_data(Lambda lambda = Lambda::q1) {
    OddToy toy = odd_toy_e();
    EquivariantData d;
    d.sel = CaseSelector{DimClass::dim_4k_minus_1, lambda, 1};
    FixedComponent c = isolated_component({{2, 1}}, {{1, 1}}, 1);
    c.vars = toy.vars;
    c.cap = toy.cap;
    c.functional.top_degree = 3;
    Monomial wa;
    wa.vars = {toy.vars->require("w"), toy.vars->require("a2")};
    std::sort(wa.vars.begin(), wa.vars.end());
    c.functional.pairings[wa] = Complex(1);
    d.components.push_back(std::move(c));
    d.e_data = std::move(toy.e);
    return d;
}

inline Real qseries_dist(const QSeries<Complex>& a, const QSeries<Complex>& b) {
    QSeries<Complex> d = a - b;
    Real m(0);
    for (const auto& [e, c] : d.coeffs()) m = (std::max)(m, abs(c));
    return m;
}

} // namespace thetarig::testing
