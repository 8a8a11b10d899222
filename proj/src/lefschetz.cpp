#include "thetarig/lefschetz.hpp"

#include <algorithm>

#include "thetarig/errors.hpp"

namespace thetarig {

const char* to_string(DimClass c) {
    switch (c) {
    case DimClass::dim_4k: return "4k";
    case DimClass::dim_4k_plus_2: return "4k+2";
    case DimClass::dim_4k_minus_1: return "4k-1";
    case DimClass::dim_4k_plus_1: return "4k+1";
    }
    return "?";
}

bool is_star_class(DimClass c) {
    return c == DimClass::dim_4k_plus_2 || c == DimClass::dim_4k_plus_1;
}

bool is_toeplitz_class(DimClass c) {
    return c == DimClass::dim_4k_minus_1 || c == DimClass::dim_4k_plus_1;
}

const char* to_string(Lambda l) {
    switch (l) {
    case Lambda::all: return "all";
    case Lambda::q1: return "1";
    case Lambda::q2: return "2";
    case Lambda::q3: return "3";
    }
    return "?";
}

int CaseSelector::dim() const {
    switch (dim_class) {
    case DimClass::dim_4k: return 4 * k;
    case DimClass::dim_4k_plus_2: return 4 * k + 2;
    case DimClass::dim_4k_minus_1: return 4 * k - 1;
    case DimClass::dim_4k_plus_1: return 4 * k + 1;
    }
    return 0;
}

void CaseSelector::validate() const {
    // 4k+2 admits k=0 (dim 2, the CP^1 case); the others need k >= 1
    int kmin = (dim_class == DimClass::dim_4k_plus_2) ? 0 : 1;
    if (k < kmin)
        throw case_error(std::string("k out of range for dimension class ") +
                         to_string(dim_class));
}

int FixedComponent::r_bar() const {
    int r = 0;
    for (const auto& n : normal) r += static_cast<int>(n.multiplicity);
    return r;
}

int FixedComponent::l_bar() const {
    int l = 0;
    for (const auto& v : v_parts) l += static_cast<int>(v.multiplicity);
    return l;
}

void EquivariantData::validate() const {
    sel.validate();
    const int dim = sel.dim();
    const bool odd = is_toeplitz_class(sel.dim_class);
    if (odd) {
        if (!e_data) throw case_error("Toeplitz dimension class requires E data");
        if (e_data->rank_n <= 0 || e_data->rank_n % 2 != 0)
            throw case_error("E rank N must be a positive even integer");
        for (const auto& tt : e_data->trace) {
            if (!tt.w.has_odd_factor())
                throw case_error("trace term w must carry an odd-degree variable");
            if (tt.a.has_odd_factor()) throw case_error("trace term a must be even");
        }
    }
    if (components.empty()) throw case_error("no fixed components");
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto& c = components[i];
        const std::string where = "component " + std::to_string(i) + ": ";
        if (c.s < 0) throw case_error(where + "negative s");
        if (static_cast<int>(c.tangent_roots.size()) != c.s)
            throw case_error(where + "tangent root count != s");
        for (const auto& n : c.normal)
            if (n.rotation == 0) throw case_error(where + "normal rotation must be nonzero");
        const int covered = 2 * c.s + 2 * c.r_bar() + (odd ? 1 : 0);
        if (covered != dim)
            throw case_error(where + "2s + 2 rbar" + std::string(odd ? " + 1" : "") + " = " +
                             std::to_string(covered) + " does not match dim M = " +
                             std::to_string(dim));
    }
    for (const auto& c : components)
        if (c.l_bar() != components.front().l_bar())
            throw case_error("lbar differs across components");
}

Complex case_prefactor(const CaseSelector& sel, const FixedComponent& comp) {
    const int r = comp.r_bar();
    const int l = comp.l_bar();
    const Real pi = pi_real();
    const Complex minus_i(Real(0), Real(-1));
    if (sel.lambda == Lambda::q2 || sel.lambda == Lambda::q3)
        return pow_int(minus_i * inverse(Complex(2 * pi)), r);
    // lambda = 1 and lambda = all carry the Delta(V) normalization 2^{lbar}
    Real two_pow = bmp::pow(Real(2), l - r);
    return Complex(two_pow) * pow_int(minus_i * inverse(Complex(pi)), r);
}

// ---------------------------------------------------------------------------
// shared jet trigonometry
// ---------------------------------------------------------------------------

namespace {

Jet scaled(const Jet& j, const Complex& s) {
    Jet r = j;
    r.scale(s);
    return r;
}

Jet sin_pi_jet(const Jet& w) {
    const Complex ipi(Real(0), pi_real());
    Jet p = jet_exp(scaled(w, ipi));
    Jet m = jet_exp(scaled(w, -ipi));
    return scaled(p - m, inverse(Complex(Real(0), Real(2))));
}

Jet cos_pi_jet(const Jet& w) {
    const Complex ipi(Real(0), pi_real());
    Jet p = jet_exp(scaled(w, ipi));
    Jet m = jet_exp(scaled(w, -ipi));
    return scaled(p + m, Complex(Real(1) / Real(2)));
}

// sin(pi y)/(pi y) on a nilpotent jet: sum (-1)^k (pi y)^{2k} / (2k+1)!
Jet sinc_pi_jet(const Jet& y) {
    Jet py2 = scaled(y, Complex(pi_real()));
    py2 *= py2;
    Jet acc = Jet::scalar(Complex(1)) + Jet::zero(y.table(), y.cap());
    Jet p = acc;
    Real fact(1);
    for (int k = 1;; ++k) {
        p *= py2;
        if (p.is_zero()) break;
        fact *= (2 * k) * (2 * k + 1);
        Complex c(Real(1) / fact);
        if (k % 2 != 0) c = -c;
        acc += scaled(p, c);
    }
    return acc;
}

struct PairExp {
    Jet ep, em; // e^{+-2 pi i w}
};

PairExp exp_pair(const Jet& w) {
    const Complex i2pi(Real(0), 2 * pi_real());
    return {jet_exp(scaled(w, i2pi)), jet_exp(scaled(w, -i2pi))};
}

Real pole_floor(const PrecisionConfig& cfg) {
    long guard = static_cast<long>(cfg.digits) - 8;
    if (guard < 4) guard = 4;
    return pow10(-guard);
}

void check_pole(const Complex& value, const std::string& what, const PrecisionConfig& cfg) {
    if (abs(value) < pole_floor(cfg)) throw pole_error("theta zero in denominator at " + what);
}

std::vector<Lambda> lambda_set(Lambda l) {
    if (l == Lambda::all) return {Lambda::q1, Lambda::q2, Lambda::q3};
    return {l};
}

ThetaKind kind_of(Lambda l) {
    switch (l) {
    case Lambda::q1: return ThetaKind::theta1;
    case Lambda::q2: return ThetaKind::theta2;
    case Lambda::q3: return ThetaKind::theta3;
    default: throw case_error("lambda=all has no single theta kind");
    }
}

std::vector<Complex> taylor_to_derivs(const std::vector<Complex>& coeffs) {
    std::vector<Complex> d(coeffs.size());
    Real fact(1);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k >= 2) fact *= static_cast<long>(k);
        d[k] = coeffs[k] * fact;
    }
    return d;
}

unsigned even_power_order(int cap) {
    if (cap == Jet::kNoCap || cap < 0) return 0;
    return static_cast<unsigned>(cap / 2);
}

} // namespace

// ---------------------------------------------------------------------------
// Gauss-Legendre on [0,1]
// ---------------------------------------------------------------------------

void gauss_legendre_01(unsigned n, std::vector<Real>& nodes, std::vector<Real>& weights) {
    nodes.assign(n, Real(0));
    weights.assign(n, Real(0));
    const Real pi = pi_real();
    const Real tol = pow10(-static_cast<long>(working_digits()) + 2);
    for (unsigned i = 0; i < (n + 1) / 2; ++i) {
        Real x = bmp::cos(pi * (Real(static_cast<long>(i)) + Real("0.75")) /
                          (Real(static_cast<long>(n)) + Real("0.5")));
        Real p_deriv(1);
        for (int iter = 0; iter < 256; ++iter) {
            Real p0(1), p1(0);
            for (unsigned j = 1; j <= n; ++j) {
                Real p2 = p1;
                p1 = p0;
                p0 = ((2 * Real(static_cast<long>(j)) - 1) * x * p1 -
                      (Real(static_cast<long>(j)) - 1) * p2) /
                     Real(static_cast<long>(j));
            }
            p_deriv = Real(static_cast<long>(n)) * (x * p0 - p1) / (x * x - 1);
            Real dx = p0 / p_deriv;
            x -= dx;
            if (bmp::abs(dx) < tol) break;
        }
        Real w = 2 / ((1 - x * x) * p_deriv * p_deriv);
        nodes[i] = (1 - x) / 2;
        weights[i] = w / 2;
        nodes[n - 1 - i] = (1 + x) / 2;
        weights[n - 1 - i] = w / 2;
    }
}

// ---------------------------------------------------------------------------
// odd Chern factor
// ---------------------------------------------------------------------------

namespace {

Complex odd_prefactor(Lambda j, int rank_n) {
    const Real pi = pi_real();
    Real denom = 8 * pi * pi;
    Real num(-1);
    if (j == Lambda::q1 || j == Lambda::all) num = -bmp::pow(Real(2), rank_n / 2);
    return Complex(num / denom);
}

unsigned trace_power_order(const OddEData& e) {
    int cap = 0;
    for (const auto& tt : e.trace) {
        int c = tt.a.cap() == Jet::kNoCap ? 0 : tt.a.cap();
        cap = std::max(cap, c);
    }
    return static_cast<unsigned>(cap);
}

// theta'_j(v)/theta_j(v) (or the lambda=all sum A) as a Taylor series at 0.
TaylorSeries log_deriv_taylor(Lambda j, const Tau& tau, unsigned order,
                              const PrecisionConfig& cfg) {
    TaylorSeries acc = TaylorSeries::zero(order);
    for (Lambda l : lambda_set(j)) {
        auto coeffs = theta_taylor(kind_of(l), Complex(0), tau, order + 1, cfg);
        TaylorSeries th = TaylorSeries::from_coeffs(std::move(coeffs));
        acc += th.derivative() * th.inverse();
    }
    return acc;
}

Jet odd_factor_from_taylor(Lambda j, const OddEData& e, const TaylorSeries& log_deriv,
                           unsigned quad_points) {
    std::vector<Real> nodes, weights;
    gauss_legendre_01(quad_points, nodes, weights);
    std::vector<Complex> derivs = taylor_to_derivs([&] {
        std::vector<Complex> c(log_deriv.order() + 1);
        for (unsigned k = 0; k <= log_deriv.order(); ++k) c[k] = log_deriv.coeff(k);
        return c;
    }());

    Jet acc = Jet::scalar(Complex(0));
    for (unsigned p = 0; p < nodes.size(); ++p) {
        const Real& u = nodes[p];
        Complex shape(u * u - u); // (u^2 - u)
        Jet node_sum = Jet::scalar(Complex(0));
        for (const auto& tt : e.trace) {
            Jet arg = scaled(tt.a, shape);
            Jet f = compose_analytic(derivs, arg.nilpotent_part());
            // a_i may carry a constant part; fold it through the Taylor shift
            if (!arg.constant_term().is_zero())
                throw case_error("trace term a must be nilpotent (no constant part)");
            node_sum += tt.w * f;
        }
        acc += scaled(node_sum, Complex(weights[p]));
    }
    acc.scale(odd_prefactor(j, e.rank_n));
    return acc;
}

} // namespace

Jet odd_chern_factor(Lambda j, const OddEData& e, const Tau& tau, unsigned quad_points,
                     const PrecisionConfig& cfg) {
    if (e.trace.empty()) return Jet::scalar(Complex(0)); // constant g
    const unsigned order = std::max(1u, trace_power_order(e));
    TaylorSeries ld = log_deriv_taylor(j, tau, order, cfg);

    Jet once = odd_factor_from_taylor(j, e, ld, quad_points);
    Jet twice = odd_factor_from_taylor(j, e, ld, 2 * quad_points);
    Jet diff = once - twice;
    Real worst(0);
    for (const auto& [m, c] : diff.terms()) worst = (std::max)(worst, abs(c));
    if (worst > pow10(-static_cast<long>(cfg.digits) + 10))
        throw quadrature_error("odd factor quadrature did not converge under doubling");
    return twice;
}

QSeries<Jet> odd_chern_factor_qseries(Lambda j, const OddEData& e, QExp trunc,
                                      unsigned quad_points, const PrecisionConfig& cfg) {
    (void)cfg;
    QSeries<Jet> out(trunc);
    if (e.trace.empty()) return out;
    const unsigned order = std::max(1u, trace_power_order(e));

    // theta_j-quotient towers as q-series over Taylor polynomials in v
    const Complex i2pi(Real(0), 2 * pi_real());
    const Complex ipi(Real(0), pi_real());
    TaylorSeries ep = TaylorSeries::exp_linear(Complex(0), i2pi, order);
    TaylorSeries em = TaylorSeries::exp_linear(Complex(0), -i2pi, order);

    QSeries<TaylorSeries> logd(trunc);
    bool first = true;
    for (Lambda l : lambda_set(j)) {
        QSeries<TaylorSeries> g(trunc);
        switch (l) {
        case Lambda::q1: {
            g = lambda_tower_pair<TaylorSeries>(ep, em, +1, false, trunc);
            TaylorSeries cosv = TaylorSeries::exp_linear(Complex(0), ipi, order) +
                                TaylorSeries::exp_linear(Complex(0), -ipi, order);
            cosv.scale(Complex(Real(1) / Real(2)));
            g.scale(cosv);
            break;
        }
        case Lambda::q2: g = lambda_tower_pair<TaylorSeries>(ep, em, -1, true, trunc); break;
        case Lambda::q3: g = lambda_tower_pair<TaylorSeries>(ep, em, +1, true, trunc); break;
        default: break;
        }
        QSeries<TaylorSeries> d = g.map([](const TaylorSeries& t) { return t.derivative(); });
        QSeries<TaylorSeries> f = d * g.inverse();
        logd = first ? f : logd + f;
        first = false;
    }

    // I_k = int_0^1 (u^2-u)^k du by quadrature (with a doubling check)
    auto shape_integrals = [&](unsigned npts) {
        std::vector<Real> nodes, weights;
        gauss_legendre_01(npts, nodes, weights);
        std::vector<Real> I(order + 1, Real(0));
        for (unsigned p = 0; p < npts; ++p) {
            Real shape = nodes[p] * nodes[p] - nodes[p];
            Real pw(1);
            for (unsigned k = 0; k <= order; ++k) {
                I[k] += weights[p] * pw;
                pw *= shape;
            }
        }
        return I;
    };
    std::vector<Real> I = shape_integrals(2 * quad_points);
    {
        std::vector<Real> I1 = shape_integrals(quad_points);
        Real worst(0);
        for (unsigned k = 0; k <= order; ++k) worst = (std::max)(worst, bmp::abs(I[k] - I1[k]));
        if (worst > pow10(-static_cast<long>(working_digits()) + 10))
            throw quadrature_error("shape integral quadrature did not converge under doubling");
    }
    // note: I[k] holds int (u^2-u)^{k} ... with I[0] = 1

    const Complex pref = odd_prefactor(j, e.rank_n);
    // powers of the a_i jets
    for (const auto& [qe, taylor] : logd.coeffs()) {
        Jet coeff = Jet::scalar(Complex(0));
        for (const auto& tt : e.trace) {
            Jet apow = Jet::scalar(Complex(1)) + Jet::zero(tt.a.table(), tt.a.cap());
            for (unsigned k = 0; k <= taylor.order(); ++k) {
                if (k > 0) {
                    apow *= tt.a;
                    if (apow.is_zero()) break;
                }
                Complex ck = taylor.coeff(k);
                if (ck.is_zero()) continue;
                coeff += scaled(tt.w * apow, ck * Complex(I[k]));
            }
        }
        coeff.scale(pref);
        out.set_coeff(qe, std::move(coeff));
    }
    return out;
}

// ---------------------------------------------------------------------------
// theta-quotient path, numeric
// ---------------------------------------------------------------------------

namespace {

struct ThetaKit {
    const Tau& tau;
    const PrecisionConfig& cfg;
    unsigned order; // Taylor order for jet composition
    Complex theta_p0;
    Complex theta123_0; // theta1 theta2 theta3 at 0

    ThetaKit(const Tau& t, const PrecisionConfig& c, unsigned ord)
        : tau(t), cfg(c), order(ord) {
        theta_p0 = theta_prime0(t, c);
        theta123_0 = theta_eval(ThetaKind::theta1, Complex(0), t, c) *
                     theta_eval(ThetaKind::theta2, Complex(0), t, c) *
                     theta_eval(ThetaKind::theta3, Complex(0), t, c);
    }

    // theta_kind(arg0 + jet) as a Jet
    Jet at(ThetaKind k, const Complex& arg0, const Jet& jet) const {
        auto coeffs = theta_taylor(k, arg0, tau, order, cfg);
        auto derivs = taylor_to_derivs(coeffs);
        return compose_analytic(derivs, jet);
    }

    // y theta'(0)/theta(y) for a nilpotent jet y: theta(w)/w is analytic at 0
    Jet tangent_factor(const Jet& y) const {
        auto coeffs = theta_taylor(ThetaKind::theta, Complex(0), tau, order + 1, cfg);
        std::vector<Complex> g(coeffs.begin() + 1, coeffs.end());
        auto derivs = taylor_to_derivs(g);
        Jet denom = compose_analytic(derivs, y);
        return scaled(denom.inverse(), theta_p0);
    }
};

} // namespace

Complex lefschetz_component(const CaseSelector& sel, const FixedComponent& comp,
                            const OddEData* e, const Complex& t, const Tau& tau,
                            const PrecisionConfig& cfg) {
    const bool star = is_star_class(sel.dim_class);
    const bool toeplitz = is_toeplitz_class(sel.dim_class);
    if (toeplitz && e == nullptr) throw case_error("Toeplitz case without E data");

    ThetaKit kit(tau, cfg, even_power_order(comp.cap) + 1);

    Jet integrand = Jet::scalar(Complex(1));
    if (comp.vars) integrand += Jet::zero(comp.vars, comp.cap);

    for (const auto& y : comp.tangent_roots) integrand *= kit.tangent_factor(y);

    for (const auto& n : comp.normal) {
        Complex arg0 = Complex(n.rotation) * t;
        Jet th = kit.at(ThetaKind::theta, arg0, n.chern_root);
        check_pole(th.constant_term(),
                   "theta(x + " + std::to_string(n.rotation) + " t), t = " + to_string(t, 8),
                   cfg);
        Jet f = scaled(th.inverse(), kit.theta_p0);
        for (unsigned m = 0; m < n.multiplicity; ++m) integrand *= f;
    }

    {
        Complex arg0 = Complex(comp.sigma) * t;
        if (star) {
            Jet th = kit.at(ThetaKind::theta, arg0, comp.u);
            integrand *= scaled(th, i_unit() * inverse(kit.theta123_0));
        } else {
            Jet numf = kit.at(ThetaKind::theta1, arg0, comp.u) *
                       kit.at(ThetaKind::theta2, arg0, comp.u) *
                       kit.at(ThetaKind::theta3, arg0, comp.u);
            integrand *= scaled(numf, inverse(kit.theta123_0));
        }
    }

    for (Lambda l : lambda_set(sel.lambda)) {
        ThetaKind k = kind_of(l);
        Complex k0 = theta_eval(k, Complex(0), tau, cfg);
        for (const auto& v : comp.v_parts) {
            Complex arg0 = Complex(v.rotation) * t;
            Jet f = scaled(kit.at(k, arg0, v.chern_root), inverse(k0));
            for (unsigned m = 0; m < v.multiplicity; ++m) integrand *= f;
        }
    }

    if (toeplitz) integrand *= odd_chern_factor(sel.lambda, *e, tau, 32, cfg);

    return case_prefactor(sel, comp) * integrate(integrand, comp.functional);
}

Complex lefschetz_total(const EquivariantData& data, const Complex& t, const Tau& tau,
                        const PrecisionConfig& cfg) {
    const OddEData* e = data.e_data ? &*data.e_data : nullptr;
    Complex acc(0);
    for (std::size_t i = 0; i < data.components.size(); ++i) {
        try {
            acc += lefschetz_component(data.sel, data.components[i], e, t, tau, cfg);
        } catch (const pole_error& pe) {
            throw pole_error("component " + std::to_string(i) + ": " + pe.what());
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// theta-quotient path, q-series
// ---------------------------------------------------------------------------

QSeries<Complex> lefschetz_component_qseries(const CaseSelector& sel, const FixedComponent& comp,
                                             const OddEData* e, const Complex& t, QExp trunc,
                                             const PrecisionConfig& cfg) {
    const bool star = is_star_class(sel.dim_class);
    const bool toeplitz = is_toeplitz_class(sel.dim_class);
    if (toeplitz && e == nullptr) throw case_error("Toeplitz case without E data");

    QSeries<Jet> acc = QSeries<Jet>::one(trunc);

    auto jet_of = [&](const Jet& root, int rotation) {
        return root + Jet::scalar(Complex(rotation) * t);
    };

    for (const auto& y : comp.tangent_roots) {
        auto pe = exp_pair(y);
        QSeries<Jet> tower = s_tower_pair<Jet>(pe.ep, pe.em, trunc);
        tower.scale(sinc_pi_jet(y).inverse()); // pi y / sin(pi y)
        acc *= tower;
    }

    for (const auto& n : comp.normal) {
        Jet w = jet_of(n.chern_root, n.rotation);
        Jet s = sin_pi_jet(w);
        check_pole(s.constant_term(), "sin(pi(x + " + std::to_string(n.rotation) + " t))", cfg);
        auto pe = exp_pair(w);
        QSeries<Jet> tower = s_tower_pair<Jet>(pe.ep, pe.em, trunc);
        tower.scale(scaled(s.inverse(), Complex(pi_real()))); // pi / sin(pi w)
        for (unsigned m = 0; m < n.multiplicity; ++m) acc *= tower;
    }

    {
        Jet w = jet_of(comp.u, comp.sigma);
        auto pe = exp_pair(w);
        if (star) {
            QSeries<Jet> tower = lambda_tower_pair<Jet>(pe.ep, pe.em, -1, false, trunc);
            tower.scale(scaled(sin_pi_jet(w), i_unit()));
            acc *= tower;
        } else {
            QSeries<Jet> t1 = lambda_tower_pair<Jet>(pe.ep, pe.em, +1, false, trunc);
            t1.scale(cos_pi_jet(w));
            acc *= t1;
            acc *= lambda_tower_pair<Jet>(pe.ep, pe.em, -1, true, trunc);
            acc *= lambda_tower_pair<Jet>(pe.ep, pe.em, +1, true, trunc);
        }
    }

    for (Lambda l : lambda_set(sel.lambda)) {
        for (const auto& v : comp.v_parts) {
            Jet w = jet_of(v.chern_root, v.rotation);
            auto pe = exp_pair(w);
            QSeries<Jet> tower(trunc);
            switch (l) {
            case Lambda::q1:
                tower = lambda_tower_pair<Jet>(pe.ep, pe.em, +1, false, trunc);
                tower.scale(cos_pi_jet(w));
                break;
            case Lambda::q2: tower = lambda_tower_pair<Jet>(pe.ep, pe.em, -1, true, trunc); break;
            case Lambda::q3: tower = lambda_tower_pair<Jet>(pe.ep, pe.em, +1, true, trunc); break;
            default: break;
            }
            for (unsigned m = 0; m < v.multiplicity; ++m) acc *= tower;
        }
    }

    if (toeplitz) acc *= odd_chern_factor_qseries(sel.lambda, *e, trunc, 32, cfg);

    const Complex pref = case_prefactor(sel, comp);
    return acc.map(
        [&](const Jet& j) { return pref * integrate(j, comp.functional); });
}

// ---------------------------------------------------------------------------
// brute-force K-theory path
// ---------------------------------------------------------------------------

QSeries<Complex> lefschetz_oracle(const CaseSelector& sel, const FixedComponent& comp,
                                  const OddEData* e, const Complex& t, QExp trunc,
                                  const PrecisionConfig& cfg) {
    const bool star = is_star_class(sel.dim_class);
    const bool toeplitz = is_toeplitz_class(sel.dim_class);
    if (toeplitz && e == nullptr) throw case_error("Toeplitz case without E data");

    const Complex i2pi(Real(0), 2 * pi_real());

    // bundle data with Chern roots scaled to exponential normalization
    EquivariantBundle tangent;
    tangent.reality = Reality::real_pair;
    for (const auto& y : comp.tangent_roots)
        tangent.summands.push_back({scaled(y, i2pi), 0, 1});
    for (const auto& n : comp.normal)
        tangent.summands.push_back({scaled(n.chern_root, i2pi), n.rotation, n.multiplicity});
    WeightedSummand line{scaled(comp.u, i2pi), comp.sigma, 1};
    EquivariantBundle v_bundle;
    v_bundle.reality = Reality::real_pair;
    for (const auto& v : comp.v_parts)
        v_bundle.summands.push_back({scaled(v.chern_root, i2pi), v.rotation, v.multiplicity});

    auto theta_case = star ? WittenCase::ThetaStar : WittenCase::Theta;
    WittenCase q_case = WittenCase::QAll;
    switch (sel.lambda) {
    case Lambda::q1: q_case = WittenCase::Q1; break;
    case Lambda::q2: q_case = WittenCase::Q2; break;
    case Lambda::q3: q_case = WittenCase::Q3; break;
    case Lambda::all: q_case = WittenCase::QAll; break;
    }

    VirtualBundleSeries th = witten_bundle(theta_case, tangent, line, v_bundle, trunc);
    VirtualBundleSeries qv = witten_bundle(q_case, tangent, line, v_bundle, trunc);
    QSeries<Jet> ch_th = ch_equivariant(th, t, trunc);
    QSeries<Jet> ch_qv = ch_equivariant(qv, t, trunc);

    // localized index density: A-hat(TF) x normal spinor sines x the half
    // L-weight combination (cos for Theta, i sin for Theta*)
    Jet front = Jet::scalar(Complex(1));
    if (comp.vars) front += Jet::zero(comp.vars, comp.cap);
    for (const auto& y : comp.tangent_roots) front *= sinc_pi_jet(y).inverse();
    for (const auto& n : comp.normal) {
        Jet w = n.chern_root + Jet::scalar(Complex(n.rotation) * t);
        Jet s = sin_pi_jet(w);
        check_pole(s.constant_term(), "sin(pi(x + " + std::to_string(n.rotation) + " t))", cfg);
        Jet f = scaled(s, Complex(Real(0), Real(2))).inverse(); // 1/(2 i sin)
        for (unsigned m = 0; m < n.multiplicity; ++m) front *= f;
    }
    {
        Jet w = comp.u + Jet::scalar(Complex(comp.sigma) * t);
        front *= star ? scaled(sin_pi_jet(w), i_unit()) : cos_pi_jet(w);
    }

    QSeries<Jet> acc = ch_th * ch_qv;
    acc.scale(front);
    if (toeplitz) acc *= odd_chern_factor_qseries(sel.lambda, *e, trunc, 32, cfg);

    return acc.map([&](const Jet& j) { return integrate(j, comp.functional); });
}

} // namespace thetarig
