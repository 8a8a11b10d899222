#include "thetarig/genus.hpp"

#include "thetarig/errors.hpp"

namespace thetarig {

namespace {

int class_dim_for(DimClass c, int k) {
    CaseSelector s{c, Lambda::q1, k};
    return s.dim();
}

// Taylor derivatives at 0 of w / (2 sinh(w/2)): reciprocal of
// 2 sinh(w/2)/w = sum_{k odd} 2 (1/2)^k w^{k-1} / k!
std::vector<Complex> a_hat_derivs(unsigned order) {
    std::vector<Complex> c(order + 1, Complex(0));
    Real fact(1);
    Real half_pow(1); // (1/2)^k
    for (unsigned k = 1; k <= order + 1; ++k) {
        fact *= k;
        half_pow /= 2;
        if (k % 2 == 1 && k - 1 <= order) c[k - 1] = Complex(2 * half_pow / fact);
    }
    TaylorSeries f = TaylorSeries::from_coeffs(std::move(c)).inverse();
    std::vector<Complex> out(order + 1);
    Real kfact(1);
    for (unsigned k = 0; k <= order; ++k) {
        if (k >= 2) kfact *= k;
        out[k] = f.coeff(k) * kfact;
    }
    return out;
}

} // namespace

QSeries<Complex> witten_genus(DimClass dim_class, Lambda lambda, const ManifoldData& data,
                              QExp trunc, const PrecisionConfig& cfg) {
    // dimension class must match the supplied dimension
    bool matched = false;
    for (int k = 0; k <= data.dim / 4 + 1 && !matched; ++k) {
        int kmin = (dim_class == DimClass::dim_4k_plus_2) ? 0 : 1;
        if (k >= kmin && class_dim_for(dim_class, k) == data.dim) matched = true;
    }
    if (!matched)
        throw case_error(std::string("dimension ") + std::to_string(data.dim) +
                         " does not lie in class " + to_string(dim_class));
    const bool star = is_star_class(dim_class);
    const bool toeplitz = is_toeplitz_class(dim_class);
    if (toeplitz && !data.e_data) throw case_error("odd-dimensional genus requires E data");

    // A-hat(TM) exp(c/2) as a Jet
    Jet front = Jet::scalar(Complex(1));
    if (data.vars) front += Jet::zero(data.vars, data.cap);
    const auto ah = a_hat_derivs(static_cast<unsigned>(std::max(0, data.cap / 2)) + 1);
    for (const auto& y : data.tangent_pair_roots) front *= compose_analytic(ah, y);
    {
        Jet half_c = data.line_root;
        half_c.scale(Complex(Real(1) / Real(2)));
        front *= jet_exp(half_c);
    }

    // non-equivariant Chern characters of the case bundles (rotations as
    // stored, t = 0)
    EquivariantBundle tangent;
    tangent.reality = Reality::real_pair;
    for (const auto& y : data.tangent_pair_roots) tangent.summands.push_back({y, 0, 1});
    WeightedSummand line{data.line_root, 0, 1};
    EquivariantBundle v_bundle;
    v_bundle.reality = Reality::real_pair;
    for (const auto& v : data.v_pairs)
        v_bundle.summands.push_back({v.chern_root, 0, v.multiplicity});

    WittenCase theta_case = star ? WittenCase::ThetaStar : WittenCase::Theta;
    WittenCase q_case = WittenCase::QAll;
    switch (lambda) {
    case Lambda::q1: q_case = WittenCase::Q1; break;
    case Lambda::q2: q_case = WittenCase::Q2; break;
    case Lambda::q3: q_case = WittenCase::Q3; break;
    case Lambda::all: q_case = WittenCase::QAll; break;
    }

    const Complex t0(0);
    QSeries<Jet> ch_th =
        ch_equivariant(witten_bundle(theta_case, tangent, line, v_bundle, trunc), t0, trunc);
    QSeries<Jet> ch_qv =
        ch_equivariant(witten_bundle(q_case, tangent, line, v_bundle, trunc), t0, trunc);

    QSeries<Jet> acc = ch_th * ch_qv;
    acc.scale(front);
    if (toeplitz) acc *= odd_chern_factor_qseries(lambda, *data.e_data, trunc, 32, cfg);

    return acc.map([&](const Jet& j) { return integrate(j, data.functional); });
}

} // namespace thetarig
