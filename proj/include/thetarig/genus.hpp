#pragma once

#include "thetarig/lefschetz.hpp"

namespace thetarig {

// Non-equivariant data for the generalized Witten genera. Roots here are in
// the exponential normalization: ch of a line with root w is exp(w), the
// A-hat factor per tangent pair is w/(2 sinh(w/2)), and exp(c/2) is
// exp(line_root / 2). The Todd-genus value of CP^1 pins this normalization.
struct ManifoldData {
    int dim = 0;
    std::vector<Jet> tangent_pair_roots; // one per +-pair
    Jet line_root;                        // first Chern root of L
    std::vector<WeightedSummand> v_pairs; // rotation ignored; mult = pair count
    std::optional<OddEData> e_data;       // odd-dimensional cases
    IntegrationFunctional functional;     // top_degree = dim
    int cap = 0;
    VarTablePtr vars;
};

// W_lambda / W*_lambda / W / W* and the odd-dimensional forms, as scalar
// q-series: coefficient-wise integral of A-hat exp(c/2) ch(Theta-case bundle)
// ch(Q_lambda(V_C)) (times the odd Chern factor in odd dimensions).
QSeries<Complex> witten_genus(DimClass dim_class, Lambda lambda, const ManifoldData& data,
                              QExp trunc, const PrecisionConfig& cfg);

} // namespace thetarig
