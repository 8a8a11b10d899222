#pragma once

#include <optional>
#include <vector>

#include "thetarig/bundles.hpp"
#include "thetarig/jets.hpp"
#include "thetarig/qseries.hpp"
#include "thetarig/theta.hpp"

namespace thetarig {

// Dimension classes of the four operator families. The 4k and 4k-1 classes
// carry the Theta bundle (line factor theta1 theta2 theta3), the 4k+2 and
// 4k+1 classes the Theta* bundle (line factor i theta); 4k-1 and 4k+1 are
// the Toeplitz classes with the odd Chern factor.
enum class DimClass { dim_4k, dim_4k_plus_2, dim_4k_minus_1, dim_4k_plus_1 };

const char* to_string(DimClass c);
bool is_star_class(DimClass c);
bool is_toeplitz_class(DimClass c);

enum class Lambda { all = 0, q1 = 1, q2 = 2, q3 = 3 };

const char* to_string(Lambda l);

struct CaseSelector {
    DimClass dim_class = DimClass::dim_4k;
    Lambda lambda = Lambda::q1;
    int k = 1;

    int dim() const;
    void validate() const; // k >= 1 except 4k+2 which admits k = 0
};

// One connected component of the fixed locus. Root jets are in the
// theta-argument normalization (the paper's x, y, z, u; Chern roots of the
// underlying bundles are 2 pi i times these).
struct FixedComponent {
    int s = 0;
    std::vector<Jet> tangent_roots;      // y_j, length s
    std::vector<WeightedSummand> normal; // x roots, rotations m != 0
    std::vector<WeightedSummand> v_parts; // z roots, one summand per pair type
    Jet u;                                // line root (scalar zero for isolated)
    int sigma = 0;
    IntegrationFunctional functional;
    int cap = 0;
    VarTablePtr vars;

    int r_bar() const;
    int l_bar() const;
};

// Model of Tr[g^{-1}dg f(R_u/4pi^2)] as sum_i w_i f((u^2-u) a_i): w_i carries
// exactly one odd-degree variable factor, a_i is even.
struct TraceTerm {
    Jet w;
    Jet a;
};

struct OddEData {
    int rank_n = 4; // N, even
    std::vector<TraceTerm> trace;
    bool c3_is_zero = false;
};

struct EquivariantData {
    CaseSelector sel;
    std::vector<FixedComponent> components;
    std::optional<OddEData> e_data;

    void validate() const;
};

// Case prefactor of Props 3.2/3.7: 2^{lbar-rbar} (-i/pi)^{rbar} for lambda in
// {1, all} (the Delta(V) factor contributes the 2^{lbar}), (-i/2pi)^{rbar}
// for lambda = 2, 3.
Complex case_prefactor(const CaseSelector& sel, const FixedComponent& comp);

// Odd Chern character factor ch(Q_j(E), g^{Q_j(E)}, d, tau): the trace model
// integrated against theta'_j/theta_j((u^2-u) a_i, tau) du over [0,1] by
// Gauss-Legendre quadrature (exact for the polynomial integrand once the
// point count exceeds the degree; doubling the points is checked).
// lambda = all uses the summed integrand A and the 2^{N/2} prefactor.
Jet odd_chern_factor(Lambda j, const OddEData& e, const Tau& tau, unsigned quad_points,
                     const PrecisionConfig& cfg);

// Same factor as a q-series with Jet coefficients (tau-free).
QSeries<Jet> odd_chern_factor_qseries(Lambda j, const OddEData& e, QExp trunc,
                                      unsigned quad_points, const PrecisionConfig& cfg);

// Theta-quotient path at numeric (t, tau): the Lefschetz number contribution
// of one component, prefactor and integration included.
Complex lefschetz_component(const CaseSelector& sel, const FixedComponent& comp,
                            const OddEData* e, const Complex& t, const Tau& tau,
                            const PrecisionConfig& cfg);

Complex lefschetz_total(const EquivariantData& data, const Complex& t, const Tau& tau,
                        const PrecisionConfig& cfg);

// Theta-quotient path expanded as a q-series on the (1/8)Z grid (coefficients
// depend on t and the component data, not on tau).
QSeries<Complex> lefschetz_component_qseries(const CaseSelector& sel, const FixedComponent& comp,
                                             const OddEData* e, const Complex& t, QExp trunc,
                                             const PrecisionConfig& cfg);

// Brute-force K-theory path: the localized index form evaluated directly
// (A-hat and spinor sine factors on jets, Chern characters of the Witten
// bundles from their lambda/S-operation words). Independent of the
// theta-quotient structure; agreement with lefschetz_component_qseries is
// the derivation check of Props 3.2/3.7/4.2/4.7.
QSeries<Complex> lefschetz_oracle(const CaseSelector& sel, const FixedComponent& comp,
                                  const OddEData* e, const Complex& t, QExp trunc,
                                  const PrecisionConfig& cfg);

// Gauss-Legendre nodes/weights on [0,1] at the working precision.
void gauss_legendre_01(unsigned n, std::vector<Real>& nodes, std::vector<Real>& weights);

} // namespace thetarig
