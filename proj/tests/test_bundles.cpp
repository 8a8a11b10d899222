#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thetarig/bundles.hpp"
#include "thetarig/theta.hpp"

using namespace thetarig;

namespace {
struct Setup {
    Setup() { set_working_digits(60); }
};
Setup setup_once;

Real tol(long e) { return pow10(e); }

Real dist(const QSeries<Complex>& a, const QSeries<Complex>& b) {
    QSeries<Complex> d = a - b;
    Real m(0);
    for (const auto& [e, c] : d.coeffs()) m = (std::max)(m, abs(c));
    return m;
}

QSeries<Complex> scalarize(const QSeries<Jet>& s) {
    return s.map([](const Jet& j) { return j.constant_term(); });
}

const Complex t_val = parse_complex("0.21+0.13i");
} // namespace

TEST_CASE("reduced operations start at 1") {
    EquivariantBundle b;
    b.summands.push_back({Jet::scalar(parse_complex("0.3+0.1i")), 2, 1});
    for (int sign : {+1, -1}) {
        auto vb = lambda_series(b, sign, QExp::integer(1), QExp::integer(3));
        auto ch = ch_equivariant(vb, t_val, QExp::integer(3));
        CHECK(abs(ch.coeff(QExp{0}).constant_term() - Complex(1)) < tol(-55));
    }
}

TEST_CASE("ch of a reduced exterior power matches the generating function") {
    // rank-1 complex line, root w, rotation m: ch Lambda_q(L-1) =
    // (1 + e^{w + 2 pi i m t} q)/(1 + q)
    Complex w = parse_complex("0.3+0.1i");
    int m = 2;
    EquivariantBundle b;
    b.summands.push_back({Jet::scalar(w), m, 1});
    QExp trunc = QExp::integer(3);
    auto vb = lambda_series(b, +1, QExp::integer(1), trunc);
    auto ch = scalarize(ch_equivariant(vb, t_val, trunc));

    Complex line = exp(w + Complex(Real(0), 2 * pi_real()) * Complex(m) * t_val);
    QSeries<Complex> num = QSeries<Complex>::one(trunc);
    num.set_coeff(QExp::integer(1), line);
    QSeries<Complex> den = QSeries<Complex>::one(trunc);
    den.set_coeff(QExp::integer(1), Complex(1));
    CHECK(dist(ch, num * den.inverse()) < tol(-50));
}

TEST_CASE("S_q inverts Lambda_{-q} (Eq S_t = 1/Lambda_{-t})") {
    EquivariantBundle b;
    b.summands.push_back({Jet::scalar(parse_complex("0.2-0.4i")), 1, 1});
    b.summands.push_back({Jet::scalar(parse_complex("-0.1+0.3i")), -2, 2});
    QExp trunc = QExp::integer(5);

    auto table = std::make_shared<LineTable>();
    auto ids = detail::lines_of(b, *table);
    auto s_part = detail::s_at(ids, *table, QExp::integer(1), trunc);
    auto l_part = detail::lambda_at(ids, *table, -1, QExp::integer(1), trunc);
    VirtualBundleSeries prod{table, s_part * l_part};
    auto ch = scalarize(ch_equivariant(prod, t_val, trunc));
    CHECK(dist(ch, QSeries<Complex>::one(trunc)) < tol(-48));
}

TEST_CASE("half-exponent exterior towers combine to the squared-line tower") {
    // Lambda_{-q^{1/2}}(L-1) Lambda_{q^{1/2}}(L-1) = Lambda_{-q}(L^2-1)
    Complex w = parse_complex("0.15+0.2i");
    int m = 1;
    EquivariantBundle line;
    line.summands.push_back({Jet::scalar(w), m, 1});
    EquivariantBundle square;
    square.summands.push_back({Jet::scalar(w + w), 2 * m, 1});
    QExp trunc = QExp::integer(2);

    auto a = lambda_series(line, -1, QExp::half_odd(1), trunc);
    auto b = lambda_series(line, +1, QExp::half_odd(1), trunc);
    auto lhs = scalarize(ch_equivariant(a, t_val, trunc)) *
               scalarize(ch_equivariant(b, t_val, trunc));
    auto rhs = scalarize(ch_equivariant(lambda_series(square, -1, QExp::integer(1), trunc),
                                        t_val, trunc));
    CHECK(dist(lhs, rhs) < tol(-50));
}

TEST_CASE("witten bundle constant terms") {
    EquivariantBundle tangent;
    tangent.reality = Reality::real_pair;
    tangent.summands.push_back({Jet::scalar(Complex(0)), 1, 1});
    WeightedSummand line{Jet::scalar(Complex(0)), 1, 1};
    EquivariantBundle v_empty;
    v_empty.reality = Reality::real_pair;

    QExp trunc = QExp::integer(2);
    auto th = witten_bundle(WittenCase::Theta, tangent, line, v_empty, trunc);
    auto ch = scalarize(ch_equivariant(th, t_val, trunc));
    CHECK(abs(ch.coeff(QExp{0}) - Complex(1)) < tol(-55));

    auto q1 = witten_bundle(WittenCase::Q1, tangent, line, v_empty, trunc);
    auto chq = scalarize(ch_equivariant(q1, t_val, trunc));
    CHECK(dist(chq, QSeries<Complex>::one(trunc)) == 0); // rank-0 V: Delta factor 2^0 = 1
}

TEST_CASE("Delta(V) for one real pair has ch e^{pi i n t} e^{z/2} + conjugate") {
    Complex z = parse_complex("0.12+0.3i"); // exponential-normalized root
    int n = 2;
    EquivariantBundle v;
    v.reality = Reality::real_pair;
    v.summands.push_back({Jet::scalar(z), n, 1});
    WeightedSummand dummy_line{Jet::scalar(Complex(0)), 0, 1};
    EquivariantBundle dummy_tangent;
    dummy_tangent.reality = Reality::real_pair;

    QExp trunc = QExp{0};
    auto q1 = witten_bundle(WittenCase::Q1, dummy_tangent, dummy_line, v, trunc);
    auto ch = scalarize(ch_equivariant(q1, t_val, trunc));
    Complex ipint = Complex(Real(0), pi_real()) * Complex(n) * t_val;
    Complex half = Complex(Real(1) / Real(2));
    Complex expect = exp(ipint + half * z) + exp(-(ipint + half * z));
    CHECK(abs(ch.coeff(QExp{0}) - expect) < tol(-50));
}

TEST_CASE("rank reduction: tilde words vanish at t=0, roots=0 beyond q^0") {
    EquivariantBundle tangent;
    tangent.reality = Reality::real_pair;
    tangent.summands.push_back({Jet::scalar(Complex(0)), 3, 2});
    WeightedSummand line{Jet::scalar(Complex(0)), 1, 1};
    EquivariantBundle v;
    v.reality = Reality::real_pair;
    v.summands.push_back({Jet::scalar(Complex(0)), 2, 1});

    QExp trunc = QExp::integer(3);
    for (auto c : {WittenCase::Theta, WittenCase::ThetaStar, WittenCase::Q2, WittenCase::Q3}) {
        auto vb = witten_bundle(c, tangent, line, v, trunc);
        auto ch = scalarize(ch_equivariant(vb, Complex(0), trunc));
        for (const auto& [e, v2] : ch.coeffs()) {
            if (e.eighths == 0) continue;
            CHECK(abs(v2) < tol(-50));
        }
    }
}

TEST_CASE("QAll is the product of the three Q towers") {
    EquivariantBundle tangent;
    tangent.reality = Reality::real_pair;
    WeightedSummand line{Jet::scalar(Complex(0)), 0, 1};
    EquivariantBundle v;
    v.reality = Reality::real_pair;
    v.summands.push_back({Jet::scalar(parse_complex("0.1+0.05i")), 1, 1});
    v.summands.push_back({Jet::scalar(parse_complex("-0.2+0.15i")), -2, 1});

    QExp trunc = QExp::integer(2);
    auto all = scalarize(
        ch_equivariant(witten_bundle(WittenCase::QAll, tangent, line, v, trunc), t_val, trunc));
    auto q1 = scalarize(
        ch_equivariant(witten_bundle(WittenCase::Q1, tangent, line, v, trunc), t_val, trunc));
    auto q2 = scalarize(
        ch_equivariant(witten_bundle(WittenCase::Q2, tangent, line, v, trunc), t_val, trunc));
    auto q3 = scalarize(
        ch_equivariant(witten_bundle(WittenCase::Q3, tangent, line, v, trunc), t_val, trunc));
    CHECK(dist(all, q1 * q2 * q3) < tol(-48));
}

TEST_CASE("conjugation symmetry of real towers") {
    // replacing t -> -t on a real-pair bundle conjugates nothing away: the
    // ch of a real operation at real roots is invariant
    EquivariantBundle v;
    v.reality = Reality::real_pair;
    v.summands.push_back({Jet::scalar(Complex(0)), 2, 1});
    auto table = std::make_shared<LineTable>();
    auto ids = detail::lines_of(v, *table);
    QExp trunc = QExp::integer(3);
    VirtualBundleSeries vb{table, detail::lambda_at(ids, *table, +1, QExp::integer(1), trunc)};
    auto a = scalarize(ch_equivariant(vb, t_val, trunc));
    auto b = scalarize(ch_equivariant(vb, -t_val, trunc));
    CHECK(dist(a, b) < tol(-50));
}
