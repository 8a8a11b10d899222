#pragma once

#include <map>
#include <memory>
#include <vector>

#include "thetarig/jets.hpp"
#include "thetarig/qseries.hpp"

namespace thetarig {

// One isotypic block of an equivariant bundle restricted to a fixed
// component: a Chern-root jet, the S^1 rotation integer, and a multiplicity.
struct WeightedSummand {
    Jet chern_root;       // scalar zero for isolated data
    int rotation = 0;     // m_beta / n_nu / sigma
    unsigned multiplicity = 1;
};

// complex_bundle lists every complex line; real_pair lists one root per
// +-pair of the complexification (the pair is expanded internally).
enum class Reality { complex_bundle, real_pair };

struct EquivariantBundle {
    std::vector<WeightedSummand> summands;
    Reality reality = Reality::complex_bundle;

    unsigned complex_rank() const {
        unsigned r = 0;
        for (const auto& s : summands) r += s.multiplicity;
        return reality == Reality::real_pair ? 2 * r : r;
    }
};

// Interned equivariant lines. twice_weight keeps half-spin weights exact.
class LineTable {
public:
    struct Entry {
        int twice_weight;
        Jet root;
    };

    int add(int twice_weight, Jet root) {
        entries_.push_back(Entry{twice_weight, std::move(root)});
        return static_cast<int>(entries_.size()) - 1;
    }
    const Entry& at(int id) const { return entries_.at(static_cast<std::size_t>(id)); }
    int size() const { return static_cast<int>(entries_.size()); }

private:
    std::vector<Entry> entries_;
};

using LineTablePtr = std::shared_ptr<LineTable>;

// Tensor word: multiset of line ids (sorted).
struct Word {
    std::vector<int> lines;
    friend bool operator<(const Word& a, const Word& b) { return a.lines < b.lines; }
};

// Finite formal combination of tensor words with Complex coefficients; the
// coefficient ring of bundle-valued q-series.
class WordSum {
public:
    WordSum() = default;

    static WordSum one() { return from_scalar(Complex(1)); }
    static WordSum from_scalar(const Complex& s) {
        WordSum w;
        if (!s.is_zero()) w.t_.emplace(Word{}, s);
        return w;
    }
    static WordSum single(Word w, Complex c = Complex(1)) {
        WordSum ws;
        if (!c.is_zero()) ws.t_.emplace(std::move(w), std::move(c));
        return ws;
    }

    const std::map<Word, Complex>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    WordSum& operator+=(const WordSum& o);
    WordSum& operator-=(const WordSum& o);
    WordSum& operator*=(const WordSum& o);
    WordSum& scale(const Complex& s);

    friend WordSum operator+(WordSum a, const WordSum& b) { return a += b; }
    friend WordSum operator-(WordSum a, const WordSum& b) { return a -= b; }
    friend WordSum operator*(WordSum a, const WordSum& b) { return a *= b; }

private:
    std::map<Word, Complex> t_;
};

template <>
struct RingTraits<WordSum> {
    static WordSum one() { return WordSum::one(); }
    static WordSum from_scalar(const Complex& s) { return WordSum::from_scalar(s); }
    static WordSum inverse(const WordSum&) {
        throw inversion_error("word sums are not inverted directly");
    }
    static bool is_zero(const WordSum& w) { return w.is_zero(); }
};

// q-series whose coefficients are eager tensor-word expansions of virtual
// bundles, together with the line dictionary the words refer to.
struct VirtualBundleSeries {
    LineTablePtr lines;
    QSeries<WordSum> series;
};

enum class WittenCase { Theta, ThetaStar, Q1, Q2, Q3, QAll };

const char* to_string(WittenCase c);

// q-series of Lambda_{sign q^shift}(E - rank E), expanded through trunc.
VirtualBundleSeries lambda_series(const EquivariantBundle& bundle, int sign, QExp shift,
                                  QExp trunc);

// The Witten bundles. Theta-cases consume tangent (the complexified tangent
// restriction, +-pair form) and the spin^c line block; Q-cases consume V
// (+-pair form). QAll is Q1 x Q2 x Q3; Q1 carries the Delta(V) factor.
VirtualBundleSeries witten_bundle(WittenCase c, const EquivariantBundle& tangent,
                                  const WeightedSummand& line, const EquivariantBundle& V,
                                  QExp trunc);

// Equivariant Chern character at g = e^{2 pi i t}: every line contributes
// exp(2 pi i rotation t) exp(chern_root), i.e. jet_exp(root + pi i
// twice_weight t). Coefficients become Jets.
QSeries<Jet> ch_equivariant(const VirtualBundleSeries& series, const Complex& t, QExp trunc);

// Internal tower builders, exposed for tests.
namespace detail {
// (1 + sign q^e)^{power} as a scalar q-series (generalized binomial).
QSeries<Complex> binom_series(int sign, QExp e, long power, QExp trunc);
QSeries<WordSum> lambda_at(const std::vector<int>& line_ids, const LineTable& lines, int sign,
                           QExp e, QExp trunc);
QSeries<WordSum> s_at(const std::vector<int>& line_ids, const LineTable& lines, QExp e,
                      QExp trunc);
// Product over pairs of (word{plus} + word{minus}) for half-spin lines.
WordSum delta_words(const std::vector<std::pair<int, int>>& half_pairs);
std::vector<int> lines_of(const EquivariantBundle& b, LineTable& table);
} // namespace detail

} // namespace thetarig
