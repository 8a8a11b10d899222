#include "thetarig/bundles.hpp"

#include <algorithm>

#include "thetarig/errors.hpp"

namespace thetarig {

const char* to_string(WittenCase c) {
    switch (c) {
    case WittenCase::Theta: return "Theta";
    case WittenCase::ThetaStar: return "Theta*";
    case WittenCase::Q1: return "Q1";
    case WittenCase::Q2: return "Q2";
    case WittenCase::Q3: return "Q3";
    case WittenCase::QAll: return "Q";
    }
    return "?";
}

WordSum& WordSum::operator+=(const WordSum& o) {
    for (const auto& [w, c] : o.t_) {
        auto [it, inserted] = t_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    return *this;
}

WordSum& WordSum::operator-=(const WordSum& o) {
    WordSum neg = o;
    for (auto& [w, c] : neg.t_) c = -c;
    return *this += neg;
}

WordSum& WordSum::operator*=(const WordSum& o) {
    WordSum r;
    for (const auto& [wa, ca] : t_) {
        for (const auto& [wb, cb] : o.t_) {
            Word w;
            w.lines.resize(wa.lines.size() + wb.lines.size());
            std::merge(wa.lines.begin(), wa.lines.end(), wb.lines.begin(), wb.lines.end(),
                       w.lines.begin());
            Complex c = ca * cb;
            auto it = r.t_.find(w);
            if (it == r.t_.end())
                r.t_.emplace(std::move(w), std::move(c));
            else {
                it->second += c;
                if (it->second.is_zero()) r.t_.erase(it);
            }
        }
    }
    *this = std::move(r);
    return *this;
}

WordSum& WordSum::scale(const Complex& s) {
    if (s.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [w, c] : t_) c *= s;
    return *this;
}

namespace detail {

std::vector<int> lines_of(const EquivariantBundle& b, LineTable& table) {
    std::vector<int> ids;
    for (const auto& s : b.summands) {
        for (unsigned k = 0; k < s.multiplicity; ++k) {
            ids.push_back(table.add(2 * s.rotation, s.chern_root));
            if (b.reality == Reality::real_pair)
                ids.push_back(table.add(-2 * s.rotation, -s.chern_root));
        }
    }
    return ids;
}

QSeries<Complex> binom_series(int sign, QExp e, long power, QExp trunc) {
    // (1 + s x)^p = sum_k C(p,k) s^k x^k with x = q^e
    QSeries<Complex> r(trunc);
    Real coeff(1);
    long k = 0;
    for (QExp ke{0}; ke <= trunc; ke = ke + e) {
        Complex c(coeff);
        if (sign < 0 && (k % 2 != 0)) c = -c;
        r.set_coeff(ke, c);
        // next binomial: C(p, k+1) = C(p, k) (p - k)/(k + 1)
        coeff *= Real(power - k);
        coeff /= Real(k + 1);
        ++k;
        if (coeff.is_zero()) break;
    }
    return r;
}

QSeries<WordSum> lambda_at(const std::vector<int>& line_ids, const LineTable&, int sign, QExp e,
                           QExp trunc) {
    QSeries<WordSum> acc = QSeries<WordSum>::one(trunc);
    if (e > trunc) return acc;
    for (int id : line_ids) {
        QSeries<WordSum> f = QSeries<WordSum>::one(trunc);
        f.set_coeff(e, WordSum::single(Word{{id}}, Complex(sign)));
        acc *= f;
    }
    QSeries<Complex> red = binom_series(sign, e, -static_cast<long>(line_ids.size()), trunc);
    acc *= red.map([](const Complex& c) { return WordSum::from_scalar(c); });
    return acc;
}

QSeries<WordSum> s_at(const std::vector<int>& line_ids, const LineTable&, QExp e, QExp trunc) {
    QSeries<WordSum> acc = QSeries<WordSum>::one(trunc);
    if (e > trunc) return acc;
    for (int id : line_ids) {
        // sum_k q^{ke} [id^k]
        QSeries<WordSum> f(trunc);
        Word w;
        for (QExp ke{0}; ke <= trunc; ke = ke + e) {
            f.set_coeff(ke, WordSum::single(w));
            w.lines.push_back(id);
        }
        acc *= f;
    }
    QSeries<Complex> red = binom_series(-1, e, static_cast<long>(line_ids.size()), trunc);
    acc *= red.map([](const Complex& c) { return WordSum::from_scalar(c); });
    return acc;
}

WordSum delta_words(const std::vector<std::pair<int, int>>& half_pairs) {
    WordSum acc = WordSum::one();
    for (const auto& [p, m] : half_pairs) {
        WordSum f = WordSum::single(Word{{p}});
        f += WordSum::single(Word{{m}});
        acc *= f;
    }
    return acc;
}

} // namespace detail

VirtualBundleSeries lambda_series(const EquivariantBundle& bundle, int sign, QExp shift,
                                  QExp trunc) {
    auto table = std::make_shared<LineTable>();
    auto ids = detail::lines_of(bundle, *table);
    auto series = detail::lambda_at(ids, *table, sign, shift, trunc);
    return {std::move(table), std::move(series)};
}

VirtualBundleSeries witten_bundle(WittenCase c, const EquivariantBundle& tangent,
                                  const WeightedSummand& line, const EquivariantBundle& V,
                                  QExp trunc) {
    auto table = std::make_shared<LineTable>();
    QSeries<WordSum> acc = QSeries<WordSum>::one(trunc);

    auto tower = [&](const std::vector<int>& ids, int sign, bool half_grid, bool symmetric) {
        for (unsigned j = 1;; ++j) {
            QExp e = half_grid ? QExp::half_odd(static_cast<long>(j))
                               : QExp::integer(static_cast<long>(j));
            if (e > trunc) break;
            acc *= symmetric ? detail::s_at(ids, *table, e, trunc)
                             : detail::lambda_at(ids, *table, sign, e, trunc);
        }
    };

    switch (c) {
    case WittenCase::Theta:
    case WittenCase::ThetaStar: {
        auto t_ids = detail::lines_of(tangent, *table);
        EquivariantBundle lb{{line}, Reality::real_pair};
        auto l_ids = detail::lines_of(lb, *table);
        tower(t_ids, +1, false, true); // S_{q^n}(T_C M tilde)
        if (c == WittenCase::Theta) {
            tower(l_ids, +1, false, false); // Lambda_{q^m}
            tower(l_ids, -1, true, false);  // Lambda_{-q^{r-1/2}}
            tower(l_ids, +1, true, false);  // Lambda_{q^{s-1/2}}
        } else {
            tower(l_ids, -1, false, false); // Lambda_{-q^m}
        }
        break;
    }
    case WittenCase::Q1:
    case WittenCase::Q2:
    case WittenCase::Q3:
    case WittenCase::QAll: {
        if (V.reality != Reality::real_pair)
            throw case_error("Q cases take V in real +-pair form");
        std::vector<std::pair<int, int>> halves;
        for (const auto& s : V.summands) {
            for (unsigned k = 0; k < s.multiplicity; ++k) {
                Jet half_root = s.chern_root;
                half_root.scale(Complex(Real(1) / Real(2)));
                int p = table->add(s.rotation, half_root);
                int m = table->add(-s.rotation, -half_root);
                halves.emplace_back(p, m);
            }
        }
        auto v_ids = detail::lines_of(V, *table);
        if (c == WittenCase::Q1 || c == WittenCase::QAll) {
            QSeries<WordSum> d(trunc);
            d.set_coeff(QExp{0}, detail::delta_words(halves));
            acc *= d;
            tower(v_ids, +1, false, false); // Lambda_{q^n}
        }
        if (c == WittenCase::Q2 || c == WittenCase::QAll)
            tower(v_ids, -1, true, false); // Lambda_{-q^{n-1/2}}
        if (c == WittenCase::Q3 || c == WittenCase::QAll)
            tower(v_ids, +1, true, false); // Lambda_{q^{n-1/2}}
        break;
    }
    }
    return {std::move(table), std::move(acc)};
}

QSeries<Jet> ch_equivariant(const VirtualBundleSeries& series, const Complex& t, QExp trunc) {
    const LineTable& lines = *series.lines;
    std::vector<Jet> line_ch;
    line_ch.reserve(static_cast<std::size_t>(lines.size()));
    const Complex i_pi_t = Complex(Real(0), pi_real()) * t;
    for (int id = 0; id < lines.size(); ++id) {
        const auto& e = lines.at(id);
        Jet arg = e.root + Jet::scalar(i_pi_t * Complex(e.twice_weight));
        line_ch.push_back(jet_exp(arg));
    }
    QExp cut = std::min(trunc, series.series.truncation());
    QSeries<Jet> out(cut);
    for (const auto& [qe, ws] : series.series.coeffs()) {
        if (qe > cut) continue;
        Jet acc = Jet::scalar(Complex(0));
        for (const auto& [word, coeff] : ws.terms()) {
            Jet prod = Jet::scalar(coeff);
            for (int id : word.lines) prod *= line_ch[static_cast<std::size_t>(id)];
            acc += prod;
        }
        out.set_coeff(qe, std::move(acc));
    }
    return out;
}

} // namespace thetarig
