#include "thetarig/jets.hpp"

#include <algorithm>

#include "thetarig/errors.hpp"

namespace thetarig {

int VarTable::add(const std::string& name, int degree) {
    if (degree <= 0) throw input_error("variable degree must be positive: " + name);
    if (find(name)) throw input_error("duplicate variable name: " + name);
    vars_.emplace_back(name, degree);
    return static_cast<int>(vars_.size()) - 1;
}

std::optional<int> VarTable::find(const std::string& name) const {
    for (std::size_t k = 0; k < vars_.size(); ++k)
        if (vars_[k].first == name) return static_cast<int>(k);
    return std::nullopt;
}

int VarTable::require(const std::string& name) const {
    auto id = find(name);
    if (!id) throw input_error("unknown variable name: " + name);
    return *id;
}

int Monomial::degree(const VarTable& t) const {
    int d = 0;
    for (int id : vars) d += t.degree(id);
    return d;
}

int Monomial::odd_count(const VarTable& t) const {
    int n = 0;
    for (int id : vars)
        if (t.is_odd(id)) ++n;
    return n;
}

std::string to_string(const Monomial& m, const VarTable& t) {
    if (m.vars.empty()) return "1";
    std::string s;
    std::size_t k = 0;
    while (k < m.vars.size()) {
        std::size_t j = k;
        while (j < m.vars.size() && m.vars[j] == m.vars[k]) ++j;
        if (!s.empty()) s += "*";
        s += t.name(m.vars[k]);
        if (j - k > 1) s += "^" + std::to_string(j - k);
        k = j;
    }
    return s;
}

Jet Jet::scalar(Complex value) {
    Jet j;
    if (!value.is_zero()) j.terms_.emplace(Monomial{}, std::move(value));
    return j;
}

Jet Jet::variable(VarTablePtr table, int var_id, int cap) {
    Jet j;
    j.cap_ = cap;
    if (table->degree(var_id) <= cap)
        j.terms_.emplace(Monomial{{var_id}}, Complex(1));
    j.table_ = std::move(table);
    return j;
}

Complex Jet::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Complex(0) : it->second;
}

Jet Jet::nilpotent_part() const {
    Jet j = *this;
    j.terms_.erase(Monomial{});
    return j;
}

Jet Jet::degree_part(int degree) const {
    Jet j;
    j.table_ = table_;
    j.cap_ = cap_;
    for (const auto& [m, c] : terms_) {
        int d = table_ ? m.degree(*table_) : 0;
        if (d == degree) j.terms_.emplace(m, c);
    }
    return j;
}

int Jet::max_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_)
        if (table_) d = std::max(d, m.degree(*table_));
    return d;
}

bool Jet::has_odd_factor() const {
    if (!table_) return false;
    for (const auto& [m, c] : terms_)
        if (m.odd_count(*table_) > 0) return true;
    return false;
}

const VarTable* Jet::unify_tables(const Jet& a, const Jet& b) {
    if (a.table_ && b.table_ && a.table_ != b.table_)
        throw input_error("jet arithmetic across different variable tables");
    return a.table_ ? a.table_.get() : b.table_.get();
}

void Jet::add_term(const Monomial& m, const Complex& c, const VarTable* t, int cap) {
    if (t && m.degree(*t) > cap) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    } else if (it->second.is_zero()) {
        terms_.erase(it);
    }
}

Jet& Jet::operator+=(const Jet& o) {
    const VarTable* t = unify_tables(*this, o);
    if (!table_) table_ = o.table_;
    cap_ = std::min(cap_, o.cap_);
    for (const auto& [m, c] : o.terms_) add_term(m, c, t, cap_);
    // re-truncate in case our cap shrank
    if (t) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.degree(*t) > cap_)
                it = terms_.erase(it);
            else
                ++it;
        }
    }
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    Jet neg = o.operator-();
    return *this += neg;
}

Jet Jet::operator-() const {
    Jet j = *this;
    for (auto& [m, c] : j.terms_) c = -c;
    return j;
}

Jet& Jet::operator*=(const Jet& o) {
    const VarTable* t = unify_tables(*this, o);
    Jet r;
    r.table_ = table_ ? table_ : o.table_;
    r.cap_ = std::min(cap_, o.cap_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m;
            m.vars.resize(ma.vars.size() + mb.vars.size());
            std::merge(ma.vars.begin(), ma.vars.end(), mb.vars.begin(), mb.vars.end(),
                       m.vars.begin());
            if (t) {
                if (m.degree(*t) > r.cap_) continue;
                if (m.odd_count(*t) > 1)
                    throw parity_error("product carries two odd-degree form factors: " +
                                       to_string(m, *t));
            }
            r.add_term(m, ca * cb, t, r.cap_);
        }
    }
    *this = std::move(r);
    return *this;
}

Jet& Jet::scale(const Complex& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

Jet Jet::pow(unsigned n) const {
    Jet acc = Jet::scalar(Complex(1));
    acc.table_ = table_;
    acc.cap_ = cap_;
    for (unsigned k = 0; k < n; ++k) acc *= *this;
    return acc;
}

Jet Jet::inverse() const {
    Complex c0 = constant_term();
    if (c0.is_zero()) throw inversion_error("jet inverse: zero constant term");
    // 1/(c0 + n) = (1/c0) sum (-n/c0)^k, finite by nilpotency.
    Complex inv0 = thetarig::inverse(c0);
    Jet n = nilpotent_part();
    n.scale(-inv0);
    Jet acc = Jet::scalar(inv0);
    Jet p = Jet::scalar(inv0);
    int max_pow = (table_ && cap_ != kNoCap) ? cap_ : 0;
    for (int k = 1; k <= max_pow; ++k) {
        p *= n;
        if (p.is_zero()) break;
        acc += p;
    }
    return acc;
}

Jet Jet::truncated(int cap) const {
    Jet j;
    j.table_ = table_;
    j.cap_ = std::min(cap_, cap);
    for (const auto& [m, c] : terms_) {
        if (!table_ || m.degree(*table_) <= j.cap_) j.terms_.emplace(m, c);
    }
    return j;
}

Jet Jet::with_digits(unsigned digits10) const {
    Jet j = *this;
    for (auto& [m, c] : j.terms_) c = at_digits(c, digits10);
    return j;
}

void Jet::set_term(Monomial m, Complex c) {
    if (table_ && m.degree(*table_) > cap_) return;
    if (c.is_zero())
        terms_.erase(m);
    else
        terms_.insert_or_assign(std::move(m), std::move(c));
}

Jet jet_exp(const Jet& j) {
    Complex c0 = j.constant_term();
    Jet n = j.nilpotent_part();
    Jet acc = Jet::scalar(Complex(1)) + Jet::zero(j.table(), j.cap());
    Jet p = acc;
    int max_pow = (j.table() && j.cap() != Jet::kNoCap) ? j.cap() : 0;
    Real fact(1);
    for (int k = 1; k <= max_pow; ++k) {
        p *= n;
        if (p.is_zero()) break;
        fact *= k;
        Jet term = p;
        term.scale(Complex(Real(1) / fact));
        acc += term;
    }
    acc.scale(exp(c0));
    return acc;
}

Jet compose_analytic(std::span<const Complex> derivatives, const Jet& nilpotent) {
    if (!nilpotent.constant_term().is_zero())
        throw domain_error("compose_analytic: argument jet has a constant term");
    int cap = nilpotent.cap();
    unsigned need = 1;
    if (nilpotent.table() && cap != Jet::kNoCap) {
        // every variable has degree >= 1, and analytic arguments are even-graded
        need = static_cast<unsigned>(cap / 2) + 1;
    }
    if (derivatives.size() < need)
        throw arity_error("compose_analytic: need " + std::to_string(need) +
                          " derivatives, got " + std::to_string(derivatives.size()));
    Jet acc = Jet::scalar(derivatives[0]) + Jet::zero(nilpotent.table(), cap);
    Jet p = Jet::scalar(Complex(1)) + Jet::zero(nilpotent.table(), cap);
    Real fact(1);
    for (unsigned k = 1; k < derivatives.size(); ++k) {
        p *= nilpotent;
        if (p.is_zero()) break;
        fact *= k;
        Jet term = p;
        term.scale(derivatives[k] * Complex(Real(1) / fact));
        acc += term;
    }
    return acc;
}

Complex integrate(const Jet& j, const IntegrationFunctional& f) {
    if (f.top_degree == 0) {
        Complex c = j.constant_term();
        auto it = f.pairings.find(Monomial{});
        if (it != f.pairings.end()) c *= it->second;
        return c;
    }
    const VarTable* t = j.table().get();
    Complex acc(0);
    for (const auto& [m, c] : j.terms()) {
        if (!t || m.degree(*t) != f.top_degree) continue;
        auto it = f.pairings.find(m);
        if (it == f.pairings.end()) continue;
        acc += c * it->second;
    }
    return acc;
}

} // namespace thetarig
