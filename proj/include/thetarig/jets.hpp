#pragma once

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thetarig/precision.hpp"

namespace thetarig {

// Registry of form variables (name, cohomological degree). Ids are assigned
// in insertion order and index Monomial entries.
class VarTable {
public:
    int add(const std::string& name, int degree);
    std::optional<int> find(const std::string& name) const;
    int require(const std::string& name) const;
    int degree(int id) const { return vars_.at(static_cast<std::size_t>(id)).second; }
    const std::string& name(int id) const { return vars_.at(static_cast<std::size_t>(id)).first; }
    bool is_odd(int id) const { return degree(id) % 2 != 0; }
    int size() const { return static_cast<int>(vars_.size()); }

private:
    std::vector<std::pair<std::string, int>> vars_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

// Commutative monomial: sorted variable ids with repetition.
struct Monomial {
    std::vector<int> vars;

    int degree(const VarTable& t) const;
    int odd_count(const VarTable& t) const;
    bool empty() const { return vars.empty(); }

    friend bool operator<(const Monomial& a, const Monomial& b) { return a.vars < b.vars; }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.vars == b.vars; }
};

std::string to_string(const Monomial& m, const VarTable& t);

// Truncated graded-commutative series in form variables. Arithmetic is exact
// modulo total degree > cap. A Jet without a table is a plain scalar and
// combines with anything; caps combine by min. Monomials never carry more
// than one odd-degree variable factor (parity_error otherwise).
class Jet {
public:
    static constexpr int kNoCap = std::numeric_limits<int>::max();

    Jet() : cap_(kNoCap) {}

    static Jet scalar(Complex value);
    static Jet variable(VarTablePtr table, int var_id, int cap);
    static Jet zero(VarTablePtr table, int cap) {
        Jet j;
        j.table_ = std::move(table);
        j.cap_ = cap;
        return j;
    }

    int cap() const { return cap_; }
    const VarTablePtr& table() const { return table_; }
    const std::map<Monomial, Complex>& terms() const { return terms_; }

    Complex constant_term() const;
    Jet nilpotent_part() const; // constant term removed
    Jet degree_part(int degree) const;
    int max_degree() const; // 0 for scalars
    bool is_zero() const { return terms_.empty(); }
    bool has_odd_factor() const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& scale(const Complex& s);
    Jet operator-() const;

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const Jet& b) { return a *= b; }

    Jet pow(unsigned n) const;
    Jet inverse() const; // needs nonzero constant term
    Jet truncated(int cap) const;
    Jet with_digits(unsigned digits10) const; // re-precision all coefficients

    void set_term(Monomial m, Complex c);

private:
    void add_term(const Monomial& m, const Complex& c, const VarTable* t, int cap);
    static const VarTable* unify_tables(const Jet& a, const Jet& b);

    VarTablePtr table_; // null for scalars
    int cap_;
    std::map<Monomial, Complex> terms_; // zero terms pruned
};

// exp on jets: exp(constant) * sum nilpotent^k / k!, finite by nilpotency.
Jet jet_exp(const Jet& j);

// Taylor composition sum_k f^{(k)}(a)/k! jet^k for a nilpotent jet, where
// derivatives = (f(a), f'(a), ..., f^{(K)}(a)). Exact when K covers the cap.
Jet compose_analytic(std::span<const Complex> derivatives, const Jet& nilpotent);

// Pairing of top-degree monomials with intersection numbers. Monomials of
// degree top_degree with no listed pairing integrate to zero; top_degree 0
// extracts the constant term.
struct IntegrationFunctional {
    int top_degree = 0;
    std::map<Monomial, Complex> pairings;
};

Complex integrate(const Jet& j, const IntegrationFunctional& f);

} // namespace thetarig
