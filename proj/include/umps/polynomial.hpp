#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "umps/rational.hpp"

namespace umps {

// A variable universe names a polynomial ring: arithmetic is only defined
// between polynomials over the same universe (compared by name).
struct VarUniverse {
  std::string name;
  std::vector<std::string> var_names;
};
using UniversePtr = std::shared_ptr<const VarUniverse>;

inline UniversePtr make_universe(std::string name, std::vector<std::string> vars) {
  return std::make_shared<const VarUniverse>(VarUniverse{std::move(name), std::move(vars)});
}

// Power product with positive exponents, sorted by variable id.
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;  // (variable, exponent > 0)

  Monomial() = default;

  static Monomial variable(std::uint32_t v, std::uint32_t e = 1) {
    Monomial m;
    if (e > 0) m.f_.emplace_back(v, e);
    return m;
  }

  const std::vector<Factor>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }

  int total_degree() const {
    int d = 0;
    for (const auto& [v, e] : f_) d += static_cast<int>(e);
    return d;
  }

  std::uint32_t exponent_of(std::uint32_t v) const {
    for (const auto& [var, e] : f_)
      if (var == v) return e;
    return 0;
  }

  Monomial times(const Monomial& o) const {
    Monomial r;
    r.f_.reserve(f_.size() + o.f_.size());
    std::size_t i = 0, j = 0;
    while (i < f_.size() && j < o.f_.size()) {
      if (f_[i].first < o.f_[j].first)
        r.f_.push_back(f_[i++]);
      else if (f_[i].first > o.f_[j].first)
        r.f_.push_back(o.f_[j++]);
      else {
        r.f_.emplace_back(f_[i].first, f_[i].second + o.f_[j].second);
        ++i, ++j;
      }
    }
    for (; i < f_.size(); ++i) r.f_.push_back(f_[i]);
    for (; j < o.f_.size(); ++j) r.f_.push_back(o.f_[j]);
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }

  std::string str(const UniversePtr& u) const {
    if (f_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < f_.size(); ++i) {
      if (i) s += "*";
      const auto [v, e] = f_[i];
      s += (u && v < u->var_names.size()) ? u->var_names[v] : ("x" + std::to_string(v));
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  std::vector<Factor> f_;
};

// Graded lexicographic order: total degree first, ties broken by the
// exponent vector with variable 0 most significant. Any fixed order would
// do; this one is deterministic and convenient for printing.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    for (std::size_t i = 0; i < fa.size() && i < fb.size(); ++i) {
      if (fa[i].first != fb[i].first)
        // the monomial holding a positive power of the earlier variable is
        // lex-greater
        return fa[i].first < fb[i].first ? false : true;
      if (fa[i].second != fb[i].second) return fa[i].second < fb[i].second;
    }
    return fa.size() < fb.size();
  }
};

// Sparse multivariate polynomial with exact rational coefficients. Immutable
// value semantics; zero coefficients are never stored.
class SparsePolynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  SparsePolynomial() = default;  // zero over the anonymous universe
  explicit SparsePolynomial(UniversePtr u) : u_(std::move(u)) {}

  static SparsePolynomial constant(UniversePtr u, Rational c) {
    SparsePolynomial p(std::move(u));
    if (c != 0) p.terms_.emplace(Monomial{}, std::move(c));
    return p;
  }

  static SparsePolynomial variable(UniversePtr u, std::uint32_t v) {
    SparsePolynomial p(std::move(u));
    p.terms_.emplace(Monomial::variable(v), Rational(1));
    return p;
  }

  const UniversePtr& universe() const { return u_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  // Maximum total degree of a term; -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
  }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  SparsePolynomial& operator+=(const SparsePolynomial& o) {
    merge_universe(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  SparsePolynomial& operator-=(const SparsePolynomial& o) {
    merge_universe(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  SparsePolynomial& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, coeff] : terms_) coeff *= c;
    return *this;
  }

  friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) {
    a += b;
    return a;
  }
  friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) {
    a -= b;
    return a;
  }
  friend SparsePolynomial operator*(SparsePolynomial a, const Rational& c) {
    a *= c;
    return a;
  }
  friend SparsePolynomial operator*(const Rational& c, SparsePolynomial a) {
    a *= c;
    return a;
  }

  friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
    SparsePolynomial r(a.u_ ? a.u_ : b.u_);
    a.check_same_universe(b);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
    return r;
  }

  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
    if (a.u_ && b.u_ && a.u_->name != b.u_->name) return false;
    return a.terms_ == b.terms_;
  }

  // Exact evaluation; the assignment must cover every variable that occurs.
  Rational eval(const std::map<std::uint32_t, Rational>& assignment) const {
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
      Rational v = c;
      for (const auto& [var, e] : m.factors()) {
        auto it = assignment.find(var);
        if (it == assignment.end())
          throw std::invalid_argument("eval: no value for variable '" + var_name(var) + "'");
        v *= rational_pow(it->second, e);
      }
      total += v;
    }
    return total;
  }

  // Deterministic rendering, leading term first, e.g. "-1/2*T0^3 + 3/2*T0*T00".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      const bool neg = c < 0;
      if (s.empty())
        s += neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      const Rational a = neg ? Rational(-c) : c;
      if (m.is_one())
        s += rational_to_string(a);
      else if (a == 1)
        s += m.str(u_);
      else
        s += rational_to_string(a) + "*" + m.str(u_);
    }
    return s;
  }

  std::string var_name(std::uint32_t v) const {
    if (u_ && v < u_->var_names.size()) return u_->var_names[v];
    return "x" + std::to_string(v);
  }

 private:
  void check_same_universe(const SparsePolynomial& o) const {
    if (u_ && o.u_ && u_->name != o.u_->name)
      throw std::invalid_argument("polynomial universes differ: '" + u_->name + "' vs '" +
                                  o.u_->name + "'");
  }
  void merge_universe(const SparsePolynomial& o) {
    check_same_universe(o);
    if (!u_) u_ = o.u_;
  }

  UniversePtr u_;
  TermMap terms_;
};

}  // namespace umps
