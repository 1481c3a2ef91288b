#pragma once

#include <array>
#include <map>
#include <mutex>
#include <shared_mutex>

#include "umps/combinatorics.hpp"
#include "umps/polynomial.hpp"
#include "umps/word.hpp"

namespace umps {

// The trace algebra of two generic 2x2 matrices is freely generated by
//   T0 = Tr(A0), T1 = Tr(A1), T00 = Tr(A0^2), T01 = Tr(A0 A1), T11 = Tr(A1^2),
// so every Tr(A_{b_1}...A_{b_d}) is a unique polynomial P_b in these five.
// The grading deg(T0) = deg(T1) = 1, deg(T00) = deg(T01) = deg(T11) = 2
// makes P_b homogeneous of degree d.
enum TraceVar : std::uint32_t { kT0 = 0, kT1 = 1, kT00 = 2, kT01 = 3, kT11 = 4 };

inline const UniversePtr& trace_param_universe() {
  static const UniversePtr u = make_universe("trace5", {"T0", "T1", "T00", "T01", "T11"});
  return u;
}

inline constexpr std::array<int, 5> kTraceGradedDegree{1, 1, 2, 2, 2};
// Number of ones contributed by each generator (T1 and T01 carry one A1
// factor, T11 carries two).
inline constexpr std::array<int, 5> kTraceOnesWeight{0, 1, 0, 1, 2};

inline int trace_graded_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [v, e] : m.factors()) d += kTraceGradedDegree.at(v) * static_cast<int>(e);
  return d;
}

inline int trace_ones_weight(const Monomial& m) {
  int w = 0;
  for (const auto& [v, e] : m.factors()) w += kTraceOnesWeight.at(v) * static_cast<int>(e);
  return w;
}

inline bool is_trace_graded_homogeneous(const SparsePolynomial& p, int degree) {
  for (const auto& [m, c] : p.terms())
    if (trace_graded_degree(m) != degree) return false;
  return true;
}

namespace detail {

inline SparsePolynomial tvar(TraceVar v) {
  return SparsePolynomial::variable(trace_param_universe(), v);
}

inline SparsePolynomial tconst(Rational c) {
  return SparsePolynomial::constant(trace_param_universe(), std::move(c));
}

}  // namespace detail

// P_b for words of length <= 3. Length 3 is the last length with hand-made
// formulas; everything longer reduces via the 2Tr(ABCD) identity.
inline SparsePolynomial trace_param_base_case(const Word& b) {
  using detail::tconst;
  using detail::tvar;
  check_alphabet(b, 2);
  if (b.size() > 3)
    throw std::invalid_argument("trace_param_base_case handles length <= 3 only");
  const Word c = canonical_bracelet(b);
  if (c.empty()) return tconst(2);  // Tr(Id_2)
  if (c == Word{0}) return tvar(kT0);
  if (c == Word{1}) return tvar(kT1);
  if (c == Word{0, 0}) return tvar(kT00);
  if (c == Word{0, 1}) return tvar(kT01);
  if (c == Word{1, 1}) return tvar(kT11);
  const Rational half(1, 2);
  if (c == Word{0, 0, 0})
    return tconst(Rational(-1, 2)) * tvar(kT0) * tvar(kT0) * tvar(kT0) +
           tconst(Rational(3, 2)) * tvar(kT0) * tvar(kT00);
  if (c == Word{0, 0, 1})
    return tconst(Rational(-1, 2)) * tvar(kT0) * tvar(kT0) * tvar(kT1) +
           tconst(half) * tvar(kT1) * tvar(kT00) + tvar(kT0) * tvar(kT01);
  if (c == Word{0, 1, 1})
    return tconst(Rational(-1, 2)) * tvar(kT0) * tvar(kT1) * tvar(kT1) +
           tconst(half) * tvar(kT0) * tvar(kT11) + tvar(kT1) * tvar(kT01);
  // c == {1,1,1}
  return tconst(Rational(-1, 2)) * tvar(kT1) * tvar(kT1) * tvar(kT1) +
         tconst(Rational(3, 2)) * tvar(kT1) * tvar(kT11);
}

// Memoizing table of the polynomials P_b, keyed by canonical bracelet.
// Concurrent readers are fine; insertion is exclusive and idempotent
// (recomputation yields the identical polynomial).
class TraceParamTable {
 public:
  // P_b for an arbitrary binary word b.
  SparsePolynomial trace_poly(const Word& w) {
    check_alphabet(w, 2);
    if (w.size() <= 3) return trace_param_base_case(w);
    const Word key = canonical_bracelet(w);
    {
      std::shared_lock lock(mu_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    SparsePolynomial p = compute(w);
    std::unique_lock lock(mu_);
    auto [it, inserted] = cache_.emplace(key, std::move(p));
    return it->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return cache_.size();
  }

 private:
  // Split b = A|B|C|D with A,B,C the first three letters and D the rest, and
  // apply
  //   2 Tr(ABCD) = Tr(A)(Tr(BCD) - Tr(B)Tr(CD)) + Tr(B)(Tr(CDA) - Tr(C)Tr(DA))
  //              + Tr(C)(Tr(DAB) - Tr(D)Tr(AB)) + Tr(D)(Tr(ABC) - Tr(A)Tr(BC))
  //              - Tr(AC)Tr(BD) + Tr(AB)Tr(CD) + Tr(AD)Tr(BC)
  //              + Tr(A)Tr(B)Tr(C)Tr(D).
  // Every right-hand word is strictly shorter than b, so the recursion
  // terminates in the base cases. This split keeps the word as given (not
  // canonicalized), which exercises well-definedness: any rotation or
  // reflection of b must produce the same polynomial.
  SparsePolynomial compute(const Word& w) {
    const Word wa{w[0]}, wb{w[1]}, wc{w[2]};
    const Word wd(w.begin() + 3, w.end());
    auto cat = [](std::initializer_list<const Word*> parts) {
      Word r;
      for (const Word* p : parts) r.insert(r.end(), p->begin(), p->end());
      return r;
    };
    const SparsePolynomial tA = trace_poly(wa);
    const SparsePolynomial tB = trace_poly(wb);
    const SparsePolynomial tC = trace_poly(wc);
    const SparsePolynomial tD = trace_poly(wd);
    const SparsePolynomial tBCD = trace_poly(cat({&wb, &wc, &wd}));
    const SparsePolynomial tCD = trace_poly(cat({&wc, &wd}));
    const SparsePolynomial tCDA = trace_poly(cat({&wc, &wd, &wa}));
    const SparsePolynomial tDA = trace_poly(cat({&wd, &wa}));
    const SparsePolynomial tDAB = trace_poly(cat({&wd, &wa, &wb}));
    const SparsePolynomial tAB = trace_poly(cat({&wa, &wb}));
    const SparsePolynomial tABC = trace_poly(cat({&wa, &wb, &wc}));
    const SparsePolynomial tBC = trace_poly(cat({&wb, &wc}));
    const SparsePolynomial tAC = trace_poly(cat({&wa, &wc}));
    const SparsePolynomial tBD = trace_poly(cat({&wb, &wd}));
    const SparsePolynomial tAD = trace_poly(cat({&wa, &wd}));

    SparsePolynomial twice = tA * (tBCD - tB * tCD) + tB * (tCDA - tC * tDA) +
                             tC * (tDAB - tD * tAB) + tD * (tABC - tA * tBC) - tAC * tBD +
                             tAB * tCD + tAD * tBC + tA * tB * tC * tD;
    return twice * Rational(1, 2);
  }

  mutable std::shared_mutex mu_;
  std::map<Word, SparsePolynomial> cache_;
};

// One P_b per bracelet of length d, in lexicographic bracelet order.
inline std::map<Word, SparsePolynomial> trace_param_vector(int d, TraceParamTable& table) {
  if (d < 1) throw std::invalid_argument("trace_param_vector requires d >= 1");
  std::map<Word, SparsePolynomial> out;
  for (const auto& b : enumerate_bracelets(2, d))
    out.emplace(b.representative, table.trace_poly(b.representative));
  return out;
}

}  // namespace umps
