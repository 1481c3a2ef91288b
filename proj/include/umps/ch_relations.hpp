#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "umps/matrix_rank.hpp"
#include "umps/trace_calculus.hpp"
#include "umps/trace_param.hpp"
#include "umps/word.hpp"

namespace umps {

// A formal rational linear combination of trace words, asserting that
// sum_j c_j Tr(word_j) vanishes identically. Words live over an abstract
// alphabet of `alphabet_size` letters. When `trailing_letter` is set, every
// term additionally carries trailing_letter^trailing_exponent at its end;
// that slot is the handle for the Cayley-Hamilton exponent extension.
struct RelationTerm {
  Rational coeff;
  Word word;  // without the trailing run
};

struct TraceRelation {
  int alphabet_size = 0;
  std::vector<RelationTerm> terms;
  std::optional<Letter> trailing_letter;
  int trailing_exponent = 0;

  Word full_word(const RelationTerm& t) const {
    Word w = t.word;
    if (trailing_letter)
      w.insert(w.end(), static_cast<std::size_t>(trailing_exponent), *trailing_letter);
    return w;
  }

  std::vector<Word> full_words() const {
    std::vector<Word> out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.push_back(full_word(t));
    return out;
  }

  TraceRelation with_exponent(int k) const {
    if (!trailing_letter)
      throw std::invalid_argument("relation has no trailing power slot");
    if (k < 0) throw std::invalid_argument("trailing exponent must be >= 0");
    TraceRelation r = *this;
    r.trailing_exponent = k;
    return r;
  }
};

inline int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

// The alternating sum over S_m x C_{m+1} of
//   Tr(A_{tau(0)} B^{sigma(0)} A_{tau(1)} B^{sigma(1)} ... A_{tau(m-1)}
//      B^{sigma(m-1)} A_{tau(m)} B^ell),
// which vanishes identically for m x m matrices. Letters 0..m are the A_i,
// letter m+1 is B; the trailing B^ell occupies the exponent slot. The sum
// has m!(m+1) terms.
inline TraceRelation generate_ch_relation(int m, int ell) {
  if (m < 1 || ell < 0) throw std::invalid_argument("generate_ch_relation needs m >= 1, ell >= 0");
  const Letter b_letter = static_cast<Letter>(m + 1);
  TraceRelation rel;
  rel.alphabet_size = m + 2;
  rel.trailing_letter = b_letter;
  rel.trailing_exponent = ell;

  std::vector<int> sigma(static_cast<std::size_t>(m));
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    const int ssign = permutation_sign(sigma);
    for (int t = 0; t <= m; ++t) {
      // tau = t-th power of the (m+1)-cycle i -> i+1; sign (-1)^(m t)
      const int tsign = (m * t) % 2 == 0 ? 1 : -1;
      Word w;
      for (int i = 0; i < m; ++i) {
        w.push_back(static_cast<Letter>((i + t) % (m + 1)));
        w.insert(w.end(), static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)]), b_letter);
      }
      w.push_back(static_cast<Letter>((m + t) % (m + 1)));
      rel.terms.push_back(RelationTerm{Rational(ssign * tsign), std::move(w)});
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return rel;
}

// Equivalent form for ell >= m: the alternating sum over sigma in S_{m+1}
// permuting the exponent multiset {0,...,m-1,ell} across the fixed word
// skeleton A_0 B^* A_1 B^* ... A_m B^*. This is the shape the substitution
// constructions start from.
inline TraceRelation generate_ch_relation_alt(int m, int ell) {
  if (m < 1 || ell < m)
    throw std::invalid_argument("generate_ch_relation_alt needs m >= 1 and ell >= m");
  const Letter b_letter = static_cast<Letter>(m + 1);
  std::vector<int> exponents(static_cast<std::size_t>(m + 1));
  std::iota(exponents.begin(), exponents.end(), 0);
  exponents.back() = ell;

  TraceRelation rel;
  rel.alphabet_size = m + 2;
  std::vector<int> sigma(static_cast<std::size_t>(m + 1));
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    Word w;
    for (int i = 0; i <= m; ++i) {
      w.push_back(static_cast<Letter>(i));
      w.insert(w.end(),
               static_cast<std::size_t>(exponents[static_cast<std::size_t>(
                   sigma[static_cast<std::size_t>(i)])]),
               b_letter);
    }
    rel.terms.push_back(RelationTerm{Rational(permutation_sign(sigma)), std::move(w)});
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return rel;
}

enum class VerifyMode { Symbolic, RandomizedNumeric };

struct RelationCertificate {
  TraceRelation relation;
  VerifyMode mode = VerifyMode::Symbolic;
  int m = 0;
  std::vector<int> verified_exponents;
  bool identically_zero = false;
  bool valid_for_all_k = false;
  std::optional<int> failed_exponent;
  int trials = 0;
  std::optional<bool> nontrivial;
};

// Expand sum_j c_j Tr(word_j) over generic m x m matrices (one matrix per
// abstract letter) and test for the zero polynomial. An optional assignment
// first replaces each letter by a word over `assignment_alphabet` letters.
inline RelationCertificate verify_relation_symbolic(
    const TraceRelation& rel, int m,
    const std::optional<std::map<Letter, Word>>& assignment = {}, int assignment_alphabet = 0) {
  const int n = assignment ? assignment_alphabet : rel.alphabet_size;
  const GenericMatrixTuple t = make_generic_matrix_tuple(m, n);
  SparsePolynomial sum(t.universe);
  for (const auto& term : rel.terms) {
    Word w = rel.full_word(term);
    if (assignment) {
      Word image;
      for (Letter c : w) {
        auto it = assignment->find(c);
        if (it == assignment->end())
          throw std::invalid_argument("assignment misses letter " + std::to_string(int(c)));
        image.insert(image.end(), it->second.begin(), it->second.end());
      }
      w = std::move(image);
    }
    sum += term.coeff * trace_of_word(t, w);
  }
  RelationCertificate cert;
  cert.relation = rel;
  cert.mode = VerifyMode::Symbolic;
  cert.m = m;
  if (rel.trailing_letter) cert.verified_exponents = {rel.trailing_exponent};
  cert.identically_zero = sum.is_zero();
  return cert;
}

namespace detail {

using ModMatrix = std::vector<std::uint64_t>;  // m x m row-major mod p

inline ModMatrix mod_mat_mul(const ModMatrix& a, const ModMatrix& b, int m, std::uint64_t p) {
  ModMatrix c(static_cast<std::size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      const std::uint64_t aik = a[static_cast<std::size_t>(i) * m + k];
      if (!aik) continue;
      for (int j = 0; j < m; ++j) {
        auto& cij = c[static_cast<std::size_t>(i) * m + j];
        cij = (cij + modp::mulmod(aik, b[static_cast<std::size_t>(k) * m + j], p)) % p;
      }
    }
  return c;
}

inline std::uint64_t mod_trace_of_word(const std::vector<ModMatrix>& tuple, const Word& w, int m,
                                       std::uint64_t p) {
  if (w.empty()) return static_cast<std::uint64_t>(m) % p;
  ModMatrix prod = tuple.at(w[0]);
  for (std::size_t s = 1; s < w.size(); ++s) prod = mod_mat_mul(prod, tuple.at(w[s]), m, p);
  std::uint64_t tr = 0;
  for (int i = 0; i < m; ++i) tr = (tr + prod[static_cast<std::size_t>(i) * m + i]) % p;
  return tr;
}

}  // namespace detail

// Evaluate the relation on random matrix tuples modulo a random 61-bit
// prime. All-zero over `trials` independent tuples is a probabilistic
// certificate of identical vanishing.
inline RelationCertificate verify_relation_numeric(const TraceRelation& rel, int m,
                                                   int trials = 50,
                                                   std::uint64_t seed = kDefaultRankSeed) {
  PrimeSource source(seed);
  const std::uint64_t p = source.next();
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);

  RelationCertificate cert;
  cert.relation = rel;
  cert.mode = VerifyMode::RandomizedNumeric;
  cert.m = m;
  cert.trials = trials;
  if (rel.trailing_letter) cert.verified_exponents = {rel.trailing_exponent};
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<detail::ModMatrix> tuple(static_cast<std::size_t>(rel.alphabet_size));
    for (auto& mat : tuple) {
      mat.resize(static_cast<std::size_t>(m) * m);
      for (auto& x : mat) x = dist(rng);
    }
    std::uint64_t sum = 0;
    for (const auto& term : rel.terms) {
      const std::uint64_t tr = detail::mod_trace_of_word(tuple, rel.full_word(term), m, p);
      const std::uint64_t num = modp::reduce_int(numerator(term.coeff), p);
      const std::uint64_t den = modp::reduce_int(denominator(term.coeff), p);
      sum = (sum + modp::mulmod(modp::mulmod(num, modp::invmod(den, p), p), tr, p)) % p;
    }
    if (sum != 0) {
      cert.identically_zero = false;
      return cert;
    }
  }
  cert.identically_zero = true;
  return cert;
}

// Cayley-Hamilton exponent extension: if the trailing-power identity holds
// symbolically for k = 0,...,m-1, it holds for every k (A^k is a linear
// combination of lower powers). Verifies the premises, certifies, and sanity
// checks k = m, m+1 symbolically as well.
inline RelationCertificate ch_extend(const TraceRelation& rel, int m) {
  if (!rel.trailing_letter)
    throw std::invalid_argument("ch_extend needs a relation with a trailing power slot");
  RelationCertificate cert;
  cert.relation = rel;
  cert.mode = VerifyMode::Symbolic;
  cert.m = m;
  for (int k = 0; k < m + 2; ++k) {
    const auto sub = verify_relation_symbolic(rel.with_exponent(k), m);
    if (!sub.identically_zero) {
      cert.identically_zero = false;
      cert.valid_for_all_k = false;
      cert.failed_exponent = k;
      return cert;
    }
    cert.verified_exponents.push_back(k);
  }
  cert.identically_zero = true;
  cert.valid_for_all_k = true;
  return cert;
}

enum class MergeSymmetry { None, Cyclic, Dihedral };

inline Word merge_key(const Word& w, MergeSymmetry sym) {
  switch (sym) {
    case MergeSymmetry::Cyclic: return canonical_necklace(w);
    case MergeSymmetry::Dihedral: return canonical_bracelet(w);
    default: return w;
  }
}

// Substitute a concrete word over [n] for every abstract letter; terms whose
// images agree up to the merge symmetry are combined and zero terms dropped.
// Merging by bracelet is only sound for relations on 2x2 matrices; use
// Cyclic for m >= 3.
inline TraceRelation substitute_relation(const TraceRelation& rel,
                                         const std::map<Letter, Word>& subst, int n,
                                         MergeSymmetry merge = MergeSymmetry::Dihedral) {
  std::map<Word, Rational> merged;
  for (const auto& term : rel.terms) {
    Word image;
    for (Letter c : rel.full_word(term)) {
      auto it = subst.find(c);
      if (it == subst.end())
        throw std::invalid_argument("substitution misses letter " + std::to_string(int(c)));
      if (it->second.empty())
        throw std::invalid_argument("substitution maps a letter to the empty word");
      check_alphabet(it->second, n);
      image.insert(image.end(), it->second.begin(), it->second.end());
    }
    merged[merge_key(image, merge)] += term.coeff;
  }
  TraceRelation out;
  out.alphabet_size = n;
  for (const auto& [w, c] : merged)
    if (c != 0) out.terms.push_back(RelationTerm{c, w});
  return out;
}

// A substituted relation is nontrivial when, after merging by the declared
// ambient symmetry, its coefficient vector on necklaces/bracelets is nonzero
// -- i.e. it does not already follow from that symmetry. The merged
// combination is also cross-checked to vanish identically on the
// parametrization; a non-vanishing input is rejected.
inline bool certify_nontrivial(const TraceRelation& rel, int d, MergeSymmetry ambient, int m = 2) {
  if (ambient == MergeSymmetry::None)
    throw std::invalid_argument("certify_nontrivial needs a cyclic or dihedral ambient");
  std::map<Word, Rational> merged;
  for (const auto& term : rel.terms) {
    const Word w = rel.full_word(term);
    if (static_cast<int>(w.size()) != d)
      throw std::invalid_argument("certify_nontrivial: word of length " +
                                  std::to_string(w.size()) + ", expected " + std::to_string(d));
    merged[merge_key(w, ambient)] += term.coeff;
  }
  bool nonzero = false;
  for (const auto& [w, c] : merged)
    if (c != 0) { nonzero = true; break; }
  if (!nonzero) return false;

  // Annihilation cross-check: the merged combination of trace coordinates
  // must be the zero polynomial.
  if (m == 2 && rel.alphabet_size == 2) {
    TraceParamTable table;
    SparsePolynomial sum(trace_param_universe());
    for (const auto& [w, c] : merged)
      if (c != 0) sum += c * table.trace_poly(w);
    if (!sum.is_zero())
      throw std::invalid_argument("certify_nontrivial: combination does not vanish on the variety");
  } else {
    const GenericMatrixTuple t = make_generic_matrix_tuple(m, rel.alphabet_size);
    SparsePolynomial sum(t.universe);
    for (const auto& [w, c] : merged)
      if (c != 0) sum += c * trace_of_word(t, w);
    if (!sum.is_zero())
      throw std::invalid_argument("certify_nontrivial: combination does not vanish on the variety");
  }
  return true;
}

// ---- constructions used in the binary pipeline --------------------------

// The relation on uMPS(2,2,8) obtained from the m=2, ell=2 identity under
// A_0 -> 1, A_1 -> 11, A_2 -> 01, B -> 0 (six weight-4 terms; it spans the
// kernel at d=8, w=4).
inline TraceRelation preset_example_d8() {
  const TraceRelation rel = generate_ch_relation(2, 2);
  const std::map<Letter, Word> subst{
      {0, {1}}, {1, {1, 1}}, {2, {0, 1}}, {3, {0}}};
  return substitute_relation(rel, subst, 2, MergeSymmetry::Dihedral);
}

// Ternary substitution A_0 -> 0, B -> 1, A_i -> 2 into the alternating-sum
// form; the (m+1)! images are pairwise distinct bracelets, so the merged
// relation is nontrivial on uMPS(m,3,d) with d = m(m+1)/2 + ell + 1.
inline TraceRelation preset_corollary_n3(int m = 2, int ell = -1) {
  if (ell < 0) ell = m;
  const TraceRelation rel = generate_ch_relation_alt(m, ell);
  std::map<Letter, Word> subst{{0, {0}}, {static_cast<Letter>(m + 1), {1}}};
  for (int i = 1; i <= m; ++i) subst[static_cast<Letter>(i)] = {2};
  return substitute_relation(rel, subst, 3, MergeSymmetry::Cyclic);
}

// Binary substitution A_0 -> 0 1^{m+1} 0, B -> 1, A_i -> 0 with ell = m,
// giving a nontrivial relation on uMPS(m,2,d) with d = (m+3)(m+2)/2.
inline TraceRelation preset_remark_n2(int m = 2) {
  const TraceRelation rel = generate_ch_relation_alt(m, m);
  Word a0{0};
  a0.insert(a0.end(), static_cast<std::size_t>(m + 1), Letter{1});
  a0.push_back(0);
  std::map<Letter, Word> subst{{0, a0}, {static_cast<Letter>(m + 1), {1}}};
  for (int i = 1; i <= m; ++i) subst[static_cast<Letter>(i)] = {0};
  return substitute_relation(rel, subst, 2, MergeSymmetry::Cyclic);
}

// ---- weight-3 rewriting --------------------------------------------------

namespace detail {

inline Word word_from_gaps(int g1, int g2, int g3) {
  Word w{1};
  w.insert(w.end(), static_cast<std::size_t>(g1), Letter{0});
  w.push_back(1);
  w.insert(w.end(), static_cast<std::size_t>(g2), Letter{0});
  w.push_back(1);
  w.insert(w.end(), static_cast<std::size_t>(g3), Letter{0});
  return w;
}

// Cyclic gaps after each 1 of a weight-3 word, sorted ascending.
inline std::array<int, 3> sorted_gaps(const Word& w) {
  std::vector<int> ones;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == 1) ones.push_back(static_cast<int>(i));
  if (ones.size() != 3) throw std::invalid_argument("expected a weight-3 word");
  const int d = static_cast<int>(w.size());
  std::array<int, 3> gaps{ones[1] - ones[0] - 1, ones[2] - ones[1] - 1,
                          d - ones[2] + ones[0] - 1};
  std::sort(gaps.begin(), gaps.end());
  return gaps;
}

}  // namespace detail

// The six-term binary relation obtained from the m=2 identity under
// A_0 -> 1 0^{a-1}, A_1 -> 1 0^b, A_2 -> 1, B -> 0 with trailing exponent c:
//   T_{1 0^{a-1} 1 0^{b+1} 1 0^c} + T_{1 0^b 1 0 1 0^{a+c-1}} + T_{1 1 0^a 1 0^{b+c}}
//   = T_{1 0^a 1 0^b 1 0^c} + T_{1 0^{b+1} 1 1 0^{a+c-1}} + T_{1 0 1 0^{a-1} 1 0^{b+c}}.
inline TraceRelation weight3_rewrite_relation(int a, int b, int c) {
  if (a < 1 || b < 0 || c < 0)
    throw std::invalid_argument("weight3_rewrite_relation needs a >= 1, b, c >= 0");
  const TraceRelation rel = generate_ch_relation(2, c);
  Word wa{1};
  wa.insert(wa.end(), static_cast<std::size_t>(a - 1), Letter{0});
  Word wb{1};
  wb.insert(wb.end(), static_cast<std::size_t>(b), Letter{0});
  const std::map<Letter, Word> subst{{0, wa}, {1, wb}, {2, {1}}, {3, {0}}};
  return substitute_relation(rel, subst, 2, MergeSymmetry::Dihedral);
}

// Express T_b for a weight-3 bracelet b as an exact combination of the
// spanning set (bracelets containing 11 or 101), by iterating the rewriting
// above; the smallest gap strictly decreases, so this terminates.
inline std::map<Word, Rational> weight3_reduce(int d, const Word& bracelet) {
  if (static_cast<int>(bracelet.size()) != d || ones_count(bracelet) != 3)
    throw std::invalid_argument("weight3_reduce expects a weight-3 word of length d");
  std::map<Word, Rational> result;
  std::vector<std::pair<std::array<int, 3>, Rational>> pending{
      {detail::sorted_gaps(bracelet), Rational(1)}};
  while (!pending.empty()) {
    auto [gaps, coeff] = pending.back();
    pending.pop_back();
    const auto [a, b, c] = gaps;
    if (a <= 1) {  // contains 11 (gap 0) or 101 (gap 1): already in the set
      result[canonical_bracelet(detail::word_from_gaps(a, b, c))] += coeff;
      continue;
    }
    // T_(a,b,c) = T_(b,1,a+c-1) + T_(0,a,b+c) - T_(b+1,0,a+c-1) - T_(1,a-1,b+c)
    //           + T_(a-1,b+1,c)
    result[canonical_bracelet(detail::word_from_gaps(b, 1, a + c - 1))] += coeff;
    result[canonical_bracelet(detail::word_from_gaps(0, a, b + c))] += coeff;
    result[canonical_bracelet(detail::word_from_gaps(b + 1, 0, a + c - 1))] -= coeff;
    result[canonical_bracelet(detail::word_from_gaps(1, a - 1, b + c))] -= coeff;
    std::array<int, 3> rec{a - 1, b + 1, c};
    std::sort(rec.begin(), rec.end());
    pending.emplace_back(rec, coeff);
  }
  for (auto it = result.begin(); it != result.end();)
    it = it->second == 0 ? result.erase(it) : std::next(it);
  return result;
}

}  // namespace umps
