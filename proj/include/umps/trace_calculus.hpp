#pragma once

#include <map>
#include <string>
#include <vector>

#include "umps/combinatorics.hpp"
#include "umps/errors.hpp"
#include "umps/polynomial.hpp"
#include "umps/word.hpp"

namespace umps {

// An n-tuple A_0,...,A_{n-1} of m x m matrices with distinct polynomial
// variables as entries. Variable ids are laid out k*m*m + i*m + j with
// 0-based row i and column j; printed names are 1-based, e.g. "a0_12".
struct GenericMatrixTuple {
  int m = 0;
  int n = 0;
  UniversePtr universe;

  std::uint32_t var(int k, int i, int j) const {
    return static_cast<std::uint32_t>((k * m + i) * m + j);
  }
};

inline GenericMatrixTuple make_generic_matrix_tuple(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("matrix tuple needs m >= 1, n >= 1");
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(m) * m * n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        names.push_back("a" + std::to_string(k) + "_" + std::to_string(i + 1) +
                        std::to_string(j + 1));
  GenericMatrixTuple t;
  t.m = m;
  t.n = n;
  t.universe = make_universe("generic(m=" + std::to_string(m) + ",n=" + std::to_string(n) + ")",
                             std::move(names));
  return t;
}

// m x m matrix with polynomial entries, row-major.
using PolyMatrix = std::vector<SparsePolynomial>;

inline PolyMatrix generic_matrix(const GenericMatrixTuple& t, int k) {
  PolyMatrix a;
  a.reserve(static_cast<std::size_t>(t.m) * t.m);
  for (int i = 0; i < t.m; ++i)
    for (int j = 0; j < t.m; ++j)
      a.push_back(SparsePolynomial::variable(t.universe, t.var(k, i, j)));
  return a;
}

inline PolyMatrix poly_mat_mul(const PolyMatrix& a, const PolyMatrix& b, int m) {
  PolyMatrix c(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      SparsePolynomial s;
      for (int k = 0; k < m; ++k)
        s += a[static_cast<std::size_t>(i) * m + k] * b[static_cast<std::size_t>(k) * m + j];
      c[static_cast<std::size_t>(i) * m + j] = std::move(s);
    }
  return c;
}

// Symbolic Tr(A_{w_1} ... A_{w_d}); the empty word gives Tr(Id_m) = m.
inline SparsePolynomial trace_of_word(const GenericMatrixTuple& t, const Word& w) {
  check_alphabet(w, t.n);
  if (w.empty()) return SparsePolynomial::constant(t.universe, Rational(t.m));
  PolyMatrix prod = generic_matrix(t, w[0]);
  for (std::size_t s = 1; s < w.size(); ++s)
    prod = poly_mat_mul(prod, generic_matrix(t, w[s]), t.m);
  SparsePolynomial tr(t.universe);
  for (int i = 0; i < t.m; ++i) tr += prod[static_cast<std::size_t>(i) * t.m + i];
  return tr;
}

// The coordinate presentation of the uMPS parametrization: one trace
// polynomial per necklace of length d (per bracelet when m = n = 2, where
// traces are reflection-invariant).
struct UmpsCoordinateVector {
  int m = 0, n = 0, d = 0;
  bool dihedral_basis = false;
  std::map<Word, SparsePolynomial> coords;  // keyed by canonical representative
};

inline UmpsCoordinateVector umps_coordinates(int m, int n, int d, long mnd_cap = 512) {
  if (d < 1) throw std::invalid_argument("umps_coordinates requires d >= 1");
  const long work = static_cast<long>(m) * m * n * d;
  if (work > mnd_cap)
    throw ResourceError("umps_coordinates: m^2*n*d = " + std::to_string(work) +
                        " exceeds cap " + std::to_string(mnd_cap));
  UmpsCoordinateVector v;
  v.m = m;
  v.n = n;
  v.d = d;
  v.dihedral_basis = (m == 2 && n == 2);
  const GenericMatrixTuple t = make_generic_matrix_tuple(m, n);
  if (v.dihedral_basis) {
    for (const auto& b : enumerate_bracelets(n, d))
      v.coords.emplace(b.representative, trace_of_word(t, b.representative));
  } else {
    for (const auto& nk : enumerate_necklaces(n, d))
      v.coords.emplace(nk.representative, trace_of_word(t, nk.representative));
  }
  return v;
}

inline bool verify_cyclic_invariance(int m, int n, const Word& w) {
  const GenericMatrixTuple t = make_generic_matrix_tuple(m, n);
  const SparsePolynomial base = trace_of_word(t, w);
  for (std::size_t k = 1; k < w.size(); ++k)
    if (!(trace_of_word(t, rotated_left(w, k)) == base)) return false;
  return true;
}

// Tr(A_{i_1}...A_{i_d}) = Tr(A_{i_d}...A_{i_1}) holds for 2 x 2 matrices;
// for m >= 3 it fails in general.
inline bool verify_reflection_invariance_2x2(int n, const Word& w) {
  const GenericMatrixTuple t = make_generic_matrix_tuple(2, n);
  return trace_of_word(t, w) == trace_of_word(t, reversed(w));
}

// ---- numeric (exact rational) matrices --------------------------------

using RationalMatrix = std::vector<std::vector<Rational>>;  // row-major, square

inline RationalMatrix rat_mat_mul(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t m = a.size();
  RationalMatrix c(m, std::vector<Rational>(m, Rational(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline Rational rat_trace_of_word(const std::vector<RationalMatrix>& tuple, const Word& w) {
  const std::size_t m = tuple.empty() ? 0 : tuple[0].size();
  if (w.empty()) return Rational(static_cast<long>(m));
  RationalMatrix prod = tuple.at(w[0]);
  for (std::size_t s = 1; s < w.size(); ++s) prod = rat_mat_mul(prod, tuple.at(w[s]));
  Rational tr = 0;
  for (std::size_t i = 0; i < m; ++i) tr += prod[i][i];
  return tr;
}

inline Rational rational_det(RationalMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      std::swap(a[pivot], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

namespace detail {

// Full word-indexed tensor of traces, flattened with word[0] most significant.
inline std::vector<Rational> trace_tensor(const std::vector<RationalMatrix>& tuple, int n, int d) {
  double size = 1;
  for (int i = 0; i < d; ++i) size *= n;
  if (size > double(1 << 20))
    throw ResourceError("trace tensor of size " + std::to_string(n) + "^" + std::to_string(d) +
                        " exceeds the materialization cap");
  const std::size_t total = static_cast<std::size_t>(size);
  std::vector<Rational> t(total);
  Word w(static_cast<std::size_t>(d), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int pos = d - 1; pos >= 0; --pos) {
      w[static_cast<std::size_t>(pos)] = static_cast<Letter>(rem % n);
      rem /= static_cast<std::size_t>(n);
    }
    t[idx] = rat_trace_of_word(tuple, w);
  }
  return t;
}

// Apply g to one tensor slot at a time: d contractions of cost n^(d+1).
inline std::vector<Rational> apply_g_tensor(const std::vector<Rational>& t, const RationalMatrix& g,
                                            int n, int d) {
  std::vector<Rational> cur = t;
  std::size_t stride = cur.size() / static_cast<std::size_t>(n);  // slot 0 stride
  for (int slot = 0; slot < d; ++slot) {
    std::vector<Rational> next(cur.size(), Rational(0));
    for (std::size_t idx = 0; idx < cur.size(); ++idx) {
      const int j = static_cast<int>(idx / stride % static_cast<std::size_t>(n));
      const std::size_t base = idx - static_cast<std::size_t>(j) * stride;
      for (int i = 0; i < n; ++i) {
        if (g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == 0) continue;
        next[base + static_cast<std::size_t>(i) * stride] +=
            g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * cur[idx];
      }
    }
    cur = std::move(next);
    stride /= static_cast<std::size_t>(n);
  }
  return cur;
}

}  // namespace detail

// Checks phi(g . A) = g^{tensor d} . phi(A) entrywise on the full word
// tensor, where (g . A)_i = sum_j g_{ij} A_j. Exact rational arithmetic.
inline bool verify_gl_equivariance(int m, int n, int d, const RationalMatrix& g,
                                   const std::vector<RationalMatrix>& tuple) {
  if (static_cast<int>(g.size()) != n) throw std::invalid_argument("g must be n x n");
  if (rational_det(g) == 0) throw std::invalid_argument("g must be invertible");
  if (static_cast<int>(tuple.size()) != n)
    throw std::invalid_argument("expected a tuple of n matrices");
  for (const auto& a : tuple)
    if (static_cast<int>(a.size()) != m) throw std::invalid_argument("matrices must be m x m");

  std::vector<RationalMatrix> transformed(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    RationalMatrix b(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(m), Rational(0)));
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c)
          b[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] +=
              g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
              tuple[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    transformed[static_cast<std::size_t>(i)] = std::move(b);
  }

  const auto lhs = detail::trace_tensor(transformed, n, d);
  const auto rhs = detail::apply_g_tensor(detail::trace_tensor(tuple, n, d), g, n, d);
  return lhs == rhs;
}

}  // namespace umps
