#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "umps/polynomial.hpp"
#include "umps/rational.hpp"

namespace umps {

enum class RankMode { Modular, Exact };

inline constexpr std::uint64_t kDefaultRankSeed = 0x5eed0f5eed0f5eedULL;

namespace modp {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                          31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                          31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

inline std::uint64_t reduce_int(const Int& v, std::uint64_t p) {
  Int r = v % Int(p);
  if (r < 0) r += Int(p);
  return r.convert_to<std::uint64_t>();
}

}  // namespace modp

// Deterministic stream of random primes just below 2^bits.
class PrimeSource {
 public:
  explicit PrimeSource(std::uint64_t seed = kDefaultRankSeed, int bits = 61)
      : rng_(seed), bits_(bits) {
    if (bits_ < 20 || bits_ > 62) throw std::invalid_argument("prime bits must be in [20, 62]");
  }

  std::uint64_t next() {
    const std::uint64_t lo = 1ULL << (bits_ - 1);
    const std::uint64_t hi = (1ULL << bits_) - 1;
    std::uniform_int_distribution<std::uint64_t> dist(lo, hi);
    while (true) {
      std::uint64_t cand = dist(rng_) | 1ULL;
      if (modp::is_probable_prime(cand)) return cand;
    }
  }

 private:
  std::mt19937_64 rng_;
  int bits_;
};

// Sparse matrix of exact rationals. Rows typically come from the coefficient
// vectors of a family of polynomials; the column universe is the union of
// their monomials, in a fixed deterministic order.
struct CoefficientMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  // each row: (column index, coefficient), sorted by column index
  std::vector<std::vector<std::pair<std::uint32_t, Rational>>> rows;

  std::size_t row_count() const { return rows.size(); }
  std::size_t col_count() const { return col_labels.size(); }

  static CoefficientMatrix from_polynomials(const std::vector<SparsePolynomial>& polys,
                                            std::vector<std::string> labels = {}) {
    CoefficientMatrix M;
    UniversePtr u;
    std::map<Monomial, std::uint32_t, GrlexLess> columns;
    for (const auto& p : polys) {
      if (!u && p.universe()) u = p.universe();
      for (const auto& [m, c] : p.terms()) columns.emplace(m, 0);
    }
    std::uint32_t idx = 0;
    for (auto& [m, i] : columns) {
      i = idx++;
      M.col_labels.push_back(m.str(u));
    }
    M.rows.reserve(polys.size());
    for (const auto& p : polys) {
      std::vector<std::pair<std::uint32_t, Rational>> row;
      row.reserve(p.term_count());
      for (const auto& [m, c] : p.terms()) row.emplace_back(columns.at(m), c);
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      M.rows.push_back(std::move(row));
    }
    if (labels.empty())
      for (std::size_t i = 0; i < polys.size(); ++i)
        M.row_labels.push_back("r" + std::to_string(i));
    else
      M.row_labels = std::move(labels);
    return M;
  }

  // Matrix Market style coordinate dump with rational entries, for external
  // cross-checks.
  std::string to_matrix_market() const {
    std::ostringstream os;
    std::size_t nnz = 0;
    for (const auto& r : rows) nnz += r.size();
    os << "%%MatrixMarket matrix coordinate rational general\n";
    for (std::size_t i = 0; i < row_labels.size(); ++i)
      os << "% row " << (i + 1) << " " << row_labels[i] << "\n";
    os << rows.size() << " " << col_labels.size() << " " << nnz << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (const auto& [j, c] : rows[i])
        os << (i + 1) << " " << (j + 1) << " " << rational_to_string(c) << "\n";
    return os.str();
  }
};

namespace detail {

// Clear denominators row by row (the pipeline only ever produces powers of
// two, but any denominators are handled).
inline std::vector<std::vector<Int>> integer_rows(const CoefficientMatrix& M) {
  std::vector<std::vector<Int>> out(M.row_count(), std::vector<Int>(M.col_count(), Int(0)));
  for (std::size_t i = 0; i < M.row_count(); ++i) {
    Int l = 1;
    for (const auto& [j, c] : M.rows[i]) l = lcm(l, denominator(c));
    for (const auto& [j, c] : M.rows[i]) out[i][j] = numerator(c) * (l / denominator(c));
  }
  return out;
}

// Fraction-free Bareiss elimination with column pivoting; returns the rank
// over Q. All divisions are exact.
inline int rank_bareiss(std::vector<std::vector<Int>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  int r = 0;
  Int prev = 1;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (a[i][c] != 0) { pivot = i; break; }
    if (pivot == rows) continue;
    std::swap(a[r], a[pivot]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

struct PrimeUnusable {};  // a denominator vanished mod p; redraw

inline int rank_mod_prime(const CoefficientMatrix& M, std::uint64_t p) {
  const std::size_t rows = M.row_count(), cols = M.col_count();
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    Int l = 1;
    for (const auto& [j, c] : M.rows[i]) l = lcm(l, denominator(c));
    if (modp::reduce_int(l, p) == 0) throw PrimeUnusable{};
    for (const auto& [j, c] : M.rows[i])
      a[i][j] = modp::mulmod(modp::reduce_int(numerator(c), p),
                             modp::reduce_int(l / denominator(c), p), p);
  }
  int r = 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (a[i][c] != 0) { pivot = i; break; }
    if (pivot == rows) continue;
    std::swap(a[r], a[pivot]);
    const std::uint64_t inv = modp::invmod(a[r][c], p);
    for (std::size_t j = c; j < cols; ++j) a[r][j] = modp::mulmod(a[r][j], inv, p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const std::uint64_t f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        const std::uint64_t sub = modp::mulmod(f, a[r][j], p);
        a[i][j] = a[i][j] >= sub ? a[i][j] - sub : a[i][j] + p - sub;
      }
    }
    ++r;
  }
  return r;
}

}  // namespace detail

inline int rank_exact(const CoefficientMatrix& M) {
  return detail::rank_bareiss(detail::integer_rows(M));
}

// Rank modulo two independent random primes; on disagreement a third prime
// arbitrates, and if that settles nothing we fall back to exact elimination.
inline int rank_modular(const CoefficientMatrix& M, std::uint64_t seed = kDefaultRankSeed,
                        int prime_bits = 61) {
  PrimeSource source(seed, prime_bits);
  std::set<std::uint64_t> used;
  auto rank_with_fresh_prime = [&]() {
    while (true) {
      const std::uint64_t p = source.next();
      if (!used.insert(p).second) continue;
      try {
        return detail::rank_mod_prime(M, p);
      } catch (const detail::PrimeUnusable&) {
        continue;  // prime divided a denominator
      }
    }
  };
  const int r1 = rank_with_fresh_prime();
  const int r2 = rank_with_fresh_prime();
  if (r1 == r2) return r1;
  const int r3 = rank_with_fresh_prime();
  if (r3 == r1 || r3 == r2) return r3;
  return rank_exact(M);
}

inline int matrix_rank(const CoefficientMatrix& M, RankMode mode = RankMode::Modular,
                       std::uint64_t seed = kDefaultRankSeed, int prime_bits = 61) {
  return mode == RankMode::Exact ? rank_exact(M) : rank_modular(M, seed, prime_bits);
}

}  // namespace umps
