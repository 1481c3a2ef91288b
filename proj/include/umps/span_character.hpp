#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "umps/combinatorics.hpp"
#include "umps/errors.hpp"
#include "umps/matrix_rank.hpp"
#include "umps/trace_calculus.hpp"
#include "umps/trace_param.hpp"

namespace umps {

enum class GeneratorSource { TraceParam, Generic };

struct SpanOptions {
  RankMode mode = RankMode::Modular;
  GeneratorSource source = GeneratorSource::TraceParam;
  std::uint64_t seed = kDefaultRankSeed;
  int prime_bits = 61;
  int threads = 1;
  long max_rows = 200000;  // generators per rank job
  int max_degree = 24;     // largest k*d the pipeline will attempt
};

struct SpanRequest {
  int m = 2;
  int n = 2;
  int d = 0;
  int w = 0;
  SpanOptions opts;
};

namespace detail {

inline void check_caps(int d, long rows, const SpanOptions& o) {
  if (d > o.max_degree)
    throw ResourceError("degree " + std::to_string(d) + " exceeds the configured cap " +
                        std::to_string(o.max_degree));
  if (rows > o.max_rows)
    throw ResourceError("rank job with " + std::to_string(rows) +
                        " generator rows exceeds the configured cap " + std::to_string(o.max_rows));
}

// Run fn(i) for i in [0, count) on opts.threads workers; any exception is
// rethrown on the calling thread. Results are deterministic because each i
// writes only its own slot.
inline void for_each_index(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int nthreads = std::min(threads, count);
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

// dim <uMPS(m,2,d)>_w: the rank of the coefficient matrix of the generator
// polynomials indexed by the weight-w bracelets (necklaces for m >= 3).
// Scalar weight w counts the occurrences of symbol 1.
inline int span_dimension_weight(const SpanRequest& req, TraceParamTable* table = nullptr) {
  if (req.n != 2)
    throw std::invalid_argument("span_dimension_weight: only the n=2 pipeline carries a scalar weight");
  if (req.w < 0 || req.w > req.d) throw std::invalid_argument("weight must satisfy 0 <= w <= d");
  if (req.d < 1) throw std::invalid_argument("span_dimension_weight requires d >= 1");
  const WeightVector lambda{req.d - req.w, req.w};

  std::vector<SparsePolynomial> gens;
  std::vector<std::string> labels;
  if (req.m == 2) {
    const auto bracelets = enumerate_bracelets(2, req.d, lambda);
    detail::check_caps(req.d, static_cast<long>(bracelets.size()), req.opts);
    TraceParamTable local;
    TraceParamTable& tab = table ? *table : local;
    const GenericMatrixTuple t = req.opts.source == GeneratorSource::Generic
                                     ? make_generic_matrix_tuple(2, 2)
                                     : GenericMatrixTuple{};
    for (const auto& b : bracelets) {
      gens.push_back(req.opts.source == GeneratorSource::TraceParam
                         ? tab.trace_poly(b.representative)
                         : trace_of_word(t, b.representative));
      labels.push_back(word_to_string(b.representative));
    }
  } else {
    const auto necklaces = enumerate_necklaces(2, req.d, lambda);
    detail::check_caps(req.d, static_cast<long>(necklaces.size()), req.opts);
    const GenericMatrixTuple t = make_generic_matrix_tuple(req.m, 2);
    for (const auto& nk : necklaces) {
      gens.push_back(trace_of_word(t, nk.representative));
      labels.push_back(word_to_string(nk.representative));
    }
  }
  if (gens.empty()) return 0;
  const auto M = CoefficientMatrix::from_polynomials(gens, std::move(labels));
  return matrix_rank(M, req.opts.mode, req.opts.seed, req.opts.prime_bits);
}

// Character of a (sub)representation of (C^2)^{tensor d}: the map from the
// scalar weight w to the dimension D_w, plus the total dimension and the
// ambient dimension it sits inside.
struct Character {
  int m = 2, n = 2, d = 0, k = 1;
  std::vector<long long> dims;  // dims[w] for w = 0..k*d
  long long total = 0;
  Int ambient = 0;
};

// Character of the linear span of uMPS(m,2,d). Weights w and d-w have equal
// dimension (swapping the two symbols is a GL2 element), so only w <= d/2 is
// computed and the rest is mirrored.
inline Character character_of_span(int m, int n, int d, const SpanOptions& opts = {}) {
  if (n != 2) throw std::invalid_argument("character_of_span: only n=2 is supported");
  if (d < 1) throw std::invalid_argument("character_of_span requires d >= 1");
  Character chi;
  chi.m = m;
  chi.n = n;
  chi.d = d;
  chi.k = 1;
  chi.dims.assign(static_cast<std::size_t>(d) + 1, 0);
  chi.ambient = (m == 2) ? count_bracelets(2, d) : count_necklaces(2, d);

  TraceParamTable table;
  if (m == 2 && opts.source == GeneratorSource::TraceParam)
    trace_param_vector(d, table);  // warm the cache before the parallel loop

  const int half = d / 2;
  detail::for_each_index(half + 1, opts.threads, [&](int w) {
    SpanRequest req{m, n, d, w, opts};
    chi.dims[static_cast<std::size_t>(w)] = span_dimension_weight(req, &table);
  });
  for (int w = half + 1; w <= d; ++w)
    chi.dims[static_cast<std::size_t>(w)] = chi.dims[static_cast<std::size_t>(d - w)];
  for (long long v : chi.dims) chi.total += v;
  return chi;
}

namespace detail {

// Multisets {b_1,...,b_k} of length-d bracelets with prescribed total weight,
// visited with non-decreasing indices so each multiset appears once. The
// running product of the P_b is threaded through the recursion.
inline void visit_products(const std::vector<Word>& reps, const std::vector<int>& weights,
                           const std::vector<SparsePolynomial>& polys, int k, int target_w,
                           std::size_t start, int depth, int wsum, const SparsePolynomial& prod,
                           std::vector<SparsePolynomial>& out) {
  const int remaining = k - depth;
  if (wsum > target_w) return;
  if (remaining == 0) {
    if (wsum == target_w) out.push_back(prod);
    return;
  }
  const int d = reps.empty() ? 0 : static_cast<int>(reps[0].size());
  if (wsum + remaining * d < target_w) return;
  for (std::size_t i = start; i < reps.size(); ++i)
    visit_products(reps, weights, polys, k, target_w, i, depth + 1, wsum + weights[i],
                   prod * polys[i], out);
}

}  // namespace detail

// dim I(uMPS(2,2,d))_{k,w}: the number of weight-w multisets of k bracelets
// minus the rank of the coefficient matrix of the corresponding k-fold
// products of the P_b. (The degree-k ideal part is the annihilator of the
// image of the k-th Veronese re-embedding of the parametrization.)
inline long long ideal_character_degree_k(int d, int k, int w, const SpanOptions& opts = {},
                                          TraceParamTable* table = nullptr) {
  if (d < 1 || k < 1) throw std::invalid_argument("ideal_character_degree_k requires d, k >= 1");
  if (w < 0 || w > k * d) throw std::invalid_argument("weight must satisfy 0 <= w <= k*d");
  if (k * d > opts.max_degree)
    throw ResourceError("ideal degree k*d = " + std::to_string(k * d) +
                        " exceeds the configured cap " + std::to_string(opts.max_degree));
  TraceParamTable local;
  TraceParamTable& tab = table ? *table : local;
  std::vector<Word> reps;
  std::vector<int> weights;
  std::vector<SparsePolynomial> polys;
  for (const auto& b : enumerate_bracelets(2, d)) {
    reps.push_back(b.representative);
    weights.push_back(ones_count(b.representative));
    polys.push_back(tab.trace_poly(b.representative));
  }
  std::vector<SparsePolynomial> products;
  detail::visit_products(reps, weights, polys, k, w, 0, 0, 0,
                         SparsePolynomial::constant(trace_param_universe(), 1), products);
  detail::check_caps(d, static_cast<long>(products.size()), opts);
  if (products.empty()) return 0;
  const auto M = CoefficientMatrix::from_polynomials(products);
  const int rank = matrix_rank(M, opts.mode, opts.seed, opts.prime_bits);
  return static_cast<long long>(products.size()) - rank;
}

// Full degree-k ideal character, computed weight by weight over 0..k*d with
// no symmetry shortcut (the w <-> kd-w symmetry is only verified, never
// assumed).
inline Character ideal_character(int d, int k, const SpanOptions& opts = {}) {
  Character chi;
  chi.m = 2;
  chi.n = 2;
  chi.d = d;
  chi.k = k;
  chi.dims.assign(static_cast<std::size_t>(k) * d + 1, 0);
  TraceParamTable table;
  trace_param_vector(d, table);
  detail::for_each_index(k * d + 1, opts.threads, [&](int w) {
    chi.dims[static_cast<std::size_t>(w)] = ideal_character_degree_k(d, k, w, opts, &table);
  });
  for (long long v : chi.dims) chi.total += v;
  chi.ambient = 0;  // not meaningful for ideal parts
  return chi;
}

// Conjectured dim <uMPS(2,2,d)>_w (even/odd branches in w); valid for
// w <= ceil(d/2), with the rest determined by D_w = D_{d-w}.
inline Int conjecture_dim(int d, int w) {
  if (d < 1 || w < 0) throw std::invalid_argument("conjecture_dim requires d >= 1, w >= 0");
  const Int D(d);
  if (w % 2 == 0) {
    const Int v(w / 2);
    return 1 + exact_div(D * (v - 1) * v, 2) - exact_div(2 * (v - 1) * v * (2 * v - 1), 3) +
           v * (d / 2) - 2 * v * v + v;
  }
  const Int v((w - 1) / 2);
  return 1 + exact_div(D * v * (v + 1), 2) - exact_div(2 * v * (v + 1) * (2 * v + 1), 3);
}

// Conjectured total dimension of <uMPS(2,2,d)>.
inline Int conjecture_total(int d) {
  if (d < 1) throw std::invalid_argument("conjecture_total requires d >= 1");
  const Int D(d);
  if (d % 2 == 0) return exact_div(D * D * D * D - 4 * D * D + 192 * D + 192, 192);
  return exact_div(D * D * D * D - 10 * D * D + 192 * D + 201, 192);
}

// Number of degree-d monomials in the graded ring C[T0,T1,T00,T01,T11]; an
// upper bound for dim <uMPS(2,2,d)>.
inline Int monomial_upper_bound(int d) {
  if (d < 1) throw std::invalid_argument("monomial_upper_bound requires d >= 1");
  const Int D(d);
  if (d % 2 == 0) return exact_div((D + 6) * (D + 4) * (D + 4) * (D + 2), 192);
  return exact_div((D + 7) * (D + 5) * (D + 3) * (D + 1), 192);
}

// ---- specialized lower-bound certificates ------------------------------

inline const UniversePtr& univariate_universe() {
  static const UniversePtr u = make_universe("x", {"x"});
  return u;
}

// A pair of 2x2 matrices over Q[x] to substitute for (A0, A1); row-major.
struct Specialization {
  std::string name;
  std::array<SparsePolynomial, 4> a0;
  std::array<SparsePolynomial, 4> a1;
};

namespace detail {

inline SparsePolynomial ux() { return SparsePolynomial::variable(univariate_universe(), 0); }
inline SparsePolynomial uc(long v) {
  return SparsePolynomial::constant(univariate_universe(), Rational(v));
}

}  // namespace detail

// A0 = diag(1, x), A1 = [[0,1],[1,0]]: turns the weight-2 generators into
// x^i + x^{d-2-i}, which are visibly independent.
inline Specialization specialization_weight2() {
  using detail::uc;
  using detail::ux;
  return Specialization{"weight2", {uc(1), uc(0), uc(0), ux()}, {uc(0), uc(1), uc(1), uc(0)}};
}

// A0 = diag(1, x), A1 = [[0,1],[1,1]]: separates the weight-3 generators.
inline Specialization specialization_weight3() {
  using detail::uc;
  using detail::ux;
  return Specialization{"weight3", {uc(1), uc(0), uc(0), ux()}, {uc(0), uc(1), uc(1), uc(1)}};
}

// The weight-3 bracelets containing 11 or 101 as a cyclic factor; these d-3
// elements span the weight-3 piece of the span.
inline std::vector<Bracelet> weight3_spanning_set(int d) {
  std::vector<Bracelet> out;
  if (d < 3) return out;
  for (const auto& b : enumerate_bracelets(2, d, WeightVector{d - 3, 3}))
    if (contains_cyclic(b.representative, Word{1, 1}) ||
        contains_cyclic(b.representative, Word{1, 0, 1}))
      out.push_back(b);
  return out;
}

// Rank of the univariate coefficient matrix of {T_b} after substituting the
// given matrices; a lower bound for the unspecialized span dimension. Rows
// default to all weight-w bracelets of length d.
inline int specialized_rank(int d, int w, const Specialization& spec,
                            const std::vector<Bracelet>* subset = nullptr,
                            RankMode mode = RankMode::Exact) {
  if (d < 1 || w < 0 || w > d) throw std::invalid_argument("specialized_rank: need 0 <= w <= d");
  std::vector<Bracelet> all;
  if (!subset) all = enumerate_bracelets(2, d, WeightVector{d - w, w});
  const std::vector<Bracelet>& rows_src = subset ? *subset : all;

  auto mat_of = [&](Letter c) -> const std::array<SparsePolynomial, 4>& {
    return c == 0 ? spec.a0 : spec.a1;
  };
  std::vector<SparsePolynomial> traces;
  std::vector<std::string> labels;
  for (const auto& b : rows_src) {
    const Word& word = b.representative;
    if (static_cast<int>(word.size()) != d || ones_count(word) != w)
      throw std::invalid_argument("specialized_rank: row word has wrong length or weight");
    PolyMatrix prod(mat_of(word[0]).begin(), mat_of(word[0]).end());
    for (std::size_t i = 1; i < word.size(); ++i) {
      const auto& next = mat_of(word[i]);
      prod = poly_mat_mul(prod, PolyMatrix(next.begin(), next.end()), 2);
    }
    traces.push_back(prod[0] + prod[3]);
    labels.push_back(word_to_string(word));
  }
  if (traces.empty()) return 0;
  const auto M = CoefficientMatrix::from_polynomials(traces, std::move(labels));
  return matrix_rank(M, mode);
}

}  // namespace umps
