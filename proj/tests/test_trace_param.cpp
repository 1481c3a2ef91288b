#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "umps/trace_param.hpp"

using namespace umps;

namespace {

using LongMat = std::array<std::array<long long, 2>, 2>;

LongMat mat_mul(const LongMat& a, const LongMat& b) {
  LongMat c{};
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Test-side oracle, independent of the library: the trace of the word
// product and the five generator traces of a concrete integer matrix pair.
long long oracle_word_trace(const LongMat& a0, const LongMat& a1, const Word& w) {
  if (w.empty()) return 2;
  LongMat prod = w[0] == 0 ? a0 : a1;
  for (std::size_t i = 1; i < w.size(); ++i) prod = mat_mul(prod, w[i] == 0 ? a0 : a1);
  return prod[0][0] + prod[1][1];
}

std::map<std::uint32_t, Rational> generator_traces(const LongMat& a0, const LongMat& a1) {
  const LongMat a00 = mat_mul(a0, a0), a01 = mat_mul(a0, a1), a11 = mat_mul(a1, a1);
  return {{kT0, Rational(a0[0][0] + a0[1][1])},
          {kT1, Rational(a1[0][0] + a1[1][1])},
          {kT00, Rational(a00[0][0] + a00[1][1])},
          {kT01, Rational(a01[0][0] + a01[1][1])},
          {kT11, Rational(a11[0][0] + a11[1][1])}};
}

LongMat random_mat(std::mt19937_64& rng) {
  LongMat m;
  for (auto& row : m)
    for (auto& v : row) v = static_cast<long long>(rng() % 7) - 3;
  return m;
}

SparsePolynomial tv(TraceVar v) { return SparsePolynomial::variable(trace_param_universe(), v); }
SparsePolynomial tc(Rational c) {
  return SparsePolynomial::constant(trace_param_universe(), std::move(c));
}

}  // namespace

TEST_CASE("base cases match the closed forms") {
  CHECK(trace_param_base_case({}) == tc(2));
  CHECK(trace_param_base_case({0}) == tv(kT0));
  CHECK(trace_param_base_case({1}) == tv(kT1));
  CHECK(trace_param_base_case({1, 0}) == tv(kT01));
  CHECK(trace_param_base_case({1, 1, 1}) ==
        tc(Rational(-1, 2)) * tv(kT1) * tv(kT1) * tv(kT1) +
            tc(Rational(3, 2)) * tv(kT1) * tv(kT11));
  CHECK(trace_param_base_case({1, 0, 0}) ==
        tc(Rational(-1, 2)) * tv(kT0) * tv(kT0) * tv(kT1) +
            tc(Rational(1, 2)) * tv(kT1) * tv(kT00) + tv(kT0) * tv(kT01));
  CHECK(trace_param_base_case({0}).str() == "T0");
  CHECK_THROWS_AS(trace_param_base_case({0, 1, 0, 1}), std::invalid_argument);
}

TEST_CASE("P_000 base case evaluates consistently with the identity matrix") {
  // A0 = Id: (T0, T00) = (2, 2) and Tr(Id^3) = 2
  const auto p = trace_param_base_case({0, 0, 0});
  CHECK(p.eval({{kT0, Rational(2)}, {kT00, Rational(2)}}) == 2);
}

TEST_CASE("reduction of 0101 against the matrix oracle") {
  TraceParamTable table;
  const auto p = table.trace_poly({0, 1, 0, 1});
  const LongMat a0{{{1, 2}, {3, 4}}}, a1{{{0, 1}, {1, 0}}};
  CHECK(p.eval(generator_traces(a0, a1)) == oracle_word_trace(a0, a1, {0, 1, 0, 1}));
}

TEST_CASE("reduction of 0000 at the identity matrix") {
  TraceParamTable table;
  const auto p = table.trace_poly({0, 0, 0, 0});
  CHECK(p.eval({{kT0, Rational(2)}, {kT00, Rational(2)}}) == 2);  // Tr(Id^4)
}

TEST_CASE("oracle equivalence for all bracelets up to length 10") {
  TraceParamTable table;
  std::mt19937_64 rng(2026);
  for (int d = 1; d <= 10; ++d) {
    for (const auto& b : enumerate_bracelets(2, d)) {
      const auto p = table.trace_poly(b.representative);
      for (int trial = 0; trial < 5; ++trial) {
        const LongMat a0 = random_mat(rng), a1 = random_mat(rng);
        REQUIRE(p.eval(generator_traces(a0, a1)) ==
                oracle_word_trace(a0, a1, b.representative));
      }
    }
  }
}

TEST_CASE("graded homogeneity of every P_b") {
  TraceParamTable table;
  for (int d = 1; d <= 10; ++d)
    for (const auto& b : enumerate_bracelets(2, d)) {
      CAPTURE(word_to_string(b.representative));
      CHECK(is_trace_graded_homogeneous(table.trace_poly(b.representative), d));
    }
}

TEST_CASE("P_b is isobaric: every monomial carries the bracelet weight") {
  TraceParamTable table;
  for (int d = 1; d <= 9; ++d)
    for (const auto& b : enumerate_bracelets(2, d)) {
      const int w = ones_count(b.representative);
      const auto p = table.trace_poly(b.representative);
      for (const auto& [m, c] : p.terms()) CHECK(trace_ones_weight(m) == w);
    }
}

TEST_CASE("well-definedness: any rotation or reflection reduces to the same polynomial") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 4 + static_cast<int>(rng() % 6);
    Word w(static_cast<std::size_t>(d));
    for (auto& c : w) c = static_cast<Letter>(rng() % 2);
    Word other = rotated_left(w, rng() % static_cast<std::size_t>(d));
    if (rng() % 2) other = reversed(other);
    // fresh tables so the two computations genuinely recurse on different
    // block splits rather than sharing a cache entry
    TraceParamTable ta, tb;
    CHECK(ta.trace_poly(w) == tb.trace_poly(other));
  }
}

TEST_CASE("trace_param_vector layouts") {
  TraceParamTable table;
  SECTION("d=3 gives the four displayed cubics") {
    const auto v = trace_param_vector(3, table);
    REQUIRE(v.size() == 4);
    CHECK(v.at({0, 0, 0}) == tc(Rational(-1, 2)) * tv(kT0) * tv(kT0) * tv(kT0) +
                                 tc(Rational(3, 2)) * tv(kT0) * tv(kT00));
    CHECK(v.at({0, 0, 1}) == trace_param_base_case({0, 0, 1}));
    CHECK(v.at({0, 1, 1}) == tc(Rational(-1, 2)) * tv(kT0) * tv(kT1) * tv(kT1) +
                                 tc(Rational(1, 2)) * tv(kT0) * tv(kT11) + tv(kT1) * tv(kT01));
    CHECK(v.at({1, 1, 1}) == trace_param_base_case({1, 1, 1}));
  }
  SECTION("d=8 has one entry per bracelet") {
    CHECK(trace_param_vector(8, table).size() == 30);
  }
  SECTION("d=5 entries agree with the oracle at 20 random pairs") {
    std::mt19937_64 rng(55);
    const auto v = trace_param_vector(5, table);
    for (const auto& [b, p] : v)
      for (int trial = 0; trial < 20; ++trial) {
        const LongMat a0 = random_mat(rng), a1 = random_mat(rng);
        REQUIRE(p.eval(generator_traces(a0, a1)) == oracle_word_trace(a0, a1, b));
      }
  }
}

TEST_CASE("the memo table is shared across lengths") {
  TraceParamTable table;
  trace_param_vector(6, table);
  const auto before = table.size();
  trace_param_vector(6, table);
  CHECK(table.size() == before);
}
