#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "umps/trace_calculus.hpp"

using namespace umps;

namespace {

// Test-side oracle: trace of a word product over small integer matrices,
// computed with plain long arithmetic and no library code.
long oracle_trace(const std::vector<std::vector<std::vector<long>>>& mats, const Word& w) {
  const std::size_t m = mats[0].size();
  std::vector<std::vector<long>> prod = mats.at(w.at(0));
  for (std::size_t s = 1; s < w.size(); ++s) {
    const auto& b = mats.at(w[s]);
    std::vector<std::vector<long>> c(m, std::vector<long>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j < m; ++j) c[i][j] += prod[i][k] * b[k][j];
    prod = std::move(c);
  }
  long tr = 0;
  for (std::size_t i = 0; i < m; ++i) tr += prod[i][i];
  return tr;
}

Rational eval_at(const GenericMatrixTuple& t, const SparsePolynomial& p,
                 const std::vector<std::vector<std::vector<long>>>& mats) {
  std::map<std::uint32_t, Rational> assignment;
  for (int k = 0; k < t.n; ++k)
    for (int i = 0; i < t.m; ++i)
      for (int j = 0; j < t.m; ++j)
        assignment[t.var(k, i, j)] =
            Rational(mats[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
                         [static_cast<std::size_t>(j)]);
  return p.eval(assignment);
}

const std::vector<std::vector<std::vector<long>>> kPair{{{1, 2}, {3, 4}}, {{0, 1}, {1, 0}}};

}  // namespace

TEST_CASE("trace of a single letter is the sum of diagonal variables") {
  const auto t = make_generic_matrix_tuple(2, 2);
  const auto p = trace_of_word(t, {0});
  CHECK(p.term_count() == 2);
  CHECK(p.coefficient(Monomial::variable(t.var(0, 0, 0))) == 1);
  CHECK(p.coefficient(Monomial::variable(t.var(0, 1, 1))) == 1);
  CHECK(p.str() == "a0_11 + a0_22");
}

TEST_CASE("empty word gives Tr(Id_m)") {
  const auto t2 = make_generic_matrix_tuple(2, 2);
  CHECK(trace_of_word(t2, {}) == SparsePolynomial::constant(t2.universe, 2));
  const auto t3 = make_generic_matrix_tuple(3, 2);
  CHECK(trace_of_word(t3, {}).coefficient(Monomial{}) == 3);
}

TEST_CASE("symbolic trace matches the numeric matrix-product oracle") {
  const auto t = make_generic_matrix_tuple(2, 2);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t len = 1 + rng() % 7;
    Word w(len);
    for (auto& c : w) c = static_cast<Letter>(rng() % 2);
    CHECK(eval_at(t, trace_of_word(t, w), kPair) == oracle_trace(kPair, w));
  }
  CHECK(eval_at(t, trace_of_word(t, {0, 1}), kPair) == oracle_trace(kPair, {0, 1}));
}

TEST_CASE("trace polynomials are homogeneous sums of monomials") {
  const auto t = make_generic_matrix_tuple(2, 2);
  for (const Word& w : {Word{0, 1, 1}, Word{0, 0, 1, 0, 1}, Word{1, 1, 1, 1}}) {
    const auto p = trace_of_word(t, w);
    for (const auto& [m, c] : p.terms()) {
      CHECK(m.total_degree() == static_cast<int>(w.size()));
      CHECK(c > 0);  // plain monomial counting, no cancellation
      CHECK(denominator(c) == 1);
    }
  }
}

TEST_CASE("cyclic invariance of the trace") {
  CHECK(verify_cyclic_invariance(2, 2, {0, 0, 1}));
  CHECK(verify_cyclic_invariance(3, 2, {0, 1, 1, 0}));
  CHECK(verify_cyclic_invariance(2, 2, {0, 1}));
  const auto t = make_generic_matrix_tuple(2, 2);
  CHECK(trace_of_word(t, {0, 0, 1}) == trace_of_word(t, {0, 1, 0}));
}

TEST_CASE("reflection invariance holds for 2x2 and fails for 3x3") {
  CHECK(verify_reflection_invariance_2x2(2, {0, 0, 1, 1, 0, 1}));
  CHECK(verify_reflection_invariance_2x2(2, {0, 1}));
  std::mt19937_64 rng(17);
  Word w(7);
  for (auto& c : w) c = static_cast<Letter>(rng() % 2);
  CHECK(verify_reflection_invariance_2x2(2, w));
  CHECK(verify_reflection_invariance_2x2(3, {0, 1, 2, 0, 1, 2}) ==
        (trace_of_word(make_generic_matrix_tuple(2, 3), Word{0, 1, 2, 0, 1, 2}) ==
         trace_of_word(make_generic_matrix_tuple(2, 3), Word{2, 1, 0, 2, 1, 0})));

  // explicit 3x3 counterexample of length 6
  const auto t3 = make_generic_matrix_tuple(3, 3);
  const Word ternary{0, 0, 1, 1, 2, 2};
  CHECK_FALSE(trace_of_word(t3, ternary) == trace_of_word(t3, reversed(ternary)));
}

TEST_CASE("umps coordinate vectors") {
  SECTION("m=1 coordinates are the degree-d monomials in scalar variables") {
    const auto v = umps_coordinates(1, 2, 3);
    CHECK_FALSE(v.dihedral_basis);
    CHECK(v.coords.size() == 4);
    for (const auto& [w, p] : v.coords) {
      CHECK(p.term_count() == 1);
      CHECK(p.terms().begin()->first.total_degree() == 3);
      CHECK(p.terms().begin()->second == 1);
    }
  }
  SECTION("(2,2,4): one homogeneous degree-4 polynomial per bracelet") {
    const auto v = umps_coordinates(2, 2, 4);
    CHECK(v.dihedral_basis);
    CHECK(v.coords.size() == 6);
    for (const auto& [w, p] : v.coords)
      for (const auto& [m, c] : p.terms()) CHECK(m.total_degree() == 4);
  }
  SECTION("(2,2,3): the coordinate at 001 is the trace of the word") {
    const auto v = umps_coordinates(2, 2, 3);
    const auto t = make_generic_matrix_tuple(2, 2);
    CHECK(v.coords.at({0, 0, 1}) == trace_of_word(t, {0, 0, 1}));
  }
  SECTION("resource cap") {
    CHECK_THROWS_AS(umps_coordinates(4, 4, 30), ResourceError);
  }
}

TEST_CASE("gl equivariance") {
  const auto to_rat = [](std::vector<std::vector<long>> a) {
    RationalMatrix r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (long v : a[i]) r[i].push_back(Rational(v));
    return r;
  };
  const std::vector<RationalMatrix> tuple{to_rat({{1, 2}, {3, 4}}), to_rat({{0, 1}, {1, -1}})};

  SECTION("identity acts trivially") {
    CHECK(verify_gl_equivariance(2, 2, 3, to_rat({{1, 0}, {0, 1}}), tuple));
  }
  SECTION("random integer g with det +-1") {
    CHECK(verify_gl_equivariance(2, 2, 4, to_rat({{2, 1}, {1, 1}}), tuple));
    CHECK(verify_gl_equivariance(2, 2, 4, to_rat({{3, 2}, {1, 1}}), tuple));
  }
  SECTION("a general invertible rational g") {
    RationalMatrix g{{Rational(1, 2), Rational(1)}, {Rational(0), Rational(3)}};
    CHECK(verify_gl_equivariance(2, 2, 3, g, tuple));
  }
  SECTION("singular g is rejected") {
    CHECK_THROWS_AS(verify_gl_equivariance(2, 2, 3, to_rat({{1, 1}, {1, 1}}), tuple),
                    std::invalid_argument);
  }
  SECTION("torus scaling: coordinate at word I scales by t^w(I)") {
    const RationalMatrix g{{Rational(2), Rational(0)}, {Rational(0), Rational(3)}};
    CHECK(verify_gl_equivariance(2, 2, 4, g, tuple));
    // direct exact check of the scaling factor on each coordinate
    std::vector<RationalMatrix> scaled{tuple[0], tuple[1]};
    for (auto& row : scaled[0])
      for (auto& v : row) v *= 2;
    for (auto& row : scaled[1])
      for (auto& v : row) v *= 3;
    const int d = 4;
    Word w(static_cast<std::size_t>(d), 0);
    for (int idx = 0; idx < 16; ++idx) {
      for (int pos = 0; pos < d; ++pos) w[static_cast<std::size_t>(pos)] = (idx >> pos) & 1;
      const int ones = ones_count(w);
      const Rational factor = rational_pow(Rational(2), static_cast<std::uint32_t>(d - ones)) *
                              rational_pow(Rational(3), static_cast<std::uint32_t>(ones));
      CHECK(rat_trace_of_word(scaled, w) == factor * rat_trace_of_word(tuple, w));
    }
  }
}
