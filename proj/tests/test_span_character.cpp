#include <catch2/catch_amalgamated.hpp>

#include "umps/span_character.hpp"

using namespace umps;

TEST_CASE("span dimensions at single weights") {
  TraceParamTable table;
  SECTION("(2,2,8) weight 4 has dimension 7") {
    SpanRequest req{2, 2, 8, 4, {}};
    CHECK(span_dimension_weight(req, &table) == 7);
  }
  SECTION("weight 0 is one-dimensional for every d") {
    for (int d = 1; d <= 10; ++d) {
      SpanRequest req{2, 2, d, 0, {}};
      CHECK(span_dimension_weight(req, &table) == 1);
    }
  }
  SECTION("(2,2,12) weight 6 has dimension 20") {
    SpanRequest req{2, 2, 12, 6, {}};
    CHECK(span_dimension_weight(req, &table) == 20);
  }
  SECTION("argument validation") {
    SpanRequest bad{2, 2, 8, 9, {}};
    CHECK_THROWS_AS(span_dimension_weight(bad), std::invalid_argument);
    SpanRequest bad_n{2, 3, 8, 2, {}};
    CHECK_THROWS_AS(span_dimension_weight(bad_n), std::invalid_argument);
  }
  SECTION("resource caps produce named errors") {
    SpanRequest req{2, 2, 8, 4, {}};
    req.opts.max_degree = 4;
    CHECK_THROWS_AS(span_dimension_weight(req), ResourceError);
  }
}

TEST_CASE("characters reproduce the d=8 and d=9 rows") {
  const auto chi8 = character_of_span(2, 2, 8);
  CHECK(chi8.dims == std::vector<long long>{1, 1, 4, 5, 7, 5, 4, 1, 1});
  CHECK(chi8.total == 29);
  CHECK(chi8.ambient == 30);

  const auto chi9 = character_of_span(2, 2, 9);
  CHECK(chi9.dims == std::vector<long long>{1, 1, 4, 6, 8, 8, 6, 4, 1, 1});
  CHECK(chi9.total == 40);
  CHECK(chi9.ambient == 46);
}

TEST_CASE("span fills the ambient space below degree 8") {
  for (int d = 3; d <= 7; ++d) {
    const auto chi = character_of_span(2, 2, d);
    CHECK(Int(chi.total) == count_bracelets(2, d));
    for (int w = 0; w <= d; ++w)
      CHECK(Int(chi.dims[static_cast<std::size_t>(w)]) ==
            count_bracelets_weight_binary(d, w));
  }
}

TEST_CASE("mirror symmetry computed directly, not assumed") {
  TraceParamTable table;
  for (int d : {9, 10}) {
    for (int w = 0; w <= d; ++w) {
      SpanRequest a{2, 2, d, w, {}}, b{2, 2, d, d - w, {}};
      CHECK(span_dimension_weight(a, &table) == span_dimension_weight(b, &table));
    }
  }
}

TEST_CASE("generator sources agree (trace parametrization vs 8 raw variables)") {
  TraceParamTable table;
  for (int d = 1; d <= 6; ++d)
    for (int w = 0; w <= d; ++w) {
      SpanRequest tp{2, 2, d, w, {}};
      SpanRequest gen{2, 2, d, w, {}};
      gen.opts.source = GeneratorSource::Generic;
      CHECK(span_dimension_weight(tp, &table) == span_dimension_weight(gen));
    }
}

TEST_CASE("exact and modular rank modes agree on span computations") {
  TraceParamTable table;
  for (int w = 0; w <= 5; ++w) {
    SpanRequest mod{2, 2, 10, w, {}};
    SpanRequest ex{2, 2, 10, w, {}};
    ex.opts.mode = RankMode::Exact;
    CHECK(span_dimension_weight(mod, &table) == span_dimension_weight(ex, &table));
  }
}

TEST_CASE("threaded character equals sequential") {
  SpanOptions threaded;
  threaded.threads = 4;
  const auto a = character_of_span(2, 2, 10);
  const auto b = character_of_span(2, 2, 10, threaded);
  CHECK(a.dims == b.dims);
  CHECK(a.total == b.total);
}

TEST_CASE("ideal characters reproduce table entries") {
  TraceParamTable table;
  CHECK(ideal_character_degree_k(8, 2, 4, {}, &table) == 5);
  CHECK(ideal_character_degree_k(6, 3, 6, {}, &table) == 8);
  CHECK(ideal_character_degree_k(6, 2, 3, {}, &table) == 0);
}

TEST_CASE("full degree-2 ideal character at d=6 with empirical symmetry") {
  const auto chi = ideal_character(6, 2);
  // listed values D_3..D_6 of the d=6 row
  CHECK(chi.dims[3] == 0);
  CHECK(chi.dims[4] == 1);
  CHECK(chi.dims[5] == 1);
  CHECK(chi.dims[6] == 2);
  // low weights vanish
  CHECK(chi.dims[0] == 0);
  CHECK(chi.dims[1] == 0);
  CHECK(chi.dims[2] == 0);
  // D_w = D_{2d-w} holds empirically across the whole range
  for (int w = 0; w <= 12; ++w)
    CHECK(chi.dims[static_cast<std::size_t>(w)] == chi.dims[static_cast<std::size_t>(12 - w)]);
}

TEST_CASE("conjectured closed forms") {
  CHECK(conjecture_dim(8, 4) == 7);
  CHECK(conjecture_dim(8, 3) == 5);
  CHECK(conjecture_dim(8, 0) == 1);
  CHECK(conjecture_dim(14, 7) == 29);
  CHECK(conjecture_total(8) == 29);   // 5568 / 192
  CHECK(conjecture_total(9) == 40);
  CHECK(conjecture_total(13) == 154);
  CHECK(monomial_upper_bound(8) == 105);  // (14*144*10) / 192
  CHECK(monomial_upper_bound(9) == 140);
}

TEST_CASE("conjecture matches computed dimensions at d=8..9") {
  for (int d : {8, 9}) {
    const auto chi = character_of_span(2, 2, d);
    for (int w = 0; w <= d / 2; ++w)
      CHECK(Int(chi.dims[static_cast<std::size_t>(w)]) == conjecture_dim(d, w));
    CHECK(Int(chi.total) == conjecture_total(d));
  }
}

TEST_CASE("weight-2 specialization certifies floor(d/2) for d up to 14") {
  const auto s = specialization_weight2();
  for (int d = 4; d <= 14; ++d) {
    CAPTURE(d);
    CHECK(specialized_rank(d, 2, s) == d / 2);
  }
}

TEST_CASE("weight-3 specialization on the spanning set certifies d-3") {
  const auto s = specialization_weight3();
  for (int d = 4; d <= 14; ++d) {
    const auto subset = weight3_spanning_set(d);
    CAPTURE(d);
    CHECK(static_cast<int>(subset.size()) == d - 3);
    CHECK(specialized_rank(d, 3, s, &subset) == d - 3);
  }
  // d=10 instance named explicitly: rank 7 = d-3
  const auto subset10 = weight3_spanning_set(10);
  CHECK(specialized_rank(10, 3, specialization_weight3(), &subset10) == 7);
}

TEST_CASE("weight-0 specialization is rank one") {
  CHECK(specialized_rank(6, 0, specialization_weight2()) == 1);
}

TEST_CASE("sandwich: specialization <= span dimension <= bracelet count") {
  TraceParamTable table;
  const auto s2 = specialization_weight2();
  const auto s3 = specialization_weight3();
  for (int d = 4; d <= 10; ++d) {
    SpanRequest r2{2, 2, d, 2, {}};
    const int dim2 = span_dimension_weight(r2, &table);
    CHECK(specialized_rank(d, 2, s2) <= dim2);
    CHECK(Int(dim2) <= count_bracelets_weight_binary(d, 2));

    SpanRequest r3{2, 2, d, 3, {}};
    const int dim3 = span_dimension_weight(r3, &table);
    CHECK(specialized_rank(d, 3, s3) <= dim3);
    CHECK(Int(dim3) <= count_bracelets_weight_binary(d, 3));
  }
  for (int d = 3; d <= 10; ++d) {
    const auto chi = character_of_span(2, 2, d);
    CHECK(Int(chi.total) <= monomial_upper_bound(d));
  }
}
