#include <catch2/catch_amalgamated.hpp>

#include "lienil/tgrade.hpp"

using namespace lienil;

namespace {
const Rationals Q;
}  // namespace

TEST_CASE("monomial lists are canonical") {
  GradedEngine<Rationals> eng(Q, 2);
  auto wi = eng.word_index({1, 1});
  REQUIRE(wi->dim() == 2);
  CHECK(wi->words[0] == Word{0, 1});
  CHECK(wi->words[1] == Word{1, 0});
  CHECK(eng.word_index({2, 1})->dim() == 3);
  GradedEngine<Rationals> eng3(Q, 3);
  CHECK(eng3.word_index({1, 1, 1})->dim() == 6);
}

TEST_CASE("commutator ideal components, small facts") {
  GradedEngine<Rationals> eng(Q, 2);
  CHECK(eng.commutator_tideal(3, {1, 1}).dim() == 0);
  auto sq = parse_poly(Q, 2, "[x,y]*[x,y]");
  CHECK(eng.commutator_tideal(3, {2, 2}).contains(sq));
  CHECK_FALSE(eng.commutator_tideal(4, {2, 2}).contains(sq));
}

TEST_CASE("rank-4 product counterexample") {
  GradedEngine<Rationals> eng(Q, 4);
  auto f = parse_poly(Q, 4, "[x1,x2]*[x3,x4]");
  CHECK_FALSE(eng.commutator_tideal(3, {1, 1, 1, 1}).contains(f));
  // while each factor is a plain commutator component member
  CHECK(eng.commutator_tideal(2, {1, 1, 0, 0}).contains(parse_poly(Q, 4, "[x1,x2]")));
}

TEST_CASE("graded span membership requires matching multidegree") {
  GradedEngine<Rationals> eng(Q, 2);
  auto& s = eng.commutator_tideal(2, {1, 1});
  CHECK_THROWS_AS(s.contains(parse_poly(Q, 2, "x*x")), std::domain_error);
  CHECK_THROWS_AS(s.contains(parse_poly(Q, 2, "x + [x,y]")), std::domain_error);
  CHECK(span_equal(s, s));
}

TEST_CASE("tspace components of the plain commutator") {
  GradedEngine<Rationals> eng(Q, 2);
  auto g = parse_poly(Q, 2, "[x,y]");
  CHECK(eng.tspace({g}, {2, 1}).contains(parse_poly(Q, 2, "[x^2, y]")));
  // V <= T at a few multidegrees
  for (auto d : std::vector<MultiDegree>{{1, 1}, {2, 1}, {2, 2}, {3, 1}}) {
    CHECK(span_leq(eng.tspace({g}, d), eng.commutator_tideal(2, d)));
    CHECK(span_leq(eng.commutator_tspace(2, d), eng.commutator_tideal(2, d)));
  }
}

TEST_CASE("general tspace closure matches the recursive commutator tower") {
  for (int rank : {2, 3}) {
    GradedEngine<Rationals> eng(Q, rank);
    for (int n : {2, 3}) {
      if (n > rank) continue;  // the generator's variables must fit the rank
      std::vector<int> idx;
      for (int i = 0; i < n; ++i) idx.push_back(i);
      std::vector<Poly<Rationals>> gen{generator_commutator(Q, rank, idx)};
      for (auto& d : multidegrees_up_to_total(rank, 4, n)) {
        auto& via_patterns = eng.tspace(gen, d);
        auto& via_tower = eng.commutator_tspace(n, d);
        REQUIRE(span_equal(via_patterns, via_tower));
      }
    }
  }
}

TEST_CASE("power generator tspace over F5") {
  PrimeField f5(5);
  GradedEngine<PrimeField> eng(f5, 2);
  auto x5 = parse_poly(f5, 2, "x^5");
  // the Frobenius instance (xy)^5 lands in the closure at (5,5)
  auto inst = parse_poly(f5, 2, "(x*y)^5");
  CHECK(eng.tspace({x5}, {5, 5}).contains(inst));
  // x^5 itself and y^5 via the swap substitution
  CHECK(eng.tspace({x5}, {5, 0}).contains(parse_poly(f5, 2, "x^5")));
  CHECK(eng.tspace({x5}, {0, 5}).contains(parse_poly(f5, 2, "y^5")));
  // single-variable components below the Frobenius exponent stay empty
  CHECK(eng.tspace({x5}, {4, 0}).dim() == 0);
  CHECK(eng.tspace({x5}, {7, 0}).dim() == 0);
}

TEST_CASE("product spans") {
  GradedEngine<Rationals> eng(Q, 3);
  auto& a = eng.commutator_tideal(2, {1, 1, 0});
  auto& b = eng.commutator_tideal(2, {0, 1, 1});
  auto prod = product_span(a, b, eng.word_index({1, 2, 1}));
  CHECK(prod.dim() > 0);
  CHECK(span_leq(prod, eng.commutator_tideal(3, {1, 2, 1})));

  GradedEngine<Rationals> eng4(Q, 4);
  auto& a4 = eng4.commutator_tideal(2, {1, 1, 0, 0});
  auto& b4 = eng4.commutator_tideal(2, {0, 0, 1, 1});
  auto prod4 = product_span(a4, b4, eng4.word_index({1, 1, 1, 1}));
  CHECK_FALSE(span_leq(prod4, eng4.commutator_tideal(3, {1, 1, 1, 1})));

  auto zero = eng.empty_span({1, 1, 0});
  auto zp = product_span(zero, b, eng.word_index({1, 2, 1}));
  CHECK(zp.dim() == 0);
}

TEST_CASE("monotone tower and nesting invariants") {
  GradedEngine<Rationals> eng(Q, 3);
  for (auto& d : multidegrees_up_to_total(3, 5)) {
    for (int n = 2; n <= 4; ++n) {
      CHECK(span_leq(eng.commutator_tideal(n + 1, d), eng.commutator_tideal(n, d)));
      CHECK(span_leq(eng.commutator_tspace(n, d), eng.commutator_tideal(n, d)));
    }
  }
}

TEST_CASE("tideal components do not depend on generator order") {
  GradedEngine<Rationals> eng(Q, 2);
  auto g1 = parse_poly(Q, 2, "[x,y]*[x,y]");
  auto g2 = parse_poly(Q, 2, "[x,y,x]");
  for (auto d : std::vector<MultiDegree>{{2, 2}, {3, 2}, {3, 3}}) {
    auto& a = eng.tideal({g1, g2}, d);
    auto& b = eng.tideal({g2, g1}, d);
    CHECK(span_equal(a, b));
  }
}

TEST_CASE("center components") {
  GradedEngine<Rationals> eng(Q, 2);
  // in F/T^(3) the commutator is central: the (1,1) center is the line [x,y]
  auto& c = eng.center(3, {1, 1});
  REQUIRE(c.dim() == 1);
  CHECK(c.contains(parse_poly(Q, 2, "[x,y]")));
  CHECK_FALSE(c.contains(parse_poly(Q, 2, "x*y")));
  // nothing of multidegree (1,1) is central in F/T^(4) over Q
  CHECK(eng.center(4, {1, 1}).dim() == 0);

  PrimeField f5(5);
  GradedEngine<PrimeField> eng5(f5, 2);
  CHECK(eng5.center(4, {0, 5}).contains(parse_poly(f5, 2, "y^5")));
}

TEST_CASE("proper polynomial ideal components") {
  GradedEngine<Rationals> eng(Q, 2);
  CHECK(eng.proper_ideal(3, {1, 1}).dim() == 0);
  auto& i2 = eng.proper_ideal(2, {1, 1});
  REQUIRE(i2.dim() == 1);
  CHECK(i2.contains(parse_poly(Q, 2, "[x,y]")));
  CHECK(eng.proper_ideal(4, {2, 2}).contains(parse_poly(Q, 2, "[x,y]*[x,y]")));
}

TEST_CASE("weight criterion at small degree") {
  // the T^(n) component coincides with the span of basis words of weight >= n
  for (unsigned long ch : {0ul, 5ul}) {
    auto run = [&](auto field) {
      using F = decltype(field);
      GradedEngine<F> eng(field, 3);
      LieBasis lb(3, 5);
      for (int n : {3, 4}) {
        for (auto& d : multidegrees_up_to_total(3, 5, n)) {
          GradedSpan<F> wspan = eng.empty_span(d);
          for (auto& cw : correct_words(lb, d))
            if (pbw_weight(lb, cw) >= n) wspan.insert(pbw_expansion(field, lb, cw));
          auto& tn = eng.commutator_tideal(n, d);
          REQUIRE(span_equal(wspan, tn));
        }
      }
    };
    if (ch == 0)
      run(Rationals{});
    else
      run(PrimeField{ch});
  }
}

TEST_CASE("degree caps surface as cap_exceeded") {
  EngineCaps caps;
  caps.max_total_degree = 4;
  GradedEngine<Rationals> eng(Q, 2, caps);
  CHECK_THROWS_AS(eng.commutator_tideal(3, {3, 2}), cap_exceeded);
  CHECK_NOTHROW(eng.commutator_tideal(3, {2, 2}));
}
