#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "klr/seminormal.hpp"

using namespace klr;

namespace {

RationalField Q() { return std::get<RationalField>(make_field("Q")); }
RationalField Q2() { return std::get<RationalField>(make_field("Q,q=2")); }
Rational frac(long a, long b) { return Q().from_int(a) / Q().from_int(b); }

bool report_ok(const Report& r) {
  if (!r.passed()) MESSAGE(r.summary());
  return r.passed();
}

}  // namespace

TEST_CASE("Specht module of (2,1)") {
  auto S = specht_module(Partition{2, 1}, Q());
  REQUIRE(S.dim() == 2);
  CHECK(S.tableaux[0].to_string() == "[[1,2],[3]]");
  CHECK(S.matrix(S.action.psi[0]).is_zero());
  Matrix<Rational> swap(2, 2);
  swap(0, 1) = swap(1, 0) = Q().one();
  CHECK(S.matrix(S.action.psi[1]) == swap);
  CHECK(character_to_string(S.character()) == "(0,-1,1) + (0,1,-1)");
}

TEST_CASE("one-dimensional Specht modules") {
  for (const Partition& la : {Partition{3}, Partition{1, 1, 1}, Partition{1}}) {
    auto S = specht_module(la, Q());
    CHECK(S.dim() == 1);
    for (const auto& p : S.action.psi) CHECK(p.is_zero());
  }
  auto s = seminormal_action(specht_module(Partition{3}, Q()), Q());
  for (const auto& m : s) CHECK(m == Matrix<Rational>::identity(1, Q().one()));
  CHECK(classical_oracle(Partition{2}, Q())[0] == Matrix<Rational>::identity(1, Q().one()));
  CHECK(classical_oracle(Partition{1, 1}, Q())[0] == Matrix<Rational>::identity(1, Q().one()).scaled_by(-Q().one()));
}

TEST_CASE("Young's formulas for (2,1)") {
  auto S = specht_module(Partition{2, 1}, Q());
  auto s = seminormal_action(S, Q());
  // v_T for T = [[1,2],[3]] is the first basis vector.
  CHECK(s[0](0, 0) == Q().one());
  CHECK(s[0](1, 0).is_zero());
  CHECK(s[1](0, 0) == frac(-1, 2));
  CHECK(s[1](1, 0) == frac(1, 2));
  CHECK(s[1](0, 1) == frac(3, 2));
  CHECK(s[1](1, 1) == frac(1, 2));
  CHECK(s[1](0, 1) * s[1](1, 0) == frac(3, 4));
  auto o = classical_oracle(Partition{2, 1}, Q());
  CHECK(o[1](0, 0) == frac(-1, 2));
  CHECK(o[1](1, 1) == frac(1, 2));
  CHECK(same_up_to_diagonal_conjugation(s, o));
}

TEST_CASE("scale-invariant comparison detects a wrong diagonal") {
  auto o = classical_oracle(Partition{2, 1}, Q());
  auto bad = o;
  bad[1](0, 0) = frac(1, 2);
  CHECK(!same_up_to_diagonal_conjugation(o, bad));
}

TEST_CASE("Specht modules over Q, q = 1, d <= 5") {
  long squares = 0;
  for (int d = 1; d <= 5; ++d) {
    squares = 0;
    for (const auto& la : partitions(d)) {
      CAPTURE(partition_to_string(la));
      CHECK(report_ok(verify_specht(la, Q())));
      squares += hook_length_count(la) * hook_length_count(la);
    }
  }
  CHECK(squares == 120);
}

TEST_CASE("Hoefsmit matrices over Q, q = 2, d <= 4") {
  for (int d = 1; d <= 4; ++d)
    for (const auto& la : partitions(d)) {
      CAPTURE(partition_to_string(la));
      CHECK(report_ok(verify_specht(la, Q2())));
      CHECK(report_ok(verify_specht(la, Q2(), QChoice::Alt)));
    }
}

TEST_CASE("Specht module requires e = 0") {
  auto F = std::get<PrimeField>(make_field("GF(3)"));
  CHECK_THROWS_AS(specht_module(Partition{2}, F), std::invalid_argument);
}
