#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "klr/klr.hpp"

using namespace klr;

namespace {

using S = TruncatedSeries<Rational>;

RationalField Q() { return std::get<RationalField>(make_field("Q")); }
Rational one() { return Q().one(); }
S y(int d, int T, int r) { return S::variable(d, T, r, one()); }
S c(int d, int T, long v) { return S::constant(d, T, Q().from_int(v)); }

bool report_ok(const Report& r) {
  if (!r.passed()) MESSAGE(r.summary());
  return r.passed();
}

}  // namespace

TEST_CASE("fields and quantum characteristic") {
  auto Q1 = Q();
  CHECK(Q1.degenerate());
  CHECK(Q1.quantum_characteristic() == 0);
  CHECK(std::get<RationalField>(make_field("Q,q=2")).quantum_characteristic() == 0);
  CHECK(std::get<RationalField>(make_field("Q,q=-1")).quantum_characteristic() == 2);
  CHECK(std::get<PrimeField>(make_field("GF(7),q=2")).quantum_characteristic() == 3);
  CHECK(std::get<PrimeField>(make_field("GF(3)")).quantum_characteristic() == 3);
  CHECK(std::get<PrimeField>(make_field("GF(2)")).quantum_characteristic() == 2);
  auto F5 = std::get<PrimeField>(make_field("GF(5),q=4"));
  CHECK(F5.q() * F5.q() == F5.one());
  CHECK(F5.quantum_characteristic() == 2);
  auto Z3 = std::get<CycloField>(make_field("Qzeta(3)"));
  CHECK(Z3.q() * Z3.q() + Z3.q() + Z3.one() == Z3.zero());
  CHECK(Z3.quantum_characteristic() == 3);
  CHECK(Z3.q_power(-1) * Z3.q() == Z3.one());
  CHECK_THROWS(make_field("GF(4)"));
  CHECK_THROWS(make_field("Q,q=0"));
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(11);
  auto check = [&](const auto& F) {
    for (int k = 0; k < 50; ++k) {
      auto a = F.random(rng), b = F.random(rng), c = F.random(rng);
      CHECK((a + b) * c == a * c + b * c);
      CHECK(a * b == b * a);
      CHECK(a - a == F.zero());
      if (!a.is_zero()) CHECK(a * a.inv() == F.one());
    }
  };
  check(Q());
  check(std::get<PrimeField>(make_field("GF(7)")));
  check(std::get<CycloField>(make_field("Qzeta(5)")));
}

TEST_CASE("permutation action on series") {
  const int d = 3, T = 3;
  S f = y(d, T, 1) * y(d, T, 3) + y(d, T, 2).scaled(Q().from_int(5));
  CHECK(apply_permutation(identity_perm(d), f) == f);
  CHECK(apply_permutation(simple_transposition(d, 1), y(d, T, 1)) == y(d, T, 2));
  Perm w = compose(simple_transposition(d, 1), simple_transposition(d, 2));
  CHECK(apply_permutation(w, f) ==
        apply_permutation(simple_transposition(d, 1), apply_permutation(simple_transposition(d, 2), f)));
}

TEST_CASE("divided differences") {
  const int d = 2, T = 3;
  CHECK(divided_difference(1, y(d, T, 1)) == c(d, T - 1, -1));
  CHECK(divided_difference(1, y(d, T, 1) * y(d, T, 2)).is_zero());
  CHECK(divided_difference(1, y(d, T, 1) * y(d, T, 1)) == -(y(d, T - 1, 1) + y(d, T - 1, 2)));
}

TEST_CASE("series inversion") {
  CHECK(invert_series(c(1, 1, 1) + y(1, 1, 1)) == c(1, 1, 1) - y(1, 1, 1));
  CHECK(invert_series(c(2, 3, 4)) == S::constant(2, 3, one() / Q().from_int(4)));
  auto Qm = std::get<RationalField>(make_field("Q,q=-1"));
  const Rational q = Qm.q();
  S f = S::constant(2, 2, one() - q) + y(2, 2, 2).scaled(q) - y(2, 2, 1);
  CHECK(f * invert_series(f) == c(2, 2, 1));
  CHECK_THROWS_AS(invert_series(y(2, 2, 1)), std::domain_error);
}

TEST_CASE("division by a linear form") {
  const int d = 2, T = 3;
  CHECK(divide_by_linear(y(d, T, 2) - y(d, T, 1), 1, 2) == c(d, T - 1, 1));
  CHECK(divide_by_linear(y(d, T, 2) * y(d, T, 2) - y(d, T, 1) * y(d, T, 1), 1, 2) == y(d, T - 1, 1) + y(d, T - 1, 2));
  CHECK(divide_by_linear(S(d, T), 1, 2).is_zero());
  CHECK_THROWS_AS(divide_by_linear(y(d, T, 1), 1, 2), std::domain_error);
}

TEST_CASE("evaluation on nilpotent matrices") {
  Matrix<Rational> N(2, 2);
  N(0, 1) = one();
  const auto I = Matrix<Rational>::identity(2, one());
  CHECK(evaluate_on_nilpotents(invert_series(c(1, 1, 1) + y(1, 1, 1)), {N}, one()) == I - N);
  Matrix<Rational> A(4, 4), B(4, 4);
  A(0, 1) = A(2, 3) = one();
  B(0, 2) = B(1, 3) = one();
  CHECK(evaluate_on_nilpotents(y(2, 2, 1) * y(2, 2, 2), {A, B}, one()) == A * B);
  CHECK_THROWS_AS(NilpotentFamily<Rational>({N}, one()).evaluate(S(1, 0)), std::domain_error);
}

TEST_CASE("p_r(i) evaluated on a block inverts x_r - x_{r+1}") {
  auto F = Q();
  HeckeAlgebra<Rational> H(F, DominantWeight({0, 1}, 0), 2);
  auto W = weight_idempotents(H);
  auto D = decompose(H, W);
  int checked = 0;
  for (const auto& s : D.blocks) {
    Block<Rational> B(H, W, s);
    KLRGens<Rational> G(B);
    for (int k = 0; k < B.num_weights(); ++k) {
      const Seq& i = B.sequence(k);
      if (i[0] == i[1]) continue;
      Matrix<Rational> p = G.evaluate(k, G.series(1, k).p);
      Matrix<Rational> diff = G.x(1).get(k, k) - G.x(2).get(k, k);
      CHECK(p * diff == Matrix<Rational>::identity(B.weight_dim(k), one()));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("randomized symbolic properties") {
  std::mt19937_64 rng(2024);
  CHECK(report_ok(check_symbolic_properties(Q(), 200, 100, rng)));
  CHECK(report_ok(check_symbolic_properties(std::get<PrimeField>(make_field("GF(7)")), 200, 100, rng)));
}

TEST_CASE("Cartan entries and adjacency") {
  CHECK(cartan_entry(0, 3, 3) == 2);
  CHECK(cartan_entry(0, 0, 1) == -1);
  CHECK(cartan_entry(0, 1, 0) == -1);
  CHECK(cartan_entry(2, 0, 1) == -2);
  CHECK(cartan_entry(5, 0, 3) == 0);
  CHECK(cartan_entry(3, 2, 0) == -1);
  CHECK(adjacency(0, 0, 1) == Adjacency::Right);
  CHECK(adjacency(0, 1, 0) == Adjacency::Left);
  CHECK(adjacency(3, 2, 0) == Adjacency::Right);
  CHECK(adjacency(2, 1, 0) == Adjacency::Double);
  // Symmetry of the Cartan matrix.
  for (int e : {0, 2, 3, 4})
    for (long i = 0; i < 5; ++i)
      for (long j = 0; j < 5; ++j) CHECK(cartan_entry(e, i, j) == cartan_entry(e, j, i));
}

TEST_CASE("sequences of a positive root") {
  CHECK(enumerate_I_alpha(0, PositiveRoot{{{0, 1}, {1, 1}}}) == std::vector<Seq>{{0, 1}, {1, 0}});
  CHECK(enumerate_I_alpha(2, PositiveRoot{{{0, 2}}}) == std::vector<Seq>{{0, 0}});
  CHECK(enumerate_I_alpha(0, PositiveRoot{{{-1, 1}, {0, 1}, {1, 1}}}).size() == 6);
  CHECK(PositiveRoot::of_sequence({0, 1, 0}).to_string() == "2a0+a1");
}

TEST_CASE("tableaux and residues") {
  auto R = residue_data(Partition{2, 1}, 0);
  CHECK(R.weight == PositiveRoot{{{-1, 1}, {0, 1}, {1, 1}}});
  REQUIRE(R.tableaux.size() == 2);
  CHECK(R.tableaux[0].second == Seq{0, 1, -1});
  CHECK(R.tableaux[1].second == Seq{0, -1, 1});
  auto R3 = residue_data(Partition{3}, 0);
  REQUIRE(R3.tableaux.size() == 1);
  CHECK(R3.tableaux[0].second == Seq{0, 1, 2});
  CHECK(hook_length_count(Partition{2, 2}) == 2);
  CHECK(standard_tableaux(Partition{2, 2}).size() == 2);
  for (int d = 1; d <= 6; ++d) {
    long total = 0;
    for (const auto& la : partitions(d)) {
      CHECK(static_cast<long>(standard_tableaux(la).size()) == hook_length_count(la));
      total += hook_length_count(la) * hook_length_count(la);
    }
    long fact = 1;
    for (int k = 2; k <= d; ++k) fact *= k;
    CHECK(total == fact);
  }
}

TEST_CASE("permutations and reduced words") {
  CHECK(reduced_word(identity_perm(3)).empty());
  CHECK(reduced_word(simple_transposition(3, 1)) == std::vector<int>{1});
  CHECK(reduced_word(Perm{2, 1, 0}) == std::vector<int>{1, 2, 1});
  for (int d = 1; d <= 4; ++d)
    for (const auto& w : symmetric_group(d)) {
      auto word = reduced_word(w);
      CHECK(static_cast<int>(word.size()) == perm_length(w));
      CHECK(perm_from_word(d, word) == w);
    }
  // The place action is a left action.
  const Seq i{0, 1, 2, 3};
  for (const auto& v : symmetric_group(4))
    for (const auto& w : symmetric_group(4)) CHECK(act(compose(v, w), i) == act(v, act(w, i)));
  CHECK(swap_at(i, 2) == Seq{0, 2, 1, 3});
}
