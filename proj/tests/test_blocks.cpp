#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>

#include "klr/blocks.hpp"

using namespace klr;

namespace {

bool all_pass(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.passed) {
      MESSAGE("failed: " << r.name << " " << r.detail);
      return false;
    }
  return true;
}

template <class E>
std::vector<int> block_dims(const std::string& field, std::vector<long> charges, int d) {
  auto F = std::get<Field<E>>(make_field(field));
  HeckeAlgebra<E> H(F, DominantWeight(charges, F.quantum_characteristic()), d);
  auto W = weight_idempotents(H);
  auto D = decompose(H, W);
  CHECK(all_pass(D.checks));
  std::vector<int> dims;
  for (const auto& b : D.blocks) dims.push_back(b.dim);
  return dims;
}

}  // namespace

TEST_CASE("eigenprojection") {
  auto F = std::get<RationalField>(make_field("Q"));
  Rational one = F.one();
  auto I = Matrix<Rational>::identity(3, one);
  CHECK(eigenprojection(I, one, one) == I);
  Matrix<Rational> N(3, 3);
  N(0, 1) = one;
  N(1, 2) = one;
  CHECK(eigenprojection(N, Rational(), one) == I);
  CHECK(eigenprojection(N, one, one).is_zero());
  Matrix<Rational> A(2, 2);
  A(0, 1) = one;
  A(1, 0) = one;
  Rational half = one / F.from_int(2);
  Matrix<Rational> plus = (Matrix<Rational>::identity(2, one) + A).scaled_by(half);
  Matrix<Rational> minus = (Matrix<Rational>::identity(2, one) - A).scaled_by(half);
  CHECK(eigenprojection(A, one, one) == plus);
  CHECK(eigenprojection(A, -one, one) == minus);
}

TEST_CASE("weight idempotents of FS_2") {
  auto F = std::get<RationalField>(make_field("Q"));
  HeckeAlgebra<Rational> H(F, DominantWeight({0}, 0), 2);
  auto W = weight_idempotents(H);
  REQUIRE(W.sequences.size() == 2);
  CHECK(W.sequences[0] == Seq{0, -1});
  CHECK(W.sequences[1] == Seq{0, 1});
  CHECK(AlgebraElement<Rational>(&H, W.idempotents[1]) == H.normal_form("1/2 + 1/2*s1"));
  CHECK(AlgebraElement<Rational>(&H, W.idempotents[0]) == H.normal_form("1/2 - 1/2*s1"));
}

TEST_CASE("single weight in level two, degree one") {
  auto F = std::get<RationalField>(make_field("Q"));
  HeckeAlgebra<Rational> H(F, DominantWeight({0, 0}, 0), 1);
  auto W = weight_idempotents(H);
  REQUIRE(W.sequences.size() == 1);
  CHECK(W.idempotents[0] == H.unit());
  CHECK(block_dims<Rational>("Q", {0, 0}, 1) == std::vector<int>{2});
}

TEST_CASE("block dimensions") {
  CHECK(block_dims<Rational>("Q", {0}, 3) == std::vector<int>{1, 4, 1});
  CHECK(block_dims<ModP>("GF(2)", {0}, 2) == std::vector<int>{2});
  CHECK(block_dims<Rational>("Q,q=2", {0}, 3) == std::vector<int>{1, 4, 1});
  CHECK(block_dims<Rational>("Q", {0}, 0) == std::vector<int>{1});
}

TEST_CASE("restricted blocks") {
  auto F = std::get<RationalField>(make_field("Q"));
  HeckeAlgebra<Rational> H(F, DominantWeight({0, 1}, 0), 3);
  auto W = weight_idempotents(H);
  auto D = decompose(H, W);
  int total = 0;
  for (const auto& S : D.blocks) {
    Block<Rational> B(H, W, S);
    CHECK(B.dim() == S.dim);
    CHECK(all_pass(B.verify()));
    int chsum = 0;
    for (const auto& [i, m] : B.character()) chsum += m;
    CHECK(chsum == B.dim());
    total += B.dim();
  }
  CHECK(total == 48);
}

TEST_CASE("block grid timing") {
  auto t0 = std::chrono::steady_clock::now();
  for (auto ch : std::vector<std::vector<long>>{{0, 0}, {0, 1}}) {
    auto dims = block_dims<Rational>("Q", ch, 4);
    int s = 0;
    for (int x : dims) s += x;
    CHECK(s == 384);
  }
  auto t1 = std::chrono::steady_clock::now();
  MESSAGE("Q, l=2, d=4 ms: " << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
  for (auto ch : std::vector<std::vector<long>>{{0, 0}, {0, 1}}) {
    auto dims = block_dims<ModP>("GF(7),q=2", ch, 4);
    int s = 0;
    for (int x : dims) s += x;
    CHECK(s == 384);
  }
  auto t2 = std::chrono::steady_clock::now();
  MESSAGE("GF7, l=2, d=4 ms: " << std::chrono::duration_cast<std::chrono::milliseconds>(t2 - t1).count());
}
