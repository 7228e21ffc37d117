#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>

#include "klr/hecke.hpp"

using namespace klr;

namespace {

template <class E>
bool all_pass(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.passed) {
      MESSAGE("failed: " << r.name);
      return false;
    }
  return true;
}

template <class E>
void check_grid(const std::string& spec) {
  auto F = std::get<Field<E>>(make_field(spec));
  for (auto charges : std::vector<std::vector<long>>{{0}, {0, 0}, {0, 1}}) {
    DominantWeight L(charges, F.quantum_characteristic());
    for (int d = 0; d <= 3; ++d) {
      HeckeAlgebra<E> H(F, L, d);
      long expect = 1;
      for (int k = 0; k < d; ++k) expect *= static_cast<long>(L.level()) * (k + 1);
      CHECK(H.dim() == expect);
      CHECK(all_pass<E>(H.verify()));
    }
  }
}

}  // namespace

TEST_CASE("dimension is l^d d! and relations hold") {
  check_grid<Rational>("Q");
  check_grid<ModP>("GF(2)");
  check_grid<ModP>("GF(3)");
  check_grid<Rational>("Q,q=2");
  check_grid<Rational>("Q,q=-1");
  check_grid<ModP>("GF(7),q=2");
  check_grid<Cyclo>("Qzeta(3)");
}

TEST_CASE("degenerate commutation s1 x2 = x1 s1 + 1") {
  auto F = std::get<RationalField>(make_field("Q"));
  HeckeAlgebra<Rational> H(F, DominantWeight({0, 0}, 0), 2);
  auto a = H.normal_form("s1*x2");
  auto b = H.normal_form("x1*s1 + 1");
  CHECK(a == b);
  CHECK(H.normal_form("s1*x2 - x1*s1").to_string() == "1");
  CHECK(H.normal_form("x1*x1").is_zero());
  CHECK(H.normal_form("s1*s1").to_string() == "1");
}

TEST_CASE("quantum relation T1 X1 T1 = q X2") {
  auto F = std::get<RationalField>(make_field("Q,q=2"));
  HeckeAlgebra<Rational> H(F, DominantWeight({0, 1}, 0), 2);
  CHECK(H.normal_form("T1*X1*T1 - 2*X2").is_zero());
  CHECK(H.normal_form("X1*X1^-1").to_string() == "1");
  CHECK(H.normal_form("T1*T1").to_string() == "2 + T1");
}

TEST_CASE("cyclotomic polynomial and basis labels") {
  auto F = std::get<RationalField>(make_field("Q"));
  HeckeAlgebra<Rational> H(F, DominantWeight({0, 1}, 0), 2);
  // (t - 0)(t - 1) = t^2 - t
  CHECK(H.cyclotomic_polynomial().to_string() == "(1)*t^2 + (-1)*t");
  CHECK(H.basis_label(0) == "1");
  CHECK(H.basis_label(1) == "s1");
  CHECK(H.normal_form("x1*x1 - x1").is_zero());
}

TEST_CASE("left multiplication agrees with generator matrices") {
  auto F = std::get<RationalField>(make_field("Q,q=2"));
  HeckeAlgebra<Rational> H(F, DominantWeight({0, 0}, 0), 3);
  std::mt19937_64 rng(7);
  Vec<Rational> a(H.dim()), v(H.dim());
  for (auto& c : a) c = F.random(rng);
  for (auto& c : v) c = F.random(rng);
  // (T2 a) v = T2 (a v)
  Vec<Rational> t2a = H.s(2) * a;
  CHECK(H.left_multiply(t2a, v) == H.s(2) * H.left_multiply(a, v));
  Vec<Rational> x3a = H.x(3) * a;
  CHECK(H.left_multiply(x3a, v) == H.x(3) * H.left_multiply(a, v));
}

TEST_CASE("polynomial left matrix agrees with general left matrix") {
  auto F = std::get<RationalField>(make_field("Q"));
  HeckeAlgebra<Rational> H(F, DominantWeight({0, 1}, 0), 3);
  Vec<Rational> a = H.x(2) * (H.x(3) * H.unit()) + H.x(1) * H.unit();
  CHECK(H.left_matrix_of_pol(a) == H.left_matrix(a));
}

TEST_CASE("dimension 384 build") {
  auto t0 = std::chrono::steady_clock::now();
  auto F = std::get<RationalField>(make_field("Q,q=2"));
  HeckeAlgebra<Rational> H(F, DominantWeight({0, 0}, 0), 4);
  CHECK(H.dim() == 384);
  CHECK(all_pass<Rational>(H.verify()));
  auto t1 = std::chrono::steady_clock::now();
  MESSAGE("build+verify ms: " << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
}
