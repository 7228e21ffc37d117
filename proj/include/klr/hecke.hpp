#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "klr/field.hpp"
#include "klr/matrix.hpp"
#include "klr/poly.hpp"
#include "klr/rootdata.hpp"

namespace klr {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

template <class E>
class AlgebraElement;

// The cyclotomic quotient H^Lambda_d (degenerate when q = 1), realized on the
// basis x^m w (resp. X^m T_w) with 0 <= m_r < l, via sparse matrices of left
// multiplication by the generators.
template <class E>
class HeckeAlgebra {
 public:
  HeckeAlgebra(const Field<E>& F, DominantWeight L, int d);

  const Field<E>& field() const { return F_; }
  const DominantWeight& weight() const { return L_; }
  int d() const { return d_; }
  int level() const { return l_; }
  int e() const { return L_.e; }
  bool degenerate() const { return F_.degenerate(); }
  int dim() const { return n_; }

  // Basis bookkeeping: index = exponent_index * |S_d| + perm_index.
  int num_perms() const { return static_cast<int>(perms_.size()); }
  int num_exponents() const { return static_cast<int>(exps_.size()); }
  const Perm& perm(int k) const { return perms_[k]; }
  const std::vector<int>& perm_word(int k) const { return words_[k]; }
  const std::vector<int>& exponent(int k) const { return exps_[k]; }
  int perm_index(const Perm& w) const;
  int exponent_index(const std::vector<int>& m) const;
  int index(int mi, int wi) const { return mi * num_perms() + wi; }
  std::string basis_label(int k) const;

  // Left multiplication by x_r / X_r (r = 1..d) and s_r / T_r (r = 1..d-1).
  const SparseMatrix<E>& x(int r) const { return x_[r - 1]; }
  const SparseMatrix<E>& s(int r) const { return s_[r - 1]; }
  const SparseMatrix<E>& x_inv(int r) const;  // non-degenerate only
  std::vector<SparseMatrix<E>> regular_matrices() const;

  // The cyclotomic polynomial prod (t - value(i))^{(Lambda, alpha_i)}.
  const Poly<E>& cyclotomic_polynomial() const { return cyc_; }

  Vec<E> unit() const;  // coordinates of 1
  Vec<E> zero_vec() const { return Vec<E>(n_); }
  Vec<E> basis_vec(int k) const;

  // Right multiplication of a coordinate vector by the Coxeter generator j.
  Vec<E> right_multiply_s(const Vec<E>& v, int j) const;
  // a * v for an arbitrary element a given by coordinates.
  Vec<E> left_multiply(const Vec<E>& a, const Vec<E>& v) const;
  // Matrix of left multiplication by an element a of the commutative
  // subalgebra generated by the x_r (resp. X_r), given as a = a*1.
  Matrix<E> left_matrix_of_pol(const Vec<E>& a) const;
  // Matrix of left multiplication by an arbitrary element.
  Matrix<E> left_matrix(const Vec<E>& a) const;

  // Checks that the generator matrices satisfy the defining relations, and
  // that the basis words applied to 1 give the basis vectors.
  std::vector<CheckResult> verify() const;

  // Evaluates an expression such as "s1*x2 - x1*s1" or "T1*X1*T1 - 2*X2".
  AlgebraElement<E> normal_form(const std::string& expr) const;

 private:
  void build_degenerate();
  void build_nondegenerate();
  void build_x1();
  std::vector<std::pair<int, E>> pair_divided(int r, const std::vector<int>& m, bool quantum) const;

  Field<E> F_;
  DominantWeight L_;
  int d_, l_, n_;
  std::vector<Perm> perms_;
  std::vector<std::vector<int>> words_;
  std::vector<int> lengths_;
  std::unordered_map<long, int> perm_lookup_;
  std::vector<std::vector<int>> exps_;
  std::vector<int> exp_lookup_;
  Poly<E> cyc_;
  std::vector<SparseMatrix<E>> x_, s_, xinv_;
};

template <class E>
class AlgebraElement {
 public:
  AlgebraElement(const HeckeAlgebra<E>* H, Vec<E> c) : H_(H), c_(std::move(c)) {}

  const Vec<E>& coords() const { return c_; }
  const HeckeAlgebra<E>& algebra() const { return *H_; }
  bool is_zero() const { return is_zero_vec(c_); }

  AlgebraElement operator+(const AlgebraElement& o) const { return {H_, c_ + o.c_}; }
  AlgebraElement operator-(const AlgebraElement& o) const { return {H_, c_ - o.c_}; }
  AlgebraElement operator*(const AlgebraElement& o) const { return {H_, H_->left_multiply(c_, o.c_)}; }
  AlgebraElement scaled(const E& a) const { return {H_, klr::scaled(c_, a)}; }
  bool operator==(const AlgebraElement& o) const { return c_ == o.c_; }
  bool operator!=(const AlgebraElement& o) const { return !(c_ == o.c_); }

  std::string to_string() const;

 private:
  const HeckeAlgebra<E>* H_;
  Vec<E> c_;
};

}  // namespace klr
