#pragma once

#include <map>
#include <string>
#include <vector>

#include "klr/hecke.hpp"

namespace klr {

using Character = std::map<Seq, int>;

std::string character_to_string(const Character& ch);

// Generalized eigenprojection of A onto eigenvalue lambda, as a polynomial in A.
// Returns the zero matrix when lambda is not an eigenvalue.
template <class E>
Matrix<E> eigenprojection(const Matrix<E>& A, const E& lambda, const E& one);

// Weight idempotents e(i) of H, computed as products of single-variable
// projections pi_{r,i_r}(x_r), each a polynomial in x_r.
template <class E>
struct WeightData {
  std::vector<Poly<E>> minimal_polynomials;             // of x_r, r = 1..d
  std::vector<std::vector<SpectralFactor<E>>> factors;  // per r
  std::vector<std::map<long, Poly<E>>> projections;     // per r: residue -> pi_{r,i}
  std::vector<Seq> sequences;                           // nonzero e(i), lexicographic
  std::vector<Vec<E>> idempotents;                      // e(i) as coordinates

  int find(const Seq& i) const;  // -1 when e(i) = 0
};

template <class E>
WeightData<E> weight_idempotents(const HeckeAlgebra<E>& H);

// e(i) * v, applying the projection polynomials of each x_r in turn.
template <class E>
Vec<E> apply_weight_projection(const HeckeAlgebra<E>& H, const WeightData<E>& W, const Seq& i, Vec<E> v);

// Residue sequences grouped by weight alpha.
template <class E>
std::map<PositiveRoot, std::vector<int>> group_by_weight(const WeightData<E>& W);

// Block data obtained without restricting to a block basis; scales to the
// whole grid of the dimension check.
template <class E>
struct BlockSummary {
  PositiveRoot alpha;
  std::vector<int> members;  // indices into WeightData::sequences
  Vec<E> unit;               // e_alpha as coordinates
  int dim = 0;
};

template <class E>
struct BlockDecomposition {
  std::vector<BlockSummary<E>> blocks;
  std::vector<CheckResult> checks;
};

// Computes e_alpha for every alpha, checks that they are orthogonal central
// idempotents summing to 1, and computes block dimensions. Dimensions are
// ranks over a field of positive characteristic and traces in characteristic
// zero (the two agree for idempotents; both are computed when n <= rank_limit).
template <class E>
BlockDecomposition<E> decompose(const HeckeAlgebra<E>& H, const WeightData<E>& W, int rank_limit = 200);

// A block H^Lambda_alpha realized by left multiplication on a basis of e_alpha H.
template <class E>
class Block {
 public:
  Block(const HeckeAlgebra<E>& H, const WeightData<E>& W, const BlockSummary<E>& S);

  const HeckeAlgebra<E>& algebra() const { return *H_; }
  const Field<E>& field() const { return H_->field(); }
  const PositiveRoot& alpha() const { return alpha_; }
  int dim() const { return dim_; }
  int d() const { return H_->d(); }
  int e() const { return H_->e(); }
  bool degenerate() const { return H_->degenerate(); }

  // Generators restricted to the block (r is 1-based).
  const Matrix<E>& x(int r) const { return x_[r - 1]; }
  const Matrix<E>& s(int r) const { return s_[r - 1]; }
  const Matrix<E>& x_inv(int r) const { return xinv_[r - 1]; }
  const Matrix<E>& identity() const { return id_; }

  // Nonzero weight idempotents of the block.
  int num_weights() const { return static_cast<int>(seqs_.size()); }
  const Seq& sequence(int k) const { return seqs_[k]; }
  const std::vector<Seq>& sequences() const { return seqs_; }
  int find(const Seq& i) const;  // -1 when e(i) = 0 on the block
  const Matrix<E>& idempotent(int k) const { return idem_[k]; }

  // Weight spaces: idempotent(k) = U(k) W(k) with W(k) U(k) = identity.
  const Matrix<E>& U(int k) const { return U_[k]; }
  const Matrix<E>& W(int k) const { return W_[k]; }
  int weight_dim(int k) const { return U_[k].cols(); }
  // The block e(j) M e(i) of an operator M, as a dim_j x dim_i matrix.
  Matrix<E> component(int j, const Matrix<E>& M, int i) const { return W_[j] * (M * U_[i]); }

  // Restriction of an operator on H that preserves e_alpha H.
  Matrix<E> restrict(const SparseMatrix<E>& G) const;
  Matrix<E> restrict(const Matrix<E>& G) const;

  // Block coordinates of an element of e_alpha H, and back.
  Vec<E> coordinates(const Vec<E>& v) const;
  Vec<E> element(const Vec<E>& c) const;
  // Block coordinates of e_alpha.
  const Vec<E>& unit_coordinates() const { return unit_; }

  // Dimension of e(i) B for each nonzero e(i).
  Character character() const;

  // Orthogonality and completeness of the e(i), commutation with x_r, weight
  // covariance of s_r, and the generator relations on the restriction.
  std::vector<CheckResult> verify() const;

 private:
  Matrix<E> restrict_product(const Matrix<E>& GB) const;

  const HeckeAlgebra<E>* H_;
  PositiveRoot alpha_;
  int dim_;
  Matrix<E> basis_;         // n x dim, columns are the basis elements
  std::vector<int> rows_;   // rows where basis_ is invertible
  Matrix<E> basis_inv_;     // inverse of basis_ restricted to rows_
  Vec<E> unit_;
  Matrix<E> id_;
  std::vector<Matrix<E>> x_, s_, xinv_;
  std::vector<Seq> seqs_;
  std::vector<Matrix<E>> idem_, U_, W_;
};

}  // namespace klr
