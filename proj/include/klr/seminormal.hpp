#pragma once

#include <string>
#include <vector>

#include "klr/klr.hpp"

namespace klr {

// The module S(lambda) for Lambda = Lambda_0, e = 0 on the standard
// lambda-tableaux, with e(i) v_T = [i = i^T] v_T, y_r v_T = 0 and
// psi_r v_T = v_{s_r T} when s_r T is standard, else 0.
template <class E>
struct SpechtModule {
  Partition shape;
  std::vector<Tableau> tableaux;  // last-letter order
  std::vector<Seq> residues;      // i^T
  KLRAction<E> action;
  std::vector<int> weight_of;  // tableau -> weight index in action
  std::vector<int> slot_of;    // tableau -> position inside its weight space

  int dim() const { return static_cast<int>(tableaux.size()); }
  // Matrix of an operator on the basis v_T.
  Matrix<E> matrix(const CompOp<E>& A) const;
  Character character() const;
};

// Throws std::invalid_argument unless the field has e = 0.
template <class E>
SpechtModule<E> specht_module(const Partition& la, const Field<E>& F);

// s_r (resp. T_r), r = 1..d-1, as psi_r q_r(i^T) - p_r(i^T) at y = 0.
template <class E>
std::vector<Matrix<E>> seminormal_action(const SpechtModule<E>& S, const Field<E>& F, QChoice choice = QChoice::Paper);

// Young's semi-normal form (q = 1) or Hoefsmit's matrices (q != 1) in the
// same tableau order, from axial distances.
template <class E>
std::vector<Matrix<E>> classical_oracle(const Partition& la, const Field<E>& F);

// Scale-invariant data of a family of matrices: diagonal entries and products
// of opposite off-diagonal entries.
template <class E>
bool same_up_to_diagonal_conjugation(const std::vector<Matrix<E>>& a, const std::vector<Matrix<E>>& b);

// Dimension, KLR relations, Coxeter or Hecke relations of the reconstructed
// generators, agreement with the oracle, surjection onto the full matrix
// algebra, and the character.
template <class E>
Report verify_specht(const Partition& la, const Field<E>& F, QChoice choice = QChoice::Paper);

}  // namespace klr
