#include "klr/seminormal.hpp"

#include <algorithm>
#include <stdexcept>

namespace klr {

template <class E>
Matrix<E> SpechtModule<E>::matrix(const CompOp<E>& A) const {
  const int n = dim();
  Matrix<E> M(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto it = A.components().find({weight_of[a], weight_of[b]});
      if (it != A.components().end()) M(a, b) = it->second(slot_of[a], slot_of[b]);
    }
  return M;
}

template <class E>
Character SpechtModule<E>::character() const {
  Character ch;
  for (int k = 0; k < static_cast<int>(action.weights.size()); ++k) {
    const int r = rank(matrix(action.idem(k)));
    if (r) ch[action.weights[k]] = r;
  }
  return ch;
}

template <class E>
SpechtModule<E> specht_module(const Partition& la, const Field<E>& F) {
  if (F.quantum_characteristic() != 0) throw std::invalid_argument("specht_module: requires e = 0");
  SpechtModule<E> S;
  S.shape = la;
  S.tableaux = standard_tableaux(la);
  int d = 0;
  for (int p : la) d += p;
  const E one = F.one();
  KLRAction<E>& A = S.action;
  A.d = d;
  A.e = 0;
  A.weight = DominantWeight({0}, 0);
  A.one = one;
  for (const Tableau& T : S.tableaux) {
    Seq i = T.residue_sequence(0);
    S.residues.push_back(i);
    auto it = std::find(A.weights.begin(), A.weights.end(), i);
    int k = static_cast<int>(it - A.weights.begin());
    if (it == A.weights.end()) {
      A.weights.push_back(i);
      A.dims.push_back(0);
    }
    S.weight_of.push_back(k);
    S.slot_of.push_back(A.dims[k]++);
  }
  A.alpha = S.residues.empty() ? PositiveRoot{} : PositiveRoot::of_sequence(S.residues[0]);
  for (int r = 1; r <= d; ++r) A.y.push_back(CompOp<E>(A.dims));
  for (int r = 1; r < d; ++r) {
    CompOp<E> psi(A.dims);
    for (int t = 0; t < S.dim(); ++t) {
      Tableau U = S.tableaux[t].swapped(r);
      if (!U.is_standard()) continue;
      int u = static_cast<int>(std::find(S.tableaux.begin(), S.tableaux.end(), U) - S.tableaux.begin());
      Matrix<E> c(A.dims[S.weight_of[u]], A.dims[S.weight_of[t]]);
      c(S.slot_of[u], S.slot_of[t]) = one;
      psi.add(S.weight_of[u], S.weight_of[t], c);
    }
    A.psi.push_back(psi);
  }
  return S;
}

template <class E>
std::vector<Matrix<E>> seminormal_action(const SpechtModule<E>& S, const Field<E>& F, QChoice choice) {
  std::vector<Matrix<E>> out;
  const int n = S.dim();
  for (int r = 1; r < S.action.d; ++r) {
    const Matrix<E> psi = S.matrix(S.action.psi[r - 1]);
    Matrix<E> M(n, n);
    for (int t = 0; t < n; ++t) {
      const SeriesPair<E> s = klr_series(F, 0, S.residues[t], r, 0, choice);
      for (int u = 0; u < n; ++u) M(u, t) = psi(u, t) * s.q.constant_term();
      M(t, t) -= s.p.constant_term();
    }
    out.push_back(M);
  }
  return out;
}

template <class E>
std::vector<Matrix<E>> classical_oracle(const Partition& la, const Field<E>& F) {
  const auto tabs = standard_tableaux(la);
  const int n = static_cast<int>(tabs.size());
  int d = 0;
  for (int p : la) d += p;
  const E one = F.one(), q = F.q();
  auto content = [](const Tableau& T, int k) { return static_cast<long>(T.col_of(k) - T.row_of(k)); };
  std::vector<Matrix<E>> out;
  for (int r = 1; r < d; ++r) {
    Matrix<E> M(n, n);
    for (int t = 0; t < n; ++t) {
      const long c1 = content(tabs[t], r), c2 = content(tabs[t], r + 1);
      E diag, off;
      if (F.degenerate()) {
        // Young: 1/rho with axial distance rho = c(r+1) - c(r).
        diag = F.from_int(c2 - c1).inv();
      } else {
        // Hoefsmit: (q - 1) q^{c(r+1)} / (q^{c(r+1)} - q^{c(r)}).
        diag = (q - one) * F.q_power(c2) * (F.q_power(c2) - F.q_power(c1)).inv();
      }
      M(t, t) = diag;
      const Tableau U = tabs[t].swapped(r);
      if (!U.is_standard()) continue;
      const int u = static_cast<int>(std::find(tabs.begin(), tabs.end(), U) - tabs.begin());
      if (u > t) {
        off = one;
      } else {
        // Partner entry so that the 2 x 2 block satisfies the quadratic relation.
        const E partner = F.degenerate() ? -diag : q - one - diag;
        off = F.degenerate() ? one - diag * diag : diag * partner + q;
      }
      M(u, t) = off;
    }
    out.push_back(M);
  }
  return out;
}

template <class E>
bool same_up_to_diagonal_conjugation(const std::vector<Matrix<E>>& a, const std::vector<Matrix<E>>& b) {
  if (a.size() != b.size()) return false;
  for (size_t k = 0; k < a.size(); ++k) {
    const Matrix<E>&A = a[k], &B = b[k];
    if (A.rows() != B.rows() || A.cols() != B.cols()) return false;
    for (int i = 0; i < A.rows(); ++i) {
      if (A(i, i) != B(i, i)) return false;
      for (int j = i + 1; j < A.cols(); ++j) {
        if (A(i, j).is_zero() != B(i, j).is_zero() || A(j, i).is_zero() != B(j, i).is_zero()) return false;
        if (A(i, j) * A(j, i) != B(i, j) * B(j, i)) return false;
      }
    }
  }
  return true;
}

template <class E>
Report verify_specht(const Partition& la, const Field<E>& F, QChoice choice) {
  Report rep;
  const SpechtModule<E> S = specht_module(la, F);
  const std::string where = "lambda = " + partition_to_string(la);
  const int n = S.dim();
  const E one = F.one(), q = F.q();
  rep.record("dim S(lambda) = number of standard tableaux", n == hook_length_count(la), where);
  rep.merge(verify_klr_relations(S.action));

  const auto s = seminormal_action(S, F, choice);
  const Matrix<E> I = Matrix<E>::identity(n, one);
  const int d = S.action.d;
  for (int r = 1; r < d; ++r) {
    const Matrix<E>& A = s[r - 1];
    if (F.degenerate())
      rep.record("s_r^2 = 1", A * A == I, where);
    else
      rep.record("T_r^2 = (q-1) T_r + q", A * A == A.scaled_by(q - one) + I.scaled_by(q), where);
    if (r + 1 < d) rep.record("braid relation", A * s[r] * A == s[r] * A * s[r], where);
    for (int t = r + 2; t < d; ++t) rep.record("far commutation", A * s[t - 1] == s[t - 1] * A, where);
  }
  rep.record("agrees with the classical semi-normal form up to diagonal conjugation",
             same_up_to_diagonal_conjugation(s, classical_oracle(la, F)), where);

  // Algebra generated by the e(i) and psi_r.
  std::vector<Matrix<E>> gens;
  for (int k = 0; k < static_cast<int>(S.action.weights.size()); ++k) gens.push_back(S.matrix(S.action.idem(k)));
  for (const auto& p : S.action.psi) gens.push_back(S.matrix(p));
  auto flat = [n](const Matrix<E>& M) {
    Vec<E> v;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v.push_back(M(i, j));
    return v;
  };
  EchelonBasis<E> span(n * n);
  std::vector<Matrix<E>> queue;
  if (span.add(flat(I))) queue.push_back(I);
  while (!queue.empty() && span.dim() < n * n) {
    Matrix<E> M = queue.back();
    queue.pop_back();
    for (const auto& g : gens) {
      Matrix<E> P = g * M;
      if (span.add(flat(P))) queue.push_back(P);
    }
  }
  rep.record("generators span the full matrix algebra", span.dim() == n * n, where);

  Character expect;
  for (const Seq& i : S.residues) ++expect[i];
  rep.record("character is the sum of the i^T", S.character() == expect, where);
  return rep;
}

#define KLR_INSTANTIATE(E)                                                                                      \
  template struct SpechtModule<E>;                                                                              \
  template SpechtModule<E> specht_module(const Partition&, const Field<E>&);                                    \
  template std::vector<Matrix<E>> seminormal_action(const SpechtModule<E>&, const Field<E>&, QChoice);          \
  template std::vector<Matrix<E>> classical_oracle(const Partition&, const Field<E>&);                          \
  template bool same_up_to_diagonal_conjugation(const std::vector<Matrix<E>>&, const std::vector<Matrix<E>>&); \
  template Report verify_specht(const Partition&, const Field<E>&, QChoice);

KLR_INSTANTIATE(Rational)
KLR_INSTANTIATE(ModP)
KLR_INSTANTIATE(Cyclo)

}  // namespace klr
