#include "klr/blocks.hpp"

#include <functional>
#include <stdexcept>

namespace klr {

std::string character_to_string(const Character& ch) {
  if (ch.empty()) return "0";
  std::string s;
  for (const auto& [i, m] : ch) {
    if (!s.empty()) s += " + ";
    if (m != 1) s += std::to_string(m) + "*";
    s += seq_to_string(i, 0);
  }
  return s;
}

namespace {

// p(A) v by Horner's rule with a sparse matrix.
template <class E>
Vec<E> horner(const Poly<E>& p, const SparseMatrix<E>& A, const Vec<E>& v) {
  Vec<E> acc(v.size());
  for (int k = p.degree(); k >= 0; --k) {
    acc = A * acc;
    const E& c = p.coeffs()[k];
    if (c.is_zero()) continue;
    for (size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) acc[j].add_mul(c, v[j]);
  }
  return acc;
}

template <class E>
Matrix<E> horner_dense(const Poly<E>& p, const Matrix<E>& A, const E& one) {
  int n = A.rows();
  Matrix<E> acc(n, n);
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * A;
    const E& c = p.coeffs()[k];
    if (c.is_zero()) continue;
    for (int i = 0; i < n; ++i) acc(i, i) += c * one;
  }
  return acc;
}

template <class E>
Vec<E> flatten(const Matrix<E>& m) {
  Vec<E> v;
  v.reserve(static_cast<size_t>(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

template <class E>
Matrix<E> unflatten(const Vec<E>& v, int n) {
  Matrix<E> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[static_cast<size_t>(i) * n + j];
  return m;
}

template <class E>
E trace_of(const Matrix<E>& m) {
  E t;
  for (int i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace

template <class E>
Matrix<E> eigenprojection(const Matrix<E>& A, const E& lambda, const E& one) {
  const int n = A.rows();
  std::function<Vec<E>(const Vec<E>&)> mult = [&](const Vec<E>& v) { return flatten(unflatten(v, n) * A); };
  Poly<E> mp = krylov_minimal_polynomial(flatten(Matrix<E>::identity(n, one)), mult, one, n);
  Poly<E> lin = Poly<E>::linear(one, lambda);
  Poly<E> rest = mp, prim = Poly<E>::constant(one);
  while (rest.degree() >= 1) {
    auto [q, r] = rest.divmod(lin);
    if (!r.is_zero()) break;
    rest = q;
    prim = prim * lin;
  }
  if (prim.degree() == 0) return Matrix<E>(n, n);
  // g = 1 mod prim, g = 0 mod rest.
  Poly<E> g = (rest * inverse_mod(rest, prim)) % mp;
  return horner_dense(g, A, one);
}

template <class E>
int WeightData<E>::find(const Seq& i) const {
  for (size_t k = 0; k < sequences.size(); ++k)
    if (sequences[k] == i) return static_cast<int>(k);
  return -1;
}

template <class E>
WeightData<E> weight_idempotents(const HeckeAlgebra<E>& H) {
  WeightData<E> W;
  const auto& F = H.field();
  const int d = H.d();
  const E one = F.one();
  std::vector<std::pair<long, E>> spectrum;
  for (long i : residue_window(H.weight(), d)) spectrum.push_back({i, F.residue_value(i)});

  const Vec<E> unit = H.unit();
  for (int r = 1; r <= d; ++r) {
    const auto& X = H.x(r);
    std::function<Vec<E>(const Vec<E>&)> apply = [&](const Vec<E>& v) { return X * v; };
    Poly<E> mp = krylov_minimal_polynomial(unit, apply, one, H.dim());
    auto factors = split_over(mp, spectrum, one);
    auto proj = primary_idempotents(factors, one);
    std::map<long, Poly<E>> pm;
    for (size_t k = 0; k < factors.size(); ++k) pm[factors[k].label] = proj[k];
    W.minimal_polynomials.push_back(mp);
    W.factors.push_back(factors);
    W.projections.push_back(std::move(pm));
  }

  // Depth-first over sequences; the x_r commute, so the product of the
  // projections can be applied one variable at a time, pruning zeros.
  Seq cur;
  std::function<void(int, const Vec<E>&)> rec = [&](int r, const Vec<E>& v) {
    if (r == d) {
      W.sequences.push_back(cur);
      W.idempotents.push_back(v);
      return;
    }
    for (const auto& [label, poly] : W.projections[r]) {
      Vec<E> w = horner(poly, H.x(r + 1), v);
      if (is_zero_vec(w)) continue;
      cur.push_back(label);
      rec(r + 1, w);
      cur.pop_back();
    }
  };
  rec(0, unit);
  return W;
}

template <class E>
Vec<E> apply_weight_projection(const HeckeAlgebra<E>& H, const WeightData<E>& W, const Seq& i, Vec<E> v) {
  for (int r = 0; r < H.d(); ++r) {
    auto it = W.projections[r].find(canon(i[r], H.e()));
    if (it == W.projections[r].end()) return Vec<E>(v.size());
    v = horner(it->second, H.x(r + 1), v);
  }
  return v;
}

template <class E>
std::map<PositiveRoot, std::vector<int>> group_by_weight(const WeightData<E>& W) {
  std::map<PositiveRoot, std::vector<int>> out;
  for (size_t k = 0; k < W.sequences.size(); ++k)
    out[PositiveRoot::of_sequence(W.sequences[k])].push_back(static_cast<int>(k));
  return out;
}

template <class E>
BlockDecomposition<E> decompose(const HeckeAlgebra<E>& H, const WeightData<E>& W, int rank_limit) {
  BlockDecomposition<E> out;
  const int n = H.dim();
  const auto& F = H.field();
  for (const auto& [alpha, members] : group_by_weight(W)) {
    BlockSummary<E> b;
    b.alpha = alpha;
    b.members = members;
    b.unit = Vec<E>(n);
    for (int k : members) b.unit = b.unit + W.idempotents[k];
    out.blocks.push_back(std::move(b));
  }
  auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
    for (auto& c : out.checks)
      if (c.name == name) {
        c.passed = c.passed && ok;
        if (!ok && c.detail.empty()) c.detail = detail;
        return;
      }
    out.checks.push_back({name, ok, ok ? "" : detail});
  };

  const Vec<E> unit = H.unit();
  Vec<E> total(n);
  auto gens = H.regular_matrices();
  std::vector<Vec<E>> gen_elems;
  for (const auto& g : gens) gen_elems.push_back(g * unit);
  int dim_sum = 0;
  for (auto& b : out.blocks) {
    total = total + b.unit;
    Matrix<E> L = H.left_matrix_of_pol(b.unit);
    std::string a = b.alpha.to_string();
    add("e_alpha idempotent", L * b.unit == b.unit, a);
    for (const auto& c : out.blocks)
      if (&c != &b) add("e_alpha orthogonal", is_zero_vec(L * c.unit), a + " vs " + c.alpha.to_string());
    for (size_t g = 0; g < gens.size(); ++g)
      add("e_alpha central", gens[g] * b.unit == L * gen_elems[g], a);
    if (F.characteristic() == 0) {
      E t = trace_of(L);
      b.dim = std::stoi(t.to_string());
      if (n <= rank_limit) add("rank equals trace", rank(L) == b.dim, a);
    } else {
      b.dim = rank(L);
    }
    dim_sum += b.dim;
  }
  add("sum of e_alpha is 1", total == unit);
  add("block dimensions sum to dim H", dim_sum == n,
      std::to_string(dim_sum) + " != " + std::to_string(n));
  return out;
}

// ---------------------------------------------------------------------------

template <class E>
Block<E>::Block(const HeckeAlgebra<E>& H, const WeightData<E>& Wd, const BlockSummary<E>& S)
    : H_(&H), alpha_(S.alpha) {
  const E one = H.field().one();
  Matrix<E> L = H.left_matrix_of_pol(S.unit);
  auto ech = row_reduce(L);
  dim_ = static_cast<int>(ech.pivots.size());
  std::vector<Vec<E>> cols;
  for (int p : ech.pivots) cols.push_back(L.column(p));
  basis_ = Matrix<E>::from_columns(cols, H.dim());
  rows_ = row_reduce(basis_.transpose()).pivots;
  std::vector<int> all(dim_);
  for (int k = 0; k < dim_; ++k) all[k] = k;
  basis_inv_ = inverse(basis_.submatrix(rows_, all), one);
  unit_ = coordinates(S.unit);
  id_ = Matrix<E>::identity(dim_, one);

  for (int r = 1; r <= H.d(); ++r) x_.push_back(restrict(H.x(r)));
  for (int r = 1; r < H.d(); ++r) s_.push_back(restrict(H.s(r)));
  if (!H.degenerate())
    for (int r = 1; r <= H.d(); ++r) xinv_.push_back(restrict(H.x_inv(r)));

  for (int k : S.members) {
    seqs_.push_back(Wd.sequences[k]);
    Matrix<E> Ei = restrict(H.left_matrix_of_pol(Wd.idempotents[k]));
    auto e = row_reduce(Ei);
    std::vector<Vec<E>> uc;
    for (int p : e.pivots) uc.push_back(Ei.column(p));
    Matrix<E> Wk(static_cast<int>(e.pivots.size()), dim_);
    for (int a = 0; a < Wk.rows(); ++a)
      for (int j = 0; j < dim_; ++j) Wk(a, j) = e.rref(a, j);
    U_.push_back(Matrix<E>::from_columns(uc, dim_));
    W_.push_back(std::move(Wk));
    idem_.push_back(std::move(Ei));
  }
}

template <class E>
int Block<E>::find(const Seq& i) const {
  Seq c = i;
  for (auto& x : c) x = canon(x, e());
  for (size_t k = 0; k < seqs_.size(); ++k)
    if (seqs_[k] == c) return static_cast<int>(k);
  return -1;
}

template <class E>
Vec<E> Block<E>::coordinates(const Vec<E>& v) const {
  Vec<E> vs(rows_.size());
  for (size_t k = 0; k < rows_.size(); ++k) vs[k] = v[rows_[k]];
  return basis_inv_ * vs;
}

template <class E>
Vec<E> Block<E>::element(const Vec<E>& c) const {
  return basis_ * c;
}

template <class E>
Matrix<E> Block<E>::restrict(const SparseMatrix<E>& G) const {
  return restrict_product(G * basis_);
}

template <class E>
Matrix<E> Block<E>::restrict(const Matrix<E>& G) const {
  return restrict_product(G * basis_);
}

template <class E>
Matrix<E> Block<E>::restrict_product(const Matrix<E>& GB) const {
  std::vector<int> all(dim_);
  for (int k = 0; k < dim_; ++k) all[k] = k;
  return basis_inv_ * GB.submatrix(rows_, all);
}

template <class E>
Character Block<E>::character() const {
  Character ch;
  for (int k = 0; k < num_weights(); ++k) ch[seqs_[k]] = weight_dim(k);
  return ch;
}

template <class E>
std::vector<CheckResult> Block<E>::verify() const {
  std::vector<CheckResult> out;
  auto add = [&](const std::string& name, bool ok) {
    for (auto& c : out)
      if (c.name == name) {
        c.passed = c.passed && ok;
        return;
      }
    out.push_back({name, ok, ""});
  };
  const int m = num_weights();
  Matrix<E> sum(dim_, dim_);
  for (int a = 0; a < m; ++a) {
    sum = sum + idem_[a];
    for (int b = 0; b < m; ++b) {
      Matrix<E> p = idem_[a] * idem_[b];
      add("e(i)e(j) = delta e(i)", a == b ? p == idem_[a] : p.is_zero());
    }
    add("W U = 1 on weight spaces", W_[a] * U_[a] == Matrix<E>::identity(weight_dim(a), field().one()));
    add("e(i) = U W", U_[a] * W_[a] == idem_[a]);
    for (const auto& X : x_) add("x_r commutes with e(i)", X * idem_[a] == idem_[a] * X);
    for (int r = 1; r < d(); ++r) {
      int b = find(swap_at(seqs_[a], r));
      Matrix<E> rest = id_ - idem_[a];
      if (b >= 0 && b != a) rest = rest - idem_[b];
      add("s_r maps M_i into M_i + M_{s_r i}", (rest * s_[r - 1] * idem_[a]).is_zero());
    }
  }
  add("sum of e(i) is 1", sum == id_);
  add("e_alpha acts as the identity", H_->left_matrix_of_pol(element(unit_)) * basis_ == basis_);
  return out;
}

#define KLR_INSTANTIATE(E)                                                                             \
  template Matrix<E> eigenprojection(const Matrix<E>&, const E&, const E&);                            \
  template struct WeightData<E>;                                                                       \
  template WeightData<E> weight_idempotents(const HeckeAlgebra<E>&);                                   \
  template Vec<E> apply_weight_projection(const HeckeAlgebra<E>&, const WeightData<E>&, const Seq&, Vec<E>); \
  template std::map<PositiveRoot, std::vector<int>> group_by_weight(const WeightData<E>&);            \
  template BlockDecomposition<E> decompose(const HeckeAlgebra<E>&, const WeightData<E>&, int);         \
  template class Block<E>;

KLR_INSTANTIATE(Rational)
KLR_INSTANTIATE(ModP)
KLR_INSTANTIATE(Cyclo)

}  // namespace klr
