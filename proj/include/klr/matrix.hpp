#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace klr {

template <class E>
using Vec = std::vector<E>;

template <class E>
bool is_zero_vec(const Vec<E>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

template <class E>
Vec<E> operator+(const Vec<E>& a, const Vec<E>& b) {
  Vec<E> r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

template <class E>
Vec<E> operator-(const Vec<E>& a, const Vec<E>& b) {
  Vec<E> r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

template <class E>
Vec<E> scaled(const Vec<E>& a, const E& c) {
  Vec<E> r(a.size());
  if (c.is_zero()) return r;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) r[i] = a[i] * c;
  return r;
}

// Dense row-major matrix over an exact field.
template <class E>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static Matrix identity(int n, const E& one) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }
  static Matrix from_columns(const std::vector<Vec<E>>& cols, int rows) {
    Matrix m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.c_; ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  E& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const E& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  Vec<E> column(int j) const {
    Vec<E> v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_column(int j, const Vec<E>& v) {
    for (int i = 0; i < r_; ++i) (*this)(i, j) = v[i];
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator+(const Matrix& o) const {
    check_same(o);
    Matrix m(*this);
    for (size_t k = 0; k < a_.size(); ++k)
      if (!o.a_[k].is_zero()) m.a_[k] += o.a_[k];
    return m;
  }
  Matrix operator-(const Matrix& o) const {
    check_same(o);
    Matrix m(*this);
    for (size_t k = 0; k < a_.size(); ++k)
      if (!o.a_[k].is_zero()) m.a_[k] -= o.a_[k];
    return m;
  }
  Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
  Matrix& operator-=(const Matrix& o) { return *this = *this - o; }
  Matrix operator-() const {
    Matrix m(*this);
    for (auto& x : m.a_)
      if (!x.is_zero()) x = -x;
    return m;
  }
  Matrix scaled_by(const E& c) const {
    Matrix m(r_, c_);
    if (c.is_zero()) return m;
    for (size_t k = 0; k < a_.size(); ++k)
      if (!a_[k].is_zero()) m.a_[k] = a_[k] * c;
    return m;
  }

  Matrix operator*(const Matrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix product size mismatch");
    Matrix m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < c_; ++k) {
        const E& a = (*this)(i, k);
        if (a.is_zero()) continue;
        E* out = &m.a_[static_cast<size_t>(i) * o.c_];
        const E* row = &o.a_[static_cast<size_t>(k) * o.c_];
        for (int j = 0; j < o.c_; ++j)
          if (!row[j].is_zero()) out[j].add_mul(a, row[j]);
      }
    return m;
  }

  Vec<E> operator*(const Vec<E>& v) const {
    Vec<E> out(r_);
    for (int i = 0; i < r_; ++i) {
      const E* row = &a_[static_cast<size_t>(i) * c_];
      for (int j = 0; j < c_; ++j)
        if (!row[j].is_zero() && !v[j].is_zero()) out[i].add_mul(row[j], v[j]);
    }
    return out;
  }

  Matrix transpose() const {
    Matrix m(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  // Rows `rs` and columns `cs` of this matrix.
  Matrix submatrix(const std::vector<int>& rs, const std::vector<int>& cs) const {
    Matrix m(static_cast<int>(rs.size()), static_cast<int>(cs.size()));
    for (size_t i = 0; i < rs.size(); ++i)
      for (size_t j = 0; j < cs.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = (*this)(rs[i], cs[j]);
    return m;
  }

  E trace() const {
    E t;
    for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (int i = 0; i < r_; ++i) {
      os << "[";
      for (int j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j).to_string();
      os << "]\n";
    }
    return os.str();
  }

 private:
  void check_same(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix size mismatch");
  }
  int r_ = 0, c_ = 0;
  std::vector<E> a_;
};

// Row echelon data: reduced row echelon form and pivot columns.
template <class E>
struct Echelon {
  Matrix<E> rref;
  std::vector<int> pivots;
  std::vector<int> row_order;  // original row index of each pivot row (pivot rows of the input)
};

template <class E>
Echelon<E> row_reduce(Matrix<E> m) {
  Echelon<E> out;
  int rows = m.rows(), cols = m.cols();
  std::vector<int> orig(rows);
  for (int i = 0; i < rows; ++i) orig[i] = i;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
      std::swap(orig[piv], orig[r]);
    }
    E iv = m(r, c).inv();
    for (int j = c; j < cols; ++j)
      if (!m(r, j).is_zero()) m(r, j) = m(r, j) * iv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      E f = m(i, c);
      for (int j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    out.row_order.push_back(orig[r]);
    ++r;
  }
  out.rref = std::move(m);
  return out;
}

template <class E>
int rank(const Matrix<E>& m) {
  return static_cast<int>(row_reduce(m).pivots.size());
}

template <class E>
Matrix<E> inverse(const Matrix<E>& m, const E& one) {
  int n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  Matrix<E> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = one;
  }
  auto ech = row_reduce(aug);
  if (static_cast<int>(ech.pivots.size()) < n || ech.pivots[n - 1] != n - 1)
    throw std::domain_error("matrix is singular");
  Matrix<E> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = ech.rref(i, n + j);
  return inv;
}

// Incrementally maintained echelon basis of a subspace of F^n. Each stored
// vector is normalized to have a 1 at its pivot and zeros at earlier pivots.
template <class E>
class EchelonBasis {
 public:
  explicit EchelonBasis(int n = 0) : n_(n) {}

  int dim() const { return static_cast<int>(vecs_.size()); }
  int ambient() const { return n_; }

  Vec<E> reduce(Vec<E> v) const {
    for (size_t k = 0; k < vecs_.size(); ++k) {
      const E c = v[piv_[k]];
      if (c.is_zero()) continue;
      const auto& b = vecs_[k];
      for (int j : support_[k]) v[j] -= c * b[j];
    }
    return v;
  }

  bool contains(const Vec<E>& v) const { return is_zero_vec(reduce(v)); }

  // Adds v if it enlarges the span; returns true in that case.
  bool add(const Vec<E>& v) {
    Vec<E> r = reduce(v);
    int p = -1;
    for (int j = 0; j < n_; ++j)
      if (!r[j].is_zero()) {
        p = j;
        break;
      }
    if (p < 0) return false;
    E iv = r[p].inv();
    for (auto& x : r)
      if (!x.is_zero()) x = x * iv;
    // Keep earlier vectors reduced with respect to the new pivot.
    std::vector<int> sup;
    for (int j = 0; j < n_; ++j)
      if (!r[j].is_zero()) sup.push_back(j);
    for (size_t k = 0; k < vecs_.size(); ++k) {
      E c = vecs_[k][p];
      if (c.is_zero()) continue;
      for (int j : sup) vecs_[k][j] -= c * r[j];
      refresh_support(k);
    }
    vecs_.push_back(std::move(r));
    piv_.push_back(p);
    support_.push_back(std::move(sup));
    return true;
  }

 private:
  void refresh_support(size_t k) {
    support_[k].clear();
    for (int j = 0; j < n_; ++j)
      if (!vecs_[k][j].is_zero()) support_[k].push_back(j);
  }
  int n_;
  std::vector<Vec<E>> vecs_;
  std::vector<int> piv_;
  std::vector<std::vector<int>> support_;
};

// Column-major sparse square-or-rectangular matrix; used for the regular
// representation where each column has few nonzeros.
template <class E>
class SparseMatrix {
 public:
  using Entry = std::pair<std::uint32_t, E>;

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : r_(rows), cols_(cols) {}

  static SparseMatrix identity(int n, const E& one) {
    SparseMatrix m(n, n);
    for (int j = 0; j < n; ++j) m.cols_[j].push_back({static_cast<std::uint32_t>(j), one});
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return static_cast<int>(cols_.size()); }
  const std::vector<Entry>& column(int j) const { return cols_[j]; }

  // Replaces column j by the sparse form of v.
  void set_column(int j, const Vec<E>& v) {
    auto& c = cols_[j];
    c.clear();
    for (int i = 0; i < r_; ++i)
      if (!v[i].is_zero()) c.push_back({static_cast<std::uint32_t>(i), v[i]});
  }

  size_t nnz() const {
    size_t s = 0;
    for (const auto& c : cols_) s += c.size();
    return s;
  }

  Vec<E> operator*(const Vec<E>& v) const {
    Vec<E> out(r_);
    for (int j = 0; j < cols(); ++j) {
      if (v[j].is_zero()) continue;
      for (const auto& [i, a] : cols_[j]) out[i].add_mul(a, v[j]);
    }
    return out;
  }

  SparseMatrix operator*(const SparseMatrix& o) const {
    SparseMatrix m(r_, o.cols());
    Vec<E> acc(r_);
    std::vector<char> touched(r_, 0);
    std::vector<std::uint32_t> list;
    for (int j = 0; j < o.cols(); ++j) {
      list.clear();
      for (const auto& [k, b] : o.cols_[j])
        for (const auto& [i, a] : cols_[k]) {
          if (!touched[i]) {
            touched[i] = 1;
            list.push_back(i);
          }
          acc[i].add_mul(a, b);
        }
      std::sort(list.begin(), list.end());
      for (auto i : list) {
        if (!acc[i].is_zero()) m.cols_[j].push_back({i, acc[i]});
        acc[i] = E();
        touched[i] = 0;
      }
    }
    return m;
  }

  SparseMatrix combine(const SparseMatrix& o, const E& a, const E& b) const {
    // a*this + b*o
    SparseMatrix m(r_, cols());
    for (int j = 0; j < cols(); ++j) {
      auto& out = m.cols_[j];
      const auto& x = cols_[j];
      const auto& y = o.cols_[j];
      size_t p = 0, q = 0;
      while (p < x.size() || q < y.size()) {
        std::uint32_t i;
        E v;
        if (q == y.size() || (p < x.size() && x[p].first < y[q].first)) {
          i = x[p].first;
          v = a * x[p].second;
          ++p;
        } else if (p == x.size() || y[q].first < x[p].first) {
          i = y[q].first;
          v = b * y[q].second;
          ++q;
        } else {
          i = x[p].first;
          v = a * x[p].second + b * y[q].second;
          ++p;
          ++q;
        }
        if (!v.is_zero()) out.push_back({i, v});
      }
    }
    return m;
  }

  SparseMatrix operator+(const SparseMatrix& o) const { return combine(o, one_of(o), one_of(o)); }
  SparseMatrix operator-(const SparseMatrix& o) const { return combine(o, one_of(o), -one_of(o)); }
  SparseMatrix scaled_by(const E& c) const {
    SparseMatrix m(r_, cols());
    if (c.is_zero()) return m;
    for (int j = 0; j < cols(); ++j)
      for (const auto& [i, a] : cols_[j]) m.cols_[j].push_back({i, a * c});
    return m;
  }

  bool operator==(const SparseMatrix& o) const {
    if (r_ != o.r_ || cols() != o.cols()) return false;
    for (int j = 0; j < cols(); ++j)
      if (cols_[j] != o.cols_[j]) return false;
    return true;
  }
  bool operator!=(const SparseMatrix& o) const { return !(*this == o); }
  bool is_zero() const { return nnz() == 0; }

  Matrix<E> to_dense() const {
    Matrix<E> m(r_, cols());
    for (int j = 0; j < cols(); ++j)
      for (const auto& [i, a] : cols_[j]) m(static_cast<int>(i), j) = a;
    return m;
  }

  static SparseMatrix from_dense(const Matrix<E>& d) {
    SparseMatrix m(d.rows(), d.cols());
    for (int j = 0; j < d.cols(); ++j)
      for (int i = 0; i < d.rows(); ++i)
        if (!d(i, j).is_zero()) m.cols_[j].push_back({static_cast<std::uint32_t>(i), d(i, j)});
    return m;
  }

  // Sparse times dense.
  Matrix<E> operator*(const Matrix<E>& d) const {
    Matrix<E> out(r_, d.cols());
    for (int k = 0; k < cols(); ++k)
      for (const auto& [i, a] : cols_[k])
        for (int j = 0; j < d.cols(); ++j)
          if (!d(k, j).is_zero()) out(static_cast<int>(i), j).add_mul(a, d(k, j));
    return out;
  }

 private:
  // Any typed 1 compatible with the entries; entries carry their field context.
  E one_of(const SparseMatrix& o) const {
    for (const auto* m : {this, &o})
      for (const auto& c : m->cols_)
        if (!c.empty()) return E::from_int(1, c.front().second);
    return E();
  }
  int r_ = 0;
  std::vector<std::vector<Entry>> cols_;

 public:
  SparseMatrix(int rows, std::vector<std::vector<Entry>> cols) : r_(rows), cols_(std::move(cols)) {}
};

}  // namespace klr
