#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "klr/matrix.hpp"

namespace klr {

constexpr int kMaxSeriesVars = 8;

using Exponents = std::array<std::uint8_t, kMaxSeriesVars>;

inline int total_degree(const Exponents& e) {
  int s = 0;
  for (auto x : e) s += x;
  return s;
}

// Graded lexicographic order on exponent vectors.
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a > b;  // y_1 > y_2 > ... within a degree
  }
};

// Permutation of {0..d-1} in one-line notation; w[k] is the image of k.
using Perm = std::vector<int>;

// Multivariate power series in y_1..y_d modulo terms of total degree > T.
template <class E>
class TruncatedSeries {
 public:
  using Terms = std::map<Exponents, E, GradedLex>;

  TruncatedSeries() = default;
  TruncatedSeries(int d, int T) : d_(d), T_(T) {
    if (d < 0 || d > kMaxSeriesVars) throw std::invalid_argument("series: unsupported variable count");
    if (T < 0) throw std::invalid_argument("series: negative truncation order");
  }

  static TruncatedSeries constant(int d, int T, const E& c) {
    TruncatedSeries s(d, T);
    s.add_term(Exponents{}, c);
    return s;
  }
  // y_r, 1-based.
  static TruncatedSeries variable(int d, int T, int r, const E& one) {
    TruncatedSeries s(d, T);
    Exponents e{};
    e[r - 1] = 1;
    s.add_term(e, one);
    return s;
  }

  int vars() const { return d_; }
  int order() const { return T_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  E constant_term() const {
    auto it = terms_.find(Exponents{});
    return it == terms_.end() ? E() : it->second;
  }
  E coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? E() : it->second;
  }

  void add_term(const Exponents& e, const E& c) {
    if (c.is_zero() || total_degree(e) > T_) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TruncatedSeries operator+(const TruncatedSeries& o) const {
    check(o);
    TruncatedSeries r(*this);
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  TruncatedSeries operator-(const TruncatedSeries& o) const {
    check(o);
    TruncatedSeries r(*this);
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
  }
  TruncatedSeries operator-() const {
    TruncatedSeries r(d_, T_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  TruncatedSeries operator*(const TruncatedSeries& o) const {
    check(o);
    TruncatedSeries r(d_, T_);
    for (const auto& [ea, ca] : terms_) {
      int da = total_degree(ea);
      for (const auto& [eb, cb] : o.terms_) {
        if (da + total_degree(eb) > T_) break;  // graded order: later terms are larger
        Exponents e;
        for (int k = 0; k < kMaxSeriesVars; ++k) e[k] = static_cast<std::uint8_t>(ea[k] + eb[k]);
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  TruncatedSeries scaled(const E& c) const {
    TruncatedSeries r(d_, T_);
    if (c.is_zero()) return r;
    for (const auto& [e, x] : terms_) r.terms_.emplace(e, x * c);
    return r;
  }
  bool operator==(const TruncatedSeries& o) const { return d_ == o.d_ && T_ == o.T_ && terms_ == o.terms_; }
  bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

  TruncatedSeries truncate_to(int T) const {
    if (T > T_) throw std::invalid_argument("series: cannot raise truncation order");
    TruncatedSeries r(d_, T);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) <= T) r.terms_.emplace(e, c);
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")";
      for (int k = 0; k < d_; ++k)
        if (e[k]) s += "*y" + std::to_string(k + 1) + (e[k] > 1 ? "^" + std::to_string(e[k]) : "");
    }
    if (s.empty()) s = "0";
    return s + " +O(deg " + std::to_string(T_ + 1) + ")";
  }

 private:
  void check(const TruncatedSeries& o) const {
    if (d_ != o.d_ || T_ != o.T_) throw std::invalid_argument("series: mismatched variable count or order");
  }
  int d_ = 0;
  int T_ = 0;
  Terms terms_;
};

// ^w f: replaces y_k by y_{w(k)}.
template <class E>
TruncatedSeries<E> apply_permutation(const Perm& w, const TruncatedSeries<E>& f) {
  if (static_cast<int>(w.size()) != f.vars()) throw std::invalid_argument("apply_permutation: size mismatch");
  TruncatedSeries<E> r(f.vars(), f.order());
  for (const auto& [e, c] : f.terms()) {
    Exponents n{};
    for (int k = 0; k < f.vars(); ++k) n[w[k]] = e[k];
    r.add_term(n, c);
  }
  return r;
}

inline Perm simple_transposition(int d, int r) {
  Perm w(d);
  for (int k = 0; k < d; ++k) w[k] = k;
  std::swap(w[r - 1], w[r]);
  return w;
}

namespace detail {

template <class E>
std::vector<std::vector<E>> binomials(int n, const E& one) {
  std::vector<std::vector<E>> b(n + 1);
  for (int i = 0; i <= n; ++i) {
    b[i].resize(i + 1);
    b[i][0] = b[i][i] = one;
    for (int j = 1; j < i; ++j) b[i][j] = b[i - 1][j - 1] + b[i - 1][j];
  }
  return b;
}

template <class E>
E any_one(const TruncatedSeries<E>& f) {
  for (const auto& [e, c] : f.terms()) return E::from_int(1, c);
  return E();
}

}  // namespace detail

// Exact division of f by (y_s - y_r), 1-based. The result has order T - 1.
// Throws std::domain_error if f does not vanish under y_s -> y_r.
template <class E>
TruncatedSeries<E> divide_by_linear(const TruncatedSeries<E>& f, int r, int s) {
  if (f.order() < 1) throw std::invalid_argument("divide_by_linear: order too small");
  const int d = f.vars(), T = f.order();
  TruncatedSeries<E> result(d, T - 1);
  if (f.is_zero()) return result;
  const E one = detail::any_one(f);
  const auto binom = detail::binomials(T + 1, one);
  const int R = r - 1, S = s - 1;
  // Substitute y_s = u + v, y_r = v; slot S carries u and slot R carries v.
  std::map<Exponents, E, GradedLex> sub;
  auto put = [](std::map<Exponents, E, GradedLex>& m, const Exponents& e, const E& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = m.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) m.erase(it);
    }
  };
  for (const auto& [e, c] : f.terms()) {
    int b = e[S];
    for (int k = 0; k <= b; ++k) {
      Exponents n = e;
      n[S] = static_cast<std::uint8_t>(k);
      n[R] = static_cast<std::uint8_t>(e[R] + b - k);
      put(sub, n, c * binom[b][k]);
    }
  }
  // Divide by u.
  std::map<Exponents, E, GradedLex> quo;
  for (const auto& [e, c] : sub) {
    if (e[S] == 0) throw std::domain_error("divide_by_linear: not divisible");
    Exponents n = e;
    n[S] = static_cast<std::uint8_t>(n[S] - 1);
    if (total_degree(n) <= T - 1) put(quo, n, c);
  }
  // Back-substitute u = y_s - y_r, v = y_r.
  for (const auto& [e, c] : quo) {
    int k = e[S];
    for (int j = 0; j <= k; ++j) {
      Exponents n = e;
      n[S] = static_cast<std::uint8_t>(j);
      n[R] = static_cast<std::uint8_t>(e[R] + k - j);
      E coef = c * binom[k][j];
      if ((k - j) % 2) coef = -coef;
      result.add_term(n, coef);
    }
  }
  return result;
}

// (^{s_r} f - f) / (y_r - y_{r+1}), 1-based r. The result has order T - 1.
template <class E>
TruncatedSeries<E> divided_difference(int r, const TruncatedSeries<E>& f) {
  if (r < 1 || r >= f.vars()) throw std::invalid_argument("divided_difference: index out of range");
  TruncatedSeries<E> num = apply_permutation(simple_transposition(f.vars(), r), f) - f;
  return divide_by_linear(num, r + 1, r);
}

template <class E>
TruncatedSeries<E> invert_series(const TruncatedSeries<E>& f) {
  E c = f.constant_term();
  if (c.is_zero()) throw std::domain_error("invert_series: zero constant term");
  E ic = c.inv();
  // f^{-1} = c^{-1} sum_k h^k with h = 1 - f/c, which has no constant term.
  TruncatedSeries<E> h = TruncatedSeries<E>::constant(f.vars(), f.order(), E::from_int(1, c)) - f.scaled(ic);
  TruncatedSeries<E> sum = TruncatedSeries<E>::constant(f.vars(), f.order(), E::from_int(1, c));
  TruncatedSeries<E> pw = sum;
  for (int k = 1; k <= f.order(); ++k) {
    pw = pw * h;
    if (pw.is_zero()) break;
    sum = sum + pw;
  }
  return sum.scaled(ic);
}

// A family of commuting nilpotent matrices with cached powers.
template <class E>
class NilpotentFamily {
 public:
  NilpotentFamily(std::vector<Matrix<E>> mats, const E& one, bool verify = true) : one_(one) {
    int n = mats.empty() ? 0 : mats[0].rows();
    n_ = n;
    for (auto& m : mats) {
      std::vector<Matrix<E>> pw{Matrix<E>::identity(n, one)};
      while (!pw.back().is_zero()) {
        if (static_cast<int>(pw.size()) > n + 1) throw std::domain_error("NilpotentFamily: matrix is not nilpotent");
        pw.push_back(pw.back() * m);
      }
      pw.pop_back();
      powers_.push_back(std::move(pw));
    }
    if (verify)
      for (size_t a = 0; a < mats.size(); ++a)
        for (size_t b = a + 1; b < mats.size(); ++b)
          if (mats[a] * mats[b] != mats[b] * mats[a]) throw std::domain_error("NilpotentFamily: matrices do not commute");
  }

  int size() const { return n_; }
  int count() const { return static_cast<int>(powers_.size()); }
  // Smallest k with A^k = 0.
  int index(int r) const { return static_cast<int>(powers_[r].size()); }
  int certified_order() const {
    int t = 0;
    for (const auto& p : powers_) t += static_cast<int>(p.size()) - 1;
    return t;
  }
  const Matrix<E>& power(int r, int k) const { return powers_[r][k]; }

  // f(A_1, ..., A_d). Requires f.order() >= certified_order().
  Matrix<E> evaluate(const TruncatedSeries<E>& f) const {
    if (f.vars() != count()) throw std::invalid_argument("evaluate: variable count mismatch");
    if (f.order() < certified_order()) throw std::domain_error("evaluate: truncation order below certified bound");
    Matrix<E> out(n_, n_);
    for (const auto& [e, c] : f.terms()) {
      bool vanish = false;
      for (int k = 0; k < count(); ++k)
        if (e[k] >= index(k)) vanish = true;
      if (vanish) continue;
      Matrix<E> m;
      bool first = true;
      for (int k = 0; k < count(); ++k) {
        if (!e[k]) continue;
        m = first ? powers_[k][e[k]] : m * powers_[k][e[k]];
        first = false;
      }
      if (first) {
        for (int i = 0; i < n_; ++i) out(i, i) += c;
      } else {
        out += m.scaled_by(c);
      }
    }
    return out;
  }

 private:
  E one_;
  int n_ = 0;
  std::vector<std::vector<Matrix<E>>> powers_;
};

template <class E>
Matrix<E> evaluate_on_nilpotents(const TruncatedSeries<E>& f, const std::vector<Matrix<E>>& mats, const E& one) {
  NilpotentFamily<E> fam(mats, one);
  return fam.evaluate(f);
}

template <class E, class Field>
TruncatedSeries<E> random_series(const Field& F, int d, int T, int max_degree, int terms, std::mt19937_64& rng) {
  TruncatedSeries<E> s(d, T);
  std::uniform_int_distribution<int> var(0, d - 1), deg(0, max_degree);
  for (int t = 0; t < terms; ++t) {
    Exponents e{};
    int k = deg(rng);
    for (int j = 0; j < k; ++j) e[var(rng)]++;
    s.add_term(e, F.random(rng));
  }
  return s;
}

}  // namespace klr
