#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klr/matrix.hpp"

namespace klr {

// Univariate polynomial, coefficients low degree first, no trailing zeros.
template <class E>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<E> c) : c_(std::move(c)) { trim(); }

  static Poly constant(const E& c) { return Poly(std::vector<E>{c}); }
  // t - a
  static Poly linear(const E& one, const E& a) { return Poly(std::vector<E>{-a, one}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<E>& coeffs() const { return c_; }
  E coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : E(); }
  const E& lead() const { return c_.back(); }

  Poly operator+(const Poly& o) const {
    std::vector<E> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
  }
  Poly operator-(const Poly& o) const {
    std::vector<E> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return Poly(std::move(r));
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<E> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j].add_mul(c_[i], o.c_[j]);
    return Poly(std::move(r));
  }
  Poly scaled(const E& s) const {
    std::vector<E> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
    return Poly(std::move(r));
  }
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  // Quotient and remainder.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<E> r = c_;
    int dd = d.degree();
    if (degree() < dd) return {Poly(), *this};
    std::vector<E> q(degree() - dd + 1);
    E il = d.lead().inv();
    for (int k = degree(); k >= dd; --k) {
      if (r[k].is_zero()) continue;
      E c = r[k] * il;
      q[k - dd] = c;
      for (int j = 0; j <= dd; ++j) r[k - dd + j] -= c * d.c_[j];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
  }
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  Poly operator/(const Poly& d) const { return divmod(d).first; }

  E eval(const E& x) const {
    E r;
    for (int k = degree(); k >= 0; --k) r = r * x + c_[k];
    return r;
  }

  std::string to_string(const std::string& var = "t") const {
    if (c_.empty()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      if (c_[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c_[k].to_string() + ")";
      if (k > 0) s += "*" + var + (k > 1 ? "^" + std::to_string(k) : "");
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<E> c_;
};

// Returns (g, s) with s*a = g mod b, g = gcd(a, b) made monic.
template <class E>
Poly<E> inverse_mod(const Poly<E>& a, const Poly<E>& m) {
  Poly<E> r0 = m, r1 = a % m, s0, s1;
  E one = E::from_int(1, m.lead());
  s1 = Poly<E>::constant(one);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    Poly<E> s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw std::domain_error("polynomial not invertible modulo");
  return (s0 % m).scaled(r0.lead().inv());
}

// Minimal polynomial of the vector v under the linear map `apply`, i.e. the
// monic polynomial of least degree with p(A)v = 0.
template <class E>
Poly<E> krylov_minimal_polynomial(const Vec<E>& v, const std::function<Vec<E>(const Vec<E>&)>& apply,
                                  const E& one, int max_degree = -1) {
  const int n = static_cast<int>(v.size());
  if (max_degree < 0) max_degree = n;
  // Echelon rows with their expressions in terms of the Krylov vectors.
  std::vector<Vec<E>> rows;
  std::vector<std::vector<E>> combos;
  std::vector<int> pivots;
  Vec<E> cur = v;
  for (int k = 0; k <= max_degree; ++k) {
    Vec<E> r = cur;
    std::vector<E> combo(k + 1);
    combo[k] = one;
    for (size_t b = 0; b < rows.size(); ++b) {
      E c = r[pivots[b]];
      if (c.is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!rows[b][j].is_zero()) r[j] -= c * rows[b][j];
      for (size_t j = 0; j < combos[b].size(); ++j) combo[j] -= c * combos[b][j];
    }
    int p = -1;
    for (int j = 0; j < n; ++j)
      if (!r[j].is_zero()) {
        p = j;
        break;
      }
    if (p < 0) return Poly<E>(std::move(combo));
    E iv = r[p].inv();
    for (auto& x : r)
      if (!x.is_zero()) x = x * iv;
    for (auto& x : combo) x = x * iv;
    rows.push_back(std::move(r));
    combos.push_back(std::move(combo));
    pivots.push_back(p);
    cur = apply(cur);
  }
  throw std::runtime_error("minimal polynomial degree bound exceeded");
}

// Factorization of a polynomial over a prescribed finite candidate spectrum.
template <class E>
struct SpectralFactor {
  long label;       // residue index of the eigenvalue
  E value;          // the eigenvalue
  int multiplicity;
};

template <class E>
std::vector<SpectralFactor<E>> split_over(const Poly<E>& p, const std::vector<std::pair<long, E>>& candidates,
                                          const E& one) {
  std::vector<SpectralFactor<E>> out;
  Poly<E> rest = p;
  for (const auto& [label, val] : candidates) {
    Poly<E> lin = Poly<E>::linear(one, val);
    int m = 0;
    while (rest.degree() >= 1) {
      auto [q, r] = rest.divmod(lin);
      if (!r.is_zero()) break;
      rest = q;
      ++m;
    }
    if (m > 0) out.push_back({label, val, m});
  }
  if (rest.degree() > 0) throw std::domain_error("minimal polynomial has roots outside the expected spectrum");
  return out;
}

// Idempotent polynomials g_k with g_k = 1 mod (t - a_k)^{m_k} and 0 mod the
// other primary factors of p = prod (t - a_k)^{m_k}.
template <class E>
std::vector<Poly<E>> primary_idempotents(const std::vector<SpectralFactor<E>>& factors, const E& one) {
  std::vector<Poly<E>> prim;
  Poly<E> full = Poly<E>::constant(one);
  for (const auto& f : factors) {
    Poly<E> pk = Poly<E>::constant(one);
    for (int j = 0; j < f.multiplicity; ++j) pk = pk * Poly<E>::linear(one, f.value);
    prim.push_back(pk);
    full = full * pk;
  }
  std::vector<Poly<E>> g;
  for (size_t k = 0; k < factors.size(); ++k) {
    Poly<E> h = full / prim[k];
    Poly<E> s = inverse_mod(h, prim[k]);
    g.push_back((h * s) % full);
  }
  return g;
}

}  // namespace klr
