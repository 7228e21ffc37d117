#include "klr/hecke.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace klr {

namespace {

long perm_key(const Perm& w) {
  long k = 0;
  for (int x : w) k = k * static_cast<long>(w.size()) + x;
  return k;
}

template <class E>
void accumulate(std::map<int, E>& col, int row, const E& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = col.try_emplace(row, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) col.erase(it);
  }
}

template <class E>
Vec<E> to_vec(const std::map<int, E>& col, int n) {
  Vec<E> v(n);
  for (const auto& [i, c] : col) v[i] = c;
  return v;
}

}  // namespace

template <class E>
HeckeAlgebra<E>::HeckeAlgebra(const Field<E>& F, DominantWeight L, int d) : F_(F), L_(std::move(L)), d_(d) {
  if (d < 0) throw std::invalid_argument("d must be non-negative");
  if (L_.e != F_.quantum_characteristic())
    throw std::invalid_argument("dominant weight built for a different quantum characteristic");
  l_ = L_.level();
  perms_ = symmetric_group(d);
  for (size_t k = 0; k < perms_.size(); ++k) {
    words_.push_back(reduced_word(perms_[k]));
    lengths_.push_back(static_cast<int>(words_.back().size()));
    perm_lookup_[perm_key(perms_[k])] = static_cast<int>(k);
  }
  // Exponent vectors in [0, l)^d, graded then lexicographically descending.
  long total = 1;
  for (int r = 0; r < d; ++r) total *= l_;
  for (long code = 0; code < total; ++code) {
    std::vector<int> m(d);
    long c = code;
    for (int r = d - 1; r >= 0; --r) {
      m[r] = static_cast<int>(c % l_);
      c /= l_;
    }
    exps_.push_back(m);
  }
  std::stable_sort(exps_.begin(), exps_.end(), [](const auto& a, const auto& b) {
    int sa = 0, sb = 0;
    for (int x : a) sa += x;
    for (int x : b) sb += x;
    if (sa != sb) return sa < sb;
    return a > b;
  });
  exp_lookup_.assign(total, -1);
  for (size_t k = 0; k < exps_.size(); ++k) {
    long code = 0;
    for (int x : exps_[k]) code = code * l_ + x;
    exp_lookup_[code] = static_cast<int>(k);
  }
  n_ = static_cast<int>(total * static_cast<long>(perms_.size()));

  cyc_ = Poly<E>::constant(F_.one());
  for (long c : L_.charges) cyc_ = cyc_ * Poly<E>::linear(F_.one(), F_.residue_value(c));

  if (d_ == 0) return;
  build_x1();
  if (degenerate()) build_degenerate();
  else build_nondegenerate();
}

template <class E>
int HeckeAlgebra<E>::perm_index(const Perm& w) const {
  return perm_lookup_.at(perm_key(w));
}

template <class E>
int HeckeAlgebra<E>::exponent_index(const std::vector<int>& m) const {
  long code = 0;
  for (int x : m) code = code * l_ + x;
  return exp_lookup_.at(code);
}

template <class E>
std::string HeckeAlgebra<E>::basis_label(int k) const {
  int mi = k / num_perms(), wi = k % num_perms();
  std::string s;
  const char* xs = degenerate() ? "x" : "X";
  const char* ss = degenerate() ? "s" : "T";
  for (int r = 0; r < d_; ++r) {
    int a = exps_[mi][r];
    if (!a) continue;
    if (!s.empty()) s += "*";
    s += xs + std::to_string(r + 1);
    if (a > 1) s += "^" + std::to_string(a);
  }
  for (int letter : words_[wi]) {
    if (!s.empty()) s += "*";
    s += ss + std::to_string(letter);
  }
  return s.empty() ? "1" : s;
}

template <class E>
void HeckeAlgebra<E>::build_x1() {
  SparseMatrix<E> X(n_, n_);
  for (int mi = 0; mi < num_exponents(); ++mi) {
    std::vector<int> m = exps_[mi];
    for (int wi = 0; wi < num_perms(); ++wi) {
      std::map<int, E> col;
      if (m[0] + 1 < l_) {
        std::vector<int> m2 = m;
        m2[0]++;
        accumulate(col, index(exponent_index(m2), wi), F_.one());
      } else {
        // x_1^l = -sum_{k<l} f_k x_1^k
        for (int k = 0; k < l_; ++k) {
          std::vector<int> m2 = m;
          m2[0] = k;
          accumulate(col, index(exponent_index(m2), wi), -cyc_.coeff(k));
        }
      }
      X.set_column(index(mi, wi), to_vec(col, n_));
    }
  }
  x_.push_back(std::move(X));
}

// Divided difference of x^m in the pair (r, r+1), as exponent-index terms.
// Degenerate: (^{s_r}f - f)/(x_r - x_{r+1}).
// Quantum:    x_{r+1}(f - ^{s_r}f)/(x_{r+1} - x_r).
template <class E>
std::vector<std::pair<int, E>> HeckeAlgebra<E>::pair_divided(int r, const std::vector<int>& m, bool quantum) const {
  std::vector<std::pair<int, E>> out;
  int a = m[r - 1], b = m[r];
  if (a == b) return out;
  int lo = std::min(a, b), hi = std::max(a, b);
  E sign = a < b ? F_.one() : -F_.one();
  for (int c = 0; c < hi - lo; ++c) {
    std::vector<int> m2 = m;
    m2[r - 1] = lo + c;
    m2[r] = quantum ? hi - c : hi - 1 - c;
    out.push_back({exponent_index(m2), sign});
  }
  return out;
}

template <class E>
void HeckeAlgebra<E>::build_degenerate() {
  for (int r = 1; r < d_; ++r) {
    Perm sr = simple_transposition(d_, r);
    SparseMatrix<E> S(n_, n_);
    for (int mi = 0; mi < num_exponents(); ++mi) {
      std::vector<int> sm = exps_[mi];
      std::swap(sm[r - 1], sm[r]);
      int smi = exponent_index(sm);
      auto dd = pair_divided(r, exps_[mi], false);
      for (int wi = 0; wi < num_perms(); ++wi) {
        std::map<int, E> col;
        // s_r x^m w = x^{s_r m} s_r w + d_r(x^m) w
        accumulate(col, index(smi, perm_index(compose(sr, perms_[wi]))), F_.one());
        for (const auto& [ei, c] : dd) accumulate(col, index(ei, wi), c);
        S.set_column(index(mi, wi), to_vec(col, n_));
      }
    }
    s_.push_back(std::move(S));
  }
  for (int r = 1; r < d_; ++r) {
    // x_{r+1} = s_r x_r s_r + s_r
    const auto& S = s_[r - 1];
    x_.push_back(S * x_[r - 1] * S + S);
  }
}

template <class E>
void HeckeAlgebra<E>::build_nondegenerate() {
  const E q = F_.q(), one = F_.one(), qm1 = q - one;
  for (int r = 1; r < d_; ++r) {
    Perm sr = simple_transposition(d_, r);
    SparseMatrix<E> T(n_, n_);
    for (int mi = 0; mi < num_exponents(); ++mi) {
      std::vector<int> sm = exps_[mi];
      std::swap(sm[r - 1], sm[r]);
      int smi = exponent_index(sm);
      auto dd = pair_divided(r, exps_[mi], true);
      for (int wi = 0; wi < num_perms(); ++wi) {
        std::map<int, E> col;
        // T_r X^m T_w = X^{s_r m} T_r T_w + (q-1) D_r(X^m) T_w
        int swi = perm_index(compose(sr, perms_[wi]));
        if (lengths_[swi] > lengths_[wi]) {
          accumulate(col, index(smi, swi), one);
        } else {
          accumulate(col, index(smi, wi), qm1);
          accumulate(col, index(smi, swi), q);
        }
        for (const auto& [ei, c] : dd) accumulate(col, index(ei, wi), qm1 * c);
        T.set_column(index(mi, wi), to_vec(col, n_));
      }
    }
    s_.push_back(std::move(T));
  }
  const E qinv = q.inv();
  for (int r = 1; r < d_; ++r) {
    // X_{r+1} = q^{-1} T_r X_r T_r
    const auto& T = s_[r - 1];
    x_.push_back((T * x_[r - 1] * T).scaled_by(qinv));
  }
  // X_1^{-1} from the cyclotomic relation, then X_{r+1}^{-1} = q T_r^{-1} X_r^{-1} T_r^{-1}.
  SparseMatrix<E> I = SparseMatrix<E>::identity(n_, one);
  SparseMatrix<E> acc = I;  // leading coefficient 1
  for (int k = l_ - 1; k >= 1; --k) acc = (acc * x_[0]) + I.scaled_by(cyc_.coeff(k));
  xinv_.push_back(acc.scaled_by(-cyc_.coeff(0).inv()));
  for (int r = 1; r < d_; ++r) {
    const auto& T = s_[r - 1];
    SparseMatrix<E> Tinv = T.scaled_by(qinv) + I.scaled_by(qinv - one);
    xinv_.push_back((Tinv * xinv_[r - 1] * Tinv).scaled_by(q));
  }
}

template <class E>
const SparseMatrix<E>& HeckeAlgebra<E>::x_inv(int r) const {
  if (degenerate()) throw std::logic_error("x_inv is only defined in the non-degenerate case");
  return xinv_[r - 1];
}

template <class E>
std::vector<SparseMatrix<E>> HeckeAlgebra<E>::regular_matrices() const {
  std::vector<SparseMatrix<E>> out(x_.begin(), x_.end());
  out.insert(out.end(), s_.begin(), s_.end());
  return out;
}

template <class E>
Vec<E> HeckeAlgebra<E>::basis_vec(int k) const {
  Vec<E> v(n_);
  v[k] = F_.one();
  return v;
}

template <class E>
Vec<E> HeckeAlgebra<E>::unit() const {
  return basis_vec(index(exponent_index(std::vector<int>(d_, 0)), perm_index(identity_perm(d_))));
}

template <class E>
Vec<E> HeckeAlgebra<E>::right_multiply_s(const Vec<E>& v, int j) const {
  Vec<E> out(n_);
  Perm sj = simple_transposition(d_, j);
  const E q = F_.q(), qm1 = q - F_.one();
  for (int k = 0; k < n_; ++k) {
    if (v[k].is_zero()) continue;
    int mi = k / num_perms(), wi = k % num_perms();
    int wsi = perm_index(compose(perms_[wi], sj));
    if (degenerate() || lengths_[wsi] > lengths_[wi]) {
      out[index(mi, wsi)] += v[k];
    } else {
      out[index(mi, wi)] += v[k] * qm1;
      out[index(mi, wsi)] += v[k] * q;
    }
  }
  return out;
}

template <class E>
Vec<E> HeckeAlgebra<E>::left_multiply(const Vec<E>& a, const Vec<E>& v) const {
  Vec<E> out(n_);
  for (int wi = 0; wi < num_perms(); ++wi) {
    bool needed = false;
    for (int mi = 0; mi < num_exponents() && !needed; ++mi) needed = !a[index(mi, wi)].is_zero();
    if (!needed) continue;
    Vec<E> t = v;
    const auto& w = words_[wi];
    for (auto it = w.rbegin(); it != w.rend(); ++it) t = s_[*it - 1] * t;
    for (int mi = 0; mi < num_exponents(); ++mi) {
      const E& c = a[index(mi, wi)];
      if (c.is_zero()) continue;
      Vec<E> u = t;
      for (int r = 0; r < d_; ++r)
        for (int p = 0; p < exps_[mi][r]; ++p) u = x_[r] * u;
      for (int k = 0; k < n_; ++k)
        if (!u[k].is_zero()) out[k].add_mul(c, u[k]);
    }
  }
  return out;
}

template <class E>
Matrix<E> HeckeAlgebra<E>::left_matrix(const Vec<E>& a) const {
  Matrix<E> m(n_, n_);
  for (int j = 0; j < n_; ++j) m.set_column(j, left_multiply(a, basis_vec(j)));
  return m;
}

template <class E>
Matrix<E> HeckeAlgebra<E>::left_matrix_of_pol(const Vec<E>& a) const {
  // Column x^m T_w equals x^m (a T_w) since a commutes with x^m.
  Matrix<E> m(n_, n_);
  std::vector<Vec<E>> aw(num_perms());
  for (int wi = 0; wi < num_perms(); ++wi) {
    const auto& w = words_[wi];
    if (w.empty()) {
      aw[wi] = a;
      continue;
    }
    std::vector<int> prefix(w.begin(), w.end() - 1);
    int pi = perm_index(perm_from_word(d_, prefix));
    aw[wi] = right_multiply_s(aw[pi], w.back());
  }
  std::vector<Vec<E>> cur(num_exponents());
  for (int wi = 0; wi < num_perms(); ++wi) {
    for (int mi = 0; mi < num_exponents(); ++mi) {
      const auto& e = exps_[mi];
      int r = -1;
      for (int k = 0; k < d_; ++k)
        if (e[k] > 0) {
          r = k;
          break;
        }
      if (r < 0) {
        cur[mi] = aw[wi];
      } else {
        std::vector<int> prev = e;
        prev[r]--;
        cur[mi] = x_[r] * cur[exponent_index(prev)];
      }
      m.set_column(index(mi, wi), cur[mi]);
    }
  }
  return m;
}

template <class E>
std::vector<CheckResult> HeckeAlgebra<E>::verify() const {
  std::vector<CheckResult> out;
  auto add = [&](const std::string& name, bool ok) {
    for (auto& c : out)
      if (c.name == name) {
        c.passed = c.passed && ok;
        return;
      }
    out.push_back({name, ok, ""});
  };
  const E one = F_.one(), q = F_.q();
  const SparseMatrix<E> I = SparseMatrix<E>::identity(n_, one);

  for (int r = 0; r < d_; ++r)
    for (int t = r + 1; t < d_; ++t) add("polynomial generators commute", x_[r] * x_[t] == x_[t] * x_[r]);

  // Cyclotomic relation on x_1.
  {
    if (!x_.empty()) {
      SparseMatrix<E> acc(n_, n_);
      for (int k = cyc_.degree(); k >= 0; --k) acc = (acc * x_[0]) + I.scaled_by(cyc_.coeff(k));
      add("cyclotomic relation", acc.is_zero());
    }
  }

  for (int r = 1; r < d_; ++r) {
    const auto& S = s_[r - 1];
    if (degenerate()) {
      add("s_r^2 = 1", S * S == I);
      add("s_r x_{r+1} = x_r s_r + 1", S * x_[r] == x_[r - 1] * S + I);
    } else {
      add("T_r^2 = (q-1)T_r + q", S * S == S.scaled_by(q - one) + I.scaled_by(q));
      add("T_r X_r T_r = q X_{r+1}", S * x_[r - 1] * S == x_[r].scaled_by(q));
      add("X_r T_r = T_r X_{r+1} + (1-q) X_{r+1}", x_[r - 1] * S == S * x_[r] + x_[r].scaled_by(one - q));
      add("X_{r+1} T_r = T_r X_r + (q-1) X_{r+1}", x_[r] * S == S * x_[r - 1] + x_[r].scaled_by(q - one));
      add("X_r^{-1} T_r = T_r X_{r+1}^{-1} + (q-1) X_r^{-1}",
          xinv_[r - 1] * S == S * xinv_[r] + xinv_[r - 1].scaled_by(q - one));
      add("X_{r+1}^{-1} T_r = T_r X_r^{-1} + (1-q) X_r^{-1}",
          xinv_[r] * S == S * xinv_[r - 1] + xinv_[r - 1].scaled_by(one - q));
      SparseMatrix<E> Tinv = S.scaled_by(q.inv()) + I.scaled_by(q.inv() - one);
      add("T_r^{-1} = q^{-1} T_r + q^{-1} - 1", S * Tinv == I);
    }
    for (int t = 1; t <= d_; ++t)
      if (t != r && t != r + 1) add("generator commutes with far polynomial generator", S * x_[t - 1] == x_[t - 1] * S);
    if (r + 1 < d_) {
      const auto& S2 = s_[r];
      add("braid relation", S * S2 * S == S2 * S * S2);
    }
    for (int t = r + 2; t < d_; ++t) add("far generators commute", S * s_[t - 1] == s_[t - 1] * S);
  }
  if (!degenerate())
    for (int r = 0; r < d_; ++r) add("X_r X_r^{-1} = 1", x_[r] * xinv_[r] == I);

  // Basis words applied to 1 reproduce the basis vectors.
  {
    bool ok = true;
    Vec<E> one_v = unit();
    for (int k = 0; k < n_ && ok; ++k) {
      int mi = k / num_perms(), wi = k % num_perms();
      Vec<E> t = one_v;
      const auto& w = words_[wi];
      for (auto it = w.rbegin(); it != w.rend(); ++it) t = s_[*it - 1] * t;
      for (int r = 0; r < d_; ++r)
        for (int p = 0; p < exps_[mi][r]; ++p) t = x_[r] * t;
      ok = t == basis_vec(k);
    }
    add("basis words act on 1 as the basis", ok);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Expression parsing for normal forms.

namespace {

struct Lexer {
  std::string s;
  size_t p = 0;
  void skip() {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  }
  bool eat(char c) {
    skip();
    if (p < s.size() && s[p] == c) {
      ++p;
      return true;
    }
    return false;
  }
  bool at_end() {
    skip();
    return p >= s.size();
  }
  char peek() {
    skip();
    return p < s.size() ? s[p] : '\0';
  }
  long number() {
    skip();
    size_t q = p;
    if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (q == p) throw std::invalid_argument("expected number in expression");
    return std::stol(s.substr(q, p - q));
  }
};

}  // namespace

template <class E>
AlgebraElement<E> HeckeAlgebra<E>::normal_form(const std::string& expr) const {
  Lexer lx{expr};
  // A factor is a scalar or a generator (with optional power); a term is a
  // product of factors applied right to left to 1.
  auto parse_term = [&]() -> Vec<E> {
    struct Factor {
      int kind;  // 0 scalar, 1 x, 2 s, 3 xinv
      int index;
      E scalar;
      int power;
    };
    std::vector<Factor> fs;
    do {
      char c = lx.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        long a = lx.number();
        E v = F_.from_int(a);
        if (lx.eat('/')) v = v / F_.from_int(lx.number());
        fs.push_back({0, 0, v, 1});
        continue;
      }
      int kind;
      if (c == 'x' || c == 'X') kind = 1;
      else if (c == 's' || c == 'T') kind = 2;
      else throw std::invalid_argument("unexpected token in expression: " + expr);
      ++lx.p;
      long idx = lx.number();
      int power = 1;
      if (lx.eat('^')) {
        long pw = lx.number();
        if (pw < 0) {
          if (kind != 1 || degenerate()) throw std::invalid_argument("negative powers only for X_r");
          kind = 3;
          pw = -pw;
        }
        power = static_cast<int>(pw);
      }
      int bound = kind == 2 ? d_ - 1 : d_;
      if (idx < 1 || idx > bound) throw std::invalid_argument("generator index out of range in expression");
      fs.push_back({kind, static_cast<int>(idx), E(), power});
    } while (lx.eat('*'));
    Vec<E> v = unit();
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
      for (int p = 0; p < it->power; ++p) {
        switch (it->kind) {
          case 0: v = klr::scaled(v, it->scalar); break;
          case 1: v = x_[it->index - 1] * v; break;
          case 2: v = s_[it->index - 1] * v; break;
          case 3: v = xinv_[it->index - 1] * v; break;
        }
      }
    }
    return v;
  };
  Vec<E> total(n_);
  bool neg = false;
  if (lx.eat('-')) neg = true;
  else lx.eat('+');
  while (true) {
    Vec<E> t = parse_term();
    total = neg ? total - t : total + t;
    if (lx.at_end()) break;
    if (lx.eat('+')) neg = false;
    else if (lx.eat('-')) neg = true;
    else throw std::invalid_argument("malformed expression: " + expr);
  }
  return AlgebraElement<E>(this, total);
}

template <class E>
std::string AlgebraElement<E>::to_string() const {
  std::string s;
  for (int k = 0; k < static_cast<int>(c_.size()); ++k) {
    if (c_[k].is_zero()) continue;
    std::string lab = H_->basis_label(k);
    std::string coef = c_[k].to_string();
    if (!s.empty()) s += " + ";
    if (coef == "1") s += lab;
    else if (lab == "1") s += coef;
    else s += "(" + coef + ")*" + lab;
  }
  return s.empty() ? "0" : s;
}

template class HeckeAlgebra<Rational>;
template class HeckeAlgebra<ModP>;
template class HeckeAlgebra<Cyclo>;
template class AlgebraElement<Rational>;
template class AlgebraElement<ModP>;
template class AlgebraElement<Cyclo>;

}  // namespace klr
