#include "klr/klr.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace klr {

QChoice parse_qchoice(const std::string& s) {
  if (s == "paper") return QChoice::Paper;
  if (s == "alt") return QChoice::Alt;
  throw std::invalid_argument("unknown q choice '" + s + "' (expected paper or alt)");
}

std::string qchoice_name(QChoice c) { return c == QChoice::Paper ? "paper" : "alt"; }

// ---------------------------------------------------------------------------
// CompOp

template <class E>
CompOp<E> CompOp<E>::projector(const std::vector<int>& dims, int k, const E& one) {
  CompOp out(dims);
  out.add(k, k, Matrix<E>::identity(dims[k], one));
  return out;
}

template <class E>
CompOp<E> CompOp<E>::diagonal(const std::vector<int>& dims, const std::vector<Matrix<E>>& blocks) {
  CompOp out(dims);
  for (int k = 0; k < static_cast<int>(blocks.size()); ++k) out.add(k, k, blocks[k]);
  return out;
}

template <class E>
Matrix<E> CompOp<E>::get(int j, int k) const {
  auto it = c_.find({j, k});
  return it == c_.end() ? Matrix<E>(dims_[j], dims_[k]) : it->second;
}

template <class E>
void CompOp<E>::add(int j, int k, const Matrix<E>& m) {
  if (m.rows() != dims_[j] || m.cols() != dims_[k]) throw std::invalid_argument("CompOp: component shape mismatch");
  auto it = c_.find({j, k});
  if (it == c_.end()) {
    if (!m.is_zero()) c_.emplace(Key{j, k}, m);
    return;
  }
  it->second += m;
  if (it->second.is_zero()) c_.erase(it);
}

template <class E>
CompOp<E> CompOp<E>::operator+(const CompOp& o) const {
  CompOp r(*this);
  for (const auto& [key, m] : o.c_) r.add(key.first, key.second, m);
  return r;
}

template <class E>
CompOp<E> CompOp<E>::operator-(const CompOp& o) const {
  CompOp r(*this);
  for (const auto& [key, m] : o.c_) r.add(key.first, key.second, -m);
  return r;
}

template <class E>
CompOp<E> CompOp<E>::operator*(const CompOp& o) const {
  CompOp r(dims_);
  for (const auto& [ka, a] : c_)
    for (const auto& [kb, b] : o.c_)
      if (ka.second == kb.first) r.add(ka.first, kb.second, a * b);
  return r;
}

template <class E>
CompOp<E> CompOp<E>::scaled(const E& c) const {
  CompOp r(dims_);
  for (const auto& [key, m] : c_) r.add(key.first, key.second, m.scaled_by(c));
  return r;
}

template <class E>
int KLRAction<E>::find(const Seq& i) const {
  Seq c(i);
  for (auto& x : c) x = canon(x, e);
  auto it = std::find(weights.begin(), weights.end(), c);
  return it == weights.end() ? -1 : static_cast<int>(it - weights.begin());
}

// ---------------------------------------------------------------------------
// Reports

void Report::record(const std::string& family, bool ok, const std::string& detail) {
  auto& f = families[family];
  ++f.checked;
  if (!ok) {
    if (f.failed == 0) f.first_failure = detail;
    ++f.failed;
  }
}

void Report::vacuous(const std::string& family) { ++families[family].vacuous; }

void Report::merge(const Report& o) {
  for (const auto& [name, c] : o.families) {
    auto& f = families[name];
    if (f.failed == 0 && c.failed > 0) f.first_failure = c.first_failure;
    f.checked += c.checked;
    f.failed += c.failed;
    f.vacuous += c.vacuous;
  }
}

bool Report::passed() const { return failures() == 0; }

int Report::failures() const {
  int n = 0;
  for (const auto& [name, f] : families) n += f.failed;
  return n;
}

int Report::checked() const {
  int n = 0;
  for (const auto& [name, f] : families) n += f.checked;
  return n;
}

std::string Report::summary() const {
  std::ostringstream os;
  for (const auto& [name, f] : families) {
    os << (f.failed ? "FAIL " : "ok   ") << name << ": " << f.checked - f.failed << "/" << f.checked;
    if (f.vacuous) os << " (" << f.vacuous << " vacuous)";
    if (f.failed) os << " first failure: " << f.first_failure;
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Relation instances

namespace {

Gen E_(const Seq& s) { return Gen{Gen::Idem, 0, s}; }
Gen Y_(int r) { return Gen{Gen::Y, r, {}}; }
Gen P_(int r) { return Gen{Gen::Psi, r, {}}; }

}  // namespace

std::vector<Instance> relation_instances(const DominantWeight& L, const PositiveRoot& alpha, int e) {
  std::vector<Instance> out;
  const auto seqs = enumerate_I_alpha(e, alpha);
  const int d = alpha.height();
  for (const Seq& i : seqs) {
    auto add = [&](std::string family, std::vector<Term> terms) { out.push_back({std::move(family), i, std::move(terms)}); };
    if (d > 0) {
      std::vector<Gen> w(L.multiplicity(i[0]), Y_(1));
      add("y_1^(Lambda,alpha_i1) e(i) = 0", {{1, w}});
    }
    for (const Seq& j : seqs) add("e(j) e(i) = delta e(i)", {{1, {E_(j)}}, {i == j ? -1L : 0L, {}}});
    for (int r = 1; r <= d; ++r)
      for (const Seq& j : seqs) add("y_r e(j) = e(j) y_r", {{1, {Y_(r), E_(j)}}, {-1, {E_(j), Y_(r)}}});
    for (int r = 1; r < d; ++r)
      for (const Seq& j : seqs)
        add("psi_r e(j) = e(s_r j) psi_r", {{1, {P_(r), E_(j)}}, {-1, {E_(swap_at(j, r)), P_(r)}}});
    for (int r = 1; r <= d; ++r)
      for (int s = r + 1; s <= d; ++s) add("y_r y_s = y_s y_r", {{1, {Y_(r), Y_(s)}}, {-1, {Y_(s), Y_(r)}}});
    for (int r = 1; r < d; ++r)
      for (int s = 1; s <= d; ++s)
        if (s != r && s != r + 1) add("psi_r y_s = y_s psi_r", {{1, {P_(r), Y_(s)}}, {-1, {Y_(s), P_(r)}}});
    for (int r = 1; r < d; ++r)
      for (int s = r + 2; s < d; ++s) add("psi_r psi_s = psi_s psi_r", {{1, {P_(r), P_(s)}}, {-1, {P_(s), P_(r)}}});
    for (int r = 1; r < d; ++r) {
      const bool eq = i[r - 1] == i[r];
      const long delta = eq ? -1 : 0;
      add("psi_r y_{r+1} e(i)", {{1, {P_(r), Y_(r + 1)}}, {-1, {Y_(r), P_(r)}}, {delta, {}}});
      add("y_{r+1} psi_r e(i)", {{1, {Y_(r + 1), P_(r)}}, {-1, {P_(r), Y_(r)}}, {delta, {}}});
      std::vector<Term> sq{{1, {P_(r), P_(r)}}};
      switch (adjacency(e, i[r - 1], i[r])) {
        case Adjacency::Equal:
          break;
        case Adjacency::Apart:
          sq.push_back({-1, {}});
          break;
        case Adjacency::Right:
          sq.push_back({-1, {Y_(r + 1)}});
          sq.push_back({1, {Y_(r)}});
          break;
        case Adjacency::Left:
          sq.push_back({-1, {Y_(r)}});
          sq.push_back({1, {Y_(r + 1)}});
          break;
        case Adjacency::Double:
          // (y_{r+1} - y_r)(y_r - y_{r+1}) = -y_{r+1}^2 + 2 y_r y_{r+1} - y_r^2
          sq.push_back({1, {Y_(r + 1), Y_(r + 1)}});
          sq.push_back({-2, {Y_(r), Y_(r + 1)}});
          sq.push_back({1, {Y_(r), Y_(r)}});
          break;
      }
      add("psi_r^2 e(i)", sq);
    }
    for (int r = 1; r + 1 < d; ++r) {
      std::vector<Term> br{{1, {P_(r), P_(r + 1), P_(r)}}, {-1, {P_(r + 1), P_(r), P_(r + 1)}}};
      if (i[r + 1] == i[r - 1]) {
        switch (adjacency(e, i[r - 1], i[r])) {
          case Adjacency::Right:
            br.push_back({-1, {}});
            break;
          case Adjacency::Left:
            br.push_back({1, {}});
            break;
          case Adjacency::Double:
            br.push_back({2, {Y_(r + 1)}});
            br.push_back({-1, {Y_(r)}});
            br.push_back({-1, {Y_(r + 2)}});
            break;
          default:
            break;
        }
      }
      add("braid psi_r psi_{r+1} psi_r e(i)", br);
    }
  }
  return out;
}

bool term_degree(const Term& t, const Seq& base, int e, int& degree) {
  Seq cur = base;
  degree = 0;
  for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
    switch (it->kind) {
      case Gen::Idem:
        if (it->seq != cur) return false;
        break;
      case Gen::Y:
        degree += 2;
        break;
      case Gen::Psi:
        degree -= cartan_entry(e, cur[it->r - 1], cur[it->r]);
        cur = swap_at(cur, it->r);
        break;
    }
  }
  return true;
}

Report check_grading(const DominantWeight& L, const PositiveRoot& alpha, int e) {
  Report rep;
  for (const Instance& inst : relation_instances(L, alpha, e)) {
    bool have = false, ok = true;
    int deg0 = 0;
    for (const Term& t : inst.terms) {
      int deg;
      if (t.coeff == 0 || !term_degree(t, inst.base, e, deg)) continue;
      if (!have) {
        deg0 = deg;
        have = true;
      } else if (deg != deg0) {
        ok = false;
      }
    }
    rep.record(inst.family, ok, ok ? "" : "inhomogeneous at i = " + seq_to_string(inst.base, e));
  }
  return rep;
}

template <class E>
Report verify_klr_relations(const KLRAction<E>& A) {
  Report rep;
  rep.record("sum of e(i) is 1", A.complete);
  std::vector<CompOp<E>> idem;
  for (int k = 0; k < static_cast<int>(A.weights.size()); ++k) idem.push_back(A.idem(k));
  const CompOp<E> zero(A.dims);
  auto gen = [&](const Gen& g) -> const CompOp<E>& {
    switch (g.kind) {
      case Gen::Idem: {
        int k = A.find(g.seq);
        return k < 0 ? zero : idem[k];
      }
      case Gen::Y:
        return A.y[g.r - 1];
      default:
        return A.psi[g.r - 1];
    }
  };
  for (const Instance& inst : relation_instances(A.weight, A.alpha, A.e)) {
    int k = A.find(inst.base);
    if (k < 0) {
      rep.vacuous(inst.family);
      continue;
    }
    CompOp<E> total(A.dims);
    for (const Term& t : inst.terms) {
      if (t.coeff == 0) continue;
      CompOp<E> acc = idem[k];
      for (auto it = t.word.rbegin(); it != t.word.rend() && !acc.is_zero(); ++it) acc = gen(*it) * acc;
      total = total + acc.scaled(E::from_int(t.coeff, A.one));
    }
    rep.record(inst.family, total.is_zero(), "at i = " + seq_to_string(inst.base, A.e));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Series

namespace {

template <class E>
using TS = TruncatedSeries<E>;

// Builds p and q at order T - 1; division by a linear form costs one order.
template <class E>
SeriesPair<E> raw_series(const Field<E>& F, int e, const Seq& i, int r, int T, QChoice choice) {
  const int d = static_cast<int>(i.size());
  const E one = F.one();
  const long a = i[r - 1], b = i[r];
  const TS<E> y1 = TS<E>::variable(d, T, r, one), y2 = TS<E>::variable(d, T, r + 1, one);
  const TS<E> I = TS<E>::constant(d, T, one);
  auto cst = [&](const E& c) { return TS<E>::constant(d, T, c); };
  const Adjacency adj = adjacency(e, a, b);
  SeriesPair<E> out{I, I};
  if (F.degenerate()) {
    if (adj == Adjacency::Equal) {
      out.q = I + y2 - y1;
    } else {
      out.p = invert_series(cst(F.residue_value(a) - F.residue_value(b)) + y1 - y2);
      switch (adj) {
        case Adjacency::Apart:
          out.q = I - out.p;
          break;
        case Adjacency::Right:
          out.q = divide_by_linear(I - out.p * out.p, r, r + 1);
          break;
        case Adjacency::Left:
          out.q = I;
          break;
        case Adjacency::Double:
          out.q = divide_by_linear(I - out.p, r, r + 1);
          break;
        default:
          break;
      }
    }
  } else {
    const E q = F.q();
    const TS<E> Ya = (I - y1).scaled(F.q_power(a)), Yb = (I - y2).scaled(F.q_power(b));
    if (adj == Adjacency::Equal) {
      out.q = cst(one - q) + y2.scaled(q) - y1;
    } else {
      out.p = invert_series(I - Ya * invert_series(Yb)).scaled(one - q);
      switch (adj) {
        case Adjacency::Apart:
          out.q = (Ya - Yb.scaled(q)) * invert_series(Ya - Yb);
          break;
        case Adjacency::Right:
          out.q = (Ya - Yb.scaled(q)) * invert_series((Ya - Yb) * (Ya - Yb));
          break;
        case Adjacency::Left:
          out.q = cst(F.q_power(a));
          break;
        case Adjacency::Double:
          out.q = invert_series(Ya - Yb).scaled(F.q_power(a));
          break;
        default:
          break;
      }
    }
  }
  if (choice == QChoice::Alt && a != b) {
    const int T2 = out.q.order();
    const TS<E> z1 = TS<E>::variable(d, T2, r, one), z2 = TS<E>::variable(d, T2, r + 1, one);
    const TS<E> J = TS<E>::constant(d, T2, one);
    out.q = a < b ? out.q * (J + z1) : out.q * invert_series(J + z2);
  }
  return {out.p.truncate_to(T - 1), out.q.truncate_to(T - 1)};
}

}  // namespace

template <class E>
SeriesPair<E> klr_series(const Field<E>& F, int e, const Seq& i, int r, int T, QChoice choice) {
  return raw_series(F, e, i, r, T + 1, choice);
}

template <class E>
Report verify_series_choice(const Field<E>& F, const DominantWeight& L, int d, int T, QChoice choice) {
  Report rep;
  const int e = F.quantum_characteristic();
  const E one = F.one();
  const std::vector<long> window = residue_window(L, d);
  // All sequences of length d over the window.
  std::vector<Seq> seqs{{}};
  for (int k = 0; k < d; ++k) {
    std::vector<Seq> next;
    for (const Seq& s : seqs)
      for (long x : window) {
        Seq t = s;
        t.push_back(x);
        next.push_back(t);
      }
    seqs = std::move(next);
  }
  const int Tb = T + 3;
  auto build = [&](const Seq& i, int r) { return raw_series(F, e, i, r, Tb, choice); };
  auto at = [&](const TS<E>& f) { return f.truncate_to(T); };
  for (const Seq& i : seqs) {
    const std::string where = " at i = " + seq_to_string(i, e);
    for (int r = 1; r < d; ++r) {
      const Perm s = simple_transposition(d, r);
      const Seq si = swap_at(i, r);
      const SeriesPair<E> A = build(i, r), B = build(si, r);
      const TS<E> I = TS<E>::constant(d, Tb - 1, one);
      const Adjacency adj = adjacency(e, i[r - 1], i[r]);
      if (adj == Adjacency::Equal) {
        const TS<E> y1 = TS<E>::variable(d, Tb - 1, r, one), y2 = TS<E>::variable(d, Tb - 1, r + 1, one);
        const TS<E> expect = F.degenerate() ? I + y2 - y1 : TS<E>::constant(d, Tb - 1, one - F.q()) + y2.scaled(F.q()) - y1;
        rep.record("q_r(i) in the equal case", at(A.q) == at(expect) && at(A.p) == at(I), where);
        continue;
      }
      // Symmetry of p.
      const TS<E> ps = apply_permutation(s, B.p);
      if (F.degenerate())
        rep.record("s_r p_r(s_r i) = -p_r(i)", at(ps) == at(-A.p), where);
      else
        rep.record("P_r(i) + s_r P_r(s_r i) = 1 - q", at(A.p + ps) == at(TS<E>::constant(d, Tb - 1, one - F.q())), where);
      // Product identity.
      const TS<E> prod = A.q * apply_permutation(s, B.q);
      const TS<E> num = F.degenerate() ? I - A.p * A.p : (I - A.p) * (TS<E>::constant(d, Tb - 1, F.q()) + A.p);
      TS<E> rhs;
      switch (adj) {
        case Adjacency::Apart:
          rhs = num;
          break;
        case Adjacency::Right:
          rhs = divide_by_linear(num, r, r + 1);
          break;
        case Adjacency::Left:
          rhs = divide_by_linear(num, r + 1, r);
          break;
        default:
          rhs = -divide_by_linear(divide_by_linear(num, r, r + 1), r, r + 1);
          break;
      }
      rep.record("q_r(i) s_r q_r(s_r i) = product formula", at(prod.truncate_to(rhs.order())) == at(rhs), where);
    }
    for (int r = 1; r + 1 < d; ++r) {
      const Perm sr = simple_transposition(d, r), sr1 = simple_transposition(d, r + 1);
      const TS<E> lq = apply_permutation(sr, build(swap_at(swap_at(i, r), r + 1), r + 1).q);
      const TS<E> rq = apply_permutation(sr1, build(swap_at(swap_at(i, r + 1), r), r).q);
      rep.record("s_r q_{r+1}(s_{r+1} s_r i) = s_{r+1} q_r(s_r s_{r+1} i)", at(lq) == at(rq), where);
      const TS<E> lp = apply_permutation(sr, build(swap_at(i, r), r + 1).p);
      const TS<E> rp = apply_permutation(sr1, build(swap_at(i, r + 1), r).p);
      rep.record("s_r p_{r+1}(s_r i) = s_{r+1} p_r(s_{r+1} i)", at(lp) == at(rp), where);
    }
  }
  return rep;
}

template <class E>
Report check_symbolic_properties(const Field<E>& F, int series_instances, int hom_pairs, std::mt19937_64& rng) {
  Report rep;
  const int d = 3, T = 4;
  std::uniform_int_distribution<int> pick(1, d - 1);
  for (int n = 0; n < series_instances; ++n) {
    const TS<E> f = random_series<E>(F, d, T, T, 6, rng), g = random_series<E>(F, d, T, T, 6, rng);
    const int r = pick(rng);
    const Perm s = simple_transposition(d, r);
    const TS<E> sf = apply_permutation(s, f), sg = apply_permutation(s, g);
    const TS<E> df = divided_difference(r, f), dg = divided_difference(r, g), dfg = divided_difference(r, f * g);
    rep.record("d_r(fg) = d_r(f) g + s_r(f) d_r(g)", dfg == df * g.truncate_to(T - 1) + sf.truncate_to(T - 1) * dg);
    rep.record("d_r(fg) = d_r(f) s_r(g) + f d_r(g)", dfg == df * sg.truncate_to(T - 1) + f.truncate_to(T - 1) * dg);
    rep.record("d_r vanishes on symmetric series",
               divided_difference(r, f + sf).is_zero() && divided_difference(r, f * sf).is_zero());
  }
  // Commuting nilpotents N (x) 1 and 1 (x) N with N the 3 x 3 shift, and random
  // polynomials in them without constant term.
  const E one = F.one();
  const int m = 3;
  Matrix<E> N(m, m);
  for (int k = 0; k + 1 < m; ++k) N(k, k + 1) = one;
  auto kron = [&](const Matrix<E>& A, const Matrix<E>& B) {
    Matrix<E> K(m * m, m * m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          for (int e = 0; e < m; ++e) K(a * m + c, b * m + e) = A(a, b) * B(c, e);
    return K;
  };
  const Matrix<E> I = Matrix<E>::identity(m, one);
  const std::vector<Matrix<E>> base{kron(N, I), kron(I, N)};
  auto random_nilpotent = [&]() {
    const TS<E> p = random_series<E>(F, 2, 4, 3, 4, rng);
    TS<E> h(2, 4);
    for (const auto& [e, c] : p.terms())
      if (total_degree(e) > 0) h.add_term(e, c);
    return evaluate_on_nilpotents(h, base, one);
  };
  for (int n = 0; n < hom_pairs; ++n) {
    const std::vector<Matrix<E>> mats{random_nilpotent(), random_nilpotent()};
    const NilpotentFamily<E> fam(mats, one);
    const int T2 = std::max(fam.certified_order(), 1);
    const TS<E> f = random_series<E>(F, 2, T2, T2, 6, rng), g = random_series<E>(F, 2, T2, T2, 6, rng);
    rep.record("evaluation preserves products", fam.evaluate(f * g) == fam.evaluate(f) * fam.evaluate(g));
    rep.record("evaluation preserves sums", fam.evaluate(f + g) == fam.evaluate(f) + fam.evaluate(g));
    rep.record("evaluation preserves 1", fam.evaluate(TS<E>::constant(2, T2, one)) == Matrix<E>::identity(m * m, one));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// KLR generators of a block

template <class E>
KLRGens<E>::KLRGens(const Block<E>& B, QChoice choice) : B_(&B), choice_(choice) {
  const Field<E>& F = B.field();
  const E one = F.one();
  const int d = B.d(), m = B.num_weights();
  for (int k = 0; k < m; ++k) dims_.push_back(B.weight_dim(k));
  act_.d = d;
  act_.e = B.e();
  act_.weight = B.algebra().weight();
  act_.alpha = B.alpha();
  act_.weights = B.sequences();
  act_.dims = dims_;
  act_.one = one;
  Matrix<E> sum(B.dim(), B.dim());
  for (int k = 0; k < m; ++k) sum += B.idempotent(k);
  act_.complete = sum == B.identity();

  auto diag_of = [&](const Matrix<E>& G) {
    std::vector<Matrix<E>> blocks;
    for (int k = 0; k < m; ++k) blocks.push_back(B.component(k, G, k));
    return CompOp<E>::diagonal(dims_, blocks);
  };
  auto full_of = [&](const Matrix<E>& G) {
    CompOp<E> out(dims_);
    for (int k = 0; k < m; ++k) {
      Matrix<E> GU = G * B.U(k);
      for (int j = 0; j < m; ++j) out.add(j, k, B.W(j) * GU);
    }
    return out;
  };
  for (int r = 1; r <= d; ++r) {
    x_.push_back(diag_of(B.x(r)));
    if (!F.degenerate()) xinv_.push_back(diag_of(B.x_inv(r)));
  }
  for (int r = 1; r < d; ++r) s_.push_back(full_of(B.s(r)));

  for (int r = 1; r <= d; ++r) {
    std::vector<Matrix<E>> blocks;
    for (int k = 0; k < m; ++k) {
      const long ir = B.sequence(k)[r - 1];
      const Matrix<E> X = x_[r - 1].get(k, k), I = Matrix<E>::identity(dims_[k], one);
      blocks.push_back(F.degenerate() ? X - I.scaled_by(F.residue_value(ir)) : I - X.scaled_by(F.q_power(-ir)));
    }
    act_.y.push_back(CompOp<E>::diagonal(dims_, blocks));
  }
  for (int k = 0; k < m; ++k) {
    std::vector<Matrix<E>> ys;
    for (int r = 1; r <= d; ++r) ys.push_back(act_.y[r - 1].get(k, k));
    fam_.emplace_back(ys, one);
  }
  nil_.assign(d, 0);
  for (int r = 0; r < d; ++r)
    for (const auto& f : fam_) nil_[r] = std::max(nil_[r], f.index(r));
  T_cert_ = 0;
  for (int n : nil_) T_cert_ += std::max(n - 1, 0);

  series_.assign(std::max(d - 1, 0), {});
  for (int r = 1; r < d; ++r) {
    CompOp<E> phi = s_[r - 1], psi(dims_);
    for (int k = 0; k < m; ++k) {
      series_[r - 1].push_back(klr_series(F, e(), B.sequence(k), r, T_cert_, choice));
      phi.add(k, k, evaluate(k, series_[r - 1][k].p));
    }
    for (const auto& [key, c] : phi.components())
      psi.add(key.first, key.second, c * evaluate(key.second, invert_series(series_[r - 1][key.second].q)));
    phi_.push_back(phi);
    act_.psi.push_back(psi);
  }
}

template <class E>
CompOp<E> KLRGens<E>::identity() const {
  CompOp<E> out(dims_);
  for (int k = 0; k < static_cast<int>(dims_.size()); ++k) out.add(k, k, Matrix<E>::identity(dims_[k], field().one()));
  return out;
}

template <class E>
Matrix<E> KLRGens<E>::evaluate(int k, const TruncatedSeries<E>& f) const {
  if (d() == 0) return Matrix<E>::identity(dims_[k], field().one()).scaled_by(f.constant_term());
  return fam_[k].evaluate(f);
}

template <class E>
CompOp<E> KLRGens<E>::diagonal(const std::vector<TruncatedSeries<E>>& f) const {
  std::vector<Matrix<E>> blocks;
  for (int k = 0; k < static_cast<int>(dims_.size()); ++k) blocks.push_back(evaluate(k, f[k]));
  return CompOp<E>::diagonal(dims_, blocks);
}

template <class E>
Matrix<E> KLRGens<E>::assemble(const CompOp<E>& A) const {
  Matrix<E> M(B_->dim(), B_->dim());
  for (const auto& [key, c] : A.components()) M += B_->U(key.first) * (c * B_->W(key.second));
  return M;
}

// ---------------------------------------------------------------------------
// Intertwiners

template <class E>
Report verify_intertwiners(const KLRGens<E>& G) {
  Report rep;
  const Block<E>& B = G.block();
  const Field<E>& F = G.field();
  const E one = F.one(), q = F.q();
  const int d = G.d(), m = B.num_weights();
  const bool deg = F.degenerate();
  auto X = [&](int r, int k) { return G.x(r).get(k, k); };
  auto Id = [&](int k) { return Matrix<E>::identity(G.dims()[k], one); };
  // x_{r,r+1}^{-1} (resp. X_{r,r+1}) on weight k.
  auto xinv_diff = [&](int r, int s, int k) { return inverse(X(r, k) - X(s, k), one); };
  for (int k = 0; k < m; ++k) {
    const Seq& i = B.sequence(k);
    const CompOp<E> ek = G.idem(k);
    const std::string where = " at i = " + seq_to_string(i, G.e());
    auto diag = [&](const Matrix<E>& M) {
      CompOp<E> o(G.dims());
      o.add(k, k, M);
      return o;
    };
    for (int r = 1; r < d; ++r) {
      const CompOp<E>& phi = G.phi(r);
      const bool eq = i[r - 1] == i[r];
      // Series p_r(i) against the direct inverse.
      Matrix<E> direct = Id(k);
      if (!eq) {
        direct = deg ? xinv_diff(r, r + 1, k)
                     : inverse(Id(k) - X(r, k) * G.x_inv(r + 1).get(k, k), one).scaled_by(one - q);
      }
      rep.record("p_r(i) e(i) matches the intertwiner correction", G.evaluate(k, G.series(r, k).p) == direct, where);

      const int t = B.find(swap_at(i, r));
      bool ok = true;
      const CompOp<E> pe = phi * ek;
      for (const auto& [key, c] : pe.components()) ok = ok && key.first == t;
      rep.record("phi_r e(i) = e(s_r i) phi_r", ok, where);
      for (int s = 1; s <= d; ++s)
        if (s != r && s != r + 1)
          rep.record("phi_r x_s = x_s phi_r", (phi * G.x(s) - G.x(s) * phi) * ek == CompOp<E>(G.dims()), where);
      for (int s = r + 2; s < d; ++s)
        rep.record("phi_r phi_s = phi_s phi_r", phi * G.phi(s) * ek == G.phi(s) * phi * ek, where);

      // Correction term of the x-commutation identities in the equal case.
      CompOp<E> corr(G.dims());
      if (eq) corr = deg ? diag(Id(k) - X(r, k) + X(r + 1, k)) : diag(X(r + 1, k).scaled_by(q) - X(r, k));
      rep.record("phi_r x_{r+1} e(i)", phi * G.x(r + 1) * ek == G.x(r) * phi * ek + corr, where);
      rep.record("x_{r+1} phi_r e(i)", G.x(r + 1) * phi * ek == phi * G.x(r) * ek + corr, where);

      CompOp<E> sq(G.dims());
      if (eq) {
        sq = (phi * ek).scaled(deg ? one + one : one + q);
      } else if (deg) {
        Matrix<E> a = xinv_diff(r, r + 1, k);
        sq = diag(Id(k) - a * a);
      } else {
        const Matrix<E> Xr = X(r, k), Xs = X(r + 1, k);
        const Matrix<E> num = (Xs - Xr.scaled_by(q)) * (Xr - Xs.scaled_by(q));
        sq = diag(num * inverse((Xs - Xr) * (Xr - Xs), one));
      }
      rep.record("phi_r^2 e(i)", phi * phi * ek == sq, where);
    }
    for (int r = 1; r + 1 < d; ++r) {
      const CompOp<E> lhs = G.phi(r) * G.phi(r + 1) * G.phi(r) * ek;
      CompOp<E> rhs = G.phi(r + 1) * G.phi(r) * G.phi(r + 1) * ek;
      if (i[r - 1] == i[r + 1] && i[r - 1] == i[r]) {
        rhs = rhs + (G.phi(r) - G.phi(r + 1)).scaled(deg ? one : q) * ek;
      } else if (i[r - 1] == i[r + 1]) {
        if (deg) {
          const Matrix<E> a = xinv_diff(r, r + 1, k), b = xinv_diff(r + 1, r + 2, k);
          rhs = rhs + diag((a - b) * (a * b - a - b));
        } else {
          const Matrix<E> X1 = X(r, k), X2 = X(r + 1, k), X3 = X(r + 2, k);
          const Matrix<E> num = (X1 * X3 - X2 * X2) * (X1 * X2 - (X2 * X3).scaled_by(q));
          const Matrix<E> den = (X1 - X2) * (X1 - X2) * (X2 - X3) * (X2 - X3);
          rhs = rhs + diag((num * inverse(den, one)).scaled_by((one - q) * (one - q)));
        }
      }
      rep.record("braid phi_r phi_{r+1} phi_r e(i)", lhs == rhs, where);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Round trip

template <class E>
std::vector<Matrix<E>> hecke_from_klr(const KLRGens<E>& G) {
  const Block<E>& B = G.block();
  const Field<E>& F = G.field();
  const E one = F.one();
  const int d = G.d(), m = B.num_weights();
  std::vector<Matrix<E>> out;
  for (int r = 1; r <= d; ++r) {
    std::vector<Matrix<E>> blocks;
    for (int k = 0; k < m; ++k) {
      const long ir = B.sequence(k)[r - 1];
      const Matrix<E> y = G.y(r).get(k, k), I = Matrix<E>::identity(G.dims()[k], one);
      blocks.push_back(F.degenerate() ? y + I.scaled_by(F.residue_value(ir)) : (I - y).scaled_by(F.q_power(ir)));
    }
    out.push_back(G.assemble(CompOp<E>::diagonal(G.dims(), blocks)));
  }
  for (int r = 1; r < d; ++r) {
    CompOp<E> s(G.dims());
    for (const auto& [key, c] : G.psi(r).components()) s.add(key.first, key.second, c * G.evaluate(key.second, G.series(r, key.second).q));
    for (int k = 0; k < m; ++k) s.add(k, k, -G.evaluate(k, G.series(r, k).p));
    out.push_back(G.assemble(s));
  }
  if (!F.degenerate()) {
    const int T = G.certified_order();
    for (int r = 1; r <= d; ++r) {
      std::vector<Matrix<E>> blocks;
      const auto inv = invert_series(TruncatedSeries<E>::constant(d, T, one) - TruncatedSeries<E>::variable(d, T, r, one));
      for (int k = 0; k < m; ++k) blocks.push_back(G.evaluate(k, inv).scaled_by(F.q_power(-B.sequence(k)[r - 1])));
      out.push_back(G.assemble(CompOp<E>::diagonal(G.dims(), blocks)));
    }
  }
  return out;
}

template <class E>
Report check_round_trip(const KLRGens<E>& G) {
  Report rep;
  const Block<E>& B = G.block();
  const int d = G.d();
  const auto H = hecke_from_klr(G);
  const bool deg = G.field().degenerate();
  for (int r = 1; r <= d; ++r)
    rep.record(deg ? "x_r rebuilt from KLR generators" : "X_r rebuilt from KLR generators", H[r - 1] == B.x(r),
               "r = " + std::to_string(r));
  for (int r = 1; r < d; ++r)
    rep.record(deg ? "s_r rebuilt from KLR generators" : "T_r rebuilt from KLR generators", H[d + r - 1] == B.s(r),
               "r = " + std::to_string(r));
  if (!deg)
    for (int r = 1; r <= d; ++r)
      rep.record("X_r^{-1} rebuilt from KLR generators", H[2 * d - 1 + r - 1] == B.x_inv(r), "r = " + std::to_string(r));

  // Closure of the e(i) 1_B under y_r and psi_r.
  std::vector<Matrix<E>> gens;
  for (int r = 1; r <= d; ++r) gens.push_back(G.assemble(G.y(r)));
  for (int r = 1; r < d; ++r) gens.push_back(G.assemble(G.psi(r)));
  EchelonBasis<E> span(B.dim());
  std::vector<Vec<E>> queue;
  for (int k = 0; k < B.num_weights(); ++k) {
    Vec<E> v = B.idempotent(k) * B.unit_coordinates();
    if (span.add(v)) queue.push_back(v);
  }
  while (!queue.empty() && span.dim() < B.dim()) {
    Vec<E> v = queue.back();
    queue.pop_back();
    for (const auto& g : gens) {
      Vec<E> w = g * v;
      if (span.add(w)) queue.push_back(w);
    }
  }
  rep.record("KLR generators generate the block", span.dim() == B.dim(),
             "span " + std::to_string(span.dim()) + " of " + std::to_string(B.dim()));
  return rep;
}

template <class E>
Report check_divided_difference_identity(const KLRGens<E>& G, std::mt19937_64& rng, int samples) {
  Report rep;
  const Block<E>& B = G.block();
  const int d = G.d(), T = G.working_order();
  for (int n = 0; n < samples; ++n) {
    const auto f = random_series<E>(G.field(), d, T, 2, 6, rng);
    for (int r = 1; r < d; ++r) {
      const auto sf = apply_permutation(simple_transposition(d, r), f);
      const auto df = divided_difference(r, f);
      for (int k = 0; k < B.num_weights(); ++k) {
        const Seq& i = B.sequence(k);
        const bool eq = i[r - 1] == i[r];
        const int j = B.find(swap_at(i, r));
        if (j < 0) continue;
        const Matrix<E> psi = G.psi(r).get(j, k);
        Matrix<E> rhs = psi * G.evaluate(k, sf);
        if (eq) rhs += G.evaluate(k, df);
        rep.record("f psi_r e(i) = psi_r s_r(f) e(i) + divided difference", G.evaluate(j, f) * psi == rhs,
                   "r = " + std::to_string(r) + " at i = " + seq_to_string(i, G.e()));
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Graded dimension

std::string laurent_to_string(const std::map<int, int>& c) {
  std::string s;
  for (const auto& [deg, n] : c) {
    if (n == 0) continue;
    if (!s.empty()) s += " + ";
    std::string mono = deg == 0 ? "" : (deg == 1 ? "t" : "t^" + std::to_string(deg));
    if (mono.empty())
      s += std::to_string(n);
    else
      s += (n == 1 ? "" : std::to_string(n) + "*") + mono;
  }
  return s.empty() ? "0" : s;
}

template <class E>
std::string PoincareResult<E>::to_string() const {
  return laurent_to_string(coeffs);
}

template <class E>
int PoincareResult<E>::dimension() const {
  int n = 0;
  for (const auto& [deg, c] : coeffs) n += c;
  return n;
}

namespace {

// Weight-space vectors: weight index -> vector.
template <class E>
using CompVec = std::map<int, Vec<E>>;

template <class E>
CompVec<E> apply_op(const CompOp<E>& A, const CompVec<E>& v) {
  CompVec<E> out;
  for (const auto& [key, c] : A.components()) {
    auto it = v.find(key.second);
    if (it == v.end()) continue;
    Vec<E> w = c * it->second;
    auto [pos, fresh] = out.try_emplace(key.first, w);
    if (!fresh) pos->second = pos->second + w;
  }
  for (auto it = out.begin(); it != out.end();) it = is_zero_vec(it->second) ? out.erase(it) : std::next(it);
  return out;
}

template <class E>
struct SpanEnumerator {
  const KLRGens<E>& G;
  std::vector<Perm> group;
  std::vector<std::vector<int>> words;
  std::vector<Seq> all;

  explicit SpanEnumerator(const KLRGens<E>& g) : G(g), group(symmetric_group(g.d())), all(enumerate_I_alpha(g.e(), g.block().alpha())) {
    for (const auto& w : group) words.push_back(reduced_word(w));
  }

  int degree(const SpanLabel& l) const {
    int deg = 2 * std::accumulate(l.n.begin(), l.n.end(), 0);
    Seq cur = all[l.seq];
    const auto& w = words[l.perm];
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      deg -= cartan_entry(G.e(), cur[*it - 1], cur[*it]);
      cur = swap_at(cur, *it);
    }
    return deg;
  }

  // psi_w y^n e(i) applied to v.
  CompVec<E> apply(const SpanLabel& l, const CompVec<E>& v) const {
    const int k = G.block().find(all[l.seq]);
    CompVec<E> out;
    if (k < 0) return out;
    auto it = v.find(k);
    if (it == v.end()) return out;
    out[k] = it->second;
    for (int r = 1; r <= G.d() && !out.empty(); ++r)
      for (int t = 0; t < l.n[r - 1] && !out.empty(); ++t) out = apply_op(G.y(r), out);
    const auto& w = words[l.perm];
    for (auto wi = w.rbegin(); wi != w.rend() && !out.empty(); ++wi) out = apply_op(G.psi(*wi), out);
    return out;
  }

  CompVec<E> split(const Vec<E>& v) const {
    CompVec<E> out;
    const Block<E>& B = G.block();
    for (int k = 0; k < B.num_weights(); ++k) {
      Vec<E> c = B.W(k) * v;
      if (!is_zero_vec(c)) out[k] = c;
    }
    return out;
  }

  Vec<E> join(const CompVec<E>& v) const {
    const Block<E>& B = G.block();
    Vec<E> out(B.dim());
    for (const auto& [k, c] : v) out = out + B.U(k) * c;
    return out;
  }
};

}  // namespace

template <class E>
PoincareResult<E> poincare_polynomial(const KLRGens<E>& G) {
  PoincareResult<E> res;
  const Block<E>& B = G.block();
  const int d = G.d();
  SpanEnumerator<E> en(G);
  std::vector<SpanLabel> cands;
  std::vector<int> bounds(d);
  for (int r = 1; r <= d; ++r) bounds[r - 1] = G.nilpotency_index(r);
  for (int w = 0; w < static_cast<int>(en.group.size()); ++w) {
    std::vector<int> n(d, 0);
    for (;;) {
      for (int s = 0; s < static_cast<int>(en.all.size()); ++s)
        if (B.find(en.all[s]) >= 0) cands.push_back({w, n, s});
      int r = d - 1;
      while (r >= 0 && ++n[r] >= bounds[r]) n[r--] = 0;
      if (r < 0) break;
    }
  }
  std::vector<int> degs;
  for (const auto& c : cands) degs.push_back(en.degree(c));
  std::vector<int> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return degs[a] < degs[b]; });
  const CompVec<E> unit = en.split(B.unit_coordinates());
  EchelonBasis<E> basis(B.dim());
  for (int idx : order) {
    if (basis.dim() == B.dim()) break;
    CompVec<E> v = en.apply(cands[idx], unit);
    if (v.empty()) continue;
    Vec<E> full = en.join(v);
    if (!basis.add(full)) continue;
    res.labels.push_back(cands[idx]);
    res.degrees.push_back(degs[idx]);
    res.vectors.push_back(full);
    ++res.coeffs[degs[idx]];
  }
  res.spans = basis.dim() == B.dim();
  return res;
}

template <class E>
ConjectureReport check_nilpotency_conjecture(const KLRGens<E>& G, int level) {
  ConjectureReport rep;
  rep.level = level;
  for (int r = 1; r <= G.d(); ++r) {
    rep.indices.push_back(G.nilpotency_index(r));
    if (G.nilpotency_index(r) > level) rep.holds = false;
  }
  return rep;
}

std::string structure_name(CompareReport::Structure s) {
  switch (s) {
    case CompareReport::Structure::Equal:
      return "equal";
    case CompareReport::Structure::Different:
      return "different";
    default:
      return "inconclusive";
  }
}

template <class E>
std::vector<std::vector<Vec<E>>> structure_constants(const KLRGens<E>& G, const PoincareResult<E>& P) {
  const int n = static_cast<int>(P.vectors.size());
  std::vector<std::vector<Vec<E>>> out(n, std::vector<Vec<E>>(n));
  if (n == 0) return out;
  SpanEnumerator<E> en(G);
  const Matrix<E> inv = inverse(Matrix<E>::from_columns(P.vectors, G.block().dim()), G.field().one());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out[a][b] = inv * en.join(en.apply(P.labels[a], en.split(P.vectors[b])));
  return out;
}

template <class E1, class E2>
CompareReport compare_blocks(const KLRGens<E1>& A, const PoincareResult<E1>& PA, const KLRGens<E2>& B,
                             const PoincareResult<E2>& PB) {
  CompareReport rep;
  rep.dims_equal = A.block().dim() == B.block().dim();
  rep.characters_equal = A.block().character() == B.block().character();
  if (!rep.dims_equal || !rep.characters_equal) {
    rep.structure = CompareReport::Structure::Different;
    rep.detail = "dimensions or characters differ";
    return rep;
  }
  if (PA.labels != PB.labels) {
    rep.detail = "homogeneous bases selected different labels";
    return rep;
  }
  if constexpr (std::is_same_v<E1, E2>) {
    const auto ca = structure_constants(A, PA), cb = structure_constants(B, PB);
    rep.structure = ca == cb ? CompareReport::Structure::Equal : CompareReport::Structure::Different;
    rep.detail = ca == cb ? "structure constants agree" : "structure constants differ";
  } else {
    rep.detail = "fields of different types";
  }
  return rep;
}

#define KLR_INSTANTIATE(E)                                                                                   \
  template class CompOp<E>;                                                                                  \
  template struct KLRAction<E>;                                                                              \
  template Report verify_klr_relations(const KLRAction<E>&);                                                 \
  template SeriesPair<E> klr_series(const Field<E>&, int, const Seq&, int, int, QChoice);                    \
  template Report verify_series_choice(const Field<E>&, const DominantWeight&, int, int, QChoice);           \
  template Report check_symbolic_properties(const Field<E>&, int, int, std::mt19937_64&);                    \
  template class KLRGens<E>;                                                                                 \
  template Report verify_intertwiners(const KLRGens<E>&);                                                    \
  template std::vector<Matrix<E>> hecke_from_klr(const KLRGens<E>&);                                         \
  template Report check_round_trip(const KLRGens<E>&);                                                       \
  template Report check_divided_difference_identity(const KLRGens<E>&, std::mt19937_64&, int);               \
  template struct PoincareResult<E>;                                                                         \
  template PoincareResult<E> poincare_polynomial(const KLRGens<E>&);                                         \
  template ConjectureReport check_nilpotency_conjecture(const KLRGens<E>&, int);                             \
  template std::vector<std::vector<Vec<E>>> structure_constants(const KLRGens<E>&, const PoincareResult<E>&);

KLR_INSTANTIATE(Rational)
KLR_INSTANTIATE(ModP)
KLR_INSTANTIATE(Cyclo)

#define KLR_COMPARE(E1, E2)                                                                                 \
  template CompareReport compare_blocks(const KLRGens<E1>&, const PoincareResult<E1>&, const KLRGens<E2>&, \
                                        const PoincareResult<E2>&);

KLR_COMPARE(Rational, Rational)
KLR_COMPARE(Rational, ModP)
KLR_COMPARE(Rational, Cyclo)
KLR_COMPARE(ModP, Rational)
KLR_COMPARE(ModP, ModP)
KLR_COMPARE(ModP, Cyclo)
KLR_COMPARE(Cyclo, Rational)
KLR_COMPARE(Cyclo, ModP)
KLR_COMPARE(Cyclo, Cyclo)

}  // namespace klr
