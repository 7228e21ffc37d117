#pragma once

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "klr/blocks.hpp"
#include "klr/series.hpp"

namespace klr {

// Choice of the series q_r(i) (degenerate) or Q_r(i) (non-degenerate).
// Paper: the displayed suggestion. Alt: the same times (1 + y_r) when
// i_r < i_{r+1} and times (1 + y_{r+1})^{-1} when i_r > i_{r+1}.
enum class QChoice { Paper, Alt };
QChoice parse_qchoice(const std::string& s);
std::string qchoice_name(QChoice c);

// ---------------------------------------------------------------------------
// Operators on a module with weight-space decomposition, stored by their
// components e(j) M e(k) as dims[j] x dims[k] matrices. Zero components are
// not stored.

template <class E>
class CompOp {
 public:
  using Key = std::pair<int, int>;  // (target j, source k)

  CompOp() = default;
  explicit CompOp(std::vector<int> dims) : dims_(std::move(dims)) {}

  static CompOp projector(const std::vector<int>& dims, int k, const E& one);
  static CompOp diagonal(const std::vector<int>& dims, const std::vector<Matrix<E>>& blocks);

  const std::vector<int>& dims() const { return dims_; }
  int weights() const { return static_cast<int>(dims_.size()); }
  const std::map<Key, Matrix<E>>& components() const { return c_; }
  // Component (j, k), or the zero matrix.
  Matrix<E> get(int j, int k) const;
  void add(int j, int k, const Matrix<E>& m);

  CompOp operator+(const CompOp& o) const;
  CompOp operator-(const CompOp& o) const;
  CompOp operator*(const CompOp& o) const;
  CompOp scaled(const E& c) const;
  bool is_zero() const { return c_.empty(); }
  bool operator==(const CompOp& o) const { return (*this - o).is_zero(); }

 private:
  std::vector<int> dims_;
  std::map<Key, Matrix<E>> c_;
};

// The data the relation verifier needs: weights, weight-space dimensions and
// the actions of y_r and psi_r.
template <class E>
struct KLRAction {
  int d = 0;
  int e = 0;
  DominantWeight weight;
  PositiveRoot alpha;
  std::vector<Seq> weights;  // sequences with e(i) != 0
  std::vector<int> dims;
  std::vector<CompOp<E>> y, psi;  // y[r-1], psi[r-1]
  E one;
  bool complete = true;  // sum of the e(i) is the identity

  int find(const Seq& i) const;
  CompOp<E> idem(int k) const { return CompOp<E>::projector(dims, k, one); }
};

// ---------------------------------------------------------------------------
// Symbolic relation instances.

struct Gen {
  enum Kind { Idem, Y, Psi } kind;
  int r = 0;  // 1-based for Y and Psi
  Seq seq;    // for Idem
};

struct Term {
  long coeff;
  std::vector<Gen> word;  // applied right to left, then to e(base)
};

struct Instance {
  std::string family;
  Seq base;
  std::vector<Term> terms;  // sum of terms times e(base) must vanish
};

// All instances of the defining relations for (Lambda, alpha), with e(base)
// on the right. The completeness relation sum e(i) = 1 is reported separately.
std::vector<Instance> relation_instances(const DominantWeight& L, const PositiveRoot& alpha, int e);

// Degree of word * e(base). Returns false when an idempotent in the word
// mismatches and the term vanishes identically.
bool term_degree(const Term& t, const Seq& base, int e, int& degree);

struct FamilyCount {
  int checked = 0;
  int failed = 0;
  int vacuous = 0;  // instances with e(base) = 0
  std::string first_failure;
};

struct Report {
  std::map<std::string, FamilyCount> families;

  void record(const std::string& family, bool ok, const std::string& detail = "");
  void vacuous(const std::string& family);
  void merge(const Report& o);
  bool passed() const;
  int failures() const;
  int checked() const;
  std::string summary() const;
};

template <class E>
Report verify_klr_relations(const KLRAction<E>& A);

// Every instance is homogeneous for deg e(i) = 0, deg y_r = 2 and
// deg psi_r e(i) = -a_{i_r, i_{r+1}}.
Report check_grading(const DominantWeight& L, const PositiveRoot& alpha, int e);

// ---------------------------------------------------------------------------
// Series p_r(i), q_r(i) (resp. P_r(i), Q_r(i)) in d variables, order T.

template <class E>
struct SeriesPair {
  TruncatedSeries<E> p, q;
};

template <class E>
SeriesPair<E> klr_series(const Field<E>& F, int e, const Seq& i, int r, int T, QChoice choice);

// The required properties of p and q on all sequences of length d over the
// residue window: the equal case, the product identity with s_r, the shift
// compatibility, and the symmetry identities of p.
template <class E>
Report verify_series_choice(const Field<E>& F, const DominantWeight& L, int d, int T, QChoice choice);

// Randomized properties of the series layer: the product rule for d_r in both
// forms and d_r = 0 on s_r-symmetric inputs (series_instances samples), and
// evaluation on commuting nilpotent matrices being a ring homomorphism
// (hom_pairs samples).
template <class E>
Report check_symbolic_properties(const Field<E>& F, int series_instances, int hom_pairs, std::mt19937_64& rng);

// ---------------------------------------------------------------------------

template <class E>
class KLRGens {
 public:
  KLRGens(const Block<E>& B, QChoice choice = QChoice::Paper);

  const Block<E>& block() const { return *B_; }
  const Field<E>& field() const { return B_->field(); }
  QChoice choice() const { return choice_; }
  int d() const { return B_->d(); }
  int e() const { return B_->e(); }
  const std::vector<int>& dims() const { return dims_; }
  const KLRAction<E>& action() const { return act_; }

  // Hecke generators and intertwiners in components.
  const CompOp<E>& x(int r) const { return x_[r - 1]; }
  const CompOp<E>& s(int r) const { return s_[r - 1]; }
  const CompOp<E>& x_inv(int r) const { return xinv_[r - 1]; }
  const CompOp<E>& phi(int r) const { return phi_[r - 1]; }
  const CompOp<E>& y(int r) const { return act_.y[r - 1]; }
  const CompOp<E>& psi(int r) const { return act_.psi[r - 1]; }
  CompOp<E> idem(int k) const { return act_.idem(k); }
  CompOp<E> identity() const;

  // Nilpotency index of y_r on the block, and the truncation orders.
  int nilpotency_index(int r) const { return nil_[r - 1]; }
  int certified_order() const { return T_cert_; }
  int working_order() const { return T_cert_ + 2; }

  // Evaluation of a series on the y-matrices of weight space k.
  Matrix<E> evaluate(int k, const TruncatedSeries<E>& f) const;
  // Per-weight series and their values, r = 1..d-1.
  const SeriesPair<E>& series(int r, int k) const { return series_[r - 1][k]; }
  // Diagonal operator with component f_k(y) at weight k.
  CompOp<E> diagonal(const std::vector<TruncatedSeries<E>>& f) const;

  // Operator on the block basis assembled from its components.
  Matrix<E> assemble(const CompOp<E>& A) const;

 private:
  const Block<E>* B_;
  QChoice choice_;
  std::vector<int> dims_;
  KLRAction<E> act_;
  std::vector<CompOp<E>> x_, s_, xinv_, phi_;
  std::vector<NilpotentFamily<E>> fam_;
  std::vector<int> nil_;
  int T_cert_ = 0;
  std::vector<std::vector<SeriesPair<E>>> series_;
};

// Intertwiner identities, including the corrections in the braid relation,
// and agreement of the series p_r(i) with the direct inverses.
template <class E>
Report verify_intertwiners(const KLRGens<E>& G);

// Hecke generators rebuilt from the KLR generators: x_1..x_d, then the
// Coxeter generators s_1..s_{d-1} (resp. T_r), then X_r^{-1} when q != 1.
template <class E>
std::vector<Matrix<E>> hecke_from_klr(const KLRGens<E>& G);

// Rebuilt Hecke generators equal the originals, and the KLR generators
// generate the whole block.
template <class E>
Report check_round_trip(const KLRGens<E>& G);

// f psi_r e(i) = psi_r (s_r f) e(i) (+ d_r(f) e(i) when i_r = i_{r+1}) for random f.
template <class E>
Report check_divided_difference_identity(const KLRGens<E>& G, std::mt19937_64& rng, int samples);

// Label of a spanning element psi_w y^n e(i).
struct SpanLabel {
  int perm;                // index in symmetric_group(d)
  std::vector<int> n;      // exponents
  int seq;                 // index in enumerate_I_alpha
  bool operator==(const SpanLabel& o) const { return perm == o.perm && n == o.n && seq == o.seq; }
};

template <class E>
struct PoincareResult {
  std::map<int, int> coeffs;  // degree -> dimension
  std::vector<SpanLabel> labels;
  std::vector<int> degrees;
  std::vector<Vec<E>> vectors;  // basis elements applied to 1, block coordinates
  bool spans = false;
  std::string to_string() const;
  int dimension() const;
};

template <class E>
PoincareResult<E> poincare_polynomial(const KLRGens<E>& G);

std::string laurent_to_string(const std::map<int, int>& c);

struct ConjectureReport {
  int level = 0;
  std::vector<int> indices;  // nilpotency index of y_r
  bool holds = true;         // y_r^level = 0 for all r
};

template <class E>
ConjectureReport check_nilpotency_conjecture(const KLRGens<E>& G, int level);

struct CompareReport {
  bool dims_equal = false;
  bool characters_equal = false;
  enum class Structure { Equal, Different, Inconclusive } structure = Structure::Inconclusive;
  std::string detail;
  bool passed() const { return dims_equal && characters_equal && structure != Structure::Different; }
};

std::string structure_name(CompareReport::Structure s);

// Structure constants of the homogeneous bases (as labels) of two blocks.
template <class E>
std::vector<std::vector<Vec<E>>> structure_constants(const KLRGens<E>& G, const PoincareResult<E>& P);

template <class E1, class E2>
CompareReport compare_blocks(const KLRGens<E1>& A, const PoincareResult<E1>& PA, const KLRGens<E2>& B,
                             const PoincareResult<E2>& PB);

}  // namespace klr
