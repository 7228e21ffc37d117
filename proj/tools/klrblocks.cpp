// klrblocks: blocks of cyclotomic Hecke algebras and their KLR generators.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "klr/klr.hpp"
#include "klr/seminormal.hpp"

using namespace klr;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string field = "Q";
  std::string against;
  std::vector<long> charge{0};
  int d = 3;
  std::string out;
  int jobs = 1;
  std::string qchoice = "paper";
};

// ---------------------------------------------------------------------------
// Rendering.

std::string render_residue(long i, int e) {
  if (e == 0) return std::to_string(i);
  return std::to_string(canon(i, e)) + " mod " + std::to_string(e);
}

std::string render_seq(const Seq& i, int e) {
  std::string s = "(";
  for (size_t k = 0; k < i.size(); ++k) s += (k ? ", " : "") + render_residue(i[k], e);
  return s + ")";
}

std::string render_alpha(const PositiveRoot& a, int e) {
  if (a.mult.empty()) return "0";
  std::string s;
  for (const auto& [i, m] : a.mult) {
    if (!s.empty()) s += " + ";
    if (m != 1) s += std::to_string(m) + "*";
    s += "a[" + render_residue(i, e) + "]";
  }
  return s;
}

json alpha_json(const PositiveRoot& a, int e) {
  json j = json::array();
  for (const auto& [i, m] : a.mult) j.push_back({{"residue", render_residue(i, e)}, {"multiplicity", m}});
  return j;
}

json character_json(const Character& ch, int e) {
  json j = json::array();
  for (const auto& [i, m] : ch) j.push_back({{"sequence", render_seq(i, e)}, {"multiplicity", m}});
  return j;
}

json report_json(const Report& r) {
  json fams = json::object();
  for (const auto& [name, f] : r.families) {
    json x = {{"checked", f.checked}, {"failed", f.failed}, {"vacuous", f.vacuous}};
    if (f.failed) x["first_failure"] = f.first_failure;
    fams[name] = x;
  }
  return {{"passed", r.passed()}, {"checked", r.checked()}, {"failed", r.failures()}, {"families", fams}};
}

Report to_report(const std::vector<CheckResult>& rs) {
  Report r;
  for (const auto& c : rs) r.record(c.name, c.passed, c.detail);
  return r;
}

template <class E>
std::string matrix_string(const Matrix<E>& M) {
  std::string s = "[";
  for (int i = 0; i < M.rows(); ++i) {
    s += i ? "; " : "";
    for (int j = 0; j < M.cols(); ++j) s += (j ? " " : "") + to_string(M(i, j));
  }
  return s + "]";
}

// Left-aligned text table.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& os) const {
    std::vector<size_t> w;
    for (const auto& r : rows_)
      for (size_t c = 0; c < r.size(); ++c) {
        if (w.size() <= c) w.push_back(0);
        w[c] = std::max(w[c], r[c].size());
      }
    for (const auto& r : rows_) {
      std::string line;
      for (size_t c = 0; c < r.size(); ++c) {
        line += r[c];
        if (c + 1 < r.size()) line += std::string(w[c] - r[c].size() + 2, ' ');
      }
      os << line << "\n";
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

// ---------------------------------------------------------------------------
// Parallel map with results in index order.

template <class T, class Fn>
std::vector<T> parallel_map(int n, int jobs, Fn&& fn) {
  std::vector<T> out(n);
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex m;
  auto worker = [&] {
    for (int k; (k = next++) < n;) {
      try {
        out[k] = fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int t = std::max(1, std::min(jobs, n));
  if (t == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < t; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

// ---------------------------------------------------------------------------
// Shared algebra data.

template <class E>
struct Algebra {
  Field<E> F;
  std::unique_ptr<HeckeAlgebra<E>> H;
  WeightData<E> W;
  BlockDecomposition<E> D;
  std::vector<std::unique_ptr<Block<E>>> blocks;

  Algebra(const Field<E>& f, const std::vector<long>& charge, int d, int jobs) : F(f) {
    H = std::make_unique<HeckeAlgebra<E>>(F, DominantWeight(charge, F.quantum_characteristic()), d);
    W = weight_idempotents(*H);
    D = decompose(*H, W);
    blocks = parallel_map<std::unique_ptr<Block<E>>>(static_cast<int>(D.blocks.size()), jobs,
                                                       [&](int k) { return std::make_unique<Block<E>>(*H, W, D.blocks[k]); });
  }
  int e() const { return H->e(); }
};

std::string charge_string(const std::vector<long>& c) {
  std::string s = "[";
  for (size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k]);
  return s + "]";
}

template <class E>
json header(const std::string& command, const Algebra<E>& A, const Options& o) {
  return {{"schema", 1},
          {"command", command},
          {"field", A.F.name()},
          {"e", A.e()},
          {"charge", o.charge},
          {"weight", A.H->weight().to_string()},
          {"d", o.d},
          {"dim", A.H->dim()}};
}

struct Result {
  json doc;
  Table table{{}};
  bool ok = true;
};

// ---------------------------------------------------------------------------
// Subcommands.

template <class E>
Result run_blocks(const Field<E>& F, const Options& o) {
  Algebra<E> A(F, o.charge, o.d, o.jobs);
  Result res;
  res.doc = header("blocks", A, o);
  res.table = Table({"alpha", "dim", "weights", "character"});
  json arr = json::array();
  const int n = static_cast<int>(A.blocks.size());
  auto chars = parallel_map<Character>(n, o.jobs, [&](int k) { return A.blocks[k]->character(); });
  for (int k = 0; k < n; ++k) {
    const Block<E>& B = *A.blocks[k];
    std::string cs;
    for (const auto& [i, m] : chars[k]) cs += (cs.empty() ? "" : " + ") + (m != 1 ? std::to_string(m) + "*" : "") + render_seq(i, A.e());
    arr.push_back({{"alpha", alpha_json(B.alpha(), A.e())},
                   {"dim", B.dim()},
                   {"character", character_json(chars[k], A.e())}});
    res.table.add({render_alpha(B.alpha(), A.e()), std::to_string(B.dim()), std::to_string(B.num_weights()), cs});
  }
  res.doc["blocks"] = arr;
  return res;
}

template <class E>
Result run_verify(const Field<E>& F, const Options& o) {
  const QChoice choice = parse_qchoice(o.qchoice);
  Algebra<E> A(F, o.charge, o.d, o.jobs);
  Result res;
  res.doc = header("verify", A, o);
  res.doc["qchoice"] = qchoice_name(choice);
  res.table = Table({"scope", "checked", "failed", "status"});

  Report global = to_report(A.H->verify());
  global.merge(to_report(A.D.checks));
  long sum = 0;
  for (const auto& b : A.D.blocks) sum += b.dim;
  global.record("block dimensions sum to dim H", sum == A.H->dim());
  res.doc["algebra"] = report_json(global);
  res.table.add({"algebra", std::to_string(global.checked()), std::to_string(global.failures()),
                 global.passed() ? "ok" : "FAIL"});
  res.ok = global.passed();

  const int n = static_cast<int>(A.blocks.size());
  auto reports = parallel_map<Report>(n, o.jobs, [&](int k) {
    const Block<E>& B = *A.blocks[k];
    Report r = to_report(B.verify());
    KLRGens<E> G(B, choice);
    r.merge(verify_klr_relations(G.action()));
    r.merge(verify_intertwiners(G));
    r.merge(check_round_trip(G));
    r.merge(check_grading(B.algebra().weight(), B.alpha(), B.e()));
    auto P = poincare_polynomial(G);
    r.record("Poincare polynomial at t = 1 is dim B", P.spans && P.dimension() == B.dim());
    return r;
  });
  json arr = json::array();
  for (int k = 0; k < n; ++k) {
    const Block<E>& B = *A.blocks[k];
    json j = report_json(reports[k]);
    j["alpha"] = alpha_json(B.alpha(), A.e());
    j["dim"] = B.dim();
    arr.push_back(j);
    res.table.add({render_alpha(B.alpha(), A.e()), std::to_string(reports[k].checked()),
                   std::to_string(reports[k].failures()), reports[k].passed() ? "ok" : "FAIL"});
    res.ok = res.ok && reports[k].passed();
  }
  res.doc["blocks"] = arr;
  res.doc["passed"] = res.ok;
  return res;
}

template <class E>
Result run_poincare(const Field<E>& F, const Options& o) {
  const QChoice choice = parse_qchoice(o.qchoice);
  Algebra<E> A(F, o.charge, o.d, o.jobs);
  Result res;
  res.doc = header("poincare", A, o);
  res.doc["qchoice"] = qchoice_name(choice);
  res.table = Table({"alpha", "dim", "poincare"});
  const int n = static_cast<int>(A.blocks.size());
  auto ps = parallel_map<PoincareResult<E>>(n, o.jobs, [&](int k) {
    KLRGens<E> G(*A.blocks[k], choice);
    return poincare_polynomial(G);
  });
  json arr = json::array();
  for (int k = 0; k < n; ++k) {
    const Block<E>& B = *A.blocks[k];
    json coeffs = json::object();
    for (const auto& [deg, c] : ps[k].coeffs) coeffs[std::to_string(deg)] = c;
    const bool ok = ps[k].spans && ps[k].dimension() == B.dim();
    arr.push_back({{"alpha", alpha_json(B.alpha(), A.e())},
                   {"dim", B.dim()},
                   {"poincare", ps[k].to_string()},
                   {"coefficients", coeffs},
                   {"spans", ok}});
    res.table.add({render_alpha(B.alpha(), A.e()), std::to_string(B.dim()), ps[k].to_string()});
    res.ok = res.ok && ok;
  }
  res.doc["blocks"] = arr;
  return res;
}

template <class E>
Result run_conjecture(const Field<E>& F, const Options& o) {
  Algebra<E> A(F, o.charge, o.d, o.jobs);
  const int level = A.H->level();
  Result res;
  res.doc = header("conjecture", A, o);
  res.doc["level"] = level;
  res.table = Table({"alpha", "dim", "nilpotency indices", "max", "y_r^l = 0"});
  const int n = static_cast<int>(A.blocks.size());
  auto reps = parallel_map<ConjectureReport>(n, o.jobs, [&](int k) {
    KLRGens<E> G(*A.blocks[k]);
    return check_nilpotency_conjecture(G, level);
  });
  json arr = json::array();
  int largest = 0;
  for (int k = 0; k < n; ++k) {
    const Block<E>& B = *A.blocks[k];
    const auto& r = reps[k];
    const int mx = r.indices.empty() ? 0 : *std::max_element(r.indices.begin(), r.indices.end());
    largest = std::max(largest, mx);
    std::string idx;
    for (size_t t = 0; t < r.indices.size(); ++t) idx += (t ? "," : "") + std::to_string(r.indices[t]);
    arr.push_back({{"alpha", alpha_json(B.alpha(), A.e())},
                   {"dim", B.dim()},
                   {"nilpotency_indices", r.indices},
                   {"max", mx},
                   {"holds", r.holds}});
    res.table.add({render_alpha(B.alpha(), A.e()), std::to_string(B.dim()), idx.empty() ? "-" : idx,
                   std::to_string(mx), r.holds ? "yes" : "NO"});
    res.ok = res.ok && r.holds;
  }
  res.doc["blocks"] = arr;
  res.doc["largest_index"] = largest;
  res.doc["holds"] = res.ok;
  return res;
}

template <class E>
Result run_seminormal(const Field<E>& F, const Options& o) {
  if (F.quantum_characteristic() != 0) throw UsageError("seminormal requires a field with e = 0");
  if (o.charge != std::vector<long>{0}) throw UsageError("seminormal uses --charge 0");
  const QChoice choice = parse_qchoice(o.qchoice);
  Result res;
  res.doc = {{"schema", 1}, {"command", "seminormal"}, {"field", F.name()}, {"e", 0},
             {"charge", o.charge}, {"d", o.d}, {"qchoice", qchoice_name(choice)}};
  res.table = Table({"lambda", "dim", "checked", "failed", "status"});
  const auto las = partitions(o.d);
  const int n = static_cast<int>(las.size());
  struct Item {
    Report rep;
    json mats;
  };
  auto items = parallel_map<Item>(n, o.jobs, [&](int k) {
    Item it;
    it.rep = verify_specht(las[k], F, choice);
    const auto S = specht_module(las[k], F);
    it.mats = json::array();
    for (const auto& M : seminormal_action(S, F, choice)) it.mats.push_back(matrix_string(M));
    return it;
  });
  json arr = json::array();
  for (int k = 0; k < n; ++k) {
    const auto S = specht_module(las[k], F);
    json tabs = json::array();
    for (size_t t = 0; t < S.tableaux.size(); ++t)
      tabs.push_back({{"tableau", S.tableaux[t].to_string()}, {"residues", render_seq(S.residues[t], 0)}});
    json j = report_json(items[k].rep);
    j["lambda"] = partition_to_string(las[k]);
    j["dim"] = S.dim();
    j["tableaux"] = tabs;
    j["generators"] = items[k].mats;
    arr.push_back(j);
    res.table.add({partition_to_string(las[k]), std::to_string(S.dim()), std::to_string(items[k].rep.checked()),
                   std::to_string(items[k].rep.failures()), items[k].rep.passed() ? "ok" : "FAIL"});
    res.ok = res.ok && items[k].rep.passed();
  }
  res.doc["modules"] = arr;
  res.doc["passed"] = res.ok;
  return res;
}

template <class E1, class E2>
Result run_compare(const Field<E1>& F1, const Field<E2>& F2, const Options& o) {
  if (F1.quantum_characteristic() != F2.quantum_characteristic())
    throw UsageError("compare needs fields with the same e (" + std::to_string(F1.quantum_characteristic()) + " vs " +
                     std::to_string(F2.quantum_characteristic()) + ")");
  Algebra<E1> A(F1, o.charge, o.d, o.jobs);
  Algebra<E2> B(F2, o.charge, o.d, o.jobs);
  const int e = A.e();
  Result res;
  res.doc = header("compare", A, o);
  res.doc["against"] = B.F.name();
  res.table = Table({"alpha", "dim", "dim'", "characters", "structure"});

  std::vector<PositiveRoot> alphas;
  for (const auto& b : A.blocks) alphas.push_back(b->alpha());
  for (const auto& b : B.blocks)
    if (std::find(alphas.begin(), alphas.end(), b->alpha()) == alphas.end()) alphas.push_back(b->alpha());
  std::sort(alphas.begin(), alphas.end());
  auto find = [](const auto& blocks, const PositiveRoot& a) -> int {
    for (size_t k = 0; k < blocks.size(); ++k)
      if (blocks[k]->alpha() == a) return static_cast<int>(k);
    return -1;
  };

  const int n = static_cast<int>(alphas.size());
  struct Item {
    int dim1 = 0, dim2 = 0;
    bool present = false;
    CompareReport rep;
  };
  auto items = parallel_map<Item>(n, o.jobs, [&](int k) {
    Item it;
    const int a = find(A.blocks, alphas[k]), b = find(B.blocks, alphas[k]);
    if (a >= 0) it.dim1 = A.blocks[a]->dim();
    if (b >= 0) it.dim2 = B.blocks[b]->dim();
    if (a < 0 || b < 0) return it;
    it.present = true;
    KLRGens<E1> G1(*A.blocks[a]);
    KLRGens<E2> G2(*B.blocks[b]);
    it.rep = compare_blocks(G1, poincare_polynomial(G1), G2, poincare_polynomial(G2));
    return it;
  });
  json arr = json::array();
  for (int k = 0; k < n; ++k) {
    const Item& it = items[k];
    const bool ok = it.present && it.rep.passed();
    const std::string structure = it.present ? structure_name(it.rep.structure) : "missing block";
    arr.push_back({{"alpha", alpha_json(alphas[k], e)},
                   {"dim", it.dim1},
                   {"dim_against", it.dim2},
                   {"dims_equal", it.present && it.rep.dims_equal},
                   {"characters_equal", it.present && it.rep.characters_equal},
                   {"structure", structure},
                   {"detail", it.rep.detail}});
    res.table.add({render_alpha(alphas[k], e), std::to_string(it.dim1), std::to_string(it.dim2),
                   it.present && it.rep.characters_equal ? "equal" : "differ", structure});
    res.ok = res.ok && ok;
  }
  res.doc["blocks"] = arr;
  res.doc["passed"] = res.ok;
  return res;
}

// ---------------------------------------------------------------------------

void validate(const Options& o) {
  if (o.d < 0) throw UsageError("--d must be non-negative");
  if (o.jobs < 1) throw UsageError("--jobs must be at least 1");
  if (o.charge.empty()) throw UsageError("--charge must list at least one residue");
  if (o.qchoice != "paper" && o.qchoice != "alt") throw UsageError("--qchoice must be paper or alt");
}

AnyField field_of(const std::string& spec, const std::string& flag) {
  try {
    return make_field(spec);
  } catch (const std::exception& ex) {
    throw UsageError(flag + ": " + ex.what());
  }
}

Result dispatch(const std::string& cmd, const Options& o) {
  const AnyField F = field_of(o.field, "--field");
  if (cmd == "compare") {
    if (o.against.empty()) throw UsageError("compare requires --against");
    const AnyField G = field_of(o.against, "--against");
    return std::visit([&](const auto& f, const auto& g) { return run_compare(f, g, o); }, F, G);
  }
  return std::visit(
      [&](const auto& f) {
        if (cmd == "blocks") return run_blocks(f, o);
        if (cmd == "verify") return run_verify(f, o);
        if (cmd == "poincare") return run_poincare(f, o);
        if (cmd == "conjecture") return run_conjecture(f, o);
        return run_seminormal(f, o);
      },
      F);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blocks of cyclotomic Hecke algebras and their KLR generators"};
  app.require_subcommand(1);
  Options o;

  struct Sub {
    const char* name;
    const char* help;
  };
  const std::vector<Sub> subs = {
      {"blocks", "block decomposition: dimensions and characters"},
      {"verify", "verify the Hecke, block and KLR relations on every block"},
      {"poincare", "graded dimension of every block"},
      {"seminormal", "semi-normal form of every S(lambda), lambda a partition of d"},
      {"conjecture", "nilpotency index of y_r against the level"},
      {"compare", "compare the blocks over --field and --against"},
  };
  for (const auto& s : subs) {
    CLI::App* sc = app.add_subcommand(s.name, s.help);
    sc->add_option("--field", o.field, "Q, Q,q=2, GF(p), GF(p),q=a or Qzeta(n)")->capture_default_str();
    sc->add_option("--charge", o.charge, "multicharge, comma separated")->delimiter(',')->capture_default_str();
    sc->add_option("--d", o.d, "rank d")->capture_default_str();
    sc->add_option("--out", o.out, "write JSON to this file ('-' for stdout)");
    sc->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
    sc->add_option("--qchoice", o.qchoice, "paper or alt")->capture_default_str();
    if (std::string(s.name) == "compare") sc->add_option("--against", o.against, "second field")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex);
    return code == 0 ? 0 : kExitUsage;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  Result res;
  try {
    validate(o);
    res = dispatch(cmd, o);
  } catch (const UsageError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  }

  if (o.out == "-") {
    std::cout << res.doc.dump(2) << "\n";
  } else {
    res.table.print(std::cout);
    if (!o.out.empty()) {
      std::ofstream f(o.out);
      if (!f) {
        std::cerr << "error: cannot write " << o.out << "\n";
        return kExitUsage;
      }
      f << res.doc.dump(2) << "\n";
    }
  }
  if (!res.ok) std::cerr << cmd << ": verification failed\n";
  return res.ok ? 0 : kExitFailure;
}
