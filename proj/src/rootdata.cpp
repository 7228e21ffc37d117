#include "klr/rootdata.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace klr {

Adjacency adjacency(int e, long i, long j) {
  i = canon(i, e);
  j = canon(j, e);
  if (i == j) return Adjacency::Equal;
  bool up = canon(i + 1, e) == j;
  bool down = canon(i - 1, e) == j;
  if (up && down) return Adjacency::Double;
  if (up) return Adjacency::Right;
  if (down) return Adjacency::Left;
  return Adjacency::Apart;
}

int cartan_entry(int e, long i, long j) {
  switch (adjacency(e, i, j)) {
    case Adjacency::Equal: return 2;
    case Adjacency::Apart: return 0;
    case Adjacency::Right:
    case Adjacency::Left: return -1;
    case Adjacency::Double: return -2;
  }
  return 0;
}

std::string adjacency_symbol(Adjacency a) {
  switch (a) {
    case Adjacency::Equal: return "=";
    case Adjacency::Apart: return "apart";
    case Adjacency::Right: return "->";
    case Adjacency::Left: return "<-";
    case Adjacency::Double: return "<=>";
  }
  return "?";
}

DominantWeight::DominantWeight(std::vector<long> multicharge, int e_) : charges(std::move(multicharge)), e(e_) {
  if (charges.empty()) throw std::invalid_argument("multicharge must be nonempty");
  for (auto& c : charges) c = canon(c, e);
  std::sort(charges.begin(), charges.end());
}

int DominantWeight::multiplicity(long i) const {
  i = canon(i, e);
  return static_cast<int>(std::count(charges.begin(), charges.end(), i));
}

std::string DominantWeight::to_string() const {
  std::string s;
  for (size_t k = 0; k < charges.size();) {
    size_t j = k;
    while (j < charges.size() && charges[j] == charges[k]) ++j;
    if (!s.empty()) s += "+";
    if (j - k > 1) s += std::to_string(j - k);
    s += "L" + std::to_string(charges[k]);
    k = j;
  }
  return s;
}

PositiveRoot PositiveRoot::of_sequence(const Seq& i) {
  PositiveRoot a;
  for (long r : i) a.mult[r]++;
  return a;
}

int PositiveRoot::height() const {
  int h = 0;
  for (const auto& [i, m] : mult) h += m;
  return h;
}

std::string PositiveRoot::to_string() const {
  if (mult.empty()) return "0";
  std::string s;
  for (const auto& [i, m] : mult) {
    if (!s.empty()) s += "+";
    if (m > 1) s += std::to_string(m);
    s += "a" + std::to_string(i);
  }
  return s;
}

Seq PositiveRoot::sorted_sequence() const {
  Seq s;
  for (const auto& [i, m] : mult) s.insert(s.end(), m, i);
  return s;
}

std::vector<Seq> enumerate_I_alpha(int e, const PositiveRoot& alpha) {
  Seq s;
  for (const auto& [i, m] : alpha.mult) s.insert(s.end(), m, canon(i, e));
  std::sort(s.begin(), s.end());
  std::vector<Seq> out;
  do out.push_back(s);
  while (std::next_permutation(s.begin(), s.end()));
  return out;
}

std::vector<long> residue_window(const DominantWeight& L, int d) {
  std::vector<long> w;
  if (L.e > 0) {
    for (long i = 0; i < L.e; ++i) w.push_back(i);
    return w;
  }
  long lo = *std::min_element(L.charges.begin(), L.charges.end()) - d;
  long hi = *std::max_element(L.charges.begin(), L.charges.end()) + d;
  for (long i = lo; i <= hi; ++i) w.push_back(i);
  return w;
}

std::string seq_to_string(const Seq& i, int e) {
  (void)e;
  std::string s = "(";
  for (size_t k = 0; k < i.size(); ++k) s += (k ? "," : "") + std::to_string(i[k]);
  return s + ")";
}

// ---------------------------------------------------------------------------

Perm identity_perm(int d) {
  Perm w(d);
  std::iota(w.begin(), w.end(), 0);
  return w;
}

Perm compose(const Perm& v, const Perm& w) {
  Perm r(w.size());
  for (size_t k = 0; k < w.size(); ++k) r[k] = v[w[k]];
  return r;
}

Perm inverse_perm(const Perm& w) {
  Perm r(w.size());
  for (size_t k = 0; k < w.size(); ++k) r[w[k]] = static_cast<int>(k);
  return r;
}

int perm_length(const Perm& w) {
  int n = 0;
  for (size_t a = 0; a < w.size(); ++a)
    for (size_t b = a + 1; b < w.size(); ++b)
      if (w[a] > w[b]) ++n;
  return n;
}

std::vector<int> reduced_word(const Perm& w) {
  // s_r is a left descent of w iff w^{-1}(r) > w^{-1}(r+1); peel off the smallest.
  std::vector<int> word;
  Perm cur = w;
  const int d = static_cast<int>(w.size());
  while (true) {
    Perm inv = inverse_perm(cur);
    int r = -1;
    for (int k = 0; k + 1 < d; ++k)
      if (inv[k] > inv[k + 1]) {
        r = k;
        break;
      }
    if (r < 0) break;
    word.push_back(r + 1);
    cur = compose(simple_transposition(d, r + 1), cur);
  }
  return word;
}

Perm perm_from_word(int d, const std::vector<int>& word) {
  Perm w = identity_perm(d);
  for (auto it = word.rbegin(); it != word.rend(); ++it) w = compose(simple_transposition(d, *it), w);
  return w;
}

std::vector<Perm> symmetric_group(int d) {
  std::vector<Perm> all;
  Perm w = identity_perm(d);
  do all.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  std::vector<std::pair<std::pair<int, std::vector<int>>, Perm>> keyed;
  for (auto& p : all) {
    auto word = reduced_word(p);
    keyed.push_back({{static_cast<int>(word.size()), word}, p});
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<Perm> out;
  for (auto& k : keyed) out.push_back(k.second);
  return out;
}

Seq act(const Perm& w, const Seq& i) {
  Seq r(i.size());
  for (size_t k = 0; k < i.size(); ++k) r[w[k]] = i[k];
  return r;
}

Seq swap_at(const Seq& i, int r) {
  Seq s = i;
  std::swap(s[r - 1], s[r]);
  return s;
}

// ---------------------------------------------------------------------------

std::vector<Partition> partitions(int d) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(d, d);
  return out;
}

long hook_length_count(const Partition& la) {
  int d = std::accumulate(la.begin(), la.end(), 0);
  Partition conj;
  for (int c = 0; !la.empty() && c < la[0]; ++c) {
    int h = 0;
    for (int r : la)
      if (r > c) ++h;
    conj.push_back(h);
  }
  // d! / prod hooks, computed with exact integer arithmetic on small d.
  long num = 1;
  for (int k = 2; k <= d; ++k) num *= k;
  long den = 1;
  for (size_t r = 0; r < la.size(); ++r)
    for (int c = 0; c < la[r]; ++c) den *= (la[r] - c - 1) + (conj[c] - static_cast<int>(r) - 1) + 1;
  return num / den;
}

std::string partition_to_string(const Partition& la) {
  std::string s = "(";
  for (size_t k = 0; k < la.size(); ++k) s += (k ? "," : "") + std::to_string(la[k]);
  return s + ")";
}

int Tableau::row_of(int k) const {
  for (size_t r = 0; r < rows.size(); ++r)
    for (int x : rows[r])
      if (x == k) return static_cast<int>(r);
  return -1;
}

int Tableau::col_of(int k) const {
  for (const auto& row : rows)
    for (size_t c = 0; c < row.size(); ++c)
      if (row[c] == k) return static_cast<int>(c);
  return -1;
}

bool Tableau::is_standard() const {
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c) {
      if (c + 1 < rows[r].size() && rows[r][c] >= rows[r][c + 1]) return false;
      if (r + 1 < rows.size() && c < rows[r + 1].size() && rows[r][c] >= rows[r + 1][c]) return false;
    }
  return true;
}

Tableau Tableau::swapped(int r) const {
  Tableau t = *this;
  for (auto& row : t.rows)
    for (int& x : row) {
      if (x == r) x = r + 1;
      else if (x == r + 1) x = r;
    }
  return t;
}

Seq Tableau::residue_sequence(int e, long shift) const {
  int d = 0;
  for (const auto& row : rows) d += static_cast<int>(row.size());
  Seq s(d);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c)
      s[rows[r][c] - 1] = canon(static_cast<long>(c) - static_cast<long>(r) + shift, e);
  return s;
}

std::string Tableau::to_string() const {
  std::string s = "[";
  for (size_t r = 0; r < rows.size(); ++r) {
    s += (r ? ",[" : "[");
    for (size_t c = 0; c < rows[r].size(); ++c) s += (c ? "," : "") + std::to_string(rows[r][c]);
    s += "]";
  }
  return s + "]";
}

std::vector<Tableau> standard_tableaux(const Partition& la) {
  // Remove the entry d from a removable corner, recursively. Corners are taken
  // from the lowest row upwards, which yields last-letter order.
  int d = std::accumulate(la.begin(), la.end(), 0);
  std::vector<Tableau> out;
  if (d == 0) {
    out.push_back(Tableau{la, {}});
    return out;
  }
  for (int r = static_cast<int>(la.size()) - 1; r >= 0; --r) {
    bool corner = (r + 1 == static_cast<int>(la.size())) || la[r + 1] < la[r];
    if (!corner) continue;
    Partition mu = la;
    mu[r]--;
    if (mu[r] == 0) mu.pop_back();
    for (auto t : standard_tableaux(mu)) {
      t.shape = la;
      t.rows.resize(la.size());
      t.rows[r].push_back(d);
      out.push_back(std::move(t));
    }
  }
  return out;
}

ResidueData residue_data(const Partition& la, int e, long shift) {
  ResidueData rd;
  for (auto& t : standard_tableaux(la)) {
    Seq s = t.residue_sequence(e, shift);
    rd.tableaux.push_back({t, s});
  }
  if (!rd.tableaux.empty()) rd.weight = PositiveRoot::of_sequence(rd.tableaux.front().second);
  return rd;
}

}  // namespace klr
