#pragma once

#include <map>
#include <string>
#include <vector>

#include "klr/series.hpp"

namespace klr {

using Seq = std::vector<long>;

// Canonical representative of residue i: itself when e = 0, in [0, e) otherwise.
inline long canon(long i, int e) {
  if (e == 0) return i;
  long r = i % e;
  return r < 0 ? r + e : r;
}

enum class Adjacency {
  Equal,    // i = j
  Apart,    // j != i, i +- 1
  Right,    // i -> j : j = i + 1 != i - 1
  Left,     // i <- j : j = i - 1 != i + 1
  Double,   // j = i + 1 = i - 1 (e = 2 only)
};

Adjacency adjacency(int e, long i, long j);
int cartan_entry(int e, long i, long j);
std::string adjacency_symbol(Adjacency a);

// Dominant weight given by its multicharge; stored ascending and canonical.
struct DominantWeight {
  std::vector<long> charges;
  int e = 0;

  DominantWeight() = default;
  DominantWeight(std::vector<long> multicharge, int e);
  int level() const { return static_cast<int>(charges.size()); }
  int multiplicity(long i) const;  // (Lambda, alpha_i)
  std::string to_string() const;   // e.g. "2L0" or "L0+L1"
};

// Element of Q_+ as residue -> multiplicity.
struct PositiveRoot {
  std::map<long, int> mult;

  static PositiveRoot of_sequence(const Seq& i);
  int height() const;
  bool operator==(const PositiveRoot& o) const { return mult == o.mult; }
  bool operator<(const PositiveRoot& o) const { return mult < o.mult; }
  std::string to_string() const;  // e.g. "a0+2a1"
  Seq sorted_sequence() const;
};

// All sequences of weight alpha, lexicographically ordered.
std::vector<Seq> enumerate_I_alpha(int e, const PositiveRoot& alpha);

// Residues that can occur as eigenvalue labels in degree d.
std::vector<long> residue_window(const DominantWeight& L, int d);

std::string seq_to_string(const Seq& i, int e);

// ---------------------------------------------------------------------------
// Permutations (0-based one-line notation): (v w)(k) = v(w(k)).

Perm identity_perm(int d);
Perm compose(const Perm& v, const Perm& w);
Perm inverse_perm(const Perm& w);
int perm_length(const Perm& w);
// Lexicographically smallest reduced word, letters 1-based.
std::vector<int> reduced_word(const Perm& w);
Perm perm_from_word(int d, const std::vector<int>& word);
// All of S_d ordered by (length, lex-min reduced word).
std::vector<Perm> symmetric_group(int d);
// Place action: (w.i)_k = i_{w^{-1}(k)}.
Seq act(const Perm& w, const Seq& i);
Seq swap_at(const Seq& i, int r);  // s_r . i, r 1-based

// ---------------------------------------------------------------------------
// Partitions and tableaux.

using Partition = std::vector<int>;

std::vector<Partition> partitions(int d);
long hook_length_count(const Partition& la);
std::string partition_to_string(const Partition& la);

struct Tableau {
  Partition shape;
  std::vector<std::vector<int>> rows;  // entries 1..d

  int row_of(int k) const;
  int col_of(int k) const;
  bool is_standard() const;
  // Swaps the entries r and r + 1.
  Tableau swapped(int r) const;
  Seq residue_sequence(int e, long shift = 0) const;
  std::string to_string() const;
  bool operator==(const Tableau& o) const { return rows == o.rows; }
};

// Standard tableaux of shape la in last-letter order.
std::vector<Tableau> standard_tableaux(const Partition& la);

struct ResidueData {
  PositiveRoot weight;
  std::vector<std::pair<Tableau, Seq>> tableaux;
};

ResidueData residue_data(const Partition& la, int e, long shift = 0);

}  // namespace klr
