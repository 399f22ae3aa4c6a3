#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mqinv/derived.hpp"
#include "mqinv/matrix.hpp"
#include "mqinv/quiver.hpp"

namespace mqinv {

// --- distributions ----------------------------------------------------------

/// The partition of [1, t_1 + ... + t_l] into consecutive blocks of sizes t_i.
struct Distribution {
  std::vector<int> sizes;

  int total() const;
  /// (block, offset) of j, both 1-based. Throws std::out_of_range.
  std::pair<int, int> lookup(int j) const;
  int block(int j) const { return lookup(j).first; }
  int offset(int j) const { return lookup(j).second; }
};

std::pair<int, int> distribution_lookup(const std::vector<int>& t, int j);

// --- tableaux -----------------------------------------------------------------

/// Cell address, 1-based; rows are numbered from the top.
struct Cell {
  int column = 0;
  int row = 0;
  bool operator==(const Cell&) const = default;
  auto operator<=>(const Cell&) const = default;
};

struct TableauArrow {
  Cell tail;
  Cell head;
  int label = 1;
  bool operator==(const TableauArrow&) const = default;
};

struct Tableau {
  std::vector<int> columns;
  std::vector<TableauArrow> arrows;

  int cell_count() const;
  /// s = number of distinct labels (validate() checks they are exactly 1..s).
  int label_count() const;
  /// Number of arrows carrying each label, indexed by label - 1.
  std::vector<int> fiber_sizes() const;
  /// (tail column, head column) of each label.
  std::vector<std::pair<int, int>> label_columns() const;
  /// Required shape of Y_j: n_{tail column} x n_{head column}.
  std::pair<int, int> label_shape(int label) const;

  bool operator==(const Tableau&) const = default;
};

/// Every violated tableau condition; empty means valid.
std::vector<std::string> tableau_violations(const Tableau& t);
/// Throws std::invalid_argument listing the violations.
void require_valid(const Tableau& t);

/// prod over labels of (fiber size)!.
mpz_class c_T(const Tableau& t);

/// det tableau: columns (n, n), arrows (1,i) -> (2,i), one label. bpf = det(Y).
Tableau det_tableau(int n);
/// One column of n cells (n even), arrows (2i-1) -> (2i), one label. bpf = P(Y).
Tableau pfaffian_tableau(int n);

// --- bpf ----------------------------------------------------------------------

struct TableauLimits {
  int max_cells_symbolic = 12;
  int max_cells_numeric = 16;
  /// Upper bound on prod n_i!, the number of terms of the signed sum.
  double max_terms = 5e7;
};

/// Signed permutation sum over the column symmetric groups (no division).
Polynomial bpf0(const Tableau& t, const std::vector<PolyMatrix>& ys, const TableauLimits& limits = {});
Scalar bpf0(const Tableau& t, const std::vector<ScalarMatrix>& ys, const TableauLimits& limits = {});

/// bpf0 / c_T. When c_T > 1 the sum is formed over Z (denominators cleared,
/// F_p values lifted to [0,p)), every coefficient is checked to be divisible
/// by c_T, and only then reduced into the input field. A failed check throws
/// std::logic_error.
Polynomial bpf(const Tableau& t, const std::vector<PolyMatrix>& ys, const TableauLimits& limits = {});
Scalar bpf(const Tableau& t, const std::vector<ScalarMatrix>& ys, const TableauLimits& limits = {});

/// Counters for the divisibility check performed by bpf.
struct IntegralityStats {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
};
IntegralityStats integrality_stats();
void reset_integrality_stats();

/// Compares bpf_T(Y) with the partial linearization P_{k}(Z_1..Z_s) where
/// Z_p carries Y_p in block (tail column, head column) and k_p is the fiber
/// size of label p. Returns the sign relating them (+1 when both vanish);
/// throws std::logic_error when neither sign matches.
int lemma1_check(const Tableau& t, const std::vector<PolyMatrix>& ys, const TableauLimits& limits = {});
int lemma1_check(const Tableau& t, const std::vector<ScalarMatrix>& ys, const TableauLimits& limits = {});

// --- path Q-tableaux -----------------------------------------------------------

struct PathTableauCheck {
  bool valid = false;
  /// Semi-invariance needs w_v = 0 at every Sp vertex.
  bool semi_invariance_applies = false;
  std::vector<std::string> diagnostics;
};

/// Checks that columns = (n_1 repeated w_1 times, ..., n_l repeated w_l times)
/// and that each arrow a with label j has a path alpha = label_paths[j-1] in
/// the quiver of `setting` with W|a'| = i(alpha'') and W|a''| = alpha'.
PathTableauCheck is_path_Q_tableau(const MixedQuiverSetting& setting, const Tableau& t,
                                   const std::vector<Path>& label_paths, const std::vector<int>& weight);

/// Y_j = Phi(X_{alpha_r} ... X_{alpha_1}) for the label paths of a path tableau
/// over the derived setting `d` (use identity_derivation for plain settings).
std::vector<PolyMatrix> path_substitution(const DerivedSetting& d, const std::vector<Path>& label_paths,
                                          Field field = Field::rationals());
std::vector<ScalarMatrix> path_substitution_values(const DerivedSetting& d, const std::vector<Path>& label_paths,
                                                   const RepresentationPoint& base_point);

}  // namespace mqinv
