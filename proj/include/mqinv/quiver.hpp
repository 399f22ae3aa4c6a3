#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mqinv/matrix.hpp"

namespace mqinv {

enum class Group { GL, O, Sp, SL, SO };
/// Subspace of an arrow: all matrices, symmetric, skew, and the J-twisted
/// variants (X*J symmetric, X*J skew).
enum class ArrowKind { M, SymPlus, SymMinus, LPlus, LMinus };

std::string to_string(Group g);
std::string to_string(ArrowKind h);
Group parse_group(std::string_view text);
ArrowKind parse_arrow_kind(std::string_view text);

/// Arrow with tail alpha'' and head alpha' (1-based vertices).
struct Arrow {
  std::string id;
  int tail = 0;
  int head = 0;

  bool is_loop() const { return tail == head; }
  bool operator==(const Arrow&) const = default;
};

struct Quiver {
  int vertex_count = 0;
  std::vector<Arrow> arrows;

  /// Index into `arrows`, or nullopt.
  std::optional<std::size_t> find(std::string_view id) const;
  const Arrow& arrow(std::string_view id) const;
  bool operator==(const Quiver&) const = default;
};

/// A quiver with dimension vector, group labels, arrow subspace labels and a
/// vertex involution. Vectors are indexed by (vertex - 1) and by arrow index.
struct MixedQuiverSetting {
  Quiver quiver;
  std::vector<int> dim;
  std::vector<Group> group;
  std::vector<ArrowKind> kind;
  std::vector<int> involution;

  int vertex_count() const { return quiver.vertex_count; }
  int n(int v) const { return dim.at(v - 1); }
  Group g(int v) const { return group.at(v - 1); }
  int inv(int v) const { return involution.at(v - 1); }
  ArrowKind kind_of(std::string_view arrow_id) const;
  const Arrow& arrow(std::string_view id) const { return quiver.arrow(id); }

  bool operator==(const MixedQuiverSetting&) const = default;
};

/// A failed validity condition. `condition` is the letter "a".."i", "4" for
/// the GL/SL twin condition, or "structure" for malformed data.
struct Violation {
  std::string condition;
  std::string location;
  std::string message;

  std::string to_string() const;
};

/// Every violated condition; empty means valid. `characteristic` is the
/// characteristic of the ground field (0 for Q).
std::vector<Violation> validate(const MixedQuiverSetting& setting, std::uint64_t characteristic = 0);
bool is_valid(const MixedQuiverSetting& setting, std::uint64_t characteristic = 0);
/// Throws std::invalid_argument listing the violations.
void require_valid(const MixedQuiverSetting& setting, std::uint64_t characteristic = 0);

/// Condition (4): every GL/SL vertex v has i(v) != v.
bool satisfies_twin_condition(const MixedQuiverSetting& setting);

struct NormalizedSetting {
  MixedQuiverSetting setting;
  /// (source vertex, appended twin) pairs in ascending source order.
  std::vector<std::pair<int, int>> twins;
};

/// Appends a twin for every GL/SL vertex fixed by the involution.
NormalizedSetting normalize(const MixedQuiverSetting& setting);

// --- generic matrices -----------------------------------------------------

/// Generic matrix of an arrow. Dependent entries of constrained kinds are
/// written in terms of the free ones:
///   S+ : (j,i) aliases (i,j) for i<j
///   S- : diagonal 0, (j,i) = -(i,j)
///   L+ : blocks [[A, B], [C, -A^t]] with B, C symmetric (X*J symmetric)
///   L- : blocks [[A, B], [C,  A^t]] with B, C skew     (X*J skew)
PolyMatrix generic_matrix(const std::string& arrow, int rows, int cols, ArrowKind kind = ArrowKind::M,
                          Field field = Field::rationals());

/// Free variables of generic_matrix, in row-major order of first appearance.
std::vector<Variable> free_variables(const std::string& arrow, int rows, int cols, ArrowKind kind);

/// Shape of the generic matrix of an arrow: n_{head} x n_{tail}.
std::pair<int, int> arrow_shape(const MixedQuiverSetting& setting, const Arrow& a);
PolyMatrix generic_matrix(const MixedQuiverSetting& setting, std::string_view arrow_id,
                          Field field = Field::rationals());

/// Whether `m` lies in the subspace of the given kind.
bool in_subspace(const ScalarMatrix& m, ArrowKind kind);

// --- representation points -----------------------------------------------

/// Numeric matrices h_alpha, keyed by arrow id.
struct RepresentationPoint {
  std::map<std::string, ScalarMatrix> matrices;

  const ScalarMatrix& at(const std::string& id) const;
  bool operator==(const RepresentationPoint&) const = default;
};

/// Values of the free variables of every generic matrix at `point`.
Assignment to_assignment(const MixedQuiverSetting& setting, const RepresentationPoint& point);

// --- paths ----------------------------------------------------------------

/// Arrow ids alpha_1 ... alpha_r; alpha_1 is traversed first.
using Path = std::vector<std::string>;

bool is_composable(const Quiver& q, const Path& path);
int path_tail(const Quiver& q, const Path& path);
int path_head(const Quiver& q, const Path& path);
bool is_closed(const Quiver& q, const Path& path);
std::string to_string(const Path& path);

/// Every closed path of length <= max_len, once, as its lexicographically
/// smallest rotation (compared by arrow id).
std::vector<Path> enumerate_closed_paths(const Quiver& q, int max_len);

/// Every path of length 1..max_len from `tail` to `head`, in lexicographic order.
std::vector<Path> enumerate_paths(const Quiver& q, int tail, int head, int max_len);

/// X_{alpha_r} ... X_{alpha_1} for a path in `setting`.
PolyMatrix path_matrix(const MixedQuiverSetting& setting, const Path& path, Field field = Field::rationals());
ScalarMatrix path_value(const MixedQuiverSetting& setting, const Path& path, const RepresentationPoint& point);

}  // namespace mqinv
