#pragma once

#include <map>
#include <string>
#include <vector>

#include "mqinv/quiver.hpp"

namespace mqinv {

/// How one arrow of a derived setting is realized over the base setting.
///   Identity:  X_beta -> X_source
///   Transpose: X_beta -> [J] X_source^t [J]  (J factors per `j_left` / `j_right`)
///   Constant:  X_beta -> E(size) or J(size)
struct SubstitutionRule {
  enum class Kind { Identity, Transpose, Constant };
  enum class ConstantMatrix { E, J };

  Kind kind = Kind::Identity;
  std::string source;
  bool j_left = false;
  bool j_right = false;
  ConstantMatrix constant = ConstantMatrix::E;
  int size = 0;

  bool operator==(const SubstitutionRule&) const = default;
};

using SubstitutionMap = std::map<std::string, SubstitutionRule>;

/// A setting built from `base` together with the substitution Phi from the
/// derived coordinate ring to the base one.
struct DerivedSetting {
  std::string construction;  // "double", "loop", "reduce", "normalize" or "identity"
  MixedQuiverSetting setting;
  MixedQuiverSetting base;
  SubstitutionMap substitution;
  /// (source vertex, new vertex) for every appended vertex.
  std::vector<std::pair<int, int>> new_vertices;
};

/// Arrow id conventions in derived settings.
std::string transpose_id(const std::string& arrow);
std::string beta_id(int v);
std::string gamma_id(int v);
std::string loop_id(int v);

/// The trivial derivation: same setting, identity substitution.
DerivedSetting identity_derivation(const MixedQuiverSetting& base);
/// Normalization wrapped as a derivation (arrows unchanged).
DerivedSetting normalize_derivation(const MixedQuiverSetting& base);

/// Mixed double quiver setting. Requires a valid setting satisfying the twin
/// condition; adds a^t for every M arrow a.
DerivedSetting double_setting(const MixedQuiverSetting& base);
/// Adds a loop at each v < i(v), realized as E(n_v). Requires GL/SL labels and
/// M arrows only.
DerivedSetting loopify(const MixedQuiverSetting& base);
/// Reduction to GL/SL labels: O/Sp vertices gain a twin and arrows beta, gamma
/// (realized as E or J); SO vertices gain an SL twin and one arrow beta.
DerivedSetting reduce(const MixedQuiverSetting& base);

/// Phi(X_beta) over the base generic matrices.
PolyMatrix substituted_matrix(const DerivedSetting& d, const std::string& arrow, Field field = Field::rationals());
/// Phi(X_beta) evaluated at a base point.
ScalarMatrix substituted_value(const DerivedSetting& d, const std::string& arrow, const RepresentationPoint& base_point);

/// Phi(f) for f over the derived variables.
Polynomial apply_substitution(const DerivedSetting& d, const Polynomial& f);

/// The derived point (Phi(X_beta)(h))_beta for a base point h.
RepresentationPoint lift_point(const DerivedSetting& d, const RepresentationPoint& base_point);

/// Phi(X_{beta_r}) ... Phi(X_{beta_1}).
PolyMatrix path_matrix(const DerivedSetting& d, const Path& path, Field field = Field::rationals());
ScalarMatrix path_value(const DerivedSetting& d, const Path& path, const RepresentationPoint& base_point);

/// Multidegree of an arrow word after substitution: identity and transpose
/// arrows count toward their source, constants count nothing.
std::map<std::string, int> path_arrow_counts(const DerivedSetting& d, const Path& path);

}  // namespace mqinv
