#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mqinv/derived.hpp"
#include "mqinv/tableau.hpp"
#include "mqinv/verify.hpp"

namespace mqinv {

struct GeneratorBounds {
  int max_path_len = 3;
  int max_weight = 1;
  int max_cells = 6;
  /// Generators of total degree above this are described but not expanded.
  int degree_bound = 4;
  /// Enumeration stops with BudgetExceeded beyond this many candidates.
  std::size_t max_generators = 20000;
};

/// One generating invariant, realized over the base setting of a family.
///   Sigma:    sigma_k(X_{path_r} ... X_{path_1})
///   Bpf:      bpf_T(Y_1..Y_s) with Y_j the product along label_paths[j-1]
///   Pfaffian: P_{ks}(W_1..W_s) with W_i the product along words[i]
struct GeneratorDescriptor {
  enum class Kind { Sigma, Bpf, Pfaffian };

  Kind kind = Kind::Sigma;
  Path path;
  int k = 0;
  Tableau tableau;
  std::vector<Path> label_paths;
  std::vector<int> weight;
  std::vector<Path> words;
  std::vector<int> ks;

  /// Per base arrow degree read off the descriptor.
  std::map<std::string, int> multidegree;
  /// Expanded polynomial when the total degree is within the degree bound.
  std::optional<Polynomial> polynomial;
  /// Index of an earlier generator taking the same values up to sign on the
  /// fingerprint points.
  std::optional<std::size_t> duplicate_of;
  /// Unexpanded generator that vanished at every fingerprint point.
  bool vanishes_on_samples = false;

  int total_degree() const;
  std::string label() const;
};

std::string to_string(GeneratorDescriptor::Kind kind);

struct GeneratorFamily {
  /// Arrows of derived.setting are the letters of every path; the group of
  /// derived.base acts.
  DerivedSetting derived;
  GeneratorBounds bounds;
  std::vector<GeneratorDescriptor> generators;
  /// Realized candidates dropped because they are identically zero.
  std::size_t dropped_zero = 0;
};

/// Q^D over the setting. GL/SL vertices fixed by the involution are first
/// given twins; their group elements are then coupled as in normalize().
DerivedSetting generator_quiver(const MixedQuiverSetting& setting);

/// Weights allowed for bpf generators: w_v = w_{i(v)} = 0 at GL/O/Sp, at most
/// one of w_v, w_{i(v)} nonzero at SL, w_v <= 1 with i(v) = v at SO.
bool theorem1_weight_allowed(const MixedQuiverSetting& setting, const std::vector<int>& weight);

/// sigma_k of every rotation class of closed paths in Q^D of length <= max_path_len,
/// 1 <= k <= n at the tail of the path.
GeneratorFamily theorem1_sigma_generators(const MixedQuiverSetting& setting, const GeneratorBounds& bounds = {});

/// bpf of path Q^D-tableaux with singleton fibers: weights up to max_weight
/// allowed by theorem1_weight_allowed, at most max_cells cells, paths of
/// length <= max_path_len. Rows are filled top-down in a fixed order, since
/// reordering rows within a column only changes the sign.
GeneratorFamily theorem1_bpf_generators(const MixedQuiverSetting& setting, const GeneratorBounds& bounds = {});

/// Both families over the same Q^D.
GeneratorFamily theorem1_generators(const MixedQuiverSetting& setting, const GeneratorBounds& bounds = {});

/// Invariants of d n x n matrices under simultaneous conjugation:
///   GL: sigma_k of words in X_i          O, SO: words in X_i, X_i^t
///   Sp: words in X_i, J X_i^t J          SO, n even: also P_{ks}(W_1..W_s), sum ks = n/2
/// Words are rotation classes for sigma and all words for P, of length <= max_word_len.
GeneratorFamily corollary3_generators(int n, int d, Group group, int max_word_len, const GeneratorBounds& bounds = {});

/// Value of a generator at a point of the base setting.
Scalar evaluate_generator(const DerivedSetting& d, const GeneratorDescriptor& g, const RepresentationPoint& base_point);
/// Expanded polynomial of a generator over the base generic matrices.
Polynomial realize_generator(const DerivedSetting& d, const GeneratorDescriptor& g);

/// check_invariance for every non-duplicate generator (all when include_duplicates).
VerificationReport verify_family(const GeneratorFamily& family, const VerifyConfig& config,
                                 bool include_duplicates = false);

}  // namespace mqinv
