#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "mqinv/derived.hpp"
#include "mqinv/quiver.hpp"
#include "mqinv/tableau.hpp"

namespace mqinv {

/// g = (g_v) with one square matrix per vertex (index v - 1).
struct GroupElement {
  std::vector<ScalarMatrix> g;

  const ScalarMatrix& at(int v) const { return g.at(static_cast<std::size_t>(v - 1)); }
  bool operator==(const GroupElement&) const = default;
};

struct SamplerOptions {
  /// Always multiply O samples by diag(-1, 1, ..., 1); also applies it at SO
  /// vertices, which leaves SO. Used to exhibit SO-only invariants.
  bool force_reflection = false;
  /// Entries of Q samples are integers in [-bound, bound].
  int bound = 9;
};

/// Samples an element of G(n, g, i):
///   GL: random, retried until invertible      SL: GL with row 1 divided by det
///   SO: Cayley (E+S)(E-S)^{-1}, S skew          O: SO times diag(-1,1,..) w.p. 1/2
///   Sp: Cayley (E-A)^{-1}(E+A), A = J S with S symmetric
/// then g_{i(v)} = (g_v^{-1})^t for v < i(v). Gives up after 64 singular draws.
GroupElement sample_group_element(const MixedQuiverSetting& setting, Field field, std::mt19937_64& rng,
                                  const SamplerOptions& options = {});

/// Membership problems of g (empty means g is in G(n, g, i)).
std::vector<std::string> membership_violations(const MixedQuiverSetting& setting, const GroupElement& g);

GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& g);

/// A random point of H(Q, n, h): the free variables of every generic matrix
/// drawn uniformly (Q: integers in [-bound, bound]).
RepresentationPoint random_point(const MixedQuiverSetting& setting, Field field, std::mt19937_64& rng, int bound = 9);

/// (g.h)_alpha = g_{head} h_alpha g_{tail}^{-1}. Throws std::logic_error if a
/// result leaves its subspace.
RepresentationPoint act(const MixedQuiverSetting& setting, const GroupElement& g, const RepresentationPoint& h);

/// Character q(g) = prod_{v = i(v)} det(g_v)^{-w_v} prod_{v < i(v)} det(g_v)^{w_{i(v)} - w_v}.
Scalar semi_invariant_character(const MixedQuiverSetting& setting, const GroupElement& g, const std::vector<int>& weight);

// --- reports -----------------------------------------------------------------

struct VerificationFailure {
  std::string check;
  int trial = 0;
  nlohmann::ordered_json witness;
};

struct VerificationReport {
  std::vector<std::string> checks;
  int trials = 0;
  std::uint64_t seed = 0;
  Field field;
  std::vector<VerificationFailure> failures;
  /// Trials whose inputs could not be sampled (e.g. singular Cayley draws).
  std::vector<std::string> errors;

  bool passed() const { return failures.empty() && errors.empty(); }
  /// Appends the checks, failures and errors of `other` (same trials/seed/field).
  void merge(const VerificationReport& other);
  nlohmann::ordered_json to_json() const;
};

struct VerifyConfig {
  int trials = 20;
  std::uint64_t seed = 1;
  Field field;
  SamplerOptions sampler;
};

/// Per-trial generator: seeded from (seed, trial) so every trial is
/// reproducible on its own and results do not depend on scheduling.
std::mt19937_64 trial_rng(std::uint64_t seed, int trial, std::uint64_t stream = 0);

using PointFunction = std::function<Scalar(const RepresentationPoint&)>;

/// f(g.h) == f(h) on random (g, h).
VerificationReport check_invariance(const MixedQuiverSetting& setting, const PointFunction& f, const VerifyConfig& config,
                                    const std::string& name = "invariance");
VerificationReport check_invariance(const MixedQuiverSetting& setting, const Polynomial& f, const VerifyConfig& config,
                                    const std::string& name = "invariance");

/// f(g^{-1}.h) == q(g) f(h) for f = Phi(bpf_T(path products)) of a path
/// tableau over the derived setting `d`, whose group acts on d.base.
/// Requires w_v = 0 at Sp vertices.
VerificationReport check_lemma3(const DerivedSetting& d, const Tableau& t, const std::vector<Path>& label_paths,
                                const std::vector<int>& weight, const VerifyConfig& config);

/// The element of the derived group induced by g: g_w = (g_v^{-1})^t for every
/// appended vertex w with source v.
GroupElement lift_group_element(const DerivedSetting& d, const GroupElement& g);

/// Phi^R(f) is invariant under the group of the original setting, for f over
/// the variables of the reduced setting (`d` from reduce()).
VerificationReport check_phiR_invariance(const DerivedSetting& d, const Polynomial& f, const VerifyConfig& config);

nlohmann::ordered_json matrix_json(const ScalarMatrix& m);

}  // namespace mqinv
