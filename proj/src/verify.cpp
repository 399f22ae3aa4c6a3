#include "mqinv/verify.hpp"

#include <optional>
#include <set>
#include <stdexcept>

#include "mqinv/errors.hpp"
#include "mqinv/kernels.hpp"

namespace mqinv {

namespace {

constexpr int kRetryCap = 64;

std::size_t sz(int n) { return static_cast<std::size_t>(n); }

ScalarMatrix random_square(Field field, int n, std::mt19937_64& rng, int bound) {
  ScalarMatrix m(sz(n), sz(n), field.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = field.random(rng, bound);
  }
  return m;
}

ScalarMatrix random_skew_matrix(Field field, int n, std::mt19937_64& rng, int bound) {
  ScalarMatrix s(sz(n), sz(n), field.zero());
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = i + 1; j < s.cols(); ++j) {
      s(i, j) = field.random(rng, bound);
      s(j, i) = -s(i, j);
    }
  }
  return s;
}

ScalarMatrix random_symmetric_matrix(Field field, int n, std::mt19937_64& rng, int bound) {
  ScalarMatrix s(sz(n), sz(n), field.zero());
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = i; j < s.cols(); ++j) {
      s(i, j) = field.random(rng, bound);
      s(j, i) = s(i, j);
    }
  }
  return s;
}

ScalarMatrix sample_gl(Field field, int n, std::mt19937_64& rng, int bound) {
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    ScalarMatrix m = random_square(field, n, rng, bound);
    if (!det(m).is_zero()) return m;
  }
  throw SamplingFailure("GL(" + std::to_string(n) + ") sampler drew " + std::to_string(kRetryCap) + " singular matrices");
}

ScalarMatrix sample_sl(Field field, int n, std::mt19937_64& rng, int bound) {
  ScalarMatrix m = sample_gl(field, n, rng, bound);
  if (n == 0) return m;
  const Scalar inv = det(m).inverse();
  for (std::size_t j = 0; j < m.cols(); ++j) m(0, j) *= inv;
  return m;
}

ScalarMatrix sample_so(Field field, int n, std::mt19937_64& rng, int bound) {
  const ScalarMatrix e = identity_matrix(field, sz(n));
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    const ScalarMatrix s = random_skew_matrix(field, n, rng, bound);
    ScalarMatrix minus = e;
    minus -= s;
    if (det(minus).is_zero()) continue;
    ScalarMatrix plus = e;
    plus += s;
    return plus * inverse(minus);
  }
  throw SamplingFailure("SO(" + std::to_string(n) + ") Cayley sampler drew " + std::to_string(kRetryCap) +
                        " singular E - S");
}

ScalarMatrix sample_sp(Field field, int n, std::mt19937_64& rng, int bound) {
  const ScalarMatrix e = identity_matrix(field, sz(n));
  const ScalarMatrix j = symplectic_form(field, sz(n));
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    const ScalarMatrix a = j * random_symmetric_matrix(field, n, rng, bound);
    ScalarMatrix minus = e;
    minus -= a;
    if (det(minus).is_zero()) continue;
    ScalarMatrix plus = e;
    plus += a;
    return inverse(minus) * plus;
  }
  throw SamplingFailure("Sp(" + std::to_string(n) + ") Cayley sampler drew " + std::to_string(kRetryCap) +
                        " singular E - A");
}

void reflect_first_row(ScalarMatrix& g) {
  for (std::size_t j = 0; j < g.cols(); ++j) g(0, j) = -g(0, j);
}

ScalarMatrix sample_vertex(Group group, Field field, int n, std::mt19937_64& rng, const SamplerOptions& options) {
  switch (group) {
    case Group::GL: return sample_gl(field, n, rng, options.bound);
    case Group::SL: return sample_sl(field, n, rng, options.bound);
    case Group::Sp: return sample_sp(field, n, rng, options.bound);
    case Group::SO:
    case Group::O: {
      ScalarMatrix g = sample_so(field, n, rng, options.bound);
      bool reflect = options.force_reflection;
      if (group == Group::O && !reflect) reflect = (rng() & 1U) != 0;
      if (reflect && n > 0) reflect_first_row(g);
      return g;
    }
  }
  throw std::logic_error("unknown group label");
}

ScalarMatrix inverse_transpose(const ScalarMatrix& g) { return inverse(g).transpose(); }

nlohmann::ordered_json group_json(const MixedQuiverSetting& setting, const GroupElement& g) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (int v = 1; v <= setting.vertex_count(); ++v) out[std::to_string(v)] = matrix_json(g.at(v));
  return out;
}

nlohmann::ordered_json point_json(const RepresentationPoint& h) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [id, m] : h.matrices) out[id] = matrix_json(m);
  return out;
}

struct TrialOutcome {
  std::optional<VerificationFailure> failure;
  std::optional<std::string> error;
};

template <class Trial>
VerificationReport run_trials(const std::string& name, const VerifyConfig& config, Trial trial) {
  if (config.trials < 0) throw std::invalid_argument("trial count must be non-negative");
  std::vector<TrialOutcome> outcomes(sz(config.trials));
  kernels::parallel_for(config.trials, [&](long t) {
    TrialOutcome& out = outcomes[static_cast<std::size_t>(t)];
    try {
      out.failure = trial(static_cast<int>(t));
      if (out.failure) {
        out.failure->check = name;
        out.failure->trial = static_cast<int>(t);
      }
    } catch (const SamplingFailure& e) {
      out.error = "trial " + std::to_string(t) + ": " + e.what();
    }
  });
  VerificationReport report;
  report.checks.push_back(name);
  report.trials = config.trials;
  report.seed = config.seed;
  report.field = config.field;
  for (auto& out : outcomes) {
    if (out.failure) report.failures.push_back(std::move(*out.failure));
    if (out.error) report.errors.push_back(std::move(*out.error));
  }
  return report;
}

void require_variables_of(const MixedQuiverSetting& setting, const Polynomial& f) {
  std::set<Variable> known;
  for (std::size_t k = 0; k < setting.quiver.arrows.size(); ++k) {
    const Arrow& a = setting.quiver.arrows[k];
    auto [rows, cols] = arrow_shape(setting, a);
    for (const auto& v : free_variables(a.id, rows, cols, setting.kind[k])) known.insert(v);
  }
  for (const auto& v : f.variables()) {
    if (!known.count(v)) {
      throw std::invalid_argument("polynomial variable " + v.to_string() +
                                  " is not a free coordinate of the setting");
    }
  }
}

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, int trial, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

GroupElement sample_group_element(const MixedQuiverSetting& setting, Field field, std::mt19937_64& rng,
                                  const SamplerOptions& options) {
  const bool orthogonal_or_symplectic = [&] {
    for (Group g : setting.group) {
      if (g == Group::O || g == Group::SO || g == Group::Sp) return true;
    }
    return false;
  }();
  if (orthogonal_or_symplectic && !field.is_rational() && field.characteristic() < 5) {
    throw std::invalid_argument("O, SO and Sp sampling needs characteristic 0 or >= 5");
  }
  const int l = setting.vertex_count();
  GroupElement out;
  out.g.resize(sz(l));
  for (int v = 1; v <= l; ++v) {
    const int w = setting.inv(v);
    if (w < v) continue;
    Group group = setting.g(v);
    if (w != v && (group == Group::SL || setting.g(w) == Group::SL)) group = Group::SL;
    out.g[sz(v - 1)] = sample_vertex(group, field, setting.n(v), rng, options);
  }
  for (int v = 1; v <= l; ++v) {
    const int w = setting.inv(v);
    if (w < v) out.g[sz(v - 1)] = inverse_transpose(out.at(w));
  }
  return out;
}

std::vector<std::string> membership_violations(const MixedQuiverSetting& setting, const GroupElement& g) {
  std::vector<std::string> out;
  const int l = setting.vertex_count();
  if (static_cast<int>(g.g.size()) != l) {
    out.push_back("expected " + std::to_string(l) + " vertex matrices, got " + std::to_string(g.g.size()));
    return out;
  }
  for (int v = 1; v <= l; ++v) {
    const ScalarMatrix& m = g.at(v);
    const std::string where = "vertex " + std::to_string(v);
    if (m.rows() != sz(setting.n(v)) || m.cols() != sz(setting.n(v))) {
      out.push_back(where + ": not " + std::to_string(setting.n(v)) + "x" + std::to_string(setting.n(v)));
      continue;
    }
    if (m.rows() == 0) continue;
    const Field field = m(0, 0).field();
    const Scalar d = det(m);
    if (d.is_zero()) {
      out.push_back(where + ": singular");
      continue;
    }
    const ScalarMatrix e = identity_matrix(field, m.rows());
    switch (setting.g(v)) {
      case Group::GL: break;
      case Group::SL:
        if (!d.is_one()) out.push_back(where + ": det != 1");
        break;
      case Group::SO:
        if (!d.is_one()) out.push_back(where + ": det != 1");
        [[fallthrough]];
      case Group::O:
        if (!(m * m.transpose() == e)) out.push_back(where + ": g g^t != E");
        break;
      case Group::Sp: {
        const ScalarMatrix j = symplectic_form(field, m.rows());
        if (!(m.transpose() * j * m == j)) out.push_back(where + ": g^t J g != J");
        break;
      }
    }
    const int w = setting.inv(v);
    if (v < w && !(g.at(w) == inverse_transpose(m))) {
      out.push_back(where + ": g_" + std::to_string(w) + " != (g_" + std::to_string(v) + "^{-1})^t");
    }
  }
  return out;
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  if (a.g.size() != b.g.size()) throw std::invalid_argument("group elements of different settings");
  GroupElement out;
  for (std::size_t v = 0; v < a.g.size(); ++v) out.g.push_back(a.g[v] * b.g[v]);
  return out;
}

GroupElement inverse(const GroupElement& g) {
  GroupElement out;
  for (const auto& m : g.g) out.g.push_back(inverse(m));
  return out;
}

GroupElement lift_group_element(const DerivedSetting& d, const GroupElement& g) {
  if (static_cast<int>(g.g.size()) != d.base.vertex_count()) {
    throw std::invalid_argument("group element does not match the base setting");
  }
  GroupElement out = g;
  out.g.resize(sz(d.setting.vertex_count()));
  for (const auto& [source, added] : d.new_vertices) out.g[sz(added - 1)] = inverse_transpose(g.at(source));
  return out;
}

RepresentationPoint random_point(const MixedQuiverSetting& setting, Field field, std::mt19937_64& rng, int bound) {
  RepresentationPoint out;
  for (std::size_t k = 0; k < setting.quiver.arrows.size(); ++k) {
    const Arrow& a = setting.quiver.arrows[k];
    auto [rows, cols] = arrow_shape(setting, a);
    Assignment values;
    for (const auto& v : free_variables(a.id, rows, cols, setting.kind[k])) values.emplace(v, field.random(rng, bound));
    out.matrices.emplace(a.id, evaluate(generic_matrix(setting, a.id, field), values));
  }
  return out;
}

RepresentationPoint act(const MixedQuiverSetting& setting, const GroupElement& g, const RepresentationPoint& h) {
  RepresentationPoint out;
  for (std::size_t k = 0; k < setting.quiver.arrows.size(); ++k) {
    const Arrow& a = setting.quiver.arrows[k];
    ScalarMatrix m = g.at(a.head) * h.at(a.id) * inverse(g.at(a.tail));
    if (!in_subspace(m, setting.kind[k])) {
      throw std::logic_error("action moved arrow '" + a.id + "' out of its " + to_string(setting.kind[k]) + " subspace");
    }
    out.matrices.emplace(a.id, std::move(m));
  }
  return out;
}

Scalar semi_invariant_character(const MixedQuiverSetting& setting, const GroupElement& g, const std::vector<int>& weight) {
  const int l = setting.vertex_count();
  if (static_cast<int>(weight.size()) != l) throw std::invalid_argument("weight length differs from vertex count");
  if (static_cast<int>(g.g.size()) != l) throw std::invalid_argument("group element does not match the setting");
  Field field;
  for (const auto& m : g.g) {
    if (m.rows() > 0) {
      field = m(0, 0).field();
      break;
    }
  }
  Scalar q = field.one();
  for (int v = 1; v <= l; ++v) {
    const int w = setting.inv(v);
    const int wv = weight[sz(v - 1)];
    if (w == v) {
      q *= det(g.at(v)).pow(-wv);
    } else if (v < w) {
      q *= det(g.at(v)).pow(weight[sz(w - 1)] - wv);
    }
  }
  return q;
}

void VerificationReport::merge(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  errors.insert(errors.end(), other.errors.begin(), other.errors.end());
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json out;
  out["checks"] = checks;
  out["trials"] = trials;
  out["seed"] = seed;
  out["field"] = field.name();
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& f : failures) {
    list.push_back({{"check", f.check}, {"trial", f.trial}, {"witness", f.witness}});
  }
  out["failures"] = list;
  if (!errors.empty()) out["errors"] = errors;
  out["passed"] = passed();
  return out;
}

nlohmann::ordered_json matrix_json(const ScalarMatrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

VerificationReport check_invariance(const MixedQuiverSetting& setting, const PointFunction& f, const VerifyConfig& config,
                                    const std::string& name) {
  return run_trials(name, config, [&](int t) -> std::optional<VerificationFailure> {
    std::mt19937_64 rng = trial_rng(config.seed, t);
    const GroupElement g = sample_group_element(setting, config.field, rng, config.sampler);
    const RepresentationPoint h = random_point(setting, config.field, rng, config.sampler.bound);
    const RepresentationPoint gh = act(setting, g, h);
    const Scalar before = f(h);
    const Scalar after = f(gh);
    if (before == after) return std::nullopt;
    VerificationFailure failure;
    failure.witness = {{"g", group_json(setting, g)},
                       {"h", point_json(h)},
                       {"f(h)", before.to_string()},
                       {"f(g.h)", after.to_string()}};
    return failure;
  });
}

VerificationReport check_invariance(const MixedQuiverSetting& setting, const Polynomial& f, const VerifyConfig& config,
                                    const std::string& name) {
  require_variables_of(setting, f);
  const Polynomial fp = f.field() == config.field ? f : f.to_field(config.field);
  return check_invariance(
      setting, [&](const RepresentationPoint& h) { return fp.evaluate(to_assignment(setting, h)); }, config, name);
}

VerificationReport check_lemma3(const DerivedSetting& d, const Tableau& t, const std::vector<Path>& label_paths,
                                const std::vector<int>& weight, const VerifyConfig& config) {
  const PathTableauCheck shape = is_path_Q_tableau(d.setting, t, label_paths, weight);
  if (!shape.valid) {
    std::string message = "not a path Q-tableau:";
    for (const auto& line : shape.diagnostics) message += " " + line + ";";
    throw std::invalid_argument(message);
  }
  if (!shape.semi_invariance_applies) throw std::invalid_argument("semi-invariance needs w_v = 0 at every Sp vertex");
  return run_trials("semi_invariance", config, [&](int t_index) -> std::optional<VerificationFailure> {
    std::mt19937_64 rng = trial_rng(config.seed, t_index);
    const GroupElement g = sample_group_element(d.base, config.field, rng, config.sampler);
    const RepresentationPoint h = random_point(d.base, config.field, rng, config.sampler.bound);
    const RepresentationPoint moved = act(d.base, inverse(g), h);
    const Scalar q = semi_invariant_character(d.setting, lift_group_element(d, g), weight);
    const Scalar lhs = bpf(t, path_substitution_values(d, label_paths, moved));
    const Scalar value = bpf(t, path_substitution_values(d, label_paths, h));
    const Scalar rhs = q * value;
    if (lhs == rhs) return std::nullopt;
    VerificationFailure failure;
    failure.witness = {{"g", group_json(d.base, g)},
                       {"h", point_json(h)},
                       {"q(g)", q.to_string()},
                       {"bpf(g^-1.h)", lhs.to_string()},
                       {"q(g)*bpf(h)", rhs.to_string()}};
    return failure;
  });
}

VerificationReport check_phiR_invariance(const DerivedSetting& d, const Polynomial& f, const VerifyConfig& config) {
  require_variables_of(d.setting, f);
  return check_invariance(d.base, apply_substitution(d, f), config, "phiR_invariance");
}

}  // namespace mqinv
