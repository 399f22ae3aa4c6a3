#include "mqinv/generators.hpp"

#include <algorithm>
#include <functional>
#include <tuple>
#include <stdexcept>

#include "mqinv/errors.hpp"
#include "mqinv/kernels.hpp"
#include "mqinv/pfaffian.hpp"

namespace mqinv {

namespace {

constexpr std::uint64_t kFingerprintPrime = 2305843009213693951ULL;  // 2^61 - 1
constexpr std::uint64_t kFingerprintSeed = 0x6d71696e76ULL;
constexpr int kFingerprintPoints = 3;

std::size_t sz(int n) { return static_cast<std::size_t>(n); }

void add_counts(std::map<std::string, int>& into, const std::map<std::string, int>& counts, int times) {
  for (const auto& [arrow, c] : counts) {
    if (c != 0) into[arrow] += c * times;
  }
}

std::map<std::string, int> structural_multidegree(const DerivedSetting& d, const GeneratorDescriptor& g) {
  std::map<std::string, int> out;
  switch (g.kind) {
    case GeneratorDescriptor::Kind::Sigma: add_counts(out, path_arrow_counts(d, g.path), g.k); break;
    case GeneratorDescriptor::Kind::Bpf:
      for (const auto& a : g.tableau.arrows) add_counts(out, path_arrow_counts(d, g.label_paths[sz(a.label - 1)]), 1);
      break;
    case GeneratorDescriptor::Kind::Pfaffian:
      for (std::size_t i = 0; i < g.words.size(); ++i) add_counts(out, path_arrow_counts(d, g.words[i]), g.ks[i]);
      break;
  }
  return out;
}

std::map<std::string, int> nonzero_degrees(const Multidegree& m) {
  std::map<std::string, int> out;
  for (const auto& [arrow, t] : m.degrees) {
    if (t != 0) out.emplace(arrow, t);
  }
  return out;
}

struct Fingerprint {
  std::vector<std::uint64_t> values;
  bool zero = true;
};

std::vector<RepresentationPoint> fingerprint_points(const MixedQuiverSetting& base) {
  const Field f = Field::prime(kFingerprintPrime);
  std::vector<RepresentationPoint> out;
  for (int i = 0; i < kFingerprintPoints; ++i) {
    std::mt19937_64 rng = trial_rng(kFingerprintSeed, i);
    out.push_back(random_point(base, f, rng));
  }
  return out;
}

/// Residues up to an overall sign: the lexicographically smaller of v and -v.
std::vector<std::uint64_t> sign_normalized(const std::vector<Scalar>& values) {
  std::vector<std::uint64_t> plus, minus;
  for (const auto& v : values) {
    plus.push_back(v.residue_value());
    minus.push_back((-v).residue_value());
  }
  return std::min(plus, minus);
}

/// Realizes, checks the multidegree and fingerprints every candidate, then
/// drops exact zeros and flags duplicates in enumeration order.
void finish_family(GeneratorFamily& family, std::vector<GeneratorDescriptor> candidates) {
  const DerivedSetting& d = family.derived;
  const std::vector<RepresentationPoint> points = fingerprint_points(d.base);
  std::vector<Fingerprint> prints(candidates.size());
  std::vector<char> zero(candidates.size(), 0);
  kernels::parallel_for(static_cast<long>(candidates.size()), [&](long i) {
    GeneratorDescriptor& g = candidates[static_cast<std::size_t>(i)];
    g.multidegree = structural_multidegree(d, g);
    if (g.total_degree() <= family.bounds.degree_bound) {
      Polynomial p = realize_generator(d, g);
      if (p.is_zero()) {
        zero[static_cast<std::size_t>(i)] = 1;
        return;
      }
      const Multidegree m = multidegree(p);
      if (!m.homogeneous || nonzero_degrees(m) != g.multidegree) {
        throw std::logic_error("generator " + g.label() + " has realized multidegree different from its descriptor");
      }
      g.polynomial = std::move(p);
    }
    std::vector<Scalar> values;
    for (const auto& h : points) values.push_back(evaluate_generator(d, g, h));
    Fingerprint& fp = prints[static_cast<std::size_t>(i)];
    for (const auto& v : values) fp.zero = fp.zero && v.is_zero();
    fp.values = sign_normalized(values);
    g.vanishes_on_samples = fp.zero;
  });
  std::map<std::vector<std::uint64_t>, std::size_t> seen;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (zero[i]) {
      ++family.dropped_zero;
      continue;
    }
    GeneratorDescriptor g = std::move(candidates[i]);
    auto [it, inserted] = seen.emplace(prints[i].values, family.generators.size());
    if (!inserted) g.duplicate_of = it->second;
    family.generators.push_back(std::move(g));
  }
}

void check_budget(std::size_t count, const GeneratorBounds& bounds, const std::string& what) {
  if (count > bounds.max_generators) {
    throw BudgetExceeded(what + ": " + std::to_string(count) + " candidates exceed max_generators = " +
                         std::to_string(bounds.max_generators));
  }
}

void check_bounds(const GeneratorBounds& b) {
  if (b.max_path_len < 1 || b.max_weight < 1 || b.max_cells < 2 || b.degree_bound < 0) {
    throw std::invalid_argument("generator bounds must be positive (max_cells >= 2)");
  }
}

std::vector<GeneratorDescriptor> sigma_candidates(const DerivedSetting& d, const GeneratorBounds& bounds) {
  std::vector<GeneratorDescriptor> out;
  for (const Path& p : enumerate_closed_paths(d.setting.quiver, bounds.max_path_len)) {
    const int n = d.setting.n(path_tail(d.setting.quiver, p));
    for (int k = 1; k <= n; ++k) {
      GeneratorDescriptor g;
      g.kind = GeneratorDescriptor::Kind::Sigma;
      g.path = p;
      g.k = k;
      out.push_back(std::move(g));
      check_budget(out.size(), bounds, "sigma generators");
    }
  }
  return out;
}

struct ArrowType {
  int tail_column;
  int head_column;
  Path path;
};

/// Every multiset of arrow types whose endpoints fill each column exactly.
void fill_columns(const std::vector<ArrowType>& types, std::size_t next, std::vector<int>& free,
                  std::vector<int>& counts, const std::function<void()>& emit) {
  if (std::all_of(free.begin(), free.end(), [](int f) { return f == 0; })) {
    emit();
    return;
  }
  if (next == types.size()) return;
  const ArrowType& t = types[next];
  int& tail_free = free[sz(t.tail_column - 1)];
  int& head_free = free[sz(t.head_column - 1)];
  int used = 0;
  fill_columns(types, next + 1, free, counts, emit);
  while (true) {
    if (t.tail_column == t.head_column) {
      if (tail_free < 2) break;
      tail_free -= 2;
    } else {
      if (tail_free < 1 || head_free < 1) break;
      --tail_free;
      --head_free;
    }
    ++used;
    counts[next] = used;
    fill_columns(types, next + 1, free, counts, emit);
  }
  counts[next] = 0;
  if (t.tail_column == t.head_column) {
    tail_free += 2 * used;
  } else {
    tail_free += used;
    head_free += used;
  }
}

std::vector<GeneratorDescriptor> bpf_candidates(const DerivedSetting& d, const GeneratorBounds& bounds) {
  const MixedQuiverSetting& s = d.setting;
  const int l = s.vertex_count();
  std::vector<GeneratorDescriptor> out;
  std::vector<int> w(sz(l), 0);
  while (true) {
    // next weight in lexicographic order
    int pos = l - 1;
    while (pos >= 0 && w[sz(pos)] == bounds.max_weight) w[sz(pos--)] = 0;
    if (pos < 0) break;
    ++w[sz(pos)];
    if (!theorem1_weight_allowed(s, w)) continue;
    std::vector<int> columns, column_vertex;
    int cells = 0;
    bool empty_column = false;
    for (int v = 1; v <= l; ++v) {
      for (int r = 0; r < w[sz(v - 1)]; ++r) {
        columns.push_back(s.n(v));
        column_vertex.push_back(v);
        cells += s.n(v);
        empty_column = empty_column || s.n(v) == 0;
      }
    }
    if (empty_column || cells % 2 != 0 || cells > bounds.max_cells) continue;
    const int m = static_cast<int>(columns.size());
    std::vector<ArrowType> types;
    for (int tc = 1; tc <= m; ++tc) {
      for (int hc = 1; hc <= m; ++hc) {
        const int from = s.inv(column_vertex[sz(hc - 1)]);
        const int to = column_vertex[sz(tc - 1)];
        for (Path& p : enumerate_paths(s.quiver, from, to, bounds.max_path_len)) types.push_back({tc, hc, std::move(p)});
      }
    }
    std::vector<int> free = columns;
    std::vector<int> counts(types.size(), 0);
    const std::size_t first = out.size();
    fill_columns(types, 0, free, counts, [&] {
      GeneratorDescriptor g;
      g.kind = GeneratorDescriptor::Kind::Bpf;
      g.weight = w;
      g.tableau.columns = columns;
      std::vector<int> next_row(sz(m), 1);
      for (std::size_t t = 0; t < types.size(); ++t) {
        for (int c = 0; c < counts[t]; ++c) {
          const ArrowType& type = types[t];
          const Cell tail{type.tail_column, next_row[sz(type.tail_column - 1)]++};
          const Cell head{type.head_column, next_row[sz(type.head_column - 1)]++};
          const int label = static_cast<int>(g.label_paths.size()) + 1;
          g.tableau.arrows.push_back({tail, head, label});
          g.label_paths.push_back(type.path);
        }
      }
      out.push_back(std::move(g));
      check_budget(out.size(), bounds, "bpf generators");
    });
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(),
              [](const GeneratorDescriptor& a, const GeneratorDescriptor& b) {
                const auto key = [](const GeneratorDescriptor& g) {
                  return std::make_tuple(g.tableau.arrows.size(), g.label_paths, g.label());
                };
                return key(a) < key(b);
              });
  }
  return out;
}

/// Multisets of distinct words with multiplicities summing to `total`.
void pfaffian_candidates(const std::vector<Path>& words, int total, std::size_t next, std::vector<int>& ks,
                         std::vector<GeneratorDescriptor>& out, const GeneratorBounds& bounds) {
  if (total == 0) {
    GeneratorDescriptor g;
    g.kind = GeneratorDescriptor::Kind::Pfaffian;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (ks[i] == 0) continue;
      g.words.push_back(words[i]);
      g.ks.push_back(ks[i]);
    }
    out.push_back(std::move(g));
    check_budget(out.size(), bounds, "pfaffian generators");
    return;
  }
  if (next == words.size()) return;
  for (int k = total; k >= 0; --k) {
    ks[next] = k;
    pfaffian_candidates(words, total - k, next + 1, ks, out, bounds);
  }
  ks[next] = 0;
}

}  // namespace

int GeneratorDescriptor::total_degree() const {
  int total = 0;
  for (const auto& [arrow, t] : multidegree) total += t;
  return total;
}

std::string to_string(GeneratorDescriptor::Kind kind) {
  switch (kind) {
    case GeneratorDescriptor::Kind::Sigma: return "sigma";
    case GeneratorDescriptor::Kind::Bpf: return "bpf";
    case GeneratorDescriptor::Kind::Pfaffian: return "pfaffian";
  }
  return "?";
}

std::string GeneratorDescriptor::label() const {
  switch (kind) {
    case Kind::Sigma: return "sigma_" + std::to_string(k) + "(" + to_string(path) + ")";
    case Kind::Bpf: {
      std::string out = "bpf[w=";
      for (std::size_t v = 0; v < weight.size(); ++v) out += (v ? "," : "") + std::to_string(weight[v]);
      out += "](";
      for (std::size_t i = 0; i < tableau.arrows.size(); ++i) {
        const TableauArrow& a = tableau.arrows[i];
        if (i) out += "; ";
        out += std::to_string(a.tail.column) + "." + std::to_string(a.tail.row) + "->" + std::to_string(a.head.column) +
               "." + std::to_string(a.head.row) + ": " + to_string(label_paths[sz(a.label - 1)]);
      }
      return out + ")";
    }
    case Kind::Pfaffian: {
      std::string out = "P_";
      for (std::size_t i = 0; i < ks.size(); ++i) out += (i ? "," : "") + std::to_string(ks[i]);
      out += "(";
      for (std::size_t i = 0; i < words.size(); ++i) out += (i ? " | " : "") + to_string(words[i]);
      return out + ")";
    }
  }
  return "?";
}

DerivedSetting generator_quiver(const MixedQuiverSetting& setting) {
  require_valid(setting);
  if (satisfies_twin_condition(setting)) return double_setting(setting);
  const NormalizedSetting ns = normalize(setting);
  DerivedSetting d = double_setting(ns.setting);
  d.base = setting;
  d.new_vertices = ns.twins;
  return d;
}

bool theorem1_weight_allowed(const MixedQuiverSetting& setting, const std::vector<int>& weight) {
  const int l = setting.vertex_count();
  if (static_cast<int>(weight.size()) != l) return false;
  for (int v = 1; v <= l; ++v) {
    const int wv = weight[sz(v - 1)];
    const int wi = weight[sz(setting.inv(v) - 1)];
    if (wv < 0) return false;
    switch (setting.g(v)) {
      case Group::GL:
      case Group::O:
      case Group::Sp:
        if (wv != 0 || wi != 0) return false;
        break;
      case Group::SL:
        if (wv != 0 && wi != 0) return false;
        break;
      case Group::SO:
        if (wv > 1 || (wv > 0 && setting.inv(v) != v)) return false;
        break;
    }
  }
  return true;
}

GeneratorFamily theorem1_sigma_generators(const MixedQuiverSetting& setting, const GeneratorBounds& bounds) {
  check_bounds(bounds);
  GeneratorFamily family{generator_quiver(setting), bounds, {}, 0};
  finish_family(family, sigma_candidates(family.derived, bounds));
  return family;
}

GeneratorFamily theorem1_bpf_generators(const MixedQuiverSetting& setting, const GeneratorBounds& bounds) {
  check_bounds(bounds);
  GeneratorFamily family{generator_quiver(setting), bounds, {}, 0};
  finish_family(family, bpf_candidates(family.derived, bounds));
  return family;
}

GeneratorFamily theorem1_generators(const MixedQuiverSetting& setting, const GeneratorBounds& bounds) {
  check_bounds(bounds);
  GeneratorFamily family{generator_quiver(setting), bounds, {}, 0};
  std::vector<GeneratorDescriptor> all = sigma_candidates(family.derived, bounds);
  std::vector<GeneratorDescriptor> bpfs = bpf_candidates(family.derived, bounds);
  check_budget(all.size() + bpfs.size(), bounds, "generators");
  all.insert(all.end(), std::make_move_iterator(bpfs.begin()), std::make_move_iterator(bpfs.end()));
  finish_family(family, std::move(all));
  return family;
}

GeneratorFamily corollary3_generators(int n, int d, Group group, int max_word_len, const GeneratorBounds& bounds) {
  if (n < 1 || d < 1 || max_word_len < 1) throw std::invalid_argument("need n >= 1, d >= 1 and max_word_len >= 1");
  if (group == Group::SL) throw std::invalid_argument("SL(n) has the same invariants as GL(n); use GL");
  if (group == Group::Sp && n % 2 != 0) throw std::invalid_argument("Sp(n) needs even n");
  MixedQuiverSetting s;
  s.quiver.vertex_count = 1;
  s.dim = {n};
  s.group = {group};
  s.involution = {1};
  for (int i = 1; i <= d; ++i) {
    s.quiver.arrows.push_back({"x" + std::to_string(i), 1, 1});
    s.kind.push_back(ArrowKind::M);
  }
  GeneratorBounds b = bounds;
  b.max_path_len = max_word_len;
  GeneratorFamily family{group == Group::GL ? identity_derivation(s) : double_setting(s), b, {}, 0};
  std::vector<GeneratorDescriptor> all = sigma_candidates(family.derived, b);
  if (group == Group::SO && n % 2 == 0) {
    const std::vector<Path> words = enumerate_paths(family.derived.setting.quiver, 1, 1, max_word_len);
    std::vector<int> ks(words.size(), 0);
    std::vector<GeneratorDescriptor> pf;
    pfaffian_candidates(words, n / 2, 0, ks, pf, b);
    check_budget(all.size() + pf.size(), b, "corollary generators");
    all.insert(all.end(), std::make_move_iterator(pf.begin()), std::make_move_iterator(pf.end()));
  }
  finish_family(family, std::move(all));
  return family;
}

Scalar evaluate_generator(const DerivedSetting& d, const GeneratorDescriptor& g, const RepresentationPoint& base_point) {
  switch (g.kind) {
    case GeneratorDescriptor::Kind::Sigma: return sigma_k(path_value(d, g.path, base_point), g.k);
    case GeneratorDescriptor::Kind::Bpf:
      return bpf(g.tableau, path_substitution_values(d, g.label_paths, base_point));
    case GeneratorDescriptor::Kind::Pfaffian: {
      std::vector<ScalarMatrix> ys;
      for (const auto& w : g.words) ys.push_back(path_value(d, w, base_point));
      return partial_linearization(ys, g.ks).constant_term();
    }
  }
  throw std::logic_error("unknown generator kind");
}

Polynomial realize_generator(const DerivedSetting& d, const GeneratorDescriptor& g) {
  switch (g.kind) {
    case GeneratorDescriptor::Kind::Sigma: return sigma_k(path_matrix(d, g.path), g.k);
    case GeneratorDescriptor::Kind::Bpf: return bpf(g.tableau, path_substitution(d, g.label_paths));
    case GeneratorDescriptor::Kind::Pfaffian: {
      std::vector<PolyMatrix> ys;
      for (const auto& w : g.words) ys.push_back(path_matrix(d, w));
      return partial_linearization(ys, g.ks);
    }
  }
  throw std::logic_error("unknown generator kind");
}

VerificationReport verify_family(const GeneratorFamily& family, const VerifyConfig& config, bool include_duplicates) {
  VerificationReport report;
  report.trials = config.trials;
  report.seed = config.seed;
  report.field = config.field;
  const DerivedSetting& d = family.derived;
  for (const auto& g : family.generators) {
    if (g.duplicate_of && !include_duplicates) continue;
    report.merge(check_invariance(
        d.base, [&](const RepresentationPoint& h) { return evaluate_generator(d, g, h); }, config, g.label()));
  }
  return report;
}

}  // namespace mqinv
