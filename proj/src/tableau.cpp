#include "mqinv/tableau.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "mqinv/errors.hpp"
#include "mqinv/kernels.hpp"
#include "mqinv/pfaffian.hpp"

namespace mqinv {

int Distribution::total() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }

std::pair<int, int> Distribution::lookup(int j) const {
  if (j < 1 || j > total()) {
    throw std::out_of_range("distribution index " + std::to_string(j) + " outside [1," + std::to_string(total()) + "]");
  }
  int start = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    if (j <= start + sizes[b]) return {static_cast<int>(b) + 1, j - start};
    start += sizes[b];
  }
  throw std::logic_error("distribution lookup fell through");
}

std::pair<int, int> distribution_lookup(const std::vector<int>& t, int j) { return Distribution{t}.lookup(j); }

int Tableau::cell_count() const { return std::accumulate(columns.begin(), columns.end(), 0); }

int Tableau::label_count() const {
  std::set<int> labels;
  for (const auto& a : arrows) labels.insert(a.label);
  return static_cast<int>(labels.size());
}

std::vector<int> Tableau::fiber_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(label_count()), 0);
  for (const auto& a : arrows) {
    if (a.label < 1 || a.label > static_cast<int>(sizes.size())) throw std::invalid_argument("tableau labels must be 1..s");
    ++sizes[static_cast<std::size_t>(a.label - 1)];
  }
  return sizes;
}

std::vector<std::pair<int, int>> Tableau::label_columns() const {
  std::vector<std::pair<int, int>> cols(static_cast<std::size_t>(label_count()), {0, 0});
  for (const auto& a : arrows) {
    if (a.label < 1 || a.label > static_cast<int>(cols.size())) throw std::invalid_argument("tableau labels must be 1..s");
    cols[static_cast<std::size_t>(a.label - 1)] = {a.tail.column, a.head.column};
  }
  return cols;
}

std::pair<int, int> Tableau::label_shape(int label) const {
  const auto [tail, head] = label_columns().at(static_cast<std::size_t>(label - 1));
  return {columns.at(static_cast<std::size_t>(tail - 1)), columns.at(static_cast<std::size_t>(head - 1))};
}

std::vector<std::string> tableau_violations(const Tableau& t) {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (t.columns[c] < 0) out.push_back("column " + std::to_string(c + 1) + " has negative size");
  }
  if (!out.empty()) return out;
  if (t.cell_count() % 2 != 0) out.push_back("total cell count " + std::to_string(t.cell_count()) + " is odd");
  auto cell_ok = [&](const Cell& c) {
    return c.column >= 1 && c.column <= static_cast<int>(t.columns.size()) && c.row >= 1 &&
           c.row <= t.columns[static_cast<std::size_t>(c.column - 1)];
  };
  auto cell_text = [](const Cell& c) { return "(" + std::to_string(c.column) + "," + std::to_string(c.row) + ")"; };
  std::map<Cell, int> uses;
  for (const auto& a : t.arrows) {
    for (const Cell& c : {a.tail, a.head}) {
      if (!cell_ok(c)) out.push_back("cell " + cell_text(c) + " is outside the shape");
      else ++uses[c];
    }
  }
  for (int c = 1; c <= static_cast<int>(t.columns.size()); ++c) {
    for (int r = 1; r <= t.columns[static_cast<std::size_t>(c - 1)]; ++r) {
      const auto it = uses.find(Cell{c, r});
      const int n = it == uses.end() ? 0 : it->second;
      if (n != 1) {
        out.push_back("cell " + cell_text(Cell{c, r}) + " is an endpoint of " + std::to_string(n) +
                      " arrows, expected exactly one");
      }
    }
  }
  std::set<int> labels;
  for (const auto& a : t.arrows) labels.insert(a.label);
  const int s = static_cast<int>(labels.size());
  if (!labels.empty() && (*labels.begin() != 1 || *labels.rbegin() != s)) {
    out.push_back("labels must be exactly 1.." + std::to_string(s));
  }
  std::map<int, std::pair<int, int>> columns_of;
  for (const auto& a : t.arrows) {
    auto [it, fresh] = columns_of.emplace(a.label, std::make_pair(a.tail.column, a.head.column));
    if (!fresh && it->second != std::make_pair(a.tail.column, a.head.column)) {
      out.push_back("arrows labelled " + std::to_string(a.label) + " do not share tail and head columns");
    }
  }
  return out;
}

void require_valid(const Tableau& t) {
  const auto v = tableau_violations(t);
  if (v.empty()) return;
  std::string msg = "invalid tableau:";
  for (const auto& s : v) msg += "\n  " + s;
  throw std::invalid_argument(msg);
}

mpz_class c_T(const Tableau& t) {
  mpz_class c = 1;
  for (int k : t.fiber_sizes()) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
    c *= f;
  }
  return c;
}

Tableau det_tableau(int n) {
  if (n < 1) throw std::invalid_argument("det tableau needs n >= 1");
  Tableau t{{n, n}, {}};
  for (int i = 1; i <= n; ++i) t.arrows.push_back({{1, i}, {2, i}, 1});
  return t;
}

Tableau pfaffian_tableau(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("pfaffian tableau needs even n >= 2");
  Tableau t{{n}, {}};
  for (int i = 1; i < n; i += 2) t.arrows.push_back({{1, i}, {1, i + 1}, 1});
  return t;
}

namespace {

std::atomic<std::uint64_t> g_checks{0};
std::atomic<std::uint64_t> g_failures{0};

template <class M>
void check_substitution(const Tableau& t, const std::vector<M>& ys) {
  require_valid(t);
  if (static_cast<int>(ys.size()) != t.label_count()) {
    throw std::invalid_argument("tableau has " + std::to_string(t.label_count()) + " labels but " +
                                std::to_string(ys.size()) + " matrices were given");
  }
  for (int j = 1; j <= t.label_count(); ++j) {
    const auto [r, c] = t.label_shape(j);
    const M& y = ys[static_cast<std::size_t>(j - 1)];
    if (y.rows() != static_cast<std::size_t>(r) || y.cols() != static_cast<std::size_t>(c)) {
      throw std::invalid_argument("matrix for label " + std::to_string(j) + " should be " + std::to_string(r) + "x" +
                                  std::to_string(c) + ", got " + y.shape());
    }
  }
}

std::vector<kernels::CellArrow> cell_arrows(const Tableau& t) {
  std::vector<kernels::CellArrow> out;
  out.reserve(t.arrows.size());
  for (const auto& a : t.arrows) {
    out.push_back({a.tail.column - 1, a.tail.row - 1, a.head.column - 1, a.head.row - 1, a.label - 1});
  }
  return out;
}

void check_budget(const Tableau& t, int max_cells, const TableauLimits& limits, const char* mode) {
  if (t.cell_count() > max_cells) {
    throw BudgetExceeded(std::string(mode) + " bpf limited to " + std::to_string(max_cells) + " cells, tableau has " +
                         std::to_string(t.cell_count()));
  }
  const double terms = kernels::permutation_count(t.columns);
  if (terms > limits.max_terms) {
    throw BudgetExceeded("bpf signed sum has " + std::to_string(terms) + " terms, limit " +
                         std::to_string(limits.max_terms));
  }
}

template <class M>
Field field_of(const std::vector<M>& ys) {
  for (const auto& y : ys) {
    if (y.rows() && y.cols()) return y(0, 0).field();
  }
  return Field::rationals();
}

}  // namespace

Scalar bpf0(const Tableau& t, const std::vector<ScalarMatrix>& ys, const TableauLimits& limits) {
  check_substitution(t, ys);
  check_budget(t, limits.max_cells_numeric, limits, "numeric");
  const Field f = field_of(ys);
  if (t.arrows.empty()) return f.one();
  return kernels::signed_permutation_sum_parallel(t.columns, cell_arrows(t), ys, f.zero());
}

Polynomial bpf0(const Tableau& t, const std::vector<PolyMatrix>& ys, const TableauLimits& limits) {
  check_substitution(t, ys);
  const Field f = field_of(ys);
  if (std::all_of(ys.begin(), ys.end(), [](const PolyMatrix& y) { return is_constant(y); })) {
    std::vector<ScalarMatrix> values;
    for (const auto& y : ys) values.push_back(constant_values(y));
    return Polynomial::constant(bpf0(t, values, limits));
  }
  check_budget(t, limits.max_cells_symbolic, limits, "symbolic");
  if (t.arrows.empty()) return Polynomial::constant(f, 1);
  return kernels::signed_permutation_sum_parallel(t.columns, cell_arrows(t), ys, Polynomial(f));
}

namespace {

mpz_class denominator_lcm(const ScalarMatrix& y) {
  mpz_class d = 1;
  for (const auto& x : y.data()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.rational().get_den_mpz_t());
  return d;
}

mpz_class denominator_lcm(const PolyMatrix& y) {
  mpz_class d = 1;
  for (const auto& p : y.data()) {
    for (const auto& [m, c] : p.terms()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.rational().get_den_mpz_t());
  }
  return d;
}

ScalarMatrix lift_to_integers(const ScalarMatrix& y, const mpz_class& scale) {
  ScalarMatrix out(y.rows(), y.cols(), Scalar());
  for (std::size_t i = 0; i < y.rows(); ++i) {
    for (std::size_t j = 0; j < y.cols(); ++j) {
      const Scalar& x = y(i, j);
      out(i, j) = x.is_rational() ? Scalar(x.rational() * scale) : Scalar(mpq_class(x.lift()));
    }
  }
  return out;
}

PolyMatrix lift_to_integers(const PolyMatrix& y, const mpz_class& scale) {
  PolyMatrix out(y.rows(), y.cols(), Polynomial());
  const Scalar s(mpq_class{scale});
  for (std::size_t i = 0; i < y.rows(); ++i) {
    for (std::size_t j = 0; j < y.cols(); ++j) {
      const Polynomial& p = y(i, j);
      out(i, j) = p.field().is_rational() ? p * s : p.lift_to_rationals();
    }
  }
  return out;
}

void check_divisible(const mpq_class& c, const mpz_class& c_t) {
  if (c.get_den() != 1 || mpz_divisible_p(c.get_num_mpz_t(), c_t.get_mpz_t()) == 0) {
    ++g_failures;
    throw std::logic_error("bpf0 coefficient " + c.get_str() + " is not an integer multiple of c_T = " + c_t.get_str());
  }
}

template <class M>
auto integral_bpf(const Tableau& t, const std::vector<M>& ys, const TableauLimits& limits) {
  check_substitution(t, ys);
  const Field target = field_of(ys);
  const mpz_class ct = c_T(t);
  if (ct == 1) return bpf0(t, ys, limits);

  const std::vector<int> fibers = t.fiber_sizes();
  std::vector<M> lifted;
  mpz_class scale_total = 1;
  for (std::size_t j = 0; j < ys.size(); ++j) {
    const mpz_class d = target.is_rational() ? denominator_lcm(ys[j]) : mpz_class(1);
    lifted.push_back(lift_to_integers(ys[j], d));
    mpz_class dk;
    mpz_pow_ui(dk.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(fibers[j]));
    scale_total *= dk;
  }
  auto sum = bpf0(t, lifted, limits);
  ++g_checks;
  const Scalar divisor(mpq_class(ct * scale_total));
  if constexpr (std::is_same_v<M, ScalarMatrix>) {
    check_divisible(sum.rational(), ct);
    const Scalar value = sum / divisor;
    return target.is_rational() ? value : target.from_rational(value.rational());
  } else {
    for (const auto& [m, c] : sum.terms()) check_divisible(c.rational(), ct);
    Polynomial value = sum * divisor.inverse();
    return target.is_rational() ? value : value.to_field(target);
  }
}

}  // namespace

Scalar bpf(const Tableau& t, const std::vector<ScalarMatrix>& ys, const TableauLimits& limits) {
  return integral_bpf(t, ys, limits);
}

Polynomial bpf(const Tableau& t, const std::vector<PolyMatrix>& ys, const TableauLimits& limits) {
  return integral_bpf(t, ys, limits);
}

IntegralityStats integrality_stats() { return {g_checks.load(), g_failures.load()}; }

void reset_integrality_stats() {
  g_checks = 0;
  g_failures = 0;
}

namespace {

template <class M>
Polynomial linearized_side(const Tableau& t, const std::vector<M>& ys) {
  const BlockLayout layout{t.columns};
  const auto cols = t.label_columns();
  std::vector<PlacedBlock<M>> blocks;
  for (std::size_t j = 0; j < ys.size(); ++j) blocks.push_back({ys[j], cols[j].first, cols[j].second});
  return bplp(layout, blocks, t.fiber_sizes());
}

int compare_signs(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs == rhs) return 1;
  if (lhs == -rhs) return -1;
  throw std::logic_error("bpf differs from the block partial linearization by more than a sign:\n  bpf = " +
                         lhs.to_string() + "\n  P   = " + rhs.to_string());
}

}  // namespace

int lemma1_check(const Tableau& t, const std::vector<PolyMatrix>& ys, const TableauLimits& limits) {
  const Polynomial lhs = bpf(t, ys, limits);
  if (t.arrows.empty()) return 1;
  return compare_signs(lhs, linearized_side(t, ys));
}

int lemma1_check(const Tableau& t, const std::vector<ScalarMatrix>& ys, const TableauLimits& limits) {
  const Scalar lhs = bpf(t, ys, limits);
  if (t.arrows.empty()) return 1;
  return compare_signs(Polynomial::constant(lhs), linearized_side(t, ys));
}

PathTableauCheck is_path_Q_tableau(const MixedQuiverSetting& setting, const Tableau& t,
                                   const std::vector<Path>& label_paths, const std::vector<int>& weight) {
  PathTableauCheck out;
  auto fail = [&out](std::string msg) { out.diagnostics.push_back(std::move(msg)); };
  for (const auto& v : tableau_violations(t)) fail("tableau: " + v);
  const int l = setting.vertex_count();
  if (static_cast<int>(weight.size()) != l) {
    fail("weight has " + std::to_string(weight.size()) + " entries, setting has " + std::to_string(l) + " vertices");
    return out;
  }
  std::vector<int> expected;
  for (int v = 1; v <= l; ++v) {
    const int w = weight[static_cast<std::size_t>(v - 1)];
    if (w < 0) fail("weight entry for vertex " + std::to_string(v) + " is negative");
    for (int k = 0; k < w; ++k) expected.push_back(setting.n(v));
  }
  if (expected != t.columns) fail("columns do not equal the dimension vector repeated by the weight");
  out.semi_invariance_applies = true;
  for (int v = 1; v <= l; ++v) {
    if (setting.g(v) == Group::Sp && weight[static_cast<std::size_t>(v - 1)] > 0) out.semi_invariance_applies = false;
  }
  if (!out.diagnostics.empty()) return out;

  if (static_cast<int>(label_paths.size()) != t.label_count()) {
    fail("expected one path per label (" + std::to_string(t.label_count()) + "), got " +
         std::to_string(label_paths.size()));
    return out;
  }
  const Distribution w{weight};
  for (std::size_t j = 0; j < label_paths.size(); ++j) {
    const Path& p = label_paths[j];
    if (p.empty() || !is_composable(setting.quiver, p)) {
      fail("label " + std::to_string(j + 1) + ": '" + to_string(p) + "' is not a path");
    }
  }
  if (!out.diagnostics.empty()) return out;
  for (std::size_t k = 0; k < t.arrows.size(); ++k) {
    const TableauArrow& a = t.arrows[k];
    const Path& p = label_paths[static_cast<std::size_t>(a.label - 1)];
    const int head_block = w.block(a.head.column);
    const int tail_block = w.block(a.tail.column);
    const int tail = path_tail(setting.quiver, p);
    const int head = path_head(setting.quiver, p);
    if (head_block != setting.inv(tail)) {
      fail("arrow " + std::to_string(k + 1) + ": W|a'| = " + std::to_string(head_block) + " but i(tail of path) = " +
           std::to_string(setting.inv(tail)));
    }
    if (tail_block != head) {
      fail("arrow " + std::to_string(k + 1) + ": W|a''| = " + std::to_string(tail_block) + " but head of path = " +
           std::to_string(head));
    }
  }
  out.valid = out.diagnostics.empty();
  return out;
}

std::vector<PolyMatrix> path_substitution(const DerivedSetting& d, const std::vector<Path>& label_paths, Field field) {
  std::vector<PolyMatrix> out;
  out.reserve(label_paths.size());
  for (const auto& p : label_paths) out.push_back(path_matrix(d, p, field));
  return out;
}

std::vector<ScalarMatrix> path_substitution_values(const DerivedSetting& d, const std::vector<Path>& label_paths,
                                                   const RepresentationPoint& base_point) {
  std::vector<ScalarMatrix> out;
  out.reserve(label_paths.size());
  for (const auto& p : label_paths) out.push_back(path_value(d, p, base_point));
  return out;
}

}  // namespace mqinv
