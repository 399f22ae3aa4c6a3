#include "mqinv/quiver.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace mqinv {

std::string to_string(Group g) {
  switch (g) {
    case Group::GL: return "GL";
    case Group::O: return "O";
    case Group::Sp: return "Sp";
    case Group::SL: return "SL";
    case Group::SO: return "SO";
  }
  return "?";
}

std::string to_string(ArrowKind h) {
  switch (h) {
    case ArrowKind::M: return "M";
    case ArrowKind::SymPlus: return "S+";
    case ArrowKind::SymMinus: return "S-";
    case ArrowKind::LPlus: return "L+";
    case ArrowKind::LMinus: return "L-";
  }
  return "?";
}

Group parse_group(std::string_view text) {
  if (text == "GL") return Group::GL;
  if (text == "O") return Group::O;
  if (text == "Sp") return Group::Sp;
  if (text == "SL") return Group::SL;
  if (text == "SO") return Group::SO;
  throw std::invalid_argument("unknown group label '" + std::string(text) + "'");
}

ArrowKind parse_arrow_kind(std::string_view text) {
  if (text == "M") return ArrowKind::M;
  if (text == "S+") return ArrowKind::SymPlus;
  if (text == "S-") return ArrowKind::SymMinus;
  if (text == "L+") return ArrowKind::LPlus;
  if (text == "L-") return ArrowKind::LMinus;
  throw std::invalid_argument("unknown arrow kind '" + std::string(text) + "'");
}

std::optional<std::size_t> Quiver::find(std::string_view id) const {
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    if (arrows[k].id == id) return k;
  }
  return std::nullopt;
}

const Arrow& Quiver::arrow(std::string_view id) const {
  auto k = find(id);
  if (!k) throw std::invalid_argument("unknown arrow '" + std::string(id) + "'");
  return arrows[*k];
}

ArrowKind MixedQuiverSetting::kind_of(std::string_view arrow_id) const {
  auto k = quiver.find(arrow_id);
  if (!k) throw std::invalid_argument("unknown arrow '" + std::string(arrow_id) + "'");
  return kind.at(*k);
}

std::string Violation::to_string() const {
  std::string head = condition == "structure" ? "structure" : "condition " + condition + ")";
  return head + " at " + location + ": " + message;
}

namespace {

std::string vertex_name(int v) { return "vertex " + std::to_string(v); }
std::string arrow_name(const Arrow& a) { return "arrow " + a.id; }
bool orthogonal(Group g) { return g == Group::O || g == Group::SO; }

}  // namespace

std::vector<Violation> validate(const MixedQuiverSetting& s, std::uint64_t characteristic) {
  std::vector<Violation> out;
  const int l = s.quiver.vertex_count;
  auto structural = [&](std::string where, std::string what) {
    out.push_back({"structure", std::move(where), std::move(what)});
  };
  if (l < 0) structural("setting", "negative vertex count");
  if (static_cast<int>(s.dim.size()) != l) structural("setting", "dim has " + std::to_string(s.dim.size()) + " entries, expected " + std::to_string(l));
  if (static_cast<int>(s.group.size()) != l) structural("setting", "group has " + std::to_string(s.group.size()) + " entries, expected " + std::to_string(l));
  if (static_cast<int>(s.involution.size()) != l) structural("setting", "involution has " + std::to_string(s.involution.size()) + " entries, expected " + std::to_string(l));
  if (s.kind.size() != s.quiver.arrows.size()) structural("setting", "arrow kind list does not match the arrow list");
  std::set<std::string> ids;
  for (const auto& a : s.quiver.arrows) {
    if (a.id.empty() || a.id.find_first_of(",[]") != std::string::npos) structural(arrow_name(a), "arrow id must be non-empty and free of ',', '[' and ']'");
    if (!ids.insert(a.id).second) structural(arrow_name(a), "duplicate arrow id");
    if (a.tail < 1 || a.tail > l || a.head < 1 || a.head > l) structural(arrow_name(a), "endpoint outside [1," + std::to_string(l) + "]");
  }
  for (int v = 1; v <= static_cast<int>(s.dim.size()); ++v) {
    if (s.dim[v - 1] < 1) structural(vertex_name(v), "dimension must be positive");
  }
  for (int v = 1; v <= static_cast<int>(s.involution.size()); ++v) {
    if (s.involution[v - 1] < 1 || s.involution[v - 1] > l) structural(vertex_name(v), "involution image outside [1," + std::to_string(l) + "]");
  }
  if (!out.empty()) return out;

  for (int v = 1; v <= l; ++v) {
    const Group g = s.g(v);
    const int iv = s.inv(v);
    if (g == Group::Sp && s.n(v) % 2 != 0) {
      out.push_back({"a", vertex_name(v), "Sp requires an even dimension, got " + std::to_string(s.n(v))});
    }
    if (orthogonal(g) && characteristic == 2) {
      out.push_back({"b", vertex_name(v), to_string(g) + " requires characteristic != 2"});
    }
    if (s.inv(iv) != v) {
      out.push_back({"c", vertex_name(v), "involution is not an involution: i(i(" + std::to_string(v) + ")) = " + std::to_string(s.inv(iv))});
    }
    if (s.n(iv) != s.n(v)) {
      out.push_back({"d", vertex_name(v), "n_{i(v)} = " + std::to_string(s.n(iv)) + " differs from n_v = " + std::to_string(s.n(v))});
    }
    if ((g == Group::O || g == Group::Sp || g == Group::SO) && iv != v) {
      out.push_back({"e", vertex_name(v), to_string(g) + " vertex must be fixed by the involution"});
    }
  }
  for (std::size_t k = 0; k < s.quiver.arrows.size(); ++k) {
    const Arrow& a = s.quiver.arrows[k];
    const ArrowKind h = s.kind[k];
    if (h == ArrowKind::M) continue;
    if (s.n(a.head) != s.n(a.tail)) {
      out.push_back({"f", arrow_name(a), to_string(h) + " arrow needs n_head = n_tail"});
    }
    if (a.is_loop()) {
      const Group g = s.g(a.head);
      if ((h == ArrowKind::SymPlus || h == ArrowKind::SymMinus) && !orthogonal(g)) {
        out.push_back({"g", arrow_name(a), to_string(h) + " loop requires an O or SO vertex, got " + to_string(g)});
      }
      if ((h == ArrowKind::LPlus || h == ArrowKind::LMinus) && g != Group::Sp) {
        out.push_back({"h", arrow_name(a), to_string(h) + " loop requires an Sp vertex, got " + to_string(g)});
      }
    } else {
      if (s.inv(a.head) != a.tail) {
        out.push_back({"i", arrow_name(a), "non-loop " + to_string(h) + " arrow needs i(head) = tail"});
      }
      if (h != ArrowKind::SymPlus && h != ArrowKind::SymMinus) {
        out.push_back({"i", arrow_name(a), "non-loop arrow may only be M, S+ or S-, got " + to_string(h)});
      }
    }
  }
  return out;
}

bool is_valid(const MixedQuiverSetting& setting, std::uint64_t characteristic) {
  return validate(setting, characteristic).empty();
}

void require_valid(const MixedQuiverSetting& setting, std::uint64_t characteristic) {
  auto violations = validate(setting, characteristic);
  if (violations.empty()) return;
  std::string msg = "invalid mixed quiver setting:";
  for (const auto& v : violations) msg += "\n  " + v.to_string();
  throw std::invalid_argument(msg);
}

bool satisfies_twin_condition(const MixedQuiverSetting& s) {
  for (int v = 1; v <= s.vertex_count(); ++v) {
    if ((s.g(v) == Group::GL || s.g(v) == Group::SL) && s.inv(v) == v) return false;
  }
  return true;
}

NormalizedSetting normalize(const MixedQuiverSetting& setting) {
  require_valid(setting);
  NormalizedSetting out{setting, {}};
  MixedQuiverSetting& s = out.setting;
  const int l = setting.vertex_count();
  for (int v = 1; v <= l; ++v) {
    const Group g = setting.g(v);
    if ((g == Group::GL || g == Group::SL) && setting.inv(v) == v) {
      const int twin = ++s.quiver.vertex_count;
      s.dim.push_back(setting.n(v));
      s.group.push_back(g);
      s.involution.push_back(v);
      s.involution[v - 1] = twin;
      out.twins.emplace_back(v, twin);
    }
  }
  return out;
}

// --- generic matrices -----------------------------------------------------

namespace {

struct EntryRule {
  int sign = 0;  // 0: entry is identically zero
  int row = 0;   // 1-based free variable position
  int col = 0;
};

EntryRule entry_rule(int i, int j, int n, ArrowKind kind) {
  // 1-based (i,j).
  switch (kind) {
    case ArrowKind::M: return {1, i, j};
    case ArrowKind::SymPlus: return i <= j ? EntryRule{1, i, j} : EntryRule{1, j, i};
    case ArrowKind::SymMinus:
      if (i == j) return {};
      return i < j ? EntryRule{1, i, j} : EntryRule{-1, j, i};
    case ArrowKind::LPlus:
    case ArrowKind::LMinus: {
      const int h = n / 2;
      const bool plus = kind == ArrowKind::LPlus;
      const bool top = i <= h;
      const bool left = j <= h;
      if (top && left) return {1, i, j};
      if (!top && !left) return {plus ? -1 : 1, j - h, i - h};  // D = -+A^t
      // Off-diagonal blocks B (top right) and C (bottom left): symmetric or skew.
      const int bi = top ? i : i - h;
      const int bj = left ? j : j - h;
      const int row_off = top ? 0 : h;
      const int col_off = left ? 0 : h;
      if (bi == bj) return plus ? EntryRule{1, i, j} : EntryRule{};
      if (bi < bj) return {1, i, j};
      return {plus ? 1 : -1, bj + row_off, bi + col_off};
    }
  }
  return {};
}

void check_kind_shape(int rows, int cols, ArrowKind kind) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("generic matrix needs positive dimensions");
  if (kind != ArrowKind::M && rows != cols) {
    throw std::invalid_argument(to_string(kind) + " generic matrix must be square, got " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
  if ((kind == ArrowKind::LPlus || kind == ArrowKind::LMinus) && rows % 2 != 0) {
    throw std::invalid_argument(to_string(kind) + " generic matrix needs an even size, got " + std::to_string(rows));
  }
}

}  // namespace

PolyMatrix generic_matrix(const std::string& arrow, int rows, int cols, ArrowKind kind, Field field) {
  check_kind_shape(rows, cols, kind);
  PolyMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), Polynomial(field));
  for (int i = 1; i <= rows; ++i) {
    for (int j = 1; j <= cols; ++j) {
      EntryRule r = entry_rule(i, j, rows, kind);
      if (r.sign == 0) continue;
      Polynomial x = Polynomial::variable(field, Variable::entry(arrow, r.row, r.col));
      m(i - 1, j - 1) = r.sign > 0 ? x : -x;
    }
  }
  return m;
}

std::vector<Variable> free_variables(const std::string& arrow, int rows, int cols, ArrowKind kind) {
  check_kind_shape(rows, cols, kind);
  std::vector<Variable> out;
  for (int i = 1; i <= rows; ++i) {
    for (int j = 1; j <= cols; ++j) {
      EntryRule r = entry_rule(i, j, rows, kind);
      if (r.sign == 1 && r.row == i && r.col == j) out.push_back(Variable::entry(arrow, i, j));
    }
  }
  return out;
}

std::pair<int, int> arrow_shape(const MixedQuiverSetting& setting, const Arrow& a) {
  return {setting.n(a.head), setting.n(a.tail)};
}

PolyMatrix generic_matrix(const MixedQuiverSetting& setting, std::string_view arrow_id, Field field) {
  const Arrow& a = setting.arrow(arrow_id);
  auto [rows, cols] = arrow_shape(setting, a);
  return generic_matrix(a.id, rows, cols, setting.kind_of(arrow_id), field);
}

bool in_subspace(const ScalarMatrix& m, ArrowKind kind) {
  if (kind == ArrowKind::M) return true;
  if (!m.is_square()) return false;
  switch (kind) {
    case ArrowKind::SymPlus: return m.transpose() == m;
    case ArrowKind::SymMinus: return m.transpose() == -m;
    case ArrowKind::LPlus:
    case ArrowKind::LMinus: {
      if (m.rows() % 2 != 0 || m.rows() == 0) return false;
      ScalarMatrix mj = m * symplectic_form(m(0, 0).field(), m.rows());
      return kind == ArrowKind::LPlus ? mj.transpose() == mj : mj.transpose() == -mj;
    }
    case ArrowKind::M: break;
  }
  return true;
}

// --- representation points -----------------------------------------------

const ScalarMatrix& RepresentationPoint::at(const std::string& id) const {
  auto it = matrices.find(id);
  if (it == matrices.end()) throw std::invalid_argument("representation point has no matrix for arrow '" + id + "'");
  return it->second;
}

Assignment to_assignment(const MixedQuiverSetting& setting, const RepresentationPoint& point) {
  Assignment out;
  for (std::size_t k = 0; k < setting.quiver.arrows.size(); ++k) {
    const Arrow& a = setting.quiver.arrows[k];
    const ScalarMatrix& h = point.at(a.id);
    auto [rows, cols] = arrow_shape(setting, a);
    for (const auto& v : free_variables(a.id, rows, cols, setting.kind[k])) {
      out.emplace(v, h(static_cast<std::size_t>(v.row - 1), static_cast<std::size_t>(v.col - 1)));
    }
  }
  return out;
}

// --- paths ----------------------------------------------------------------

bool is_composable(const Quiver& q, const Path& path) {
  if (path.empty()) return false;
  for (const auto& id : path) {
    if (!q.find(id)) return false;
  }
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    if (q.arrow(path[k]).head != q.arrow(path[k + 1]).tail) return false;
  }
  return true;
}

namespace {

void require_composable(const Quiver& q, const Path& path) {
  if (!is_composable(q, path)) throw std::invalid_argument("path '" + to_string(path) + "' is not composable");
}

}  // namespace

int path_tail(const Quiver& q, const Path& path) {
  require_composable(q, path);
  return q.arrow(path.front()).tail;
}

int path_head(const Quiver& q, const Path& path) {
  require_composable(q, path);
  return q.arrow(path.back()).head;
}

bool is_closed(const Quiver& q, const Path& path) {
  return is_composable(q, path) && path_tail(q, path) == path_head(q, path);
}

std::string to_string(const Path& path) {
  std::string out;
  for (const auto& id : path) {
    if (!out.empty()) out += ' ';
    out += id;
  }
  return out;
}

namespace {

// Depth-first extension of `prefix` by arrows leaving its current head.
void extend_paths(const Quiver& q, Path& prefix, int current, int max_len,
                  const std::function<void(const Path&, int)>& visit) {
  std::vector<const Arrow*> out_arrows;
  for (const auto& a : q.arrows) {
    if (a.tail == current) out_arrows.push_back(&a);
  }
  std::sort(out_arrows.begin(), out_arrows.end(), [](const Arrow* x, const Arrow* y) { return x->id < y->id; });
  for (const Arrow* a : out_arrows) {
    prefix.push_back(a->id);
    visit(prefix, a->head);
    if (static_cast<int>(prefix.size()) < max_len) extend_paths(q, prefix, a->head, max_len, visit);
    prefix.pop_back();
  }
}

bool is_min_rotation(const Path& p) {
  for (std::size_t r = 1; r < p.size(); ++r) {
    // Compare rotation starting at r against p.
    for (std::size_t k = 0; k < p.size(); ++k) {
      const std::string& a = p[(r + k) % p.size()];
      const std::string& b = p[k];
      if (a < b) return false;
      if (b < a) break;
    }
  }
  return true;
}

}  // namespace

std::vector<Path> enumerate_closed_paths(const Quiver& q, int max_len) {
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  std::vector<Path> out;
  for (int start = 1; start <= q.vertex_count; ++start) {
    Path prefix;
    extend_paths(q, prefix, start, max_len, [&](const Path& p, int head) {
      if (head == start && is_min_rotation(p)) out.push_back(p);
    });
  }
  std::sort(out.begin(), out.end(), [](const Path& a, const Path& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<Path> enumerate_paths(const Quiver& q, int tail, int head, int max_len) {
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  std::vector<Path> out;
  Path prefix;
  extend_paths(q, prefix, tail, max_len, [&](const Path& p, int h) {
    if (h == head) out.push_back(p);
  });
  std::sort(out.begin(), out.end(), [](const Path& a, const Path& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

PolyMatrix path_matrix(const MixedQuiverSetting& setting, const Path& path, Field field) {
  require_composable(setting.quiver, path);
  PolyMatrix m = generic_matrix(setting, path.front(), field);
  for (std::size_t k = 1; k < path.size(); ++k) m = generic_matrix(setting, path[k], field) * m;
  return m;
}

ScalarMatrix path_value(const MixedQuiverSetting& setting, const Path& path, const RepresentationPoint& point) {
  require_composable(setting.quiver, path);
  ScalarMatrix m = point.at(path.front());
  for (std::size_t k = 1; k < path.size(); ++k) m = point.at(path[k]) * m;
  return m;
}

}  // namespace mqinv
