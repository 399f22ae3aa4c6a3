#include "mqinv/derived.hpp"

#include <stdexcept>

namespace mqinv {

std::string transpose_id(const std::string& arrow) { return arrow + "^t"; }
std::string beta_id(int v) { return "beta@" + std::to_string(v); }
std::string gamma_id(int v) { return "gamma@" + std::to_string(v); }
std::string loop_id(int v) { return "alpha@" + std::to_string(v); }

namespace {

SubstitutionMap identity_map(const MixedQuiverSetting& s) {
  SubstitutionMap map;
  for (const auto& a : s.quiver.arrows) {
    SubstitutionRule r;
    r.kind = SubstitutionRule::Kind::Identity;
    r.source = a.id;
    map.emplace(a.id, r);
  }
  return map;
}

SubstitutionRule constant_rule(SubstitutionRule::ConstantMatrix c, int size) {
  SubstitutionRule r;
  r.kind = SubstitutionRule::Kind::Constant;
  r.constant = c;
  r.size = size;
  return r;
}

void add_arrow(MixedQuiverSetting& s, std::string id, int tail, int head, ArrowKind kind) {
  if (s.quiver.find(id)) throw std::invalid_argument("derived arrow id '" + id + "' collides with an existing arrow");
  s.quiver.arrows.push_back({std::move(id), tail, head});
  s.kind.push_back(kind);
}

int add_vertex(MixedQuiverSetting& s, int n, Group g) {
  const int v = ++s.quiver.vertex_count;
  s.dim.push_back(n);
  s.group.push_back(g);
  s.involution.push_back(v);
  return v;
}

}  // namespace

DerivedSetting identity_derivation(const MixedQuiverSetting& base) {
  require_valid(base);
  return DerivedSetting{"identity", base, base, identity_map(base), {}};
}

DerivedSetting normalize_derivation(const MixedQuiverSetting& base) {
  NormalizedSetting n = normalize(base);
  return DerivedSetting{"normalize", n.setting, base, identity_map(base), n.twins};
}

DerivedSetting double_setting(const MixedQuiverSetting& base) {
  require_valid(base);
  if (!satisfies_twin_condition(base)) {
    throw std::invalid_argument("double quiver setting requires every GL/SL vertex to have i(v) != v; normalize first");
  }
  DerivedSetting d{"double", base, base, identity_map(base), {}};
  for (std::size_t k = 0; k < base.quiver.arrows.size(); ++k) {
    if (base.kind[k] != ArrowKind::M) continue;
    const Arrow& a = base.quiver.arrows[k];
    const std::string id = transpose_id(a.id);
    add_arrow(d.setting, id, base.inv(a.head), base.inv(a.tail), ArrowKind::M);
    SubstitutionRule r;
    r.kind = SubstitutionRule::Kind::Transpose;
    r.source = a.id;
    r.j_left = base.g(a.tail) == Group::Sp;
    r.j_right = base.g(a.head) == Group::Sp;
    d.substitution.emplace(id, r);
  }
  return d;
}

DerivedSetting loopify(const MixedQuiverSetting& base) {
  require_valid(base);
  for (int v = 1; v <= base.vertex_count(); ++v) {
    if (base.g(v) != Group::GL && base.g(v) != Group::SL) {
      throw std::invalid_argument("loop construction requires GL/SL labels; vertex " + std::to_string(v) + " is " +
                                  to_string(base.g(v)));
    }
  }
  for (std::size_t k = 0; k < base.kind.size(); ++k) {
    if (base.kind[k] != ArrowKind::M) {
      throw std::invalid_argument("loop construction requires M arrows; arrow " + base.quiver.arrows[k].id + " is " +
                                  to_string(base.kind[k]));
    }
  }
  DerivedSetting d{"loop", base, base, identity_map(base), {}};
  for (int v = 1; v <= base.vertex_count(); ++v) {
    if (v < base.inv(v)) {
      add_arrow(d.setting, loop_id(v), v, v, ArrowKind::M);
      d.substitution.emplace(loop_id(v), constant_rule(SubstitutionRule::ConstantMatrix::E, base.n(v)));
    }
  }
  return d;
}

DerivedSetting reduce(const MixedQuiverSetting& base) {
  require_valid(base);
  if (!satisfies_twin_condition(base)) {
    throw std::invalid_argument("reduction requires every GL/SL vertex to have i(v) != v; normalize first");
  }
  DerivedSetting d{"reduce", base, base, identity_map(base), {}};
  MixedQuiverSetting& s = d.setting;
  for (auto& h : s.kind) h = ArrowKind::M;
  using C = SubstitutionRule::ConstantMatrix;
  for (int v = 1; v <= base.vertex_count(); ++v) {
    const Group g = base.g(v);
    const int n = base.n(v);
    if (g == Group::O || g == Group::Sp) {
      const int twin = add_vertex(s, n, Group::GL);
      s.group[v - 1] = Group::GL;
      s.involution[v - 1] = twin;
      s.involution[twin - 1] = v;
      d.new_vertices.emplace_back(v, twin);
      const C c = g == Group::O ? C::E : C::J;
      add_arrow(s, beta_id(v), twin, v, ArrowKind::M);
      add_arrow(s, gamma_id(v), v, twin, ArrowKind::M);
      d.substitution.emplace(beta_id(v), constant_rule(c, n));
      d.substitution.emplace(gamma_id(v), constant_rule(c, n));
    } else if (g == Group::SO) {
      const int twin = add_vertex(s, n, Group::SL);
      s.group[v - 1] = Group::SL;
      s.involution[v - 1] = twin;
      s.involution[twin - 1] = v;
      d.new_vertices.emplace_back(v, twin);
      add_arrow(s, beta_id(v), twin, v, ArrowKind::M);
      d.substitution.emplace(beta_id(v), constant_rule(C::E, n));
    }
  }
  return d;
}

namespace {

const SubstitutionRule& rule_for(const DerivedSetting& d, const std::string& arrow) {
  auto it = d.substitution.find(arrow);
  if (it == d.substitution.end()) throw std::invalid_argument("no substitution rule for arrow '" + arrow + "'");
  return it->second;
}

template <class M>
M apply_rule(const SubstitutionRule& r, const M& source, const MixedQuiverSetting& base, Field field,
             auto to_matrix) {
  if (r.kind == SubstitutionRule::Kind::Identity) return source;
  M out = source.transpose();
  const Arrow& a = base.arrow(r.source);
  if (r.j_left) out = to_matrix(symplectic_form(field, static_cast<std::size_t>(base.n(a.tail)))) * out;
  if (r.j_right) out = out * to_matrix(symplectic_form(field, static_cast<std::size_t>(base.n(a.head))));
  return out;
}

ScalarMatrix constant_matrix(const SubstitutionRule& r, Field field) {
  const auto n = static_cast<std::size_t>(r.size);
  return r.constant == SubstitutionRule::ConstantMatrix::E ? identity_matrix(field, n) : symplectic_form(field, n);
}

}  // namespace

PolyMatrix substituted_matrix(const DerivedSetting& d, const std::string& arrow, Field field) {
  const SubstitutionRule& r = rule_for(d, arrow);
  if (r.kind == SubstitutionRule::Kind::Constant) return to_poly(constant_matrix(r, field));
  PolyMatrix source = generic_matrix(d.base, r.source, field);
  return apply_rule(r, source, d.base, field, [](const ScalarMatrix& m) { return to_poly(m); });
}

ScalarMatrix substituted_value(const DerivedSetting& d, const std::string& arrow, const RepresentationPoint& base_point) {
  const SubstitutionRule& r = rule_for(d, arrow);
  if (r.kind == SubstitutionRule::Kind::Constant) {
    Field field = base_point.matrices.empty() ? Field::rationals() : base_point.matrices.begin()->second(0, 0).field();
    return constant_matrix(r, field);
  }
  const ScalarMatrix& source = base_point.at(r.source);
  return apply_rule(r, source, d.base, source(0, 0).field(), [](const ScalarMatrix& m) { return m; });
}

Polynomial apply_substitution(const DerivedSetting& d, const Polynomial& f) {
  std::map<std::string, PolyMatrix> cache;
  const Field field = f.field();
  return f.substitute([&](const Variable& v) -> std::optional<Polynomial> {
    if (v.is_aux()) return std::nullopt;
    auto it = cache.find(v.arrow);
    if (it == cache.end()) it = cache.emplace(v.arrow, substituted_matrix(d, v.arrow, field)).first;
    const PolyMatrix& m = it->second;
    if (v.row < 1 || v.col < 1 || static_cast<std::size_t>(v.row) > m.rows() ||
        static_cast<std::size_t>(v.col) > m.cols()) {
      throw std::invalid_argument("variable " + v.to_string() + " is outside the matrix of arrow " + v.arrow);
    }
    return m(static_cast<std::size_t>(v.row - 1), static_cast<std::size_t>(v.col - 1));
  });
}

RepresentationPoint lift_point(const DerivedSetting& d, const RepresentationPoint& base_point) {
  RepresentationPoint out;
  for (const auto& a : d.setting.quiver.arrows) out.matrices.emplace(a.id, substituted_value(d, a.id, base_point));
  return out;
}

PolyMatrix path_matrix(const DerivedSetting& d, const Path& path, Field field) {
  if (!is_composable(d.setting.quiver, path)) {
    throw std::invalid_argument("path '" + to_string(path) + "' is not composable");
  }
  PolyMatrix m = substituted_matrix(d, path.front(), field);
  for (std::size_t k = 1; k < path.size(); ++k) m = substituted_matrix(d, path[k], field) * m;
  return m;
}

ScalarMatrix path_value(const DerivedSetting& d, const Path& path, const RepresentationPoint& base_point) {
  if (!is_composable(d.setting.quiver, path)) {
    throw std::invalid_argument("path '" + to_string(path) + "' is not composable");
  }
  ScalarMatrix m = substituted_value(d, path.front(), base_point);
  for (std::size_t k = 1; k < path.size(); ++k) m = substituted_value(d, path[k], base_point) * m;
  return m;
}

std::map<std::string, int> path_arrow_counts(const DerivedSetting& d, const Path& path) {
  std::map<std::string, int> counts;
  for (const auto& id : path) {
    const SubstitutionRule& r = rule_for(d, id);
    if (r.kind != SubstitutionRule::Kind::Constant) ++counts[r.source];
  }
  return counts;
}

}  // namespace mqinv
