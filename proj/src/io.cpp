#include "mqinv/io.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace mqinv {

namespace {

template <class F>
auto parsing(const std::string& what, F body) -> decltype(body()) {
  try {
    return body();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(what + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(what + ": " + e.what());
  }
}

std::string rule_kind(SubstitutionRule::Kind k) {
  switch (k) {
    case SubstitutionRule::Kind::Identity: return "identity";
    case SubstitutionRule::Kind::Transpose: return "transpose";
    case SubstitutionRule::Kind::Constant: return "constant";
  }
  return "?";
}

SubstitutionRule::Kind parse_rule_kind(const std::string& s) {
  if (s == "identity") return SubstitutionRule::Kind::Identity;
  if (s == "transpose") return SubstitutionRule::Kind::Transpose;
  if (s == "constant") return SubstitutionRule::Kind::Constant;
  throw std::invalid_argument("unknown substitution rule '" + s + "'");
}

GeneratorDescriptor::Kind parse_generator_kind(const std::string& s) {
  if (s == "sigma") return GeneratorDescriptor::Kind::Sigma;
  if (s == "bpf") return GeneratorDescriptor::Kind::Bpf;
  if (s == "pfaffian") return GeneratorDescriptor::Kind::Pfaffian;
  throw std::invalid_argument("unknown generator kind '" + s + "'");
}

Json cell_json(const Cell& c) { return Json::array({c.column, c.row}); }

Cell cell_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("a cell is [column, row]");
  return Cell{j.at(0).get<int>(), j.at(1).get<int>()};
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

Json to_json(const MixedQuiverSetting& s) {
  Json j;
  j["dim"] = s.dim;
  Json groups = Json::array();
  for (Group g : s.group) groups.push_back(to_string(g));
  j["group"] = groups;
  j["involution"] = s.involution;
  Json arrows = Json::array();
  for (std::size_t k = 0; k < s.quiver.arrows.size(); ++k) {
    const Arrow& a = s.quiver.arrows[k];
    arrows.push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}, {"kind", to_string(s.kind[k])}});
  }
  j["arrows"] = arrows;
  return j;
}

MixedQuiverSetting setting_from_json(const Json& j) {
  return parsing("setting", [&] {
    MixedQuiverSetting s;
    s.dim = j.at("dim").get<std::vector<int>>();
    for (const auto& g : j.at("group")) s.group.push_back(parse_group(g.get<std::string>()));
    s.involution = j.at("involution").get<std::vector<int>>();
    s.quiver.vertex_count = static_cast<int>(s.dim.size());
    for (const auto& a : j.at("arrows")) {
      s.quiver.arrows.push_back({a.at("id").get<std::string>(), a.at("tail").get<int>(), a.at("head").get<int>()});
      s.kind.push_back(a.contains("kind") ? parse_arrow_kind(a.at("kind").get<std::string>()) : ArrowKind::M);
    }
    return s;
  });
}

Json to_json(const DerivedSetting& d) {
  Json j;
  j["construction"] = d.construction;
  j["setting"] = to_json(d.setting);
  j["base"] = to_json(d.base);
  Json table = Json::array();
  for (const auto& [arrow, r] : d.substitution) {
    Json e;
    e["arrow"] = arrow;
    e["rule"] = rule_kind(r.kind);
    if (r.kind == SubstitutionRule::Kind::Constant) {
      e["constant"] = r.constant == SubstitutionRule::ConstantMatrix::E ? "E" : "J";
      e["size"] = r.size;
    } else {
      e["source"] = r.source;
    }
    if (r.kind == SubstitutionRule::Kind::Transpose) {
      e["j_left"] = r.j_left;
      e["j_right"] = r.j_right;
    }
    table.push_back(e);
  }
  j["substitution"] = table;
  Json added = Json::array();
  for (const auto& [v, w] : d.new_vertices) added.push_back(Json::array({v, w}));
  j["new_vertices"] = added;
  return j;
}

DerivedSetting derived_from_json(const Json& j) {
  const MixedQuiverSetting setting = setting_from_json(j.at("setting"));
  const MixedQuiverSetting base = setting_from_json(j.at("base"));
  return parsing("derived setting", [&] {
    DerivedSetting d{j.at("construction").get<std::string>(), setting, base, {}, {}};
    for (const auto& e : j.at("substitution")) {
      SubstitutionRule r;
      r.kind = parse_rule_kind(e.at("rule").get<std::string>());
      if (r.kind == SubstitutionRule::Kind::Constant) {
        const std::string c = e.at("constant").get<std::string>();
        if (c != "E" && c != "J") throw std::invalid_argument("constant must be E or J");
        r.constant = c == "E" ? SubstitutionRule::ConstantMatrix::E : SubstitutionRule::ConstantMatrix::J;
        r.size = e.at("size").get<int>();
      } else {
        r.source = e.at("source").get<std::string>();
      }
      if (r.kind == SubstitutionRule::Kind::Transpose) {
        r.j_left = e.value("j_left", false);
        r.j_right = e.value("j_right", false);
      }
      d.substitution.emplace(e.at("arrow").get<std::string>(), r);
    }
    for (const auto& p : j.at("new_vertices")) d.new_vertices.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    return d;
  });
}

Json to_json(const Tableau& t) {
  Json j;
  j["columns"] = t.columns;
  Json arrows = Json::array();
  for (const auto& a : t.arrows) {
    arrows.push_back({{"tail", cell_json(a.tail)}, {"head", cell_json(a.head)}, {"label", a.label}});
  }
  j["arrows"] = arrows;
  return j;
}

Tableau tableau_from_json(const Json& j) {
  return parsing("tableau", [&] {
    Tableau t;
    t.columns = j.at("columns").get<std::vector<int>>();
    for (const auto& a : j.at("arrows")) {
      t.arrows.push_back({cell_from_json(a.at("tail")), cell_from_json(a.at("head")), a.value("label", 1)});
    }
    return t;
  });
}

Json to_json(const Path& p) { return Json(p); }

Path path_from_json(const Json& j) {
  return parsing("path", [&] { return j.get<Path>(); });
}

Json to_json(const GeneratorBounds& b) {
  return {{"max_path_len", b.max_path_len},
          {"max_weight", b.max_weight},
          {"max_cells", b.max_cells},
          {"degree_bound", b.degree_bound},
          {"max_generators", b.max_generators}};
}

GeneratorBounds bounds_from_json(const Json& j) {
  return parsing("bounds", [&] {
    GeneratorBounds b;
    b.max_path_len = j.value("max_path_len", b.max_path_len);
    b.max_weight = j.value("max_weight", b.max_weight);
    b.max_cells = j.value("max_cells", b.max_cells);
    b.degree_bound = j.value("degree_bound", b.degree_bound);
    b.max_generators = j.value("max_generators", b.max_generators);
    return b;
  });
}

Json to_json(const GeneratorDescriptor& g, std::size_t index) {
  Json j;
  j["index"] = index;
  j["kind"] = to_string(g.kind);
  j["label"] = g.label();
  switch (g.kind) {
    case GeneratorDescriptor::Kind::Sigma:
      j["path"] = to_json(g.path);
      j["k"] = g.k;
      break;
    case GeneratorDescriptor::Kind::Bpf: {
      j["weight"] = g.weight;
      j["tableau"] = to_json(g.tableau);
      Json subs = Json::array();
      for (std::size_t l = 0; l < g.label_paths.size(); ++l) {
        subs.push_back({{"label", l + 1}, {"path", to_json(g.label_paths[l])}});
      }
      j["substitution"] = subs;
      break;
    }
    case GeneratorDescriptor::Kind::Pfaffian: {
      Json words = Json::array();
      for (const auto& w : g.words) words.push_back(to_json(w));
      j["words"] = words;
      j["ks"] = g.ks;
      break;
    }
  }
  j["multidegree"] = g.multidegree;
  j["total_degree"] = g.total_degree();
  j["duplicate_of"] = g.duplicate_of ? Json(*g.duplicate_of) : Json(nullptr);
  j["vanishes_on_samples"] = g.vanishes_on_samples;
  j["polynomial"] = g.polynomial ? Json(g.polynomial->to_string()) : Json(nullptr);
  return j;
}

GeneratorDescriptor descriptor_from_json(const Json& j) {
  return parsing("generator", [&] {
    GeneratorDescriptor g;
    g.kind = parse_generator_kind(j.at("kind").get<std::string>());
    switch (g.kind) {
      case GeneratorDescriptor::Kind::Sigma:
        g.path = j.at("path").get<Path>();
        g.k = j.at("k").get<int>();
        break;
      case GeneratorDescriptor::Kind::Bpf: {
        g.weight = j.at("weight").get<std::vector<int>>();
        g.tableau = tableau_from_json(j.at("tableau"));
        const Json& subs = j.at("substitution");
        g.label_paths.resize(subs.size());
        for (const auto& e : subs) {
          const auto label = e.at("label").get<std::size_t>();
          if (label < 1 || label > subs.size()) throw std::invalid_argument("substitution label out of range");
          g.label_paths[label - 1] = e.at("path").get<Path>();
        }
        break;
      }
      case GeneratorDescriptor::Kind::Pfaffian:
        for (const auto& w : j.at("words")) g.words.push_back(w.get<Path>());
        g.ks = j.at("ks").get<std::vector<int>>();
        break;
    }
    if (j.contains("multidegree")) g.multidegree = j.at("multidegree").get<std::map<std::string, int>>();
    if (j.contains("duplicate_of") && !j.at("duplicate_of").is_null()) g.duplicate_of = j.at("duplicate_of").get<std::size_t>();
    g.vanishes_on_samples = j.value("vanishes_on_samples", false);
    if (j.contains("polynomial") && !j.at("polynomial").is_null()) {
      g.polynomial = Polynomial::parse(j.at("polynomial").get<std::string>());
    }
    return g;
  });
}

std::vector<PolyMatrix> tableau_substitution(const Json& j, const Tableau& t, Field field) {
  require_valid(t);
  const int s = t.label_count();
  struct Entry {
    std::string how;
    Json data;
  };
  std::vector<std::optional<Entry>> entries(static_cast<std::size_t>(s));
  std::optional<MixedQuiverSetting> setting;
  parsing("tableau substitution", [&] {
    for (const auto& e : j.at("substitution")) {
      const int label = e.at("label").get<int>();
      if (label < 1 || label > s) throw std::invalid_argument("substitution label " + std::to_string(label) + " out of range");
      for (const char* how : {"path", "generic", "matrix"}) {
        if (e.contains(how)) entries[static_cast<std::size_t>(label - 1)] = Entry{how, e.at(how)};
      }
    }
    return 0;
  });
  if (j.contains("setting")) setting = setting_from_json(j.at("setting"));
  std::vector<PolyMatrix> out;
  for (int label = 1; label <= s; ++label) {
    const auto& e = entries[static_cast<std::size_t>(label - 1)];
    if (!e) throw ParseError("no substitution for label " + std::to_string(label));
    auto [rows, cols] = t.label_shape(label);
    PolyMatrix y;
    if (e->how == "generic") {
      y = generic_matrix(parsing("generic name", [&] { return e->data.get<std::string>(); }), rows, cols,
                         ArrowKind::M, field);
    } else if (e->how == "matrix") {
      y = parsing("matrix", [&] {
        std::vector<std::vector<Polynomial>> cells;
        for (const auto& row : e->data) {
          cells.emplace_back();
          for (const auto& c : row) {
            cells.back().push_back(c.is_number_integer() ? Polynomial::constant(field, c.get<long long>())
                                                         : Polynomial::parse(c.get<std::string>(), field));
          }
        }
        PolyMatrix m(cells.size(), cells.empty() ? 0 : cells[0].size(), Polynomial(field));
        for (std::size_t r = 0; r < cells.size(); ++r) {
          if (cells[r].size() != m.cols()) throw std::invalid_argument("ragged matrix rows");
          for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = cells[r][c];
        }
        return m;
      });
    } else {
      if (!setting) throw ParseError("path substitution needs a \"setting\" in the tableau file");
      const Path p = path_from_json(e->data);
      y = path_substitution(generator_quiver(*setting), {p}, field).at(0);
    }
    if (y.rows() != static_cast<std::size_t>(rows) || y.cols() != static_cast<std::size_t>(cols)) {
      throw std::invalid_argument("label " + std::to_string(label) + " needs a " + std::to_string(rows) + "x" +
                                  std::to_string(cols) + " matrix, got " + std::to_string(y.rows()) + "x" +
                                  std::to_string(y.cols()));
    }
    out.push_back(std::move(y));
  }
  return out;
}

}  // namespace mqinv
