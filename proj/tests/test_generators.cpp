#include <doctest.h>

#include <algorithm>
#include <set>

#include "mqinv/errors.hpp"
#include "mqinv/generators.hpp"
#include "mqinv/pfaffian.hpp"
#include "oracles.hpp"
#include "settings.hpp"

using namespace mqinv;

namespace {

const std::vector<Field> kFields = {Field::rationals(), Field::prime(101), Field::prime(2147483647)};

VerifyConfig config(Field field, int trials = 6) {
  VerifyConfig c;
  c.field = field;
  c.trials = trials;
  c.seed = 2024;
  return c;
}

std::vector<std::string> labels(const GeneratorFamily& f, bool with_duplicates = true) {
  std::vector<std::string> out;
  for (const auto& g : f.generators) {
    if (with_duplicates || !g.duplicate_of) out.push_back(g.label());
  }
  return out;
}

Polynomial trace_of(const PolyMatrix& m) {
  Polynomial t;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

const GeneratorDescriptor* find(const GeneratorFamily& f, const std::string& label) {
  for (const auto& g : f.generators) {
    if (g.label() == label) return &g;
  }
  return nullptr;
}

/// Whether p = c q for some nonzero rational c.
bool proportional(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  const Scalar c = p.terms().begin()->second / q.terms().begin()->second;
  return p == q * c;
}

}  // namespace

TEST_CASE("sigma generators of a GL(2) loop up to length 2") {
  const auto s = fixtures::one_vertex(Group::GL, 2);
  GeneratorBounds b;
  b.max_path_len = 2;
  const GeneratorFamily f = theorem1_sigma_generators(s, b);
  CHECK(f.generators.size() == 8);
  CHECK(labels(f, false) ==
        std::vector<std::string>{"sigma_1(x1)", "sigma_2(x1)", "sigma_1(x1 x1)", "sigma_2(x1 x1)"});
  // the transposed loop on the twin gives the same values: sigma_k(M^t) = sigma_k(M)
  const GeneratorDescriptor* t = find(f, "sigma_2(x1^t x1^t)");
  REQUIRE(t != nullptr);
  REQUIRE(t->duplicate_of);
  CHECK(f.generators[*t->duplicate_of].label() == "sigma_2(x1 x1)");
  CHECK(*t->polynomial == *f.generators[*t->duplicate_of].polynomial);

  const PolyMatrix x = generic_matrix(s, "x1");
  CHECK(*find(f, "sigma_1(x1)")->polynomial == trace_of(x));
  CHECK(*find(f, "sigma_2(x1)")->polynomial == oracle::leibniz_det(x, Polynomial()));
  CHECK(*find(f, "sigma_1(x1 x1)")->polynomial == trace_of(x * x));
  CHECK(*find(f, "sigma_2(x1 x1)")->polynomial == oracle::leibniz_det(x, Polynomial()) * oracle::leibniz_det(x, Polynomial()));
  for (Field fd : kFields) CHECK(verify_family(f, config(fd), true).passed());
}

TEST_CASE("one-vertex loops: GL words") {
  const GeneratorFamily f = corollary3_generators(2, 1, Group::GL, 2);
  CHECK(labels(f) == std::vector<std::string>{"sigma_1(x1)", "sigma_2(x1)", "sigma_1(x1 x1)", "sigma_2(x1 x1)"});

  // sigma_k of a word only depends on its rotation class
  const GeneratorFamily g = corollary3_generators(3, 2, Group::GL, 3);
  std::mt19937_64 rng(8);
  const RepresentationPoint h = random_point(g.derived.base, Field::rationals(), rng);
  for (const auto& gen : g.generators) {
    Path rotated = gen.path;
    std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
    GeneratorDescriptor r = gen;
    r.path = rotated;
    CHECK(evaluate_generator(g.derived, r, h) == evaluate_generator(g.derived, gen, h));
  }
  for (Field fd : kFields) CHECK(verify_family(g, config(fd, 4)).passed());
}

TEST_CASE("one-vertex loops: O, SO and Sp words") {
  const GeneratorFamily o = corollary3_generators(3, 1, Group::O, 2);
  CHECK(find(o, "sigma_1(x1 x1^t)") != nullptr);
  CHECK(find(o, "sigma_3(x1^t)") != nullptr);
  for (const auto& g : o.generators) CHECK(g.kind == GeneratorDescriptor::Kind::Sigma);

  const GeneratorFamily so = corollary3_generators(2, 1, Group::SO, 1);
  const GeneratorDescriptor* p1 = find(so, "P_1(x1)");
  REQUIRE(p1 != nullptr);
  CHECK(*p1->polynomial == Polynomial::parse("x[x1,1,2]-x[x1,2,1]"));
  CHECK(find(so, "P_1(x1^t)")->duplicate_of);
  CHECK(corollary3_generators(3, 1, Group::SO, 2).generators.size() ==
        corollary3_generators(3, 1, Group::O, 2).generators.size());

  const GeneratorFamily sp = corollary3_generators(2, 1, Group::Sp, 1);
  const GeneratorDescriptor* jxj = find(sp, "sigma_1(x1^t)");
  REQUIRE(jxj != nullptr);
  // tr(J X^t J) = -tr(X)
  CHECK(*jxj->polynomial == -trace_of(generic_matrix("x1", 2, 2)));
  for (Field fd : kFields) {
    CHECK(verify_family(o, config(fd)).passed());
    CHECK(verify_family(so, config(fd)).passed());
    CHECK(verify_family(sp, config(fd)).passed());
  }
  CHECK_THROWS_AS(corollary3_generators(3, 1, Group::Sp, 1), std::invalid_argument);
  CHECK_THROWS_AS(corollary3_generators(2, 1, Group::SL, 1), std::invalid_argument);
}

TEST_CASE("weight conditions") {
  const auto five = generator_quiver(fixtures::five_vertex()).setting;
  CHECK(theorem1_weight_allowed(five, {0, 0, 1, 0, 0}));
  CHECK(theorem1_weight_allowed(five, {0, 0, 0, 2, 0}));
  CHECK_FALSE(theorem1_weight_allowed(five, {0, 0, 1, 1, 0}));
  CHECK_FALSE(theorem1_weight_allowed(five, {1, 0, 0, 0, 0}));
  CHECK_FALSE(theorem1_weight_allowed(five, {0, 0, 0, 0, 1}));
  const auto so = fixtures::one_vertex(Group::SO, 2);
  CHECK(theorem1_weight_allowed(so, {1}));
  CHECK_FALSE(theorem1_weight_allowed(so, {2}));
}

TEST_CASE("bpf generators vanish for GL, O and Sp labels") {
  const std::vector<MixedQuiverSetting> settings = {
      fixtures::one_vertex(Group::GL, 2, 2), fixtures::one_vertex(Group::O, 2), fixtures::one_vertex(Group::Sp, 2),
      fixtures::make_setting({2, 2}, {Group::GL, Group::GL}, {2, 1},
                             {{"a", 2, 1, ArrowKind::SymPlus}, {"b", 1, 2, ArrowKind::SymMinus}}),
      fixtures::make_setting({2, 2, 2}, {Group::GL, Group::GL, Group::O}, {2, 1, 3}, {{"a", 3, 1}, {"b", 1, 3}})};
  for (const auto& s : settings) {
    CHECK(theorem1_bpf_generators(s).generators.empty());
    const GeneratorFamily sigma = theorem1_sigma_generators(s);
    CHECK_FALSE(sigma.generators.empty());
    CHECK(verify_family(sigma, config(Field::prime(101), 4)).passed());
  }
}

TEST_CASE("acyclic double quiver has no sigma generators") {
  for (const auto& s : {fixtures::make_setting({2, 2}, {Group::GL, Group::GL}, {2, 1}, {{"a", 1, 2}}),
                        fixtures::bilinear_forms(2, ArrowKind::SymPlus)}) {
    CHECK(theorem1_sigma_generators(s).generators.empty());
    CHECK(theorem1_bpf_generators(s).generators.empty());
  }
}

TEST_CASE("SO(2) loop: one-column bpf generators are P_1 of words") {
  const auto s = fixtures::one_vertex(Group::SO, 2);
  const GeneratorFamily f = theorem1_bpf_generators(s);
  REQUIRE_FALSE(f.generators.empty());
  const Polynomial p1 = Polynomial::parse("x[x1,1,2]-x[x1,2,1]");
  bool found = false;
  for (const auto& g : f.generators) {
    CHECK(g.tableau.columns == std::vector<int>{2});
    CHECK(g.tableau.arrows.size() == 1);
    if (g.polynomial && proportional(*g.polynomial, p1)) found = true;
  }
  CHECK(found);
  // x1 x1^t is symmetric, so its pfaffian-type generator is zero and dropped
  CHECK(f.dropped_zero > 0);
  for (Field fd : kFields) CHECK(verify_family(f, config(fd), true).passed());
  // odd SO: no even one-column shape
  CHECK(theorem1_bpf_generators(fixtures::one_vertex(Group::SO, 3)).generators.empty());
}

TEST_CASE("SO(4): bpf generators agree with partial linearizations") {
  GeneratorBounds b;
  b.max_path_len = 1;
  const GeneratorFamily bpfs = theorem1_bpf_generators(fixtures::one_vertex(Group::SO, 4), b);
  const GeneratorFamily pfs = corollary3_generators(4, 1, Group::SO, 1, b);
  std::vector<Polynomial> pfaffians;
  for (const auto& g : pfs.generators) {
    if (g.kind == GeneratorDescriptor::Kind::Pfaffian) pfaffians.push_back(*g.polynomial);
  }
  CHECK(pfaffians.size() == 3);
  CHECK(bpfs.generators.size() == 3);
  for (const auto& g : bpfs.generators) {
    REQUIRE(g.polynomial);
    CHECK(std::any_of(pfaffians.begin(), pfaffians.end(),
                      [&](const Polynomial& p) { return proportional(*g.polynomial, p); }));
  }
}

TEST_CASE("SL pairs and mixed settings") {
  for (const auto& s : {fixtures::sl_sl_o(2, 2), fixtures::five_vertex()}) {
    const GeneratorFamily f = theorem1_generators(s);
    bool has_bpf = false;
    for (const auto& g : f.generators) {
      has_bpf = has_bpf || g.kind == GeneratorDescriptor::Kind::Bpf;
      CHECK(g.total_degree() > 0);
      if (g.kind == GeneratorDescriptor::Kind::Bpf) {
        CHECK(theorem1_weight_allowed(f.derived.setting, g.weight));
        CHECK(is_path_Q_tableau(f.derived.setting, g.tableau, g.label_paths, g.weight).valid);
      }
    }
    CHECK(has_bpf);
    for (Field fd : {Field::rationals(), Field::prime(101)}) CHECK(verify_family(f, config(fd, 3)).passed());
  }
}

TEST_CASE("realized multidegree matches the descriptor") {
  const GeneratorFamily f = theorem1_generators(fixtures::sl_sl_o(2, 2));
  std::size_t realized = 0;
  for (const auto& g : f.generators) {
    if (!g.polynomial) {
      CHECK(g.total_degree() > f.bounds.degree_bound);
      continue;
    }
    ++realized;
    const Multidegree m = multidegree(*g.polynomial);
    CHECK(m.homogeneous);
    for (const auto& [arrow, t] : g.multidegree) CHECK(m.degrees.at(arrow) == t);
  }
  CHECK(realized > 0);
}

TEST_CASE("enumeration is deterministic and budgeted") {
  const auto s = fixtures::five_vertex();
  CHECK(labels(theorem1_generators(s)) == labels(theorem1_generators(s)));
  GeneratorBounds tight;
  tight.max_generators = 3;
  CHECK_THROWS_AS(theorem1_sigma_generators(s, tight), BudgetExceeded);
  GeneratorBounds bad;
  bad.max_path_len = 0;
  CHECK_THROWS_AS(theorem1_sigma_generators(s, bad), std::invalid_argument);
  // twin condition fails: GL vertex fixed by the involution is normalized first
  const auto gl = fixtures::one_vertex(Group::GL, 2);
  CHECK(generator_quiver(gl).setting.vertex_count() == 2);
  CHECK(generator_quiver(gl).base == gl);
}
