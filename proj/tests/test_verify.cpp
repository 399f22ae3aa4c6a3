#include <doctest.h>

#include "mqinv/derived.hpp"
#include "mqinv/matrix.hpp"
#include "mqinv/pfaffian.hpp"
#include "mqinv/verify.hpp"
#include "oracles.hpp"
#include "settings.hpp"

using namespace mqinv;

namespace {

const std::vector<Field> kFields = {Field::rationals(), Field::prime(101), Field::prime(2147483647)};

Polynomial trace_of(const PolyMatrix& m) {
  Polynomial t(m.rows() ? m(0, 0).field() : Field::rationals());
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

VerifyConfig config(Field field, int trials = 10, std::uint64_t seed = 7) {
  VerifyConfig c;
  c.field = field;
  c.trials = trials;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("samplers land in their groups") {
  for (Field f : kFields) {
    for (const auto& s : fixtures::battery()) {
      REQUIRE(is_valid(s));
      for (int t = 0; t < 8; ++t) {
        std::mt19937_64 rng = trial_rng(11, t);
        const GroupElement g = sample_group_element(s, f, rng);
        CHECK(membership_violations(s, g).empty());
      }
    }
  }
  // forced reflection stays in O and produces det -1
  const auto s = fixtures::one_vertex(Group::O, 3);
  SamplerOptions options;
  options.force_reflection = true;
  std::mt19937_64 rng(3);
  const GroupElement g = sample_group_element(s, Field::rationals(), rng, options);
  CHECK(membership_violations(s, g).empty());
  CHECK(det(g.at(1)) == Field::rationals().from_int(-1));
}

TEST_CASE("membership catches non-members") {
  const Field q = Field::rationals();
  const auto s = fixtures::one_vertex(Group::SO, 2);
  GroupElement g{{diagonal_matrix({q.from_int(2), q.from_int(1)})}};
  CHECK_FALSE(membership_violations(s, g).empty());
  const auto pair = fixtures::bilinear_forms(2, ArrowKind::SymPlus);
  GroupElement h{{identity_matrix(q, 2), diagonal_matrix({q.from_int(2), q.from_int(1)})}};
  CHECK_FALSE(membership_violations(pair, h).empty());
}

TEST_CASE("sampling is reproducible from the seed") {
  const auto s = fixtures::five_vertex();
  std::mt19937_64 a = trial_rng(99, 3), b = trial_rng(99, 3), c = trial_rng(99, 4);
  const GroupElement ga = sample_group_element(s, Field::rationals(), a);
  CHECK(ga == sample_group_element(s, Field::rationals(), b));
  CHECK_FALSE(ga == sample_group_element(s, Field::rationals(), c));
}

TEST_CASE("action: identity, composition, subspaces") {
  for (Field f : kFields) {
    for (const auto& s : fixtures::battery()) {
      std::mt19937_64 rng = trial_rng(5, 0);
      const RepresentationPoint h = random_point(s, f, rng);
      for (std::size_t k = 0; k < s.quiver.arrows.size(); ++k) CHECK(in_subspace(h.at(s.quiver.arrows[k].id), s.kind[k]));
      GroupElement e;
      for (int v = 1; v <= s.vertex_count(); ++v) e.g.push_back(identity_matrix(f, s.n(v)));
      CHECK(act(s, e, h) == h);
      const GroupElement g1 = sample_group_element(s, f, rng), g2 = sample_group_element(s, f, rng);
      CHECK(act(s, g2, act(s, g1, h)) == act(s, multiply(g2, g1), h));
      CHECK(act(s, inverse(g1), act(s, g1, h)) == h);
    }
  }
}

TEST_CASE("action on pairs of bilinear forms is congruence") {
  const auto s = fixtures::bilinear_forms(2, ArrowKind::SymPlus);
  std::mt19937_64 rng(17);
  const GroupElement g = sample_group_element(s, Field::rationals(), rng);
  const RepresentationPoint h = random_point(s, Field::rationals(), rng);
  const RepresentationPoint gh = act(s, g, h);
  const ScalarMatrix& g1 = g.at(1);
  CHECK(gh.at("a") == g1 * h.at("a") * g1.transpose());
  CHECK(gh.at("b") == g1 * h.at("b") * g1.transpose());
}

TEST_CASE("act rejects results outside the subspace") {
  const Field q = Field::rationals();
  // Not a valid setting: S+ loop at a GL vertex, so conjugation breaks symmetry.
  const auto s = fixtures::make_setting({2}, {Group::GL}, {1}, {{"s", 1, 1, ArrowKind::SymPlus}});
  RepresentationPoint h;
  h.matrices.emplace("s", identity_matrix(q, 2));
  ScalarMatrix g(2, 2, q.zero());
  g(0, 0) = q.one();
  g(0, 1) = q.one();
  g(1, 1) = q.one();
  h.matrices["s"](0, 1) = q.one();
  h.matrices["s"](1, 0) = q.one();
  CHECK_THROWS_AS(act(s, GroupElement{{g}}, h), std::logic_error);
}

TEST_CASE("check_invariance on loops") {
  for (Field f : kFields) {
    const auto gl = fixtures::one_vertex(Group::GL, 2);
    const PolyMatrix x = generic_matrix(gl, "x1");
    CHECK(check_invariance(gl, trace_of(x), config(f)).passed());
    CHECK(check_invariance(gl, det(x), config(f)).passed());

    const VerificationReport bad = check_invariance(gl, x(0, 0), config(f));
    CHECK_FALSE(bad.passed());
    REQUIRE_FALSE(bad.failures.empty());
    CHECK(bad.failures[0].witness.contains("g"));
    CHECK(bad.failures[0].witness.contains("f(g.h)"));
  }
}

TEST_CASE("P_1 separates SO(2) from O(2)") {
  const auto so = fixtures::one_vertex(Group::SO, 2);
  const Polynomial p1 = gen_pf(generic_matrix(so, "x1"));
  CHECK(p1.to_string() == Polynomial::parse("x[x1,1,2]-x[x1,2,1]").to_string());
  for (Field f : kFields) {
    CHECK(check_invariance(so, p1, config(f, 50)).passed());
    VerifyConfig reflected = config(f, 5);
    reflected.sampler.force_reflection = true;
    const VerificationReport r = check_invariance(so, p1, reflected);
    CHECK_FALSE(r.passed());
    CHECK(r.failures.size() >= 3);
  }
  // diag(1, -1) conjugation negates it
  const Field q = Field::rationals();
  std::mt19937_64 rng(23);
  const RepresentationPoint h = random_point(so, q, rng);
  const GroupElement d{{diagonal_matrix({q.one(), -q.one()})}};
  const RepresentationPoint dh = act(so, d, h);
  CHECK(p1.evaluate(to_assignment(so, dh)) == -p1.evaluate(to_assignment(so, h)));
}

TEST_CASE("report json and determinism") {
  const auto gl = fixtures::one_vertex(Group::GL, 2);
  const PolyMatrix x = generic_matrix(gl, "x1");
  const VerificationReport a = check_invariance(gl, x(0, 1), config(Field::prime(101), 6, 42), "entry");
  const VerificationReport b = check_invariance(gl, x(0, 1), config(Field::prime(101), 6, 42), "entry");
  CHECK(a.to_json().dump() == b.to_json().dump());
  const auto j = a.to_json();
  CHECK(j["checks"][0] == "entry");
  CHECK(j["trials"] == 6);
  CHECK(j["seed"] == 42);
  CHECK(j["field"] == Field::prime(101).name());
  CHECK(j["failures"].size() == a.failures.size());
  for (std::size_t k = 1; k < a.failures.size(); ++k) CHECK(a.failures[k - 1].trial < a.failures[k].trial);
  CHECK_THROWS_AS(check_invariance(gl, Polynomial::parse("x[y,1,1]"), config(Field::rationals())), std::invalid_argument);
}

TEST_CASE("derived constructions are equivariant") {
  std::vector<DerivedSetting> ds;
  ds.push_back(double_setting(fixtures::five_vertex()));
  ds.push_back(double_setting(fixtures::sl_sl_o(2, 2)));
  ds.push_back(double_setting(fixtures::make_setting({4, 2}, {Group::Sp, Group::O}, {1, 2}, {{"a", 2, 1}, {"b", 1, 2}})));
  ds.push_back(reduce(fixtures::five_vertex()));
  ds.push_back(reduce(fixtures::make_setting({4, 2}, {Group::Sp, Group::SO}, {1, 2}, {{"a", 2, 1}, {"b", 1, 1, ArrowKind::LPlus}})));
  ds.push_back(normalize_derivation(fixtures::one_vertex(Group::GL, 2, 2)));
  ds.push_back(loopify(fixtures::make_setting({2, 2}, {Group::GL, Group::GL}, {2, 1}, {{"a", 1, 2}})));
  for (Field f : kFields) {
    for (const auto& d : ds) {
      for (int t = 0; t < 4; ++t) {
        std::mt19937_64 rng = trial_rng(31, t);
        const GroupElement g = sample_group_element(d.base, f, rng);
        const RepresentationPoint h = random_point(d.base, f, rng);
        const GroupElement lifted = lift_group_element(d, g);
        CHECK(membership_violations(d.setting, lifted).empty());
        CHECK(act(d.setting, lifted, lift_point(d, h)) == lift_point(d, act(d.base, g, h)));
      }
    }
  }
}

TEST_CASE("semi-invariance of the det tableau on a GL pair") {
  using fixtures::make_setting;
  const auto s = make_setting({2, 2}, {Group::GL, Group::GL}, {2, 1}, {{"b", 1, 2}});
  const DerivedSetting d = identity_derivation(s);
  const Tableau t = det_tableau(2);
  const std::vector<Path> paths{{"b"}};
  for (Field f : kFields) {
    CHECK(check_lemma3(d, t, paths, {0, 2}, config(f)).passed());
  }
  // q = det(g_1)^2 exactly
  std::mt19937_64 rng(5);
  const GroupElement g = sample_group_element(s, Field::rationals(), rng);
  const Scalar d1 = det(g.at(1));
  CHECK(semi_invariant_character(s, g, {0, 2}) == d1 * d1);
  CHECK(semi_invariant_character(s, g, {1, 1}) == Field::rationals().one());
  // a wrong weight breaks the identity
  CHECK_THROWS_AS(check_lemma3(d, t, paths, {2, 0}, config(Field::rationals())), std::invalid_argument);
}

TEST_CASE("semi-invariance on a fixed vertex and through the double quiver") {
  using fixtures::make_setting;
  const auto o = make_setting({3}, {Group::O}, {1}, {{"a", 1, 1}});
  const DerivedSetting d = identity_derivation(o);
  for (Field f : kFields) {
    CHECK(check_lemma3(d, det_tableau(3), {{"a"}}, {2}, config(f)).passed());
  }
  // odd weight at an O vertex: q = det(g)^{-1} = det(g) on both components
  const auto o2 = make_setting({2}, {Group::O}, {1}, {{"a", 1, 1}});
  VerifyConfig reflected = config(Field::rationals());
  reflected.sampler.force_reflection = true;
  CHECK(check_lemma3(identity_derivation(o2), pfaffian_tableau(2), {{"a"}}, {1}, reflected).passed());
  // Sp vertex with positive weight is refused
  const auto sp = make_setting({2}, {Group::Sp}, {1}, {{"a", 1, 1}});
  CHECK_THROWS_AS(check_lemma3(identity_derivation(sp), det_tableau(2), {{"a"}}, {2}, config(Field::rationals())),
                  std::invalid_argument);

  const DerivedSetting dd = double_setting(fixtures::sl_sl_o(2, 2));
  // columns at vertex 1 (SL): arrow path from i(1)=2 to 1 in Q^D: c then a
  CHECK(check_lemma3(dd, det_tableau(2), {{"c", "a"}}, {2, 0, 0}, config(Field::prime(101))).passed());
}

TEST_CASE("Phi^R maps invariants to invariants") {
  const auto o = fixtures::one_vertex(Group::O, 2);
  const DerivedSetting r = reduce(o);
  const Path loop{"x1", gamma_id(1), beta_id(1)};
  REQUIRE(is_closed(r.setting.quiver, loop));
  const PolyMatrix m = path_matrix(r.setting, loop);
  for (Field f : kFields) {
    CHECK(check_phiR_invariance(r, trace_of(m), config(f)).passed());
    CHECK(check_phiR_invariance(r, det(m), config(f)).passed());
    CHECK(check_phiR_invariance(r, Polynomial::constant(Field::rationals(), 3), config(f)).passed());
    CHECK_FALSE(check_phiR_invariance(r, m(0, 1), config(f)).passed());
  }
}
