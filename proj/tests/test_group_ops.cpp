#include <catch2/catch_amalgamated.hpp>

#include "fusionkit/corpus.hpp"
#include "fusionkit/group_ops.hpp"

#include "naive_oracle.hpp"

using namespace fusionkit;

namespace {

std::vector<Perm> gens(unsigned degree, std::initializer_list<const char*> cycles) {
  std::vector<Perm> out;
  for (const char* c : cycles) out.push_back(Perm::parse(c, degree));
  return out;
}

PermGroup make_s4() { return PermGroup(gens(4, {"(1 2)", "(1 2 3 4)"}), Backend::exhaustive); }
PermGroup make_d8() { return PermGroup(gens(4, {"(1 2 3 4)", "(1 3)"}), Backend::exhaustive); }
PermGroup make_a5() {
  return PermGroup(gens(5, {"(1 2 3)", "(1 2 3 4 5)"}), Backend::exhaustive);
}

std::set<naive::Table> naive_of(const PermGroup& g) {
  std::vector<naive::Table> t;
  for (const Perm& p : g.generators()) t.push_back(p.images());
  return naive::closure(t);
}

bool same_set(const PermGroup& g, const std::set<naive::Table>& reference) {
  if (g.order() != reference.size()) return false;
  for (const Perm& p : g.elements())
    if (!reference.count(p.images())) return false;
  return true;
}

}  // namespace

TEST_CASE("center: abelian groups, D8, S4") {
  PermGroup c6(gens(6, {"(1 2 3 4 5 6)"}), Backend::exhaustive);
  CHECK(center(c6).order() == 6);

  PermGroup d8 = make_d8();
  Subgroup z = center(d8);
  CHECK(z.order() == 2);
  CHECK(z.group().contains(Perm::parse("(1 3)(2 4)", 4)));
  CHECK(same_set(z.group(), naive::center(naive_of(d8))));

  CHECK(center(make_s4()).order() == 1);
}

TEST_CASE("centralizer: identity, a transposition in S4, an involution in A5") {
  PermGroup s4 = make_s4();
  CHECK(centralizer(s4, {Perm(4)}).order() == 24);

  Subgroup c = centralizer(s4, {Perm::parse("(1 2)", 4)});
  CHECK(c.order() == 4);
  for (const char* e : {"()", "(1 2)", "(3 4)", "(1 2)(3 4)"})
    CHECK(c.group().contains(Perm::parse(e, 4)));
  CHECK(same_set(c.group(), naive::centralizer(naive_of(s4), Perm::parse("(1 2)", 4).images())));
  CHECK(subgroup_index(s4, c) == 6);

  PermGroup a5 = make_a5();
  Subgroup ca = centralizer(a5, {Perm::parse("(1 2)(3 4)", 5)});
  CHECK(ca.order() == 4);
  CHECK(classify_commutativity(ca.group(), 2) == Commutativity::elementary_abelian);
  CHECK(subgroup_index(a5, ca) == 15);

  CHECK_THROWS_AS(centralizer(s4, {Perm(5)}), DegreeMismatch);
}

TEST_CASE("centralizer of the generators is the center") {
  for (const PermGroup& g : {make_s4(), make_d8(), make_a5()}) {
    Subgroup z = center(g);
    Subgroup c = centralizer(g, g.generators());
    CHECK(z.order() == c.order());
    CHECK(z.group().elements() == c.group().elements());
  }
}

TEST_CASE("normalizer: whole group, a 4-cycle in S4, a Sylow 2-subgroup of A5") {
  PermGroup s4 = make_s4();
  CHECK(normalizer(s4, s4).order() == 24);

  Subgroup four = generated_subgroup(s4, {Perm::parse("(1 2 3 4)", 4)});
  Subgroup n = normalizer(s4, four);
  CHECK(n.order() == 8);
  CHECK(same_set(n.group(), naive::normalizer(naive_of(s4), naive_of(four.group()))));

  PermGroup a5 = make_a5();
  Subgroup syl = sylow_subgroup(a5, 2);
  CHECK(normalizer(a5, syl).order() == 12);

  PermGroup c5(gens(5, {"(1 2 3 4 5)"}), Backend::exhaustive);
  CHECK_THROWS_AS(normalizer(make_d8(), c5), Error);
}

TEST_CASE("sylow subgroups have the full p-part") {
  PermGroup d8 = make_d8();
  CHECK(sylow_subgroup(d8, 2).order() == 8);

  PermGroup s4 = make_s4();
  CHECK(sylow_subgroup(s4, 2).order() == 8);
  CHECK(sylow_subgroup(s4, 3).order() == 3);

  Subgroup a5_syl = sylow_subgroup(make_a5(), 2);
  CHECK(a5_syl.order() == 4);
  CHECK(classify_commutativity(a5_syl.group(), 2) == Commutativity::elementary_abelian);

  CHECK(sylow_subgroup(s4, 5).order() == 1);
  CHECK_THROWS_AS(sylow_subgroup(s4, 4), DomainError);
  CHECK_THROWS_AS(sylow_subgroup(s4, 1), DomainError);
}

TEST_CASE("sylow order equals the p-part on the whole shipped corpus") {
  for (const GroupSpec& spec : shipped_corpus()) {
    PermGroup g = build_group(spec, Backend::stabilizer_chain);
    for (unsigned p : prime_divisors(g.order()))
      CHECK(sylow_subgroup(g, p).order() == p_part(g.order(), p));
  }
}

TEST_CASE("generated subgroups: empty, Klein four in S4, 4-cycle in D8") {
  PermGroup s4 = make_s4();
  CHECK(generated_subgroup(s4, {}).order() == 1);

  Subgroup klein =
      generated_subgroup(s4, gens(4, {"(1 2)(3 4)", "(1 3)(2 4)"}));
  CHECK(klein.order() == 4);
  CHECK(classify_commutativity(klein.group(), 2) == Commutativity::elementary_abelian);

  PermGroup d8 = make_d8();
  Subgroup c4 = generated_subgroup(d8, {Perm::parse("(1 2 3 4)", 4)});
  CHECK(c4.order() == 4);
  CHECK(classify_commutativity(c4.group(), 2) == Commutativity::abelian);

  CHECK_THROWS_AS(generated_subgroup(d8, {Perm::parse("(1 2)", 4)}), DomainError);
}

TEST_CASE("derived subgroup detects commutativity") {
  PermGroup c4(gens(4, {"(1 2 3 4)"}), Backend::exhaustive);
  CHECK(derived_subgroup(c4).order() == 1);

  PermGroup d8 = make_d8();
  Subgroup der = derived_subgroup(d8);
  CHECK(der.order() == 2);
  CHECK(der.group().elements() == center(d8).group().elements());

  Subgroup s4_der = derived_subgroup(make_s4());
  CHECK(s4_der.order() == 12);
  PermGroup a4(gens(4, {"(1 2 3)", "(2 3 4)"}), Backend::exhaustive);
  CHECK(s4_der.group().elements() == a4.elements());
}

TEST_CASE("omega1: elementary abelian, quaternion, extraspecial exponent 3") {
  PermGroup v4(gens(4, {"(1 2)", "(3 4)"}), Backend::exhaustive);
  CHECK(omega1(v4, 2).order() == 4);

  PermGroup q8 = build_group(families::generalized_quaternion(8), Backend::exhaustive);
  Subgroup u = omega1(q8, 2);
  CHECK(u.order() == 2);
  CHECK(u.group().elements() == center(q8).group().elements());

  PermGroup x27 = build_group(families::extraspecial_exponent_p(3), Backend::exhaustive);
  Subgroup ux = omega1(x27, 3);
  CHECK(ux.order() == 27);
  CHECK(classify_commutativity(ux.group(), 3) == Commutativity::nonabelian);

  CHECK_THROWS_AS(omega1(make_s4(), 2), DomainError);
}

TEST_CASE("commutativity classification") {
  PermGroup c4(gens(4, {"(1 2 3 4)"}), Backend::exhaustive);
  CHECK(classify_commutativity(c4, 2) == Commutativity::abelian);

  PermGroup v4(gens(4, {"(1 2)", "(3 4)"}), Backend::exhaustive);
  CHECK(classify_commutativity(v4, 2) == Commutativity::elementary_abelian);

  CHECK(classify_commutativity(make_d8(), 2) == Commutativity::nonabelian);
  CHECK(classify_commutativity(PermGroup::trivial(3), 5) == Commutativity::elementary_abelian);
}

TEST_CASE("conjugacy search returns the first canonical witness") {
  PermGroup s4 = make_s4();
  Perm x = Perm::parse("(1 2)", 4);

  auto self = conjugating_element(s4, x, x);
  REQUIRE(self.has_value());
  CHECK(self->is_identity());

  Perm y = Perm::parse("(3 4)", 4);
  auto w = conjugating_element(s4, x, y);
  REQUIRE(w.has_value());
  CHECK(conjugate(x, *w) == y);

  PermGroup a4(gens(4, {"(1 2 3)", "(2 3 4)"}), Backend::exhaustive);
  auto none = conjugating_element(a4, Perm::parse("(1 2 3)", 4), Perm::parse("(1 3 2)", 4));
  CHECK_FALSE(none.has_value());
  CHECK_FALSE(naive::are_conjugate(naive_of(a4), Perm::parse("(1 2 3)", 4).images(),
                                   Perm::parse("(1 3 2)", 4).images()));

  CHECK_THROWS_AS(conjugating_element(a4, Perm::parse("(1 2)", 4), Perm::parse("(1 2)", 4)),
                  DomainError);
}

TEST_CASE("conjugating into a target subgroup") {
  PermGroup a5 = make_a5();
  Subgroup syl = sylow_subgroup(a5, 2);
  Subgroup z = center(syl.group());
  Subgroup z_in_g(a5, z.group());

  Perm x = Perm::parse("(1 2)(3 4)", 5);
  auto w = conjugating_into(a5, x, z_in_g);
  REQUIRE(w.has_value());
  CHECK(z.group().contains(conjugate(x, *w)));

  // an element already inside the target gets the identity witness
  Perm inside = z.group().elements().back();
  auto self = conjugating_into(a5, inside, z_in_g);
  REQUIRE(self.has_value());
  CHECK(self->is_identity());

  // order obstruction: a 4-cycle cannot land in the order-2 center of D8
  PermGroup d8 = make_d8();
  auto none = conjugating_into(d8, Perm::parse("(1 2 3 4)", 4), center(d8));
  CHECK_FALSE(none.has_value());
}

TEST_CASE("complex products obey the cardinality law") {
  PermGroup d8 = make_d8();
  Subgroup z = center(d8);
  Subgroup u = omega1(d8, 2);

  auto za = complex_product(z, z);
  CHECK(za.size() == z.order());

  Subgroup triv = generated_subgroup(d8, {});
  CHECK(complex_product(triv, u).size() == u.order());

  auto zu = complex_product(z, u);
  // |AB| = |A||B| / |A n B|; here Z(D8) sits inside omega1(D8)
  CHECK(zu.size() == z.order() * u.order() / 2);

  PermGroup s4 = make_s4();
  Subgroup other(s4, center(s4).group());
  CHECK_THROWS_AS(complex_product(z, other), DomainError);
}

TEST_CASE("index is exact") {
  PermGroup s4 = make_s4();
  CHECK(subgroup_index(s4, s4) == 1);
  CHECK(subgroup_index(s4, centralizer(s4, {Perm::parse("(1 2)", 4)})) == 6);
  PermGroup a5 = make_a5();
  CHECK(subgroup_index(a5, centralizer(a5, {Perm::parse("(1 2)(3 4)", 5)})) == 15);
  CHECK_THROWS_AS(subgroup_index(s4, make_a5()), DomainError);
}
