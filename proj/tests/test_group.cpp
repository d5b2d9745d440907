#include <catch2/catch_amalgamated.hpp>

#include "fusionkit/group.hpp"

#include "naive_oracle.hpp"

using namespace fusionkit;

namespace {

std::vector<Perm> gens(unsigned degree, std::initializer_list<const char*> cycles) {
  std::vector<Perm> out;
  for (const char* c : cycles) out.push_back(Perm::parse(c, degree));
  return out;
}

}  // namespace

TEST_CASE("group construction from generators, both backends") {
  for (Backend b : {Backend::exhaustive, Backend::stabilizer_chain}) {
    PermGroup d8(gens(4, {"(1 2 3 4)", "(1 3)"}), b);
    CHECK(d8.order() == 8);

    PermGroup triv({Perm(4)}, b);
    CHECK(triv.order() == 1);

    PermGroup s4(gens(4, {"(1 2)", "(1 2 3 4)"}), b);
    CHECK(s4.order() == 24);
  }
}

TEST_CASE("group construction rejects bad input") {
  CHECK_THROWS_AS(PermGroup(std::vector<Perm>{}), DomainError);
  CHECK_THROWS_AS(PermGroup({Perm(3), Perm(4)}), DegreeMismatch);
  CHECK_THROWS_AS(PermGroup(gens(4, {"(1 2)", "(1 2 3 4)"}), Backend::exhaustive, 10),
                  CapExceeded);
}

TEST_CASE("element enumeration is canonical and closed") {
  PermGroup triv = PermGroup::trivial(3);
  CHECK(triv.elements() == std::vector<Perm>{Perm(3)});

  PermGroup c3(gens(3, {"(1 2 3)"}), Backend::exhaustive);
  CHECK(c3.elements() ==
        std::vector<Perm>{Perm(3), Perm::parse("(1 2 3)", 3), Perm::parse("(1 3 2)", 3)});

  PermGroup d8(gens(4, {"(1 2 3 4)", "(1 3)"}), Backend::exhaustive);
  const auto& elems = d8.elements();
  CHECK(elems.size() == 8);
  CHECK(std::is_sorted(elems.begin(), elems.end()));
  for (const Perm& a : elems)
    for (const Perm& b : elems)
      CHECK(std::binary_search(elems.begin(), elems.end(), a * b));

  // the naive closure agrees element for element
  auto reference = naive::closure({Perm::parse("(1 2 3 4)", 4).images(),
                                   Perm::parse("(1 3)", 4).images()});
  REQUIRE(reference.size() == 8);
  for (const Perm& e : elems) CHECK(reference.count(e.images()) == 1);
}

TEST_CASE("both backends enumerate identical element lists") {
  auto check = [](std::vector<Perm> g) {
    PermGroup a(g, Backend::exhaustive);
    PermGroup b(g, Backend::stabilizer_chain);
    CHECK(a.order() == b.order());
    CHECK(a.elements() == b.elements());
  };
  check(gens(4, {"(1 2 3 4)", "(1 3)"}));
  check(gens(5, {"(1 2 3)", "(1 2 3 4 5)"}));
  check(gens(8, {"(1 2)", "(1 2 3 4 5 6 7 8)"}));
}

TEST_CASE("membership agrees across backends") {
  PermGroup a4_ex(gens(4, {"(1 2 3)", "(2 3 4)"}), Backend::exhaustive);
  PermGroup a4_ch(gens(4, {"(1 2 3)", "(2 3 4)"}), Backend::stabilizer_chain);
  CHECK(a4_ex.order() == 12);

  CHECK(a4_ex.contains(Perm(4)));
  CHECK(a4_ch.contains(Perm(4)));
  CHECK_FALSE(a4_ex.contains(Perm::parse("(1 2)", 4)));
  CHECK_FALSE(a4_ch.contains(Perm::parse("(1 2)", 4)));

  PermGroup d8(gens(4, {"(1 2 3 4)", "(1 3)"}), Backend::stabilizer_chain);
  CHECK(d8.contains(Perm::parse("(1 3)(2 4)", 4)));
  CHECK_FALSE(d8.contains(Perm::parse("(1 2)", 4)));

  CHECK_THROWS_AS(d8.contains(Perm(5)), DegreeMismatch);
}

TEST_CASE("stabilizer chain handles larger groups without enumeration") {
  // S8 fits comfortably; order comes straight off the chain.
  PermGroup s8(gens(8, {"(1 2)", "(1 2 3 4 5 6 7 8)"}), Backend::stabilizer_chain);
  CHECK(s8.order() == 40320);

  // (C2)^21 exceeds the default cap: order is fine, enumeration refuses.
  std::vector<Perm> inv_gens;
  for (unsigned i = 0; i < 21; ++i) {
    std::vector<unsigned> img(42);
    std::iota(img.begin(), img.end(), 0u);
    std::swap(img[2 * i], img[2 * i + 1]);
    inv_gens.push_back(Perm(std::move(img)));
  }
  PermGroup big(inv_gens, Backend::stabilizer_chain);
  CHECK(big.order() == (uint64_t{1} << 21));
  CHECK_THROWS_AS(big.elements(), CapExceeded);
  CHECK(big.contains(inv_gens[0] * inv_gens[7]));
}

TEST_CASE("degree-1 permutations and the trivial group are legal") {
  PermGroup t = PermGroup::trivial(1);
  CHECK(t.order() == 1);
  CHECK(t.degree() == 1);
  CHECK(t.elements().front() == Perm(1));
}

TEST_CASE("subgroup wrapper verifies containment and Lagrange") {
  PermGroup s4(gens(4, {"(1 2)", "(1 2 3 4)"}), Backend::exhaustive);
  PermGroup v4(gens(4, {"(1 2)(3 4)", "(1 3)(2 4)"}), Backend::exhaustive);
  Subgroup sub(s4, v4);
  CHECK(sub.order() == 4);
  CHECK(s4.order() % sub.order() == 0);

  PermGroup c5(gens(5, {"(1 2 3 4 5)"}), Backend::exhaustive);
  CHECK_THROWS_AS(Subgroup(s4, c5), Error);

  PermGroup d8(gens(4, {"(1 2 3 4)", "(1 3)"}), Backend::exhaustive);
  PermGroup a4(gens(4, {"(1 2 3)", "(2 3 4)"}), Backend::exhaustive);
  CHECK_THROWS_AS(Subgroup(a4, d8), DomainError);
}

TEST_CASE("from_elements reduces generators deterministically") {
  PermGroup d8(gens(4, {"(1 2 3 4)", "(1 3)"}), Backend::exhaustive);
  PermGroup rebuilt =
      PermGroup::from_elements(d8.elements(), Backend::stabilizer_chain, kDefaultElementCap);
  CHECK(rebuilt.order() == 8);
  CHECK(rebuilt.elements() == d8.elements());
  CHECK(rebuilt.generators().size() <= 3);

  CHECK_THROWS(PermGroup::from_elements(
      {Perm(3), Perm::parse("(1 2 3)", 3)}, Backend::exhaustive, kDefaultElementCap));
}
