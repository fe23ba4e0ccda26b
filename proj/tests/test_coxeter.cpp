#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "geomver/building.hpp"

using namespace geomver;

namespace {

CoxeterMatrix mat(std::vector<std::vector<int>> e) {
  int rank = static_cast<int>(e.size());
  return CoxeterMatrix(rank, std::move(e));
}

const std::vector<std::vector<int>> kA2{{1, 3}, {3, 1}};
const std::vector<std::vector<int>> kB2{{1, 4}, {4, 1}};
const std::vector<std::vector<int>> kA3{{1, 3, 2}, {3, 1, 3}, {2, 3, 1}};
const std::vector<std::vector<int>> kB3{{1, 3, 2}, {3, 1, 4}, {2, 4, 1}};
const std::vector<std::vector<int>> kAffineA2{{1, 3, 3}, {3, 1, 3}, {3, 3, 1}};

}  // namespace

TEST_CASE("matrix validation") {
  CHECK_NOTHROW(mat(kA2));
  CHECK_THROWS_AS(mat({{1, 3}, {4, 1}}), Error);        // not symmetric
  CHECK_THROWS_AS(mat({{1, 1}, {1, 1}}), Error);        // off-diagonal 1
  CHECK_THROWS_AS(mat({{2, 3}, {3, 1}}), Error);        // diagonal != 1
  CHECK(CoxeterSystem(mat(kA2)).irreducible());
  CHECK(CoxeterSystem(mat(kAffineA2)).irreducible());
  CHECK_FALSE(CoxeterSystem(mat({{1, 2}, {2, 1}})).irreducible());
}

TEST_CASE("matrix file format") {
  CoxeterMatrix m = CoxeterMatrix::parse("2\n1 0\n0 1\n");
  CHECK(m.bond(0, 1) == kInfiniteBond);
  CHECK(CoxeterMatrix::parse("2\n1 3\n3 1\n") == mat(kA2));
  CHECK_THROWS_AS(CoxeterMatrix::parse("2\n1 3\n"), Error);
}

TEST_CASE("reduce") {
  CoxeterSystem a2{mat(kA2)}, b2{mat(kB2)};
  CHECK(a2.reduce({0, 1, 0, 1}).word == Word{1, 0});
  CHECK(a2.reduce({0, 0}).word == Word{});
  CHECK(b2.reduce({0, 1, 0, 1, 0}).word == Word{1, 0, 1});
  // idempotence
  CHECK(a2.reduce(a2.reduce({0, 1, 0, 1, 0, 1}).word) == a2.reduce({0, 1, 0, 1, 0, 1}));
}

TEST_CASE("length and descents") {
  CoxeterSystem a2{mat(kA2)}, b2{mat(kB2)};
  CHECK(a2.length({0, 1, 0}) == 3);
  CHECK(a2.length({}) == 0);
  CHECK(b2.length({0, 1, 0, 1}) == 4);
  CHECK(a2.descents(a2.reduce({0, 1, 0}), Side::Left) == std::vector<int>{0, 1});
  CHECK(a2.descents(a2.reduce({0, 1}), Side::Left) == std::vector<int>{0});
  CHECK(a2.descents(a2.reduce({0, 1}), Side::Right) == std::vector<int>{1});
  CHECK(a2.descents(CanonicalElement{}, Side::Left).empty());
}

TEST_CASE("support") {
  CoxeterSystem a3{mat(kA3)}, a2{mat(kA2)};
  CHECK(a3.support(a3.reduce({0, 2})) == std::vector<int>{0, 2});
  CHECK(a2.support(a2.reduce({0, 1, 0, 1})) == std::vector<int>{0, 1});
  CHECK(a2.support(CanonicalElement{}).empty());
}

TEST_CASE("spherical classification") {
  CoxeterSystem a2{mat(kA2)};
  CHECK(a2.is_spherical({0, 1}));
  CoxeterSystem inf{mat({{1, kInfiniteBond}, {kInfiniteBond, 1}})};
  CHECK_FALSE(inf.is_spherical({0, 1}));
  CHECK(inf.is_spherical({0}));
  CoxeterSystem aff{mat(kAffineA2)};
  CHECK_FALSE(aff.is_spherical({0, 1, 2}));
  CHECK(aff.is_spherical({0, 1}));
  CHECK(CoxeterSystem{mat(kB3)}.is_spherical({0, 1, 2}));
  // H3 (bond 5 at the end) is finite; affine B2 (path 4-4) is not.
  CHECK(CoxeterSystem{mat({{1, 5, 2}, {5, 1, 3}, {2, 3, 1}})}.is_spherical({0, 1, 2}));
  CHECK_FALSE(CoxeterSystem{mat({{1, 4, 2}, {4, 1, 4}, {2, 4, 1}})}.is_spherical({0, 1, 2}));
}

TEST_CASE("longest element") {
  CoxeterSystem a2{mat(kA2)}, b2{mat(kB2)};
  CHECK(a2.longest_element({0, 1}).word == Word{0, 1, 0});
  CHECK(a2.longest_element({0}).word == Word{0});
  CHECK(b2.longest_element({0, 1}).length() == 4);
  CoxeterSystem aff{mat(kAffineA2)};
  CHECK_THROWS_AS(aff.longest_element({0, 1, 2}), Error);
  // both descent sets of w_J equal J
  CoxeterSystem a3{mat(kA3)};
  for (auto J : std::vector<std::vector<int>>{{0}, {0, 1}, {0, 2}, {0, 1, 2}}) {
    CanonicalElement wj = a3.longest_element(J);
    CHECK(a3.descents(wj, Side::Left) == J);
    CHECK(a3.descents(wj, Side::Right) == J);
  }
}

TEST_CASE("diagram automorphisms") {
  CHECK(CoxeterSystem{mat(kA2)}.diagram_automorphisms().size() == 2);
  CHECK(CoxeterSystem{mat(kA3)}.diagram_automorphisms().size() == 2);
  CHECK(CoxeterSystem{mat(kAffineA2)}.diagram_automorphisms().size() == 6);
  CHECK(CoxeterSystem{mat(kB3)}.diagram_automorphisms().size() == 1);
}

TEST_CASE("coxeter graph distance") {
  CoxeterSystem a3{mat(kA3)};
  CHECK(a3.coxeter_graph_distance(0, 2) == 2);
  CHECK(a3.coxeter_graph_distance(1, 1) == 0);
  CoxeterSystem red{mat({{1, 2}, {2, 1}})};
  CHECK(red.coxeter_graph_distance(0, 1) == kInfiniteDistance);
}

TEST_CASE("coxeter distance between elements") {
  CoxeterSystem a3{mat(kA3)};
  CHECK(a3.coxeter_distance(a3.reduce({0}), a3.reduce({2})) == 2);
  CHECK(a3.coxeter_distance(CanonicalElement{}, a3.reduce({0, 1, 0})) == kInfiniteDistance);
  CHECK(a3.coxeter_distance(a3.reduce({0, 1}), a3.reduce({1, 2})) == 0);
}

TEST_CASE("commutes_with_support agrees with sw = ws") {
  // Exhaustive on A3 and B3: for w in W_{S\{s}}, sw = ws iff s commutes with
  // every generator in the support of w.
  for (auto& entries : {kA3, kB3}) {
    auto weyl = make_weyl(entries);
    const CoxeterSystem& sys = weyl->system();
    for (int s = 0; s < sys.rank(); ++s) {
      for (ElementId id = 0; id < weyl->size(); ++id) {
        if (weyl->support_mask(id) >> s & 1) {
          CHECK_THROWS_AS(sys.commutes_with_support(s, weyl->element(id)), Error);
          continue;
        }
        bool commutes = weyl->mult_left(s, id) == weyl->mult_right(id, s);
        CHECK(sys.commutes_with_support(s, weyl->element(id)) == commutes);
      }
    }
  }
}

TEST_CASE("descent lemma exhaustive on A3 and B3") {
  for (auto& entries : {kA3, kB3}) {
    auto weyl = make_weyl(entries);
    const CoxeterSystem& sys = weyl->system();
    for (const DiagramAutomorphism& sigma : sys.diagram_automorphisms()) {
      for (ElementId id = 0; id < weyl->size(); ++id) {
        DescentLemmaReport r = sys.descent_lemma_witness(sigma, weyl->element(id));
        if (r.hypotheses_hold) CHECK(r.conclusions_hold());
      }
    }
  }
}

TEST_CASE("permutation oracle equivalence on full enumerations") {
  std::vector<std::vector<std::vector<int>>> types{kA2, kB2, kA3, kB3,
                                                   {{1, 6}, {6, 1}}};  // I2(6)
  std::vector<int> orders{6, 8, 24, 48, 12};
  for (size_t i = 0; i < types.size(); ++i) {
    auto weyl = make_weyl(types[i]);
    REQUIRE(weyl->size() == orders[i]);
    PermutationOracle oracle(weyl->system());
    std::map<std::vector<int>, ElementId> by_perm;
    for (ElementId id = 0; id < weyl->size(); ++id) {
      auto perm = oracle.realize(weyl->element(id).word);
      // distinct elements realize distinct permutations (faithful)
      CHECK(by_perm.emplace(perm, id).second);
    }
    // multiplication carried over to the oracle
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      ElementId a = rng() % weyl->size(), b = rng() % weyl->size();
      Word ab = weyl->element(a).word;
      for (int s : weyl->element(b).word) ab.push_back(s);
      CHECK(by_perm.at(oracle.realize(ab)) == weyl->mult(a, b));
    }
  }
}

TEST_CASE("random word properties in affine A2") {
  CoxeterSystem aff{mat(kAffineA2)};
  std::mt19937 rng(123);
  for (int trial = 0; trial < 500; ++trial) {
    int len = 1 + rng() % 12;
    Word w(len);
    for (int& x : w) x = rng() % 3;
    CanonicalElement r = aff.reduce(w);
    CHECK(r.length() <= len);
    CHECK((len - r.length()) % 2 == 0);  // deletion condition: drop pairs
    CHECK(aff.reduce(r.word) == r);
    Word back = w;
    back.insert(back.end(), w.rbegin(), w.rend());
    CHECK(aff.reduce(back).is_identity());
  }
}
