#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "geomver/symmetry.hpp"

using namespace geomver;

TEST_CASE("geometry map algebra") {
  ProjectivePlane p = projective_plane(2);
  GeometryMap tau = standard_correlation(p);
  CHECK(tau.duality);
  CHECK(valid_geometry_map(p.geom, tau));
  CHECK(map_order(tau) == 2);
  CHECK(compose(tau, tau).is_identity());
  CHECK(compose(tau, inverse(tau)).is_identity());
  GeometryMap id = identity_map(7, 7);
  CHECK(id.is_identity());
  CHECK(map_order(id) == 1);
  CHECK(map_power(tau, 2) == compose(tau, tau));
}

TEST_CASE("collineation group orders") {
  CHECK(collineation_group(projective_plane(2)).order() == 168);
  CHECK(collineation_group(projective_plane(3)).order() == 5616);
  CHECK(collineation_group(projective_plane(4)).order() == 120960);
}

TEST_CASE("dualities and absolute points") {
  ProjectivePlane p = projective_plane(2);
  GeneratedGroup coll = collineation_group(p);
  auto dualities = all_dualities(p, coll);
  CHECK(dualities.size() == 168);
  for (const auto& d : dualities) CHECK(valid_geometry_map(p.geom, d));
  // standard polarity: q+1 = 3 collinear absolute points
  auto abs = absolute_points(p, standard_correlation(p));
  REQUIRE(abs.size() == 3);
  int l = p.geom.line_through(abs[0], abs[1]);
  CHECK(p.geom.incident(abs[2], l));
  CHECK_THROWS_AS(absolute_points(p, coll.elements[0]), Error);
}

TEST_CASE("export group emits one element per line") {
  GeneratedGroup coll = quadrangle_collineations(symplectic_quadrangle());
  std::string text = export_group(coll);
  CHECK(std::count(text.begin(), text.end(), '\n') == 720);
}

TEST_CASE("quadrangle symmetries") {
  SymplecticQuadrangle gq = symplectic_quadrangle();
  GeneratedGroup coll = quadrangle_collineations(gq);
  CHECK(coll.order() == 720);
  GeometryMap tau = quadrangle_duality(gq);
  CHECK(tau.duality);
  CHECK(valid_geometry_map(gq.geom, tau));
  // tau^2 is a collineation that lies in the generated group
  GeometryMap tau2 = compose(tau, tau);
  CHECK_FALSE(tau2.duality);
  CHECK(std::count(coll.elements.begin(), coll.elements.end(), tau2) == 1);
}

TEST_CASE("involution classification examples") {
  // transvection on PG(2,2): an elation with q+1 fixed points, centre on axis
  ProjectivePlane p2 = projective_plane(2);
  GeometryMap elation =
      collineation_from_matrix(p2, {{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}});
  InvolutionClass c = classify_involutory_collineation(p2, elation);
  CHECK(c.kind == InvolutionClass::Elation);
  CHECK(c.fixed_point_count == 3);
  CHECK(p2.geom.incident(c.center, c.axis));

  // diag(-1,1,1) on PG(2,9): a homology with q+2 fixed points
  ProjectivePlane p9 = projective_plane(9);
  FiniteField f9(9);
  GeometryMap hom =
      collineation_from_matrix(p9, {{{f9.neg(1), 0, 0}, {0, 1, 0}, {0, 0, 1}}});
  c = classify_involutory_collineation(p9, hom);
  CHECK(c.kind == InvolutionClass::Homology);
  CHECK(c.fixed_point_count == 11);
  CHECK_FALSE(p9.geom.incident(c.center, c.axis));

  // frobenius on PG(2,4): a Baer involution fixing a PG(2,2)
  ProjectivePlane p4 = projective_plane(4);
  GeometryMap frob =
      collineation_from_matrix(p4, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}, 1);
  c = classify_involutory_collineation(p4, frob);
  CHECK(c.kind == InvolutionClass::Baer);
  CHECK(c.fixed_point_count == 7);
  CHECK(c.subplane_points.size() == 7);
  FixedStructure fs = fixed_substructure(p4.geom, frob);
  CHECK(fs.plane_check.is_plane);
  CHECK(fs.plane_check.order == 2);

  // a non-involution is rejected
  GeometryMap cycle =
      collineation_from_matrix(p2, {{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}});
  CHECK_THROWS_AS(classify_involutory_collineation(p2, cycle), Error);
}

TEST_CASE("involution streaming counts") {
  // PG(2,2): the 21 involutions of PGL(3,2) are exactly the elations.
  ProjectivePlane p2 = projective_plane(2);
  int count = 0;
  for_each_involutory_collineation(p2, [&](const GeometryMap& m) {
    CHECK(map_order(m) == 2);
    CHECK(classify_involutory_collineation(p2, m).kind == InvolutionClass::Elation);
    ++count;
  });
  CHECK(count == 21);

  // PG(2,3): 13 * 9 = 117 involutory homologies, nothing else.
  ProjectivePlane p3 = projective_plane(3);
  count = 0;
  for_each_involutory_collineation(p3, [&](const GeometryMap& m) {
    CHECK(classify_involutory_collineation(p3, m).kind == InvolutionClass::Homology);
    ++count;
  });
  CHECK(count == 117);
}

TEST_CASE("order decomposition") {
  ProjectivePlane p2 = projective_plane(2);
  GeneratedGroup coll = collineation_group(p2);
  // the standard polarity has order 2, not of the form 2 q' r for q' = 2
  CHECK_THROWS_AS(order_decomposition(p2, standard_correlation(p2)), Error);
  int seen = 0;
  for (const auto& tau : all_dualities(p2, coll)) {
    int n = map_order(tau);
    if (n % 4 != 0) continue;
    OrderDecomposition d = order_decomposition(p2, tau);
    CHECK(d.n == n);
    CHECK(d.q_prime == 2);
    CHECK(d.n == 2 * d.q_prime * d.r);
    CHECK(map_order(d.tau_prime) == 2);
    // tau^(q'r) is a polarity when q'r is odd, a collineation when even
    CHECK(d.tau_prime.duality == ((d.q_prime * d.r) % 2 == 1));
    CHECK_FALSE(d.has_odd_prime);
    ++seen;
  }
  CHECK(seen > 0);

  // q = 3: q' = 3 brings the odd-prime branch in
  ProjectivePlane p3 = projective_plane(3);
  seen = 0;
  for (const auto& tau : all_dualities(p3, collineation_group(p3))) {
    int n = map_order(tau);
    if (n % 6 != 0) continue;
    OrderDecomposition d = order_decomposition(p3, tau);
    CHECK(d.has_odd_prime);
    CHECK(d.p == 3);
    int ph = 1;
    for (int i = 0; i < d.h; ++i) ph *= 3;
    CHECK(d.n == ph * d.ell);
    CHECK(d.ell % 3 != 0);
    CHECK(map_order(d.tau_double_prime) == ph);
    ++seen;
    if (seen >= 50) break;
  }
  CHECK(seen > 0);
}

TEST_CASE("orbit sizes partition the vertex set") {
  ProjectivePlane p = projective_plane(3);
  GeometryMap tau = standard_correlation(p);
  auto sizes = orbit_sizes(tau);
  long sum = 0;
  for (int s : sizes) sum += s;
  CHECK(sum == p.geom.num_vertices());
}

TEST_CASE("building lifts are homomorphic") {
  ProjectivePlane p = projective_plane(2);
  auto b = building_from_geometry(p.geom);
  GeneratedGroup coll = collineation_group(p);
  auto dualities = all_dualities(p, coll);
  BuildingAutomorphism lift_tau = lift_to_building(p.geom, *b, dualities[0]);
  CHECK(lift_tau.sigma == std::vector<int>{1, 0});
  BuildingAutomorphism lift_g = lift_to_building(p.geom, *b, coll.elements[1]);
  CHECK(lift_g.sigma == std::vector<int>{0, 1});
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const GeometryMap& a = coll.elements[rng() % coll.order()];
    const GeometryMap& c = dualities[rng() % dualities.size()];
    BuildingAutomorphism la = lift_to_building(p.geom, *b, a);
    BuildingAutomorphism lc = lift_to_building(p.geom, *b, c);
    BuildingAutomorphism lac = lift_to_building(p.geom, *b, compose(a, c));
    for (Chamber x = 0; x < b->num_chambers(); ++x)
      CHECK(lac.img[x] == la.img[lc.img[x]]);
  }
}

TEST_CASE("mat4 arithmetic") {
  std::mt19937 rng(11);
  auto elems = gl4_elements();
  CHECK(elems.size() == 20160);
  for (int trial = 0; trial < 100; ++trial) {
    Mat4 a = elems[rng() % elems.size()], b = elems[rng() % elems.size()];
    CHECK(mat4_mul(a, mat4_inverse(a)) == Mat4(0x8421));
    CHECK(mat4_transpose(mat4_transpose(a)) == a);
    for (int v = 0; v < 16; ++v)
      CHECK(mat4_apply(mat4_mul(a, b), v) == mat4_apply(a, mat4_apply(b, v)));
  }
}

TEST_CASE("rank 3 automorphisms") {
  Rank3Building rb = flag_building_rank3(2);
  auto maps = rank3_automorphisms(rb);
  CHECK(maps.size() == 40320);
  // type-preserving part first, duality coset second
  CHECK(maps[0].sigma == std::vector<int>{0, 1, 2});
  CHECK(maps[20160].sigma == std::vector<int>{2, 1, 0});
  // spot-check a few against the validating generic constructor
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto& m = maps[rng() % maps.size()];
    BuildingAutomorphism revalidated = make_building_automorphism(*rb.building, m.img);
    CHECK(revalidated.sigma == m.sigma);
  }
  // identity lift, with and without the duality
  BuildingAutomorphism id = lift_gl4(rb, 0x8421, false);
  for (Chamber c = 0; c < 315; ++c) CHECK(id.img[c] == c);
  BuildingAutomorphism dual = lift_gl4(rb, 0x8421, true);
  CHECK(dual.sigma == std::vector<int>{2, 1, 0});
  // the duality composed with itself is type preserving
  std::vector<Chamber> sq(315);
  for (Chamber c = 0; c < 315; ++c) sq[c] = dual.img[dual.img[c]];
  CHECK(make_building_automorphism(*rb.building, sq).sigma == std::vector<int>{0, 1, 2});
}

TEST_CASE("make_building_automorphism rejects non-automorphisms") {
  ProjectivePlane p = projective_plane(2);
  auto b = building_from_geometry(p.geom);
  std::vector<Chamber> img(21);
  std::iota(img.begin(), img.end(), Chamber(0));
  CHECK_NOTHROW(make_building_automorphism(*b, img));
  std::swap(img[0], img[20]);  // breaks panel structure
  CHECK_THROWS_AS(make_building_automorphism(*b, img), Error);
}
