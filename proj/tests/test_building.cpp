#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "geomver/building.hpp"

using namespace geomver;

TEST_CASE("flag building of PG(2,2)") {
  ProjectivePlane p = projective_plane(2);
  auto b = building_from_geometry(p.geom);
  CHECK(b->num_chambers() == 21);
  CHECK(b->rank() == 2);
  CHECK(b->thick());
  CHECK_FALSE(b->check_gate_property().has_value());
  const WeylTable& W = b->weyl();
  CHECK(W.size() == 6);  // I2(3)
  // delta is symmetric up to inversion and zero exactly on the diagonal
  for (Chamber c = 0; c < 21; ++c)
    for (Chamber d = 0; d < 21; ++d) {
      CHECK(b->delta_id(c, d) == W.inverse(b->delta_id(d, c)));
      CHECK((b->delta_id(c, d) == W.identity()) == (c == d));
    }
  // opposite chamber count is q^l(w0) = 8
  for (Chamber c = 0; c < 21; ++c) {
    int opp = 0;
    for (Chamber d = 0; d < 21; ++d)
      if (b->delta_id(c, d) == W.longest()) ++opp;
    CHECK(opp == 8);
  }
}

TEST_CASE("flag building of the quadrangle") {
  SymplecticQuadrangle gq = symplectic_quadrangle();
  auto b = building_from_geometry(gq.geom);
  CHECK(b->num_chambers() == 45);
  CHECK(b->weyl().size() == 8);  // I2(4)
  CHECK(b->thick());
  CHECK_FALSE(b->check_gate_property().has_value());
  const WeylTable& W = b->weyl();
  for (Chamber c = 0; c < 45; ++c) {
    int opp = 0;
    for (Chamber d = 0; d < 45; ++d)
      if (b->delta_id(c, d) == W.longest()) ++opp;
    CHECK(opp == 16);  // q^l(w0) = 2^4
  }
}

TEST_CASE("residues partition the chamber set") {
  ProjectivePlane p = projective_plane(2);
  auto b = building_from_geometry(p.geom);
  for (auto J : std::vector<std::vector<int>>{{}, {0}, {1}, {0, 1}}) {
    const auto& part = b->residues(J);
    long covered = 0;
    for (const auto& r : part.members) {
      covered += static_cast<long>(r.size());
      for (Chamber c : r) CHECK(part.residue_id[c] == part.residue_id[r.front()]);
    }
    CHECK(covered == 21);
  }
  // panels: a {0}-residue is a point-type panel of size q+1
  CHECK(b->residues({0}).members.front().size() == 3);
  // residue_of returns the member list of its chamber
  auto r = b->residue_of(5, {1});
  CHECK(std::find(r.begin(), r.end(), Chamber(5)) != r.end());
  CHECK(r == b->residues({1}).members[b->residues({1}).residue_id[5]]);
}

TEST_CASE("rank 3 flag building") {
  Rank3Building rb = flag_building_rank3(2);
  CHECK(rb.building->num_chambers() == 315);
  CHECK(rb.building->rank() == 3);
  CHECK(rb.building->thick());
  CHECK(rb.building->weyl().size() == 24);  // A3
  for (int t = 0; t < 3; ++t)
    for (const auto& panel : rb.building->panels(t)) CHECK(panel.size() == 3);
  CHECK_FALSE(rb.building->check_gate_property().has_value());
  CHECK(rb.geo.lines.size() == 35);
  CHECK(rb.geo.plane_normals.size() == 15);
  // opposite chamber count 2^l(w0) = 64
  const WeylTable& W = rb.building->weyl();
  int opp = 0;
  for (Chamber d = 0; d < 315; ++d)
    if (rb.building->delta_id(0, d) == W.longest()) ++opp;
  CHECK(opp == 64);
}

TEST_CASE("thin building realizes the group table") {
  auto weyl = dihedral_weyl(4);
  auto b = thin_building(weyl);
  CHECK(b->num_chambers() == weyl->size());
  CHECK_FALSE(b->thick());
  CHECK_FALSE(b->check_gate_property().has_value());
  for (Chamber u = 0; u < b->num_chambers(); ++u)
    for (Chamber v = 0; v < b->num_chambers(); ++v)
      CHECK(b->delta_id(u, v) ==
            weyl->mult(weyl->inverse(static_cast<ElementId>(u)), static_cast<ElementId>(v)));
}

TEST_CASE("weyl table structure") {
  auto weyl = a3_weyl();
  CHECK(weyl->size() == 24);
  CHECK(weyl->length(weyl->identity()) == 0);
  CHECK(weyl->length(weyl->longest()) == 6);
  // ids ordered by length
  for (ElementId id = 1; id < weyl->size(); ++id)
    CHECK(weyl->length(id - 1) <= weyl->length(id));
  // w0 conjugation is the diagram reversal for A3
  CHECK(weyl->w0_conjugate(0) == 2);
  CHECK(weyl->w0_conjugate(1) == 1);
  CHECK(weyl->w0_conjugate(2) == 0);
  // group laws on the tables
  for (ElementId a = 0; a < weyl->size(); ++a) {
    CHECK(weyl->mult(a, weyl->inverse(a)) == weyl->identity());
    for (int s = 0; s < 3; ++s)
      CHECK(weyl->inverse(weyl->mult_right(a, s)) == weyl->mult_left(s, weyl->inverse(a)));
  }
  // non-spherical systems are rejected
  auto aff = std::make_shared<CoxeterSystem>(
      CoxeterMatrix(3, {{1, 3, 3}, {3, 1, 3}, {3, 3, 1}}));
  CHECK_THROWS_AS(WeylTable{aff}, Error);
}

TEST_CASE("building constructor validation") {
  auto weyl = dihedral_weyl(3);
  // a panel of size 1 is rejected
  CHECK_THROWS_AS(Building(weyl, 2, {{{0, 1}}, {{0}, {1}}}), Error);
  // overlapping panels of one type are rejected
  CHECK_THROWS_AS(Building(weyl, 2, {{{0, 1}, {1, 0}}, {{0, 1}}}), Error);
}
