#pragma once

// Buildings as typed chamber systems with a Weyl-valued distance, computed
// by gallery BFS against an enumerated spherical Weyl group.

#include <memory>
#include <mutex>

#include "geomver/geometry.hpp"
#include "geomver/weyl_table.hpp"

namespace geomver {

using Chamber = uint16_t;

class Building {
 public:
  Building(std::shared_ptr<const WeylTable> weyl, int num_chambers,
           std::vector<std::vector<std::vector<Chamber>>> panels);

  const WeylTable& weyl() const { return *weyl_; }
  std::shared_ptr<const WeylTable> weyl_ptr() const { return weyl_; }
  int rank() const { return weyl_->rank(); }
  int num_chambers() const { return num_chambers_; }

  int panel_index(int type, Chamber c) const { return panel_of_[type][c]; }
  const std::vector<Chamber>& panel(int type, Chamber c) const {
    return panels_[type][panel_of_[type][c]];
  }
  const std::vector<std::vector<Chamber>>& panels(int type) const { return panels_[type]; }

  bool thick() const;

  // Weyl distance as an element id; rows are computed lazily per base
  // chamber and cached (concurrent fills produce identical rows).
  ElementId delta_id(Chamber c, Chamber d) const;
  const std::vector<ElementId>& delta_row(Chamber c) const;
  CanonicalElement weyl_distance(Chamber c, Chamber d) const {
    return weyl_->element(delta_id(c, d));
  }

  // J-residue of c: all chambers at distance in W_J.
  std::vector<Chamber> residue_of(Chamber c, const std::vector<int>& J) const;

  // Partition of the chamber set into J-residues; residue_id per chamber
  // plus the member lists, cached per J.
  struct ResiduePartition {
    std::vector<int> residue_id;
    std::vector<std::vector<Chamber>> members;
  };
  const ResiduePartition& residues(const std::vector<int>& J) const;

  // Gate property on every (chamber, panel) pair; returns a witness message
  // on failure.
  std::optional<std::string> check_gate_property() const;

 private:
  std::shared_ptr<const WeylTable> weyl_;
  int num_chambers_;
  std::vector<std::vector<std::vector<Chamber>>> panels_;   // [type][panel] -> chambers
  std::vector<std::vector<int>> panel_of_;                  // [type][chamber] -> panel
  mutable std::vector<std::vector<ElementId>> delta_rows_;
  mutable std::map<std::vector<int>, ResiduePartition> residue_cache_;
  mutable std::mutex cache_mutex_;
};

// Chambers are the flags of a validated generalized m-gon; generator 0 is
// point-type adjacency (same line, different point), generator 1 line-type.
std::shared_ptr<Building> building_from_geometry(const IncidenceGeometry& g);

// Complete point-line-plane flags of PG(3,q); only q=2 is built in.
// Types: 0 = point, 1 = line, 2 = plane (A3 diagram in this order).
struct Rank3Geometry {
  int q = 2;
  std::vector<int> points;                 // nonzero masks of GF(2)^4, index = mask-1
  std::vector<std::vector<int>> lines;     // 35 triples of point indices
  std::vector<int> plane_normals;          // 15 hyperplane normals (masks)
  std::vector<std::vector<int>> plane_points;
  std::vector<std::array<int, 3>> chambers;  // (point, line, plane) index triples
  std::map<std::vector<int>, int> line_index;   // sorted point triple -> line
  std::map<int, int> plane_index;               // normal mask -> plane
  std::map<std::array<int, 3>, int> chamber_index;
};

struct Rank3Building {
  Rank3Geometry geo;
  std::shared_ptr<Building> building;
};

Rank3Building flag_building_rank3(int q = 2);

// Thin building on the elements of a spherical W: delta(u,v) = u^{-1} v.
std::shared_ptr<Building> thin_building(std::shared_ptr<const WeylTable> weyl);

std::shared_ptr<const WeylTable> make_weyl(const std::vector<std::vector<int>>& matrix);
std::shared_ptr<const WeylTable> dihedral_weyl(int m);
std::shared_ptr<const WeylTable> a3_weyl();

}  // namespace geomver
