#pragma once

// Collineation/duality groups of the desk-scale geometries, absolute
// points, the duality order decomposition, and the classification of
// involutory collineations of a projective plane.

#include <functional>

#include "geomver/building.hpp"
#include "geomver/geometry.hpp"

namespace geomver {

// A collineation or duality as a single permutation of the disjoint union
// points (0..P-1) then lines (P..P+L-1); a duality exchanges the blocks.
struct GeometryMap {
  int num_points = 0;
  bool duality = false;
  std::vector<uint8_t> img;

  int size() const { return static_cast<int>(img.size()); }
  int apply(int v) const { return img[v]; }
  // Image of point p: a point index for collineations, a line index for
  // dualities (and symmetrically for lines).
  int point_image(int p) const { return duality ? img[p] - num_points : img[p]; }
  int line_image(int l) const {
    return duality ? img[num_points + l] : img[num_points + l] - num_points;
  }
  bool is_identity() const;
  bool operator==(const GeometryMap& o) const { return duality == o.duality && img == o.img; }
};

GeometryMap compose(const GeometryMap& a, const GeometryMap& b);  // a after b
GeometryMap inverse(const GeometryMap& a);
GeometryMap identity_map(int num_points, int num_lines);
int map_order(const GeometryMap& m);
GeometryMap map_power(const GeometryMap& m, int e);

// Incidence preserved (collineation) / reversed (duality) on every flag.
bool valid_geometry_map(const IncidenceGeometry& g, const GeometryMap& m);

struct GeneratedGroup {
  std::vector<GeometryMap> elements;
  std::vector<GeometryMap> generators;
  size_t order() const { return elements.size(); }
};

// Deterministic BFS closure of the generators.
GeneratedGroup generate_group(std::vector<GeometryMap> generators);

// One-line image arrays, one element per line, for external cross-checks.
std::string export_group(const GeneratedGroup& g);

// Full PGammaL(3,q) acting on points and lines of PG(2,q).
GeneratedGroup collineation_group(const ProjectivePlane& plane);

// Semilinear map v -> M . v^(p^frob) as a geometry map.
GeometryMap collineation_from_matrix(const ProjectivePlane& plane,
                                     const std::array<std::array<int, 3>, 3>& M,
                                     int frob = 0);

// The polarity point <v> -> line {x : x.v = 0}.
GeometryMap standard_correlation(const ProjectivePlane& plane);

// The coset (collineation group) o (standard correlation).
std::vector<GeometryMap> all_dualities(const ProjectivePlane& plane,
                                       const GeneratedGroup& collineations);

std::vector<int> absolute_points(const ProjectivePlane& plane, const GeometryMap& duality);

// Full collineation group of the symplectic quadrangle (order 720).
GeneratedGroup quadrangle_collineations(const SymplecticQuadrangle& gq);

// A duality of the (self-dual) quadrangle, found by incidence-graph search.
GeometryMap quadrangle_duality(const SymplecticQuadrangle& gq);

struct OrderDecomposition {
  int n = 0;        // order of the duality
  int q_prime = 0;  // square-free part of q
  int r = 0;        // n = 2 q' r
  GeometryMap tau_prime;  // tau^(q' r), an involution
  bool has_odd_prime = false;
  int p = 0, h = 0, ell = 0;  // n = p^h ell with p the smallest odd prime | q'
  GeometryMap tau_double_prime;  // tau^ell, of order p^h (when has_odd_prime)
};

OrderDecomposition order_decomposition(const ProjectivePlane& plane, const GeometryMap& duality);

struct InvolutionClass {
  enum Kind { Elation, Homology, Baer } kind;
  int center = -1;  // central collineations
  int axis = -1;
  std::vector<int> subplane_points;  // Baer
  int fixed_point_count = 0;
};

InvolutionClass classify_involutory_collineation(const ProjectivePlane& plane,
                                                 const GeometryMap& map);

struct FixedStructure {
  std::vector<int> points;               // fixed points
  std::vector<std::vector<int>> lines;   // lines meeting the fixed set in >= 2 points,
                                         // restricted to fixed points
  std::vector<int> line_ids;
  PlaneCheck plane_check;
};

FixedStructure fixed_substructure(const IncidenceGeometry& g, const GeometryMap& map);

std::vector<int> orbit_sizes(const GeometryMap& m);

// Streams every involutory collineation of PG(2,q) exactly once, by direct
// enumeration of canonical semilinear matrices (no group materialization;
// PGammaL(3,9) is far too large to store).
void for_each_involutory_collineation(const ProjectivePlane& plane,
                                      const std::function<void(const GeometryMap&)>& fn);

// ---------------------------------------------------------------------------
// Building automorphisms and lifts

struct BuildingAutomorphism {
  std::vector<Chamber> img;
  std::vector<int> sigma;  // induced diagram automorphism on building types
  bool half_swapping = true;
};

// Computes sigma from the panel action and verifies the sigma-twisted
// adjacency condition; throws IncompatibleBuilding on failure.
BuildingAutomorphism make_building_automorphism(const Building& b, std::vector<Chamber> img,
                                                bool half_swapping = true);

// Flag action {p, l} -> {images}; sigma = id for collineations, the type
// swap for dualities.
BuildingAutomorphism lift_to_building(const IncidenceGeometry& g, const Building& b,
                                      const GeometryMap& m);

// ---------------------------------------------------------------------------
// A3(2): GL(4,2) and the inverse-transpose duality on complete flags.

// 4x4 GF(2) matrix packed row-wise into 16 bits (row r = bits 4r..4r+3).
using Mat4 = uint16_t;

Mat4 mat4_mul(Mat4 a, Mat4 b);
int mat4_apply(Mat4 m, int v);        // column vector as 4-bit mask
Mat4 mat4_transpose(Mat4 m);
Mat4 mat4_inverse(Mat4 m);

// The 20160 elements of GL(4,2), by closure from elementary generators.
std::vector<Mat4> gl4_elements();

// Lift of the matrix (plus optionally the standard correlation) to the
// 315-chamber flag building.
BuildingAutomorphism lift_gl4(const Rank3Building& rb, Mat4 m, bool with_duality);

// All 40320 = 20160 type-preserving + 20160 duality-coset automorphisms.
std::vector<BuildingAutomorphism> rank3_automorphisms(const Rank3Building& rb);

}  // namespace geomver
