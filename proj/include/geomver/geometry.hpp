#pragma once

// Finite point/line incidence geometries: Desarguesian projective planes,
// the symplectic generalized quadrangle over GF(2), incidence-graph
// metrics, and the generalized-polygon parameter checks.

#include <array>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "geomver/finite_field.hpp"

namespace geomver {

struct Flag {
  int point;
  int line;
  bool operator==(const Flag& o) const { return point == o.point && line == o.line; }
  bool operator<(const Flag& o) const {
    return point != o.point ? point < o.point : line < o.line;
  }
};

// Vertices of the incidence graph are indexed points first, then lines
// (line l has vertex id num_points + l).
class IncidenceGeometry {
 public:
  IncidenceGeometry(int num_points, std::vector<std::vector<int>> lines);

  int num_points() const { return num_points_; }
  int num_lines() const { return static_cast<int>(lines_.size()); }
  int num_vertices() const { return num_points_ + num_lines(); }
  const std::vector<int>& line(int l) const { return lines_[l]; }
  const std::vector<int>& lines_through(int p) const { return through_[p]; }
  bool incident(int p, int l) const { return mask_[l][p >> 6] >> (p & 63) & 1; }

  std::vector<Flag> flags() const;

  // Gonality and parameters; computed once from the incidence graph.
  int gonality() const { return gonality_; }
  int s_param() const { return s_param_; }  // points per line minus one
  int t_param() const { return t_param_; }  // lines per point minus one
  bool thick() const { return s_param_ >= 2 && t_param_ >= 2; }

  int incidence_distance(int a, int b) const;  // vertex ids
  int point_vertex(int p) const { return p; }
  int line_vertex(int l) const { return num_points_ + l; }

  int diameter() const;
  int girth() const;

  // Line through two distinct points, or -1.
  int line_through(int p1, int p2) const { return joining_[p1][p2]; }

  // Geometry file: JSON document {"points": n, "lines": [[...], ...]}.
  std::string to_json() const;
  static IncidenceGeometry from_json(const std::string& text);
  static IncidenceGeometry from_file(const std::string& path);

 private:
  void build_metric_cache() const;

  int num_points_;
  std::vector<std::vector<int>> lines_;
  std::vector<std::vector<uint64_t>> mask_;
  std::vector<std::vector<int>> through_;
  std::vector<std::vector<int>> joining_;
  int gonality_ = -1, s_param_ = -1, t_param_ = -1;
  mutable std::vector<std::vector<int>> dist_;  // all-pairs BFS, filled lazily
};

// Desarguesian plane PG(2,q) with its coordinatization kept alongside the
// abstract incidence structure (needed to build collineation generators).
struct ProjectivePlane {
  int q;
  std::shared_ptr<const FiniteField> field;
  IncidenceGeometry geom;
  std::vector<std::array<int, 3>> point_vec;    // normalized homogeneous coords
  std::vector<std::array<int, 3>> line_normal;  // normalized normal vectors

  int point_index(const std::array<int, 3>& v) const;  // normalizes first
  int line_index(const std::array<int, 3>& n) const;
};

// The symplectic quadrangle W(2): totally isotropic lines of an alternating
// form on GF(2)^4.  Points are the 15 nonzero vectors, kept as bit masks.
struct SymplecticQuadrangle {
  IncidenceGeometry geom;
  std::vector<int> point_vec;  // 4-bit masks, index i -> mask i+1
  int point_of_mask(int mask) const { return mask - 1; }
  int line_of_points(int p1, int p2) const { return geom.line_through(p1, p2); }
};

ProjectivePlane projective_plane(int q);
SymplecticQuadrangle symplectic_quadrangle();

bool validate_generalized_polygon(const IncidenceGeometry& g, int m);
bool is_non_exotic(int s, int t, bool thick, bool finite);

struct PlaneCheck {
  bool is_plane = false;
  int order = 0;  // points per line minus one, when is_plane
};

// Axiomatic projective-plane test on an arbitrary point set and a family of
// point subsets: two points on exactly one common line, two lines meet in
// exactly one point, and a quadrangle (4 points, no 3 collinear) exists.
PlaneCheck is_projective_plane(const std::vector<int>& points,
                               const std::vector<std::vector<int>>& lines);

// q = a^2 * q' with q' square-free; returns 0 iff q is a perfect square.
int square_free_part(int q);

}  // namespace geomver
