#include "geomver/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace geomver {

// ---------------------------------------------------------------------------
// GeometryMap basics

bool GeometryMap::is_identity() const {
  if (duality) return false;
  for (int i = 0; i < size(); ++i)
    if (img[i] != i) return false;
  return true;
}

GeometryMap compose(const GeometryMap& a, const GeometryMap& b) {
  GeometryMap r;
  r.num_points = a.num_points;
  r.duality = a.duality != b.duality;
  r.img.resize(a.img.size());
  for (size_t i = 0; i < a.img.size(); ++i) r.img[i] = a.img[b.img[i]];
  return r;
}

GeometryMap inverse(const GeometryMap& a) {
  GeometryMap r;
  r.num_points = a.num_points;
  r.duality = a.duality;
  r.img.resize(a.img.size());
  for (size_t i = 0; i < a.img.size(); ++i) r.img[a.img[i]] = static_cast<uint8_t>(i);
  return r;
}

GeometryMap identity_map(int num_points, int num_lines) {
  GeometryMap r;
  r.num_points = num_points;
  r.duality = false;
  r.img.resize(num_points + num_lines);
  std::iota(r.img.begin(), r.img.end(), 0);
  return r;
}

int map_order(const GeometryMap& m) {
  // lcm of cycle lengths of the vertex permutation.
  int n = m.size();
  std::vector<bool> seen(n, false);
  long order = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    do {
      seen[j] = true;
      j = m.img[j];
      ++len;
    } while (j != i);
    order = std::lcm(order, static_cast<long>(len));
  }
  return static_cast<int>(order);
}

GeometryMap map_power(const GeometryMap& m, int e) {
  GeometryMap r = identity_map(m.num_points, m.size() - m.num_points);
  for (int i = 0; i < e; ++i) r = compose(r, m);
  return r;
}

bool valid_geometry_map(const IncidenceGeometry& g, const GeometryMap& m) {
  if (m.size() != g.num_vertices() || m.num_points != g.num_points()) return false;
  for (int v = 0; v < m.size(); ++v) {
    bool is_point = v < g.num_points();
    bool image_point = m.img[v] < g.num_points();
    if ((is_point == image_point) == m.duality) return false;
  }
  for (int p = 0; p < g.num_points(); ++p)
    for (int l : g.lines_through(p)) {
      int pv = m.img[p], lv = m.img[g.num_points() + l];
      int ip = m.duality ? lv : pv;
      int il = m.duality ? pv - g.num_points() : lv - g.num_points();
      if (!g.incident(ip, il)) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Group closure

namespace {

std::string map_key(const GeometryMap& m) {
  std::string k(reinterpret_cast<const char*>(m.img.data()), m.img.size());
  k.push_back(m.duality ? '\1' : '\0');
  return k;
}

}  // namespace

GeneratedGroup generate_group(std::vector<GeometryMap> generators) {
  GeneratedGroup g;
  g.generators = generators;
  if (generators.empty()) throw Error("InvalidArgument", "no generators");
  std::unordered_set<std::string> seen;
  GeometryMap id = identity_map(generators[0].num_points,
                                generators[0].size() - generators[0].num_points);
  g.elements.push_back(id);
  seen.insert(map_key(id));
  std::deque<size_t> work{0};
  while (!work.empty()) {
    size_t i = work.front();
    work.pop_front();
    for (const GeometryMap& gen : g.generators) {
      GeometryMap next = compose(g.elements[i], gen);
      if (seen.insert(map_key(next)).second) {
        g.elements.push_back(std::move(next));
        work.push_back(g.elements.size() - 1);
      }
    }
  }
  return g;
}

std::string export_group(const GeneratedGroup& g) {
  std::ostringstream os;
  for (const auto& e : g.elements) {
    for (size_t i = 0; i < e.img.size(); ++i) os << (i ? " " : "") << int(e.img[i]);
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// PG(2,q) collineations and dualities

GeometryMap collineation_from_matrix(const ProjectivePlane& plane,
                                     const std::array<std::array<int, 3>, 3>& M, int frob) {
  const FiniteField& F = *plane.field;
  const IncidenceGeometry& g = plane.geom;
  GeometryMap r;
  r.num_points = g.num_points();
  r.duality = false;
  r.img.resize(g.num_vertices());
  auto apply = [&](std::array<int, 3> v) {
    for (int i = 0; i < 3; ++i)
      for (int f = 0; f < frob; ++f) v[i] = F.frobenius(v[i]);
    std::array<int, 3> u{0, 0, 0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) u[i] = F.add(u[i], F.mul(M[i][j], v[j]));
    return u;
  };
  for (int p = 0; p < g.num_points(); ++p)
    r.img[p] = static_cast<uint8_t>(plane.point_index(apply(plane.point_vec[p])));
  for (int l = 0; l < g.num_lines(); ++l) {
    int p1 = r.img[g.line(l)[0]], p2 = r.img[g.line(l)[1]];
    int li = g.line_through(p1, p2);
    if (li < 0) throw Error("Internal", "matrix image of a line is not a line");
    r.img[g.num_points() + l] = static_cast<uint8_t>(g.num_points() + li);
  }
  return r;
}

GeneratedGroup collineation_group(const ProjectivePlane& plane) {
  const FiniteField& F = *plane.field;
  int q = plane.q;
  // Smallest multiplicative generator.
  int prim = -1;
  for (int a = 2; a < q && prim < 0; ++a) {
    int x = a, ord = 1;
    while (x != 1) {
      x = F.mul(x, a);
      ++ord;
    }
    if (ord == q - 1) prim = a;
  }
  if (q == 2) prim = 1;

  using M3 = std::array<std::array<int, 3>, 3>;
  M3 I{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  M3 T = I;
  T[0][1] = 1;  // transvection
  M3 P{{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}};  // coordinate 3-cycle
  M3 S{{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}};  // swap first two coordinates
  M3 D = I;
  D[0][0] = prim;  // diagonal semilinear generator

  std::vector<GeometryMap> gens;
  gens.push_back(collineation_from_matrix(plane, T));
  gens.push_back(collineation_from_matrix(plane, P));
  gens.push_back(collineation_from_matrix(plane, S));
  if (prim != 1) gens.push_back(collineation_from_matrix(plane, D));
  if (F.k() > 1) gens.push_back(collineation_from_matrix(plane, I, 1));  // frobenius
  return generate_group(std::move(gens));
}

GeometryMap standard_correlation(const ProjectivePlane& plane) {
  const IncidenceGeometry& g = plane.geom;
  GeometryMap r;
  r.num_points = g.num_points();
  r.duality = true;
  r.img.resize(g.num_vertices());
  // Point <v> -> line with normal v; line with normal u -> point <u>.
  // Points and lines share the same normalized index set.
  for (int p = 0; p < g.num_points(); ++p)
    r.img[p] = static_cast<uint8_t>(g.num_points() + plane.line_index(plane.point_vec[p]));
  for (int l = 0; l < g.num_lines(); ++l)
    r.img[g.num_points() + l] = static_cast<uint8_t>(plane.point_index(plane.line_normal[l]));
  return r;
}

std::vector<GeometryMap> all_dualities(const ProjectivePlane& plane,
                                       const GeneratedGroup& collineations) {
  GeometryMap tau = standard_correlation(plane);
  std::vector<GeometryMap> result;
  result.reserve(collineations.order());
  for (const auto& g : collineations.elements) result.push_back(compose(g, tau));
  return result;
}

std::vector<int> absolute_points(const ProjectivePlane& plane, const GeometryMap& duality) {
  if (!duality.duality) throw Error("InvalidArgument", "absolute points need a duality");
  std::vector<int> result;
  for (int p = 0; p < plane.geom.num_points(); ++p)
    if (plane.geom.incident(p, duality.point_image(p))) result.push_back(p);
  return result;
}

// ---------------------------------------------------------------------------
// W(2) symmetries

GeneratedGroup quadrangle_collineations(const SymplecticQuadrangle& gq) {
  const IncidenceGeometry& g = gq.geom;
  auto form = [](int x, int y) {
    auto bit = [](int v, int i) { return (v >> i) & 1; };
    return (bit(x, 0) & bit(y, 1)) ^ (bit(x, 1) & bit(y, 0)) ^ (bit(x, 2) & bit(y, 3)) ^
           (bit(x, 3) & bit(y, 2));
  };
  // Symplectic transvections x -> x + B(x,v) v generate Sp(4,2).
  std::vector<GeometryMap> gens;
  for (int v = 1; v < 16; ++v) {
    GeometryMap m;
    m.num_points = 15;
    m.duality = false;
    m.img.resize(30);
    for (int x = 1; x < 16; ++x) {
      int y = form(x, v) ? (x ^ v) : x;
      m.img[x - 1] = static_cast<uint8_t>(y - 1);
    }
    for (int l = 0; l < g.num_lines(); ++l) {
      int p1 = m.img[g.line(l)[0]], p2 = m.img[g.line(l)[1]];
      m.img[15 + l] = static_cast<uint8_t>(15 + g.line_through(p1, p2));
    }
    gens.push_back(std::move(m));
  }
  return generate_group(std::move(gens));
}

GeometryMap quadrangle_duality(const SymplecticQuadrangle& gq) {
  const IncidenceGeometry& g = gq.geom;
  int P = g.num_points(), n = g.num_vertices();
  std::vector<std::vector<int>> adj(n);
  for (int p = 0; p < P; ++p)
    for (int l : g.lines_through(p)) {
      adj[p].push_back(P + l);
      adj[P + l].push_back(p);
    }
  // BFS vertex order so each new vertex (after the root) has a mapped parent.
  std::vector<int> order, parent(n, -1);
  std::vector<bool> seen(n, false);
  std::deque<int> q{0};
  seen[0] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    order.push_back(v);
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = true;
        parent[u] = v;
        q.push_back(u);
      }
  }
  std::vector<int> img(n, -1), used(n, 0);
  auto block_ok = [&](int v, int c) { return (v < P) == (c >= P); };
  std::function<bool(size_t)> dfs = [&](size_t k) -> bool {
    if (k == order.size()) return true;
    int v = order[k];
    std::vector<int> candidates;
    if (parent[v] == -1) {
      for (int c = 0; c < n; ++c)
        if (block_ok(v, c)) candidates.push_back(c);
    } else {
      candidates = adj[img[parent[v]]];
    }
    for (int c : candidates) {
      if (used[c] || !block_ok(v, c)) continue;
      bool ok = true;
      for (int u : adj[v])
        if (img[u] != -1 && std::find(adj[c].begin(), adj[c].end(), img[u]) == adj[c].end()) {
          ok = false;
          break;
        }
      if (!ok) continue;
      img[v] = c;
      used[c] = 1;
      if (dfs(k + 1)) return true;
      img[v] = -1;
      used[c] = 0;
    }
    return false;
  };
  if (!dfs(0)) throw Error("Internal", "no duality found for the quadrangle");
  GeometryMap m;
  m.num_points = P;
  m.duality = true;
  m.img.assign(img.begin(), img.end());
  if (!valid_geometry_map(g, m)) throw Error("Internal", "quadrangle duality search bug");
  return m;
}

// ---------------------------------------------------------------------------
// Order decomposition and involution classification

OrderDecomposition order_decomposition(const ProjectivePlane& plane, const GeometryMap& tau) {
  if (!tau.duality) throw Error("InvalidArgument", "order decomposition needs a duality");
  OrderDecomposition d;
  d.n = map_order(tau);
  d.q_prime = square_free_part(plane.q);
  if (d.q_prime == 0) throw Error("NotApplicable", "q is a perfect square (q' = 0)");
  if (d.n % d.q_prime != 0) throw Error("NotApplicable", "q' does not divide the order");
  if (d.n % (2 * d.q_prime) != 0)
    throw Error("NotApplicable", "order is not of the form 2 q' r");
  d.r = d.n / (2 * d.q_prime);
  d.tau_prime = map_power(tau, d.q_prime * d.r);
  for (int p = 3; p <= d.q_prime; p += 2)
    if (d.q_prime % p == 0) {
      bool prime = true;
      for (int x = 3; x * x <= p; x += 2)
        if (p % x == 0) prime = false;
      if (prime) {
        d.has_odd_prime = true;
        d.p = p;
        break;
      }
    }
  if (d.has_odd_prime) {
    d.h = 0;
    int m = d.n;
    while (m % d.p == 0) {
      m /= d.p;
      ++d.h;
    }
    d.ell = m;
    d.tau_double_prime = map_power(tau, d.ell);
  }
  return d;
}

std::vector<int> orbit_sizes(const GeometryMap& m) {
  int n = m.size();
  std::vector<bool> seen(n, false);
  std::vector<int> sizes;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    do {
      seen[j] = true;
      j = m.img[j];
      ++len;
    } while (j != i);
    sizes.push_back(len);
  }
  return sizes;
}

FixedStructure fixed_substructure(const IncidenceGeometry& g, const GeometryMap& map) {
  if (map.duality) throw Error("InvalidArgument", "fixed substructure needs a collineation");
  FixedStructure fs;
  for (int p = 0; p < g.num_points(); ++p)
    if (map.img[p] == p) fs.points.push_back(p);
  std::vector<bool> fixed(g.num_points(), false);
  for (int p : fs.points) fixed[p] = true;
  for (int l = 0; l < g.num_lines(); ++l) {
    std::vector<int> restricted;
    for (int p : g.line(l))
      if (fixed[p]) restricted.push_back(p);
    if (restricted.size() >= 2) {
      fs.lines.push_back(std::move(restricted));
      fs.line_ids.push_back(l);
    }
  }
  fs.plane_check = is_projective_plane(fs.points, fs.lines);
  return fs;
}

InvolutionClass classify_involutory_collineation(const ProjectivePlane& plane,
                                                 const GeometryMap& map) {
  const IncidenceGeometry& g = plane.geom;
  if (map.duality || map_order(map) != 2) throw Error("NotInvolution", "map must have order 2");
  int q = plane.q;

  std::vector<int> FP;
  for (int p = 0; p < g.num_points(); ++p)
    if (map.img[p] == p) FP.push_back(p);
  std::vector<int> FL;
  for (int l = 0; l < g.num_lines(); ++l)
    if (map.img[g.num_points() + l] == g.num_points() + l) FL.push_back(l);

  int root = static_cast<int>(std::lround(std::sqrt(double(q))));
  bool q_square = (root * root == q);

  InvolutionClass cls;
  cls.fixed_point_count = static_cast<int>(FP.size());

  if (q_square && static_cast<int>(FP.size()) == q + root + 1) {
    FixedStructure fs = fixed_substructure(g, map);
    if (!fs.plane_check.is_plane || fs.plane_check.order != root)
      throw Error("ClassificationFailed", "Baer candidate does not fix a subplane of order sqrt(q)");
    cls.kind = InvolutionClass::Baer;
    cls.subplane_points = fs.points;
    return cls;
  }

  // Central collineation: unique axis (a pointwise-fixed line) and unique
  // centre (a linewise-fixed point).
  int axis = -1;
  for (int l : FL) {
    bool pointwise = true;
    for (int p : g.line(l))
      if (map.img[p] != p) pointwise = false;
    if (pointwise) {
      if (axis != -1) throw Error("ClassificationFailed", "two pointwise-fixed lines");
      axis = l;
    }
  }
  int center = -1;
  for (int p : FP) {
    bool linewise = true;
    for (int l : g.lines_through(p))
      if (map.img[g.num_points() + l] != g.num_points() + l) linewise = false;
    if (linewise) {
      if (center != -1) throw Error("ClassificationFailed", "two linewise-fixed points");
      center = p;
    }
  }
  if (axis == -1 || center == -1)
    throw Error("ClassificationFailed", "involution has no centre/axis and is not Baer");
  cls.center = center;
  cls.axis = axis;
  if (g.incident(center, axis)) {
    cls.kind = InvolutionClass::Elation;
    if (q % 2 != 0) throw Error("ClassificationFailed", "elation with odd q");
    if (static_cast<int>(FP.size()) != q + 1)
      throw Error("ClassificationFailed", "elation fixed-point count is not q+1");
  } else {
    cls.kind = InvolutionClass::Homology;
    if (q % 2 != 1) throw Error("ClassificationFailed", "homology with even q");
    if (static_cast<int>(FP.size()) != q + 2)
      throw Error("ClassificationFailed", "homology fixed-point count is not q+2");
  }
  return cls;
}

// ---------------------------------------------------------------------------
// Involution streaming over canonical semilinear matrices

void for_each_involutory_collineation(const ProjectivePlane& plane,
                                      const std::function<void(const GeometryMap&)>& fn) {
  const FiniteField& F = *plane.field;
  int q = plane.q, k = F.k();

  std::vector<int> frob_powers{0};
  if (k % 2 == 0) frob_powers.push_back(k / 2);  // phi^(2f) = id requires 2f = 0 mod k

  for (int f : frob_powers) {
    auto twist = [&](int x) {
      for (int i = 0; i < f; ++i) x = F.frobenius(x);
      return x;
    };
    // Canonical PGL representatives: first nonzero entry (row-major) is 1.
    for (int lead = 0; lead < 3; ++lead) {
      int free = 8 - lead;
      std::vector<int> digits(free, 0);
      for (;;) {
        int a[9];
        for (int i = 0; i < lead; ++i) a[i] = 0;
        a[lead] = 1;
        for (int i = 0; i < free; ++i) a[lead + 1 + i] = digits[i];
        // theta = M o phi^f; involution iff M . phi^f(M) is a nonzero scalar.
        int b[9];
        for (int i = 0; i < 9; ++i) b[i] = twist(a[i]);
        auto prod = [&](int r, int c) {
          int s = 0;
          for (int j = 0; j < 3; ++j) s = F.add(s, F.mul(a[3 * r + j], b[3 * j + c]));
          return s;
        };
        int lambda = prod(0, 0);
        bool ok = lambda != 0;
        for (int r = 0; r < 3 && ok; ++r)
          for (int c = 0; c < 3 && ok; ++c) {
            int want = (r == c) ? lambda : 0;
            if (!(r == 0 && c == 0) && prod(r, c) != want) ok = false;
          }
        if (ok) {
          bool is_id = (f == 0 && lead == 0);
          if (is_id) {
            // identity in PGL iff the canonical matrix is the identity
            static const int ident[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
            for (int i = 0; i < 9; ++i)
              if (a[i] != ident[i]) is_id = false;
          }
          if (!is_id) {
            std::array<std::array<int, 3>, 3> M;
            for (int r = 0; r < 3; ++r)
              for (int c = 0; c < 3; ++c) M[r][c] = a[3 * r + c];
            GeometryMap m = collineation_from_matrix(plane, M, f);
            if (!m.is_identity())  // phi^f could coincide with an inner map only for f=0
              fn(m);
          }
        }
        // odometer
        int i = free - 1;
        while (i >= 0 && digits[i] == q - 1) {
          digits[i] = 0;
          --i;
        }
        if (i < 0) break;
        ++digits[i];
      }
      if (free == 0) break;  // lead == 8 cannot happen for invertible M anyway
    }
  }
}

// ---------------------------------------------------------------------------
// Building automorphisms and lifts

BuildingAutomorphism make_building_automorphism(const Building& b, std::vector<Chamber> img,
                                                bool half_swapping) {
  int n = b.rank();
  int N = b.num_chambers();
  if (static_cast<int>(img.size()) != N)
    throw Error("IncompatibleBuilding", "image size mismatch");
  BuildingAutomorphism a;
  a.img = std::move(img);
  a.half_swapping = half_swapping;
  a.sigma.assign(n, -1);
  // Determine sigma from one panel per type, then verify globally.
  for (int s = 0; s < n; ++s) {
    Chamber c = 0;
    const auto& P = b.panel(s, c);
    Chamber x = a.img[P[0]], y = a.img[P[1]];
    for (int t = 0; t < n; ++t)
      if (b.panel_index(t, x) == b.panel_index(t, y)) {
        if (a.sigma[s] != -1) throw Error("IncompatibleBuilding", "ambiguous panel type image");
        a.sigma[s] = t;
      }
    if (a.sigma[s] == -1) throw Error("IncompatibleBuilding", "panel image is not a panel");
  }
  for (int s = 0; s < n; ++s) {
    int t = a.sigma[s];
    for (const auto& P : b.panels(s)) {
      int pi = b.panel_index(t, a.img[P[0]]);
      if (b.panel(t, a.img[P[0]]).size() != P.size())
        throw Error("IncompatibleBuilding", "panel size changes under the map");
      for (Chamber c : P)
        if (b.panel_index(t, a.img[c]) != pi)
          throw Error("IncompatibleBuilding", "image of an s-panel is not a sigma(s)-panel");
    }
  }
  return a;
}

BuildingAutomorphism lift_to_building(const IncidenceGeometry& g, const Building& b,
                                      const GeometryMap& m) {
  if (!valid_geometry_map(g, m))
    throw Error("IncompatibleBuilding", "map does not act on this geometry");
  std::vector<Flag> flags = g.flags();
  if (static_cast<int>(flags.size()) != b.num_chambers())
    throw Error("IncompatibleBuilding", "building is not the flag complex of this geometry");
  std::map<std::pair<int, int>, Chamber> index;
  for (size_t i = 0; i < flags.size(); ++i)
    index[{flags[i].point, flags[i].line}] = static_cast<Chamber>(i);
  std::vector<Chamber> img(flags.size());
  for (size_t i = 0; i < flags.size(); ++i) {
    int p = flags[i].point, l = flags[i].line;
    int pi = m.point_image(p), li = m.line_image(l);
    img[i] = m.duality ? index.at({li, pi}) : index.at({pi, li});
  }
  return make_building_automorphism(b, std::move(img));
}

// ---------------------------------------------------------------------------
// GL(4,2)

int mat4_apply(Mat4 m, int v) {
  int r = 0;
  for (int row = 0; row < 4; ++row) {
    int bits = (m >> (4 * row)) & 0xF;
    r |= (__builtin_popcount(bits & v) & 1) << row;
  }
  return r;
}

Mat4 mat4_mul(Mat4 a, Mat4 b) {
  Mat4 r = 0;
  for (int c = 0; c < 4; ++c) {
    int col = mat4_apply(a, mat4_apply(b, 1 << c));
    for (int row = 0; row < 4; ++row)
      if ((col >> row) & 1) r |= Mat4(1) << (4 * row + c);
  }
  return r;
}

Mat4 mat4_transpose(Mat4 m) {
  Mat4 r = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if ((m >> (4 * i + j)) & 1) r |= Mat4(1) << (4 * j + i);
  return r;
}

Mat4 mat4_inverse(Mat4 m) {
  // Gauss-Jordan on rows augmented with the identity (8-bit rows).
  int rows[4];
  for (int i = 0; i < 4; ++i) rows[i] = ((m >> (4 * i)) & 0xF) | (1 << (4 + i));
  for (int col = 0; col < 4; ++col) {
    int pivot = -1;
    for (int r = col; r < 4; ++r)
      if ((rows[r] >> col) & 1) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw Error("Singular", "matrix not invertible");
    std::swap(rows[col], rows[pivot]);
    for (int r = 0; r < 4; ++r)
      if (r != col && ((rows[r] >> col) & 1)) rows[r] ^= rows[col];
  }
  Mat4 inv = 0;
  for (int i = 0; i < 4; ++i) inv |= Mat4((rows[i] >> 4) & 0xF) << (4 * i);
  return inv;
}

std::vector<Mat4> gl4_elements() {
  const Mat4 I = 0x8421;  // rows e1..e4: bit (4r + r)
  auto unit = [](int r, int c) { return Mat4(1) << (4 * r + c); };
  std::vector<Mat4> gens;
  gens.push_back(I ^ unit(0, 1));  // transvection
  // coordinate 4-cycle and a swap generate S4
  Mat4 cyc = 0, swp = 0;
  int perm_c[4] = {1, 2, 3, 0}, perm_s[4] = {1, 0, 2, 3};
  for (int r = 0; r < 4; ++r) {
    cyc |= unit(r, perm_c[r]);
    swp |= unit(r, perm_s[r]);
  }
  gens.push_back(cyc);
  gens.push_back(swp);

  std::vector<bool> seen(1 << 16, false);
  std::vector<Mat4> elems{I};
  seen[I] = true;
  std::deque<size_t> work{0};
  while (!work.empty()) {
    size_t i = work.front();
    work.pop_front();
    for (Mat4 g : gens) {
      Mat4 next = mat4_mul(elems[i], g);
      if (!seen[next]) {
        seen[next] = true;
        elems.push_back(next);
        work.push_back(elems.size() - 1);
      }
    }
  }
  return elems;
}

namespace {

struct Rank3Lifter {
  const Rank3Building& rb;
  std::vector<int> chamber_lut;  // p * (35*15) + l * 15 + h
  std::vector<Chamber> duality_perm;

  explicit Rank3Lifter(const Rank3Building& r) : rb(r) {
    chamber_lut.assign(15 * 35 * 15, -1);
    for (size_t i = 0; i < rb.geo.chambers.size(); ++i) {
      const auto& [p, l, h] = rb.geo.chambers[i];
      chamber_lut[(p * 35 + l) * 15 + h] = static_cast<int>(i);
    }
    duality_perm = duality_chamber_perm();
  }

  int chamber_id(int p, int l, int h) const {
    int id = chamber_lut[(p * 35 + l) * 15 + h];
    if (id < 0) throw Error("Internal", "non-incident chamber triple");
    return id;
  }

  // point <-> hyperplane via the dot form; a line maps to its perp.
  std::vector<Chamber> duality_chamber_perm() const {
    auto bit_dot = [](int a, int b) { return __builtin_popcount(a & b) & 1; };
    std::vector<int> line_perp(35);
    for (size_t l = 0; l < rb.geo.lines.size(); ++l) {
      int a = rb.geo.lines[l][0] + 1, b = rb.geo.lines[l][1] + 1;
      std::vector<int> perp;
      for (int x = 1; x < 16; ++x)
        if (bit_dot(x, a) == 0 && bit_dot(x, b) == 0) perp.push_back(x - 1);
      std::sort(perp.begin(), perp.end());
      line_perp[l] = rb.geo.line_index.at(perp);
    }
    std::vector<Chamber> perm(rb.geo.chambers.size());
    for (size_t i = 0; i < rb.geo.chambers.size(); ++i) {
      const auto& [p, l, h] = rb.geo.chambers[i];
      int np = rb.geo.plane_normals[h] - 1;            // new point
      int nh = rb.geo.plane_index.at(p + 1);           // new plane
      perm[i] = static_cast<Chamber>(chamber_id(np, line_perp[l], nh));
    }
    return perm;
  }

  std::vector<Chamber> matrix_chamber_perm(Mat4 m) const {
    int pimg[16];
    for (int v = 1; v < 16; ++v) pimg[v] = mat4_apply(m, v);
    std::vector<int> limg(35);
    for (size_t l = 0; l < rb.geo.lines.size(); ++l) {
      std::vector<int> pts;
      for (int p : rb.geo.lines[l]) pts.push_back(pimg[p + 1] - 1);
      std::sort(pts.begin(), pts.end());
      limg[l] = rb.geo.line_index.at(pts);
    }
    Mat4 nt = mat4_transpose(mat4_inverse(m));
    int himg[16];
    for (int v = 1; v < 16; ++v) himg[v] = mat4_apply(nt, v);
    std::vector<Chamber> perm(rb.geo.chambers.size());
    for (size_t i = 0; i < rb.geo.chambers.size(); ++i) {
      const auto& [p, l, h] = rb.geo.chambers[i];
      perm[i] = static_cast<Chamber>(chamber_id(
          pimg[p + 1] - 1, limg[l],
          rb.geo.plane_index.at(himg[rb.geo.plane_normals[h]])));
    }
    return perm;
  }

  BuildingAutomorphism lift(Mat4 m, bool with_duality) const {
    std::vector<Chamber> perm = matrix_chamber_perm(m);
    BuildingAutomorphism a;
    if (with_duality) {
      std::vector<Chamber> composed(perm.size());
      for (size_t i = 0; i < perm.size(); ++i) composed[i] = perm[duality_perm[i]];
      a.img = std::move(composed);
      a.sigma = {2, 1, 0};
    } else {
      a.img = std::move(perm);
      a.sigma = {0, 1, 2};
    }
    a.half_swapping = true;
    return a;
  }
};

}  // namespace

BuildingAutomorphism lift_gl4(const Rank3Building& rb, Mat4 m, bool with_duality) {
  Rank3Lifter lifter(rb);
  BuildingAutomorphism a = lifter.lift(m, with_duality);
  // Revalidate through the generic path (also recomputes sigma).
  return make_building_automorphism(*rb.building, std::move(a.img));
}

std::vector<BuildingAutomorphism> rank3_automorphisms(const Rank3Building& rb) {
  Rank3Lifter lifter(rb);
  std::vector<Mat4> mats = gl4_elements();
  std::vector<BuildingAutomorphism> result;
  result.reserve(2 * mats.size());
  for (Mat4 m : mats) result.push_back(lifter.lift(m, false));
  for (Mat4 m : mats) result.push_back(lifter.lift(m, true));
  return result;
}

}  // namespace geomver
