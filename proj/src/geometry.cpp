#include "geomver/geometry.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace geomver {

IncidenceGeometry::IncidenceGeometry(int num_points, std::vector<std::vector<int>> lines)
    : num_points_(num_points), lines_(std::move(lines)) {
  if (num_points_ < 1 || lines_.empty())
    throw Error("InvalidGeometry", "need at least one point and one line");
  int words = (num_points_ + 63) / 64;
  mask_.assign(lines_.size(), std::vector<uint64_t>(words, 0));
  through_.assign(num_points_, {});
  for (size_t l = 0; l < lines_.size(); ++l) {
    std::sort(lines_[l].begin(), lines_[l].end());
    if (std::adjacent_find(lines_[l].begin(), lines_[l].end()) != lines_[l].end())
      throw Error("InvalidGeometry", "repeated point on a line");
    for (int p : lines_[l]) {
      if (p < 0 || p >= num_points_) throw Error("InvalidGeometry", "point index out of range");
      mask_[l][p >> 6] |= uint64_t(1) << (p & 63);
      through_[p].push_back(static_cast<int>(l));
    }
  }
  // Uniform parameters.
  s_param_ = static_cast<int>(lines_[0].size()) - 1;
  for (const auto& L : lines_)
    if (static_cast<int>(L.size()) - 1 != s_param_) s_param_ = -2;
  t_param_ = static_cast<int>(through_[0].size()) - 1;
  for (const auto& T : through_)
    if (static_cast<int>(T.size()) - 1 != t_param_) t_param_ = -2;

  joining_.assign(num_points_, std::vector<int>(num_points_, -1));
  for (size_t l = 0; l < lines_.size(); ++l)
    for (size_t i = 0; i < lines_[l].size(); ++i)
      for (size_t j = 0; j < lines_[l].size(); ++j)
        if (i != j) joining_[lines_[l][i]][lines_[l][j]] = static_cast<int>(l);

  build_metric_cache();
  gonality_ = diameter();
}

void IncidenceGeometry::build_metric_cache() const {
  int n = num_vertices();
  dist_.assign(n, std::vector<int>(n, kInfiniteDistance));
  auto neighbors = [&](int v, auto&& fn) {
    if (v < num_points_) {
      for (int l : through_[v]) fn(num_points_ + l);
    } else {
      for (int p : lines_[v - num_points_]) fn(p);
    }
  };
  for (int src = 0; src < n; ++src) {
    auto& d = dist_[src];
    d[src] = 0;
    std::deque<int> q{src};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      neighbors(v, [&](int u) {
        if (d[u] == kInfiniteDistance) {
          d[u] = d[v] + 1;
          q.push_back(u);
        }
      });
    }
  }
}

std::vector<Flag> IncidenceGeometry::flags() const {
  std::vector<Flag> result;
  for (int p = 0; p < num_points_; ++p)
    for (int l : through_[p]) result.push_back({p, l});
  std::sort(result.begin(), result.end());
  return result;
}

int IncidenceGeometry::incidence_distance(int a, int b) const { return dist_[a][b]; }

int IncidenceGeometry::diameter() const {
  int d = 0;
  for (const auto& row : dist_)
    for (int x : row) {
      if (x == kInfiniteDistance) return kInfiniteDistance;
      d = std::max(d, x);
    }
  return d;
}

int IncidenceGeometry::girth() const {
  // Shortest cycle through each vertex: BFS that refuses to reuse the tree
  // edge back to the parent.
  int n = num_vertices();
  auto neighbors = [&](int v) {
    std::vector<int> r;
    if (v < num_points_)
      for (int l : through_[v]) r.push_back(num_points_ + l);
    else
      for (int p : lines_[v - num_points_]) r.push_back(p);
    return r;
  };
  int best = kInfiniteDistance;
  for (int src = 0; src < n; ++src) {
    std::vector<int> d(n, -1), parent(n, -1);
    d[src] = 0;
    std::deque<int> q{src};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int u : neighbors(v)) {
        if (u == parent[v]) continue;
        if (d[u] == -1) {
          d[u] = d[v] + 1;
          parent[u] = v;
          q.push_back(u);
        } else {
          best = std::min(best, d[u] + d[v] + 1);
        }
      }
    }
  }
  return best;
}

std::string IncidenceGeometry::to_json() const {
  nlohmann::json j;
  j["points"] = num_points_;
  j["lines"] = lines_;
  return j.dump(2);
}

IncidenceGeometry IncidenceGeometry::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("points") || !j.contains("lines"))
    throw Error("InvalidGeometry", "geometry file needs 'points' and 'lines'");
  IncidenceGeometry g(j["points"].get<int>(), j["lines"].get<std::vector<std::vector<int>>>());
  // Re-validate: the file must describe a generalized m-gon.
  int m = g.diameter();
  if (m == kInfiniteDistance || !validate_generalized_polygon(g, m))
    throw Error("InvalidGeometry", "incidence structure is not a generalized polygon");
  return g;
}

IncidenceGeometry IncidenceGeometry::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("FileNotFound", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

// ---------------------------------------------------------------------------
// PG(2,q)

namespace {

std::array<int, 3> normalize(const FiniteField& F, std::array<int, 3> v) {
  int last = -1;
  for (int i = 2; i >= 0; --i)
    if (v[i] != 0) {
      last = i;
      break;
    }
  if (last < 0) throw Error("InvalidPoint", "zero vector");
  int c = F.inv(v[last]);
  for (int i = 0; i < 3; ++i) v[i] = F.mul(v[i], c);
  return v;
}

int dot3(const FiniteField& F, const std::array<int, 3>& a, const std::array<int, 3>& b) {
  int s = 0;
  for (int i = 0; i < 3; ++i) s = F.add(s, F.mul(a[i], b[i]));
  return s;
}

}  // namespace

ProjectivePlane projective_plane(int q) {
  auto field = std::make_shared<FiniteField>(q);
  const FiniteField& F = *field;

  // Canonical representatives: last nonzero coordinate = 1, sorted.
  std::vector<std::array<int, 3>> pts;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) pts.push_back({a, b, 1});
  for (int a = 0; a < q; ++a) pts.push_back({a, 1, 0});
  pts.push_back({1, 0, 0});
  std::sort(pts.begin(), pts.end());

  std::vector<std::vector<int>> lines;
  for (const auto& n : pts) {  // lines indexed by the same normalized vectors
    std::vector<int> L;
    for (size_t p = 0; p < pts.size(); ++p)
      if (dot3(F, pts[p], n) == 0) L.push_back(static_cast<int>(p));
    lines.push_back(std::move(L));
  }

  ProjectivePlane plane{q, field, IncidenceGeometry(static_cast<int>(pts.size()), std::move(lines)),
                        pts, pts};
  return plane;
}

int ProjectivePlane::point_index(const std::array<int, 3>& v) const {
  auto n = normalize(*field, v);
  auto it = std::lower_bound(point_vec.begin(), point_vec.end(), n);
  if (it == point_vec.end() || *it != n) throw Error("InvalidPoint", "not a plane point");
  return static_cast<int>(it - point_vec.begin());
}

int ProjectivePlane::line_index(const std::array<int, 3>& n) const {
  auto v = normalize(*field, n);
  auto it = std::lower_bound(line_normal.begin(), line_normal.end(), v);
  if (it == line_normal.end() || *it != v) throw Error("InvalidLine", "not a plane line");
  return static_cast<int>(it - line_normal.begin());
}

// ---------------------------------------------------------------------------
// W(2)

SymplecticQuadrangle symplectic_quadrangle() {
  // Alternating form on GF(2)^4: B(x,y) = x1 y2 + x2 y1 + x3 y4 + x4 y3.
  auto form = [](int x, int y) {
    auto bit = [](int v, int i) { return (v >> i) & 1; };
    return (bit(x, 0) & bit(y, 1)) ^ (bit(x, 1) & bit(y, 0)) ^ (bit(x, 2) & bit(y, 3)) ^
           (bit(x, 3) & bit(y, 2));
  };
  std::vector<int> point_vec;
  for (int v = 1; v < 16; ++v) point_vec.push_back(v);
  std::set<std::vector<int>> line_set;
  for (int a = 1; a < 16; ++a)
    for (int b = a + 1; b < 16; ++b) {
      if (form(a, b) != 0) continue;
      std::vector<int> L{a - 1, b - 1, (a ^ b) - 1};
      std::sort(L.begin(), L.end());
      line_set.insert(L);
    }
  std::vector<std::vector<int>> lines(line_set.begin(), line_set.end());
  return SymplecticQuadrangle{IncidenceGeometry(15, std::move(lines)), std::move(point_vec)};
}

// ---------------------------------------------------------------------------
// Predicates

bool validate_generalized_polygon(const IncidenceGeometry& g, int m) {
  if (g.s_param() < 1 || g.t_param() < 1) return false;
  if (g.thick() && m != 2 && m != 3 && m != 4 && m != 6 && m != 8) return false;
  return g.diameter() == m && g.girth() == 2 * m;
}

bool is_non_exotic(int s, int t, bool thick, bool finite) {
  return thick && finite && std::gcd(s, t) > 1;
}

PlaneCheck is_projective_plane(const std::vector<int>& points,
                               const std::vector<std::vector<int>>& lines) {
  PlaneCheck r;
  if (points.size() < 4) return r;
  std::set<int> P(points.begin(), points.end());
  std::vector<std::set<int>> L;
  for (const auto& l : lines) {
    std::set<int> s(l.begin(), l.end());
    for (int p : s)
      if (!P.count(p)) return r;
    L.push_back(std::move(s));
  }
  // Two points on exactly one common line.
  for (auto i = P.begin(); i != P.end(); ++i)
    for (auto j = std::next(i); j != P.end(); ++j) {
      int count = 0;
      for (const auto& l : L)
        if (l.count(*i) && l.count(*j)) ++count;
      if (count != 1) return r;
    }
  // Two lines meet in exactly one point.
  for (size_t i = 0; i < L.size(); ++i)
    for (size_t j = i + 1; j < L.size(); ++j) {
      int count = 0;
      for (int p : L[i])
        if (L[j].count(p)) ++count;
      if (count != 1) return r;
    }
  // Quadrangle: four points, no three collinear.
  auto collinear = [&](int a, int b, int c) {
    for (const auto& l : L)
      if (l.count(a) && l.count(b) && l.count(c)) return true;
    return false;
  };
  std::vector<int> pv(P.begin(), P.end());
  bool found = false;
  int n = static_cast<int>(pv.size());
  for (int a = 0; a < n && !found; ++a)
    for (int b = a + 1; b < n && !found; ++b)
      for (int c = b + 1; c < n && !found; ++c) {
        if (collinear(pv[a], pv[b], pv[c])) continue;
        for (int d = c + 1; d < n && !found; ++d)
          if (!collinear(pv[a], pv[b], pv[d]) && !collinear(pv[a], pv[c], pv[d]) &&
              !collinear(pv[b], pv[c], pv[d]))
            found = true;
      }
  if (!found) return r;
  // Uniform line size then gives the order.
  size_t sz = L.empty() ? 0 : L[0].size();
  for (const auto& l : L)
    if (l.size() != sz) return r;
  r.is_plane = true;
  r.order = static_cast<int>(sz) - 1;
  return r;
}

int square_free_part(int q) {
  if (q < 1) throw Error("InvalidArgument", "square_free_part needs q >= 1");
  int sf = 1;
  int m = q;
  for (int p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2 == 1) sf *= p;
  }
  sf *= m;  // leftover prime (exponent 1)
  return sf == 1 ? 0 : sf;
}

}  // namespace geomver
