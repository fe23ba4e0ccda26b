#include "geomver/building.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace geomver {

Building::Building(std::shared_ptr<const WeylTable> weyl, int num_chambers,
                   std::vector<std::vector<std::vector<Chamber>>> panels)
    : weyl_(std::move(weyl)), num_chambers_(num_chambers), panels_(std::move(panels)) {
  int n = weyl_->rank();
  if (static_cast<int>(panels_.size()) != n)
    throw Error("InvalidBuilding", "need one panel family per generator");
  panel_of_.assign(n, std::vector<int>(num_chambers_, -1));
  for (int s = 0; s < n; ++s) {
    int covered = 0;
    for (size_t i = 0; i < panels_[s].size(); ++i) {
      for (Chamber c : panels_[s][i]) {
        if (panel_of_[s][c] != -1)
          throw Error("InvalidBuilding", "panels of one type must be disjoint");
        panel_of_[s][c] = static_cast<int>(i);
        ++covered;
      }
      if (panels_[s][i].size() < 2)
        throw Error("InvalidBuilding", "panel with fewer than two chambers");
    }
    if (covered != num_chambers_)
      throw Error("InvalidBuilding", "panels of each type must partition the chambers");
  }
  delta_rows_.assign(num_chambers_, {});
}

bool Building::thick() const {
  for (int s = 0; s < rank(); ++s)
    for (const auto& P : panels_[s])
      if (P.size() < 3) return false;
  return true;
}

const std::vector<ElementId>& Building::delta_row(Chamber c) const {
  {
    std::lock_guard<std::mutex> lk(cache_mutex_);
    if (!delta_rows_[c].empty()) return delta_rows_[c];
  }
  // Gallery BFS: crossing an s-panel away from the base multiplies the
  // label on the right by s; all minimal galleries agree on the product.
  std::vector<ElementId> row(num_chambers_, std::numeric_limits<ElementId>::max());
  const ElementId unset = std::numeric_limits<ElementId>::max();
  row[c] = weyl_->identity();
  std::deque<Chamber> q{c};
  int labeled = 1;
  while (!q.empty()) {
    Chamber a = q.front();
    q.pop_front();
    ElementId w = row[a];
    for (int s = 0; s < rank(); ++s) {
      ElementId ws = weyl_->mult_right(w, s);
      if (weyl_->length(ws) <= weyl_->length(w)) continue;
      for (Chamber b : panel(s, a)) {
        if (b == a) continue;
        if (row[b] == unset) {
          row[b] = ws;
          ++labeled;
          q.push_back(b);
        }
      }
    }
  }
  if (labeled != num_chambers_)
    throw Error("DisconnectedChamberGraph", "gallery BFS did not reach every chamber");
  std::lock_guard<std::mutex> lk(cache_mutex_);
  if (delta_rows_[c].empty()) delta_rows_[c] = std::move(row);
  return delta_rows_[c];
}

ElementId Building::delta_id(Chamber c, Chamber d) const { return delta_row(c)[d]; }

std::vector<Chamber> Building::residue_of(Chamber c, const std::vector<int>& J) const {
  std::vector<Chamber> result{c};
  std::vector<bool> seen(num_chambers_, false);
  seen[c] = true;
  std::deque<Chamber> q{c};
  while (!q.empty()) {
    Chamber a = q.front();
    q.pop_front();
    for (int s : J)
      for (Chamber b : panel(s, a))
        if (!seen[b]) {
          seen[b] = true;
          result.push_back(b);
          q.push_back(b);
        }
  }
  std::sort(result.begin(), result.end());
  return result;
}

const Building::ResiduePartition& Building::residues(const std::vector<int>& J) const {
  std::vector<int> key = J;
  std::sort(key.begin(), key.end());
  {
    std::lock_guard<std::mutex> lk(cache_mutex_);
    auto it = residue_cache_.find(key);
    if (it != residue_cache_.end()) return it->second;
  }
  ResiduePartition part;
  part.residue_id.assign(num_chambers_, -1);
  for (Chamber c = 0; c < num_chambers_; ++c) {
    if (part.residue_id[c] != -1) continue;
    int id = static_cast<int>(part.members.size());
    std::vector<Chamber> res = residue_of(c, key);
    for (Chamber d : res) part.residue_id[d] = id;
    part.members.push_back(std::move(res));
  }
  std::lock_guard<std::mutex> lk(cache_mutex_);
  auto [it, inserted] = residue_cache_.emplace(std::move(key), std::move(part));
  return it->second;
}

std::optional<std::string> Building::check_gate_property() const {
  for (Chamber c = 0; c < num_chambers_; ++c) {
    const auto& row = delta_row(c);
    for (int s = 0; s < rank(); ++s) {
      for (const auto& P : panels_[s]) {
        Chamber gate = P[0];
        for (Chamber e : P)
          if (weyl_->length(row[e]) < weyl_->length(row[gate])) gate = e;
        ElementId wg = row[gate];
        ElementId ws = weyl_->mult_right(wg, s);
        if (weyl_->length(ws) <= weyl_->length(wg)) {
          std::ostringstream os;
          os << "gate label not minimal: chamber " << c << " type " << s;
          return os.str();
        }
        for (Chamber e : P) {
          if (e == gate) continue;
          if (row[e] != ws) {
            std::ostringstream os;
            os << "non-gate chamber " << e << " of an s-panel (s=" << s
               << ") seen from chamber " << c << " has label != gate*s";
            return os.str();
          }
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructors

std::shared_ptr<const WeylTable> make_weyl(const std::vector<std::vector<int>>& matrix) {
  auto sys = std::make_shared<CoxeterSystem>(
      CoxeterMatrix(static_cast<int>(matrix.size()), matrix));
  return std::make_shared<WeylTable>(sys);
}

std::shared_ptr<const WeylTable> dihedral_weyl(int m) {
  return make_weyl({{1, m}, {m, 1}});
}

std::shared_ptr<const WeylTable> a3_weyl() {
  return make_weyl({{1, 3, 2}, {3, 1, 3}, {2, 3, 1}});
}

std::shared_ptr<Building> building_from_geometry(const IncidenceGeometry& g) {
  int m = g.diameter();
  if (!validate_generalized_polygon(g, m))
    throw Error("InvalidPolygon", "geometry is not a generalized polygon");
  auto weyl = dihedral_weyl(m);

  std::vector<Flag> flags = g.flags();
  std::map<std::pair<int, int>, Chamber> flag_index;
  for (size_t i = 0; i < flags.size(); ++i)
    flag_index[{flags[i].point, flags[i].line}] = static_cast<Chamber>(i);

  // Type 0 panels: flags on a common line.  Type 1: flags through a point.
  std::vector<std::vector<std::vector<Chamber>>> panels(2);
  for (int l = 0; l < g.num_lines(); ++l) {
    std::vector<Chamber> P;
    for (int p : g.line(l)) P.push_back(flag_index.at({p, l}));
    panels[0].push_back(std::move(P));
  }
  for (int p = 0; p < g.num_points(); ++p) {
    std::vector<Chamber> P;
    for (int l : g.lines_through(p)) P.push_back(flag_index.at({p, l}));
    panels[1].push_back(std::move(P));
  }
  return std::make_shared<Building>(weyl, static_cast<int>(flags.size()), std::move(panels));
}

Rank3Building flag_building_rank3(int q) {
  if (q != 2) throw Error("UnsupportedOrder", "only the GF(2) flag building is built in");
  Rank3Geometry geo;
  auto bit_dot = [](int a, int b) { return __builtin_popcount(a & b) & 1; };

  for (int v = 1; v < 16; ++v) geo.points.push_back(v);
  for (int a = 1; a < 16; ++a)
    for (int b = a + 1; b < 16; ++b) {
      int c = a ^ b;
      if (c < b) continue;  // enumerate each 2-space once, via its two least points
      std::vector<int> L{a - 1, b - 1, c - 1};
      geo.line_index[L] = static_cast<int>(geo.lines.size());
      geo.lines.push_back(L);
    }
  for (int n = 1; n < 16; ++n) {
    geo.plane_index[n] = static_cast<int>(geo.plane_normals.size());
    geo.plane_normals.push_back(n);
    std::vector<int> pts;
    for (int v = 1; v < 16; ++v)
      if (bit_dot(v, n) == 0) pts.push_back(v - 1);
    geo.plane_points.push_back(std::move(pts));
  }

  // Chambers: incident (point, line, plane) triples, lexicographic.
  for (int p = 0; p < 15; ++p)
    for (size_t l = 0; l < geo.lines.size(); ++l) {
      if (std::find(geo.lines[l].begin(), geo.lines[l].end(), p) == geo.lines[l].end()) continue;
      for (int h = 0; h < 15; ++h) {
        bool contains = true;
        for (int pt : geo.lines[l])
          if (bit_dot(pt + 1, geo.plane_normals[h]) != 0) contains = false;
        if (!contains) continue;
        std::array<int, 3> ch{p, static_cast<int>(l), h};
        geo.chamber_index[ch] = static_cast<int>(geo.chambers.size());
        geo.chambers.push_back(ch);
      }
    }

  int N = static_cast<int>(geo.chambers.size());
  // Panels keyed by the two fixed vertices.
  std::vector<std::vector<std::vector<Chamber>>> panels(3);
  std::map<std::pair<int, int>, int> key0, key1, key2;
  for (int i = 0; i < N; ++i) {
    const auto& [p, l, h] = geo.chambers[i];
    auto add = [&](std::map<std::pair<int, int>, int>& keys, int type, std::pair<int, int> k) {
      auto it = keys.find(k);
      if (it == keys.end()) {
        it = keys.emplace(k, static_cast<int>(panels[type].size())).first;
        panels[type].emplace_back();
      }
      panels[type][it->second].push_back(static_cast<Chamber>(i));
    };
    add(key0, 0, {l, h});  // vary the point
    add(key1, 1, {p, h});  // vary the line
    add(key2, 2, {p, l});  // vary the plane
  }

  Rank3Building result;
  result.geo = std::move(geo);
  result.building = std::make_shared<Building>(a3_weyl(), N, std::move(panels));
  return result;
}

std::shared_ptr<Building> thin_building(std::shared_ptr<const WeylTable> weyl) {
  int N = weyl->size();
  int n = weyl->rank();
  std::vector<std::vector<std::vector<Chamber>>> panels(n);
  for (int s = 0; s < n; ++s) {
    std::vector<bool> done(N, false);
    for (int w = 0; w < N; ++w) {
      if (done[w]) continue;
      ElementId ws = weyl->mult_right(static_cast<ElementId>(w), s);
      done[w] = done[ws] = true;
      panels[s].push_back({static_cast<Chamber>(std::min<int>(w, ws)),
                           static_cast<Chamber>(std::max<int>(w, ws))});
    }
  }
  return std::make_shared<Building>(weyl, N, std::move(panels));
}

}  // namespace geomver
