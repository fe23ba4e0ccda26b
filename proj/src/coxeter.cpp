#include "geomver/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_set>

namespace geomver {

namespace {

std::string word_key(const Word& w) {
  std::string k;
  k.reserve(w.size());
  for (int x : w) k.push_back(static_cast<char>(x));
  return k;
}

}  // namespace

// ---------------------------------------------------------------------------
// CoxeterMatrix

CoxeterMatrix::CoxeterMatrix(int rank, std::vector<std::vector<int>> entries)
    : rank_(rank), entries_(std::move(entries)) {
  if (rank < 1 || static_cast<int>(entries_.size()) != rank)
    throw Error("InvalidMatrix", "rank/entries mismatch");
  for (int s = 0; s < rank; ++s) {
    if (static_cast<int>(entries_[s].size()) != rank)
      throw Error("InvalidMatrix", "row length mismatch");
    if (entries_[s][s] != 1)
      throw Error("InvalidMatrix", "diagonal entry must be 1");
    for (int t = 0; t < rank; ++t) {
      if (entries_[s][t] != entries_[t][s])
        throw Error("InvalidMatrix", "matrix must be symmetric");
      if (s != t && entries_[s][t] != kInfiniteBond && entries_[s][t] < 2)
        throw Error("InvalidMatrix", "off-diagonal bond must be >= 2 or infinite");
    }
  }
}

CoxeterMatrix CoxeterMatrix::parse(const std::string& text) {
  std::istringstream in(text);
  int n;
  if (!(in >> n) || n < 1) throw Error("InvalidMatrix", "bad rank line");
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int v;
      if (!(in >> v)) throw Error("InvalidMatrix", "truncated matrix file");
      rows[i][j] = (v == 0) ? kInfiniteBond : v;
    }
  return CoxeterMatrix(n, std::move(rows));
}

CoxeterMatrix CoxeterMatrix::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("FileNotFound", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool DiagramAutomorphism::is_identity() const {
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// CoxeterSystem

CoxeterSystem::CoxeterSystem(CoxeterMatrix matrix) : matrix_(std::move(matrix)) {
  // Irreducibility: connectivity of the Coxeter graph (edges where m >= 3).
  int n = matrix_.rank();
  std::vector<bool> seen(n, false);
  std::deque<int> q{0};
  seen[0] = true;
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    for (int t = 0; t < n; ++t)
      if (!seen[t] && s != t && matrix_.bond(s, t) >= 3) {
        seen[t] = true;
        q.push_back(t);
      }
  }
  irreducible_ = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// Braid closure of a fixed-length word: all words reachable by replacing an
// alternating run s t s ... of length m(s,t) with the mirrored run.  Stops
// early when a word with an adjacent repeated letter appears (caller then
// deletes the pair and recurses on the shorter word).
CanonicalElement CoxeterSystem::reduce_impl(const Word& input) const {
  Word word = input;
  for (;;) {
    // Quick scan for an adjacent repeated pair before expanding the closure.
    bool deleted = false;
    for (size_t i = 0; i + 1 < word.size(); ++i)
      if (word[i] == word[i + 1]) {
        word.erase(word.begin() + i, word.begin() + i + 2);
        deleted = true;
        break;
      }
    if (deleted) continue;
    if (word.size() <= 1) return CanonicalElement{word};

    std::set<Word> closure{word};
    std::deque<Word> frontier{word};
    std::optional<Word> shorter;
    while (!frontier.empty() && !shorter) {
      Word cur = frontier.front();
      frontier.pop_front();
      size_t n = cur.size();
      for (size_t i = 0; i < n && !shorter; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
          // candidate alternating run cur[i..j] in letters a=cur[i], b=cur[i+1]
          if (j == i + 1 && cur[i] == cur[j]) break;
          int a = cur[i], b = cur[i + 1];
          size_t len = j - i + 1;
          bool alternating = true;
          for (size_t k = i; k <= j; ++k)
            if (cur[k] != (((k - i) % 2 == 0) ? a : b)) {
              alternating = false;
              break;
            }
          if (!alternating) break;
          int m = matrix_.bond(a, b);
          if (m != kInfiniteBond && static_cast<int>(len) == m) {
            Word next = cur;
            for (size_t k = i; k <= j; ++k)
              next[k] = (((k - i) % 2 == 0) ? b : a);
            if (closure.insert(next).second) {
              bool has_pair = false;
              for (size_t k = 0; k + 1 < next.size(); ++k)
                if (next[k] == next[k + 1]) {
                  has_pair = true;
                  break;
                }
              if (has_pair) {
                shorter = next;
              } else {
                frontier.push_back(next);
              }
            }
          }
        }
      }
    }
    if (shorter) {
      word = *shorter;
      continue;
    }
    // No deletion possible anywhere in the closure: word is reduced; the
    // closure is the full set of reduced expressions (Tits).
    return CanonicalElement{*closure.begin()};
  }
}

CanonicalElement CoxeterSystem::reduce(const Word& word) const {
  for (int x : word)
    if (x < 0 || x >= rank()) throw Error("InvalidLetter", "letter out of range");
  std::string key = word_key(word);
  {
    std::lock_guard<std::mutex> lk(memo_mutex_);
    auto it = reduce_memo_.find(key);
    if (it != reduce_memo_.end()) return CanonicalElement{it->second};
  }
  CanonicalElement r = reduce_impl(word);
  {
    std::lock_guard<std::mutex> lk(memo_mutex_);
    reduce_memo_.emplace(std::move(key), r.word);
  }
  return r;
}

int CoxeterSystem::length(const Word& word) const {
  return reduce(word).length();
}

CanonicalElement CoxeterSystem::multiply(const CanonicalElement& a,
                                         const CanonicalElement& b) const {
  Word w = a.word;
  w.insert(w.end(), b.word.begin(), b.word.end());
  return reduce(w);
}

CanonicalElement CoxeterSystem::multiply_right(const CanonicalElement& a, int s) const {
  Word w = a.word;
  w.push_back(s);
  return reduce(w);
}

CanonicalElement CoxeterSystem::multiply_left(int s, const CanonicalElement& a) const {
  Word w;
  w.reserve(a.word.size() + 1);
  w.push_back(s);
  w.insert(w.end(), a.word.begin(), a.word.end());
  return reduce(w);
}

CanonicalElement CoxeterSystem::inverse(const CanonicalElement& a) const {
  Word w(a.word.rbegin(), a.word.rend());
  return reduce(w);
}

std::vector<int> CoxeterSystem::descents(const CanonicalElement& w, Side side) const {
  std::vector<int> result;
  for (int s = 0; s < rank(); ++s) {
    CanonicalElement m = (side == Side::Left) ? multiply_left(s, w) : multiply_right(w, s);
    if (m.length() < w.length()) result.push_back(s);
  }
  return result;
}

std::vector<int> CoxeterSystem::support(const CanonicalElement& w) const {
  std::set<int> s(w.word.begin(), w.word.end());
  return std::vector<int>(s.begin(), s.end());
}

// Finite-type recognition of a connected diagram given as node list.
// Finite diagrams: A_n, B/C_n, D_n, E6-E8, F4, H3, H4, I2(m) m < infinity.
static bool component_is_finite_type(const CoxeterMatrix& m, const std::vector<int>& nodes) {
  int n = static_cast<int>(nodes.size());
  if (n == 1) return true;  // A1
  // Collect edges within the component; any infinite bond kills finiteness.
  std::vector<std::pair<int, int>> edges;  // indices into `nodes`
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int b = m.bond(nodes[i], nodes[j]);
      if (b == kInfiniteBond) return false;
      if (b >= 3) edges.push_back({i, j});
    }
  if (n == 2) return true;  // I2(m), m finite (m=2 handled as reducible elsewhere)
  // Must be a tree.
  if (static_cast<int>(edges.size()) != n - 1) return false;
  std::vector<std::vector<int>> adj(n);
  for (auto [i, j] : edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  auto bond_ij = [&](int i, int j) { return m.bond(nodes[i], nodes[j]); };
  int branch = -1;
  for (int i = 0; i < n; ++i) {
    if (adj[i].size() > 3) return false;
    if (adj[i].size() == 3) {
      if (branch != -1) return false;  // at most one branch node
      branch = i;
    }
  }
  if (branch != -1) {
    // D/E shapes: all bonds must be simple.
    for (auto [i, j] : edges)
      if (bond_ij(i, j) != 3) return false;
    std::vector<int> arms;
    for (int start : adj[branch]) {
      int len = 1, prev = branch, cur = start;
      while (true) {
        int next = -1;
        for (int x : adj[cur])
          if (x != prev) next = x;
        if (next == -1) break;
        prev = cur;
        cur = next;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return true;                    // D_n
    if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) return true;    // E6, E7, E8
    return false;
  }
  // Path: order the nodes along it.
  int end = -1;
  for (int i = 0; i < n; ++i)
    if (adj[i].size() == 1) {
      end = i;
      break;
    }
  std::vector<int> path{end};
  int prev = -1, cur = end;
  while (static_cast<int>(path.size()) < n) {
    int next = -1;
    for (int x : adj[cur])
      if (x != prev) next = x;
    prev = cur;
    cur = next;
    path.push_back(cur);
  }
  std::vector<int> bonds;
  for (int i = 0; i + 1 < n; ++i) bonds.push_back(bond_ij(path[i], path[i + 1]));
  int big = 0, big_pos = -1, big_val = 0;
  for (int i = 0; i < n - 1; ++i)
    if (bonds[i] > 3) {
      ++big;
      big_pos = i;
      big_val = bonds[i];
    }
  if (big == 0) return true;  // A_n
  if (big > 1) return false;
  bool at_end = (big_pos == 0 || big_pos == n - 2);
  if (big_val == 4) {
    if (at_end) return true;                       // B_n / C_n
    return n == 4 && big_pos == 1;                 // F4
  }
  if (big_val == 5) return at_end && (n == 3 || n == 4);  // H3, H4
  return false;  // m >= 6 only at rank 2
}

bool CoxeterSystem::is_spherical(const std::vector<int>& J) const {
  if (J.empty()) return true;
  // Split J-subdiagram into connected components.
  std::vector<int> nodes = J;
  std::vector<bool> used(nodes.size(), false);
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (used[i]) continue;
    std::vector<int> comp;
    std::deque<size_t> q{i};
    used[i] = true;
    while (!q.empty()) {
      size_t a = q.front();
      q.pop_front();
      comp.push_back(nodes[a]);
      for (size_t b = 0; b < nodes.size(); ++b)
        if (!used[b] && matrix_.bond(nodes[a], nodes[b]) >= 3 &&
            matrix_.bond(nodes[a], nodes[b]) != kInfiniteBond) {
          used[b] = true;
          q.push_back(b);
        }
      // An infinite bond inside the component must also be noticed: treat it
      // as an edge for connectivity purposes so the component check sees it.
      for (size_t b = 0; b < nodes.size(); ++b)
        if (!used[b] && matrix_.bond(nodes[a], nodes[b]) == kInfiniteBond) {
          used[b] = true;
          q.push_back(b);
        }
    }
    if (!component_is_finite_type(matrix_, comp)) return false;
  }
  return true;
}

bool CoxeterSystem::is_spherical_all() const {
  std::vector<int> all(rank());
  std::iota(all.begin(), all.end(), 0);
  return is_spherical(all);
}

CanonicalElement CoxeterSystem::longest_element(const std::vector<int>& J) const {
  if (!is_spherical(J))
    throw Error("NonSphericalParabolic", "longest element requires a spherical parabolic");
  // Greedy ascent: w_J is the unique element with no right ascent in J.
  CanonicalElement w{};
  for (;;) {
    bool moved = false;
    for (int s : J) {
      CanonicalElement ws = multiply_right(w, s);
      if (ws.length() > w.length()) {
        w = ws;
        moved = true;
        break;
      }
    }
    if (!moved) return w;
  }
}

std::vector<DiagramAutomorphism> CoxeterSystem::diagram_automorphisms() const {
  int n = rank();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<DiagramAutomorphism> result;
  do {
    bool ok = true;
    for (int s = 0; s < n && ok; ++s)
      for (int t = 0; t < n && ok; ++t)
        if (matrix_.bond(perm[s], perm[t]) != matrix_.bond(s, t)) ok = false;
    if (ok) result.push_back(DiagramAutomorphism{perm});
  } while (std::next_permutation(perm.begin(), perm.end()));
  // next_permutation enumerates in lexicographic order starting after the
  // identity, so re-sort to keep the identity first deterministically.
  std::sort(result.begin(), result.end(),
            [](const DiagramAutomorphism& a, const DiagramAutomorphism& b) {
              return a.perm < b.perm;
            });
  return result;
}

int CoxeterSystem::coxeter_graph_distance(int s, int t) const {
  int n = rank();
  std::vector<int> dist(n, kInfiniteDistance);
  std::deque<int> q{s};
  dist[s] = 0;
  while (!q.empty()) {
    int a = q.front();
    q.pop_front();
    for (int b = 0; b < n; ++b)
      if (a != b && matrix_.bond(a, b) >= 3 && dist[b] == kInfiniteDistance) {
        dist[b] = dist[a] + 1;
        q.push_back(b);
      }
  }
  return dist[t];
}

int CoxeterSystem::coxeter_distance(const CanonicalElement& u,
                                    const CanonicalElement& v) const {
  std::vector<int> su = support(u), sv = support(v);
  if (su.empty() || sv.empty()) return kInfiniteDistance;
  int best = kInfiniteDistance;
  for (int s : su)
    for (int t : sv) best = std::min(best, coxeter_graph_distance(s, t));
  return best;
}

bool CoxeterSystem::commutes_with_support(int s, const CanonicalElement& w) const {
  std::vector<int> sup = support(w);
  if (std::find(sup.begin(), sup.end(), s) != sup.end())
    throw Error("PreconditionViolated", "s occurs in the support of w");
  return multiply_left(s, w) == multiply_right(w, s);
}

DescentLemmaReport CoxeterSystem::descent_lemma_witness(
    const DiagramAutomorphism& sigma, const CanonicalElement& w) const {
  DescentLemmaReport rep;
  rep.J = descents(w, Side::Left);
  rep.hypotheses_hold = true;
  for (int s : rep.J) {
    CanonicalElement ws = multiply_right(w, sigma(s));
    CanonicalElement sws = multiply_left(s, ws);
    if (!(ws.length() < w.length() && sws.length() == w.length())) {
      rep.hypotheses_hold = false;
      break;
    }
  }
  if (rep.J.empty()) {
    // Vacuous: all conclusions hold trivially.
    rep.sigma_stabilizes_J = rep.w_is_longest_of_J = rep.conjugation_fixes_w = true;
    return rep;
  }
  std::vector<int> sJ;
  for (int s : rep.J) sJ.push_back(sigma(s));
  std::sort(sJ.begin(), sJ.end());
  rep.sigma_stabilizes_J = (sJ == rep.J);
  rep.w_is_longest_of_J = is_spherical(rep.J) && (longest_element(rep.J) == w);
  rep.conjugation_fixes_w = true;
  for (int s : rep.J)
    if (multiply_left(s, multiply_right(w, sigma(s))) != w) {
      rep.conjugation_fixes_w = false;
      break;
    }
  return rep;
}

// ---------------------------------------------------------------------------
// PermutationOracle

namespace {

std::vector<int> transposition(int n, int a, int b) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::swap(p[a], p[b]);
  return p;
}

}  // namespace

PermutationOracle::PermutationOracle(const CoxeterSystem& system) {
  const CoxeterMatrix& m = system.matrix();
  int n = m.rank();
  if (n == 1) {
    degree_ = 2;
    gens_ = {transposition(2, 0, 1)};
    return;
  }
  if (n == 2) {
    int mm = m.bond(0, 1);
    if (mm == kInfiniteBond) throw Error("UnsupportedType", "infinite dihedral");
    if (mm == 2) {
      degree_ = 4;
      gens_ = {transposition(4, 0, 1), transposition(4, 2, 3)};
      return;
    }
    // Dihedral action on the m vertices of a regular m-gon.
    degree_ = mm;
    std::vector<int> s(mm), t(mm);
    for (int i = 0; i < mm; ++i) {
      s[i] = ((mm - i) % mm);
      t[i] = ((mm + 1 - i) % mm);
    }
    gens_ = {s, t};
    return;
  }
  if (n == 3) {
    // Recognize A3 or B3 as a path a - b - c with m(a,c) = 2.
    std::vector<int> order{0, 1, 2};
    std::sort(order.begin(), order.end());
    do {
      int a = order[0], b = order[1], c = order[2];
      if (m.bond(a, c) != 2) continue;
      int m1 = m.bond(a, b), m2 = m.bond(b, c);
      if (m1 == 3 && m2 == 3) {
        // A3: adjacent transpositions on 4 points.
        degree_ = 4;
        gens_.assign(3, {});
        gens_[a] = transposition(4, 0, 1);
        gens_[b] = transposition(4, 1, 2);
        gens_[c] = transposition(4, 2, 3);
        return;
      }
      if ((m1 == 4 && m2 == 3) || (m1 == 3 && m2 == 4)) {
        // B3 as signed permutations of {1,2,3}: points 0..2 are +1..+3 and
        // 3..5 are -1..-3.  The 4-bond generator is the sign change on
        // coordinate 1.
        int sgn = (m1 == 4) ? a : c;
        int mid = b;
        int far = (m1 == 4) ? c : a;
        degree_ = 6;
        gens_.assign(3, {});
        std::vector<int> flip(6);
        std::iota(flip.begin(), flip.end(), 0);
        std::swap(flip[0], flip[3]);
        gens_[sgn] = flip;
        std::vector<int> sw12(6);
        std::iota(sw12.begin(), sw12.end(), 0);
        std::swap(sw12[0], sw12[1]);
        std::swap(sw12[3], sw12[4]);
        gens_[mid] = sw12;
        std::vector<int> sw23(6);
        std::iota(sw23.begin(), sw23.end(), 0);
        std::swap(sw23[1], sw23[2]);
        std::swap(sw23[4], sw23[5]);
        gens_[far] = sw23;
        return;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    throw Error("UnsupportedType", "rank-3 oracle supports A3 and B3 only");
  }
  throw Error("UnsupportedType", "oracle supports rank <= 3");
}

std::vector<int> PermutationOracle::realize(const Word& word) const {
  std::vector<int> p(degree_);
  std::iota(p.begin(), p.end(), 0);
  for (int s : word) {
    const std::vector<int>& g = gens_[s];
    std::vector<int> q(degree_);
    for (int i = 0; i < degree_; ++i) q[i] = p[g[i]];  // realize(uv) = realize(u) o realize(v)
    p = q;
  }
  return p;
}

}  // namespace geomver
