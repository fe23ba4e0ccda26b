#pragma once

// Coxeter systems with a braid-closure word engine (Tits' solution to the
// word problem).  Canonical form of an element is the lexicographically
// least reduced word, with generators ordered by their input index.

#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace geomver {

struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

using Word = std::vector<int>;

// Bond order m(s,t); kInfiniteBond marks an infinite bond.  The matrix file
// format stores infinite bonds as 0.
constexpr int kInfiniteBond = std::numeric_limits<int>::max();
constexpr int kInfiniteDistance = std::numeric_limits<int>::max();

class CoxeterMatrix {
 public:
  CoxeterMatrix(int rank, std::vector<std::vector<int>> entries);

  int rank() const { return rank_; }
  int bond(int s, int t) const { return entries_[s][t]; }

  // Text format: first line n, then n rows of n integers, 0 meaning
  // an infinite bond and 1 on the diagonal.
  static CoxeterMatrix from_file(const std::string& path);
  static CoxeterMatrix parse(const std::string& text);

  bool operator==(const CoxeterMatrix& o) const { return entries_ == o.entries_; }

 private:
  int rank_;
  std::vector<std::vector<int>> entries_;
};

struct DiagramAutomorphism {
  std::vector<int> perm;
  int operator()(int s) const { return perm[s]; }
  bool is_identity() const;
};

struct CanonicalElement {
  Word word;  // lexicographically least reduced word
  int length() const { return static_cast<int>(word.size()); }
  bool is_identity() const { return word.empty(); }
  bool operator==(const CanonicalElement& o) const { return word == o.word; }
  bool operator!=(const CanonicalElement& o) const { return word != o.word; }
  bool operator<(const CanonicalElement& o) const { return word < o.word; }
};

enum class Side { Left, Right };

struct DescentLemmaReport {
  std::vector<int> J;             // left descent set of w
  bool hypotheses_hold = false;   // l(w sigma(s)) < l(w) and l(s w sigma(s)) = l(w) for all s in J
  bool sigma_stabilizes_J = false;
  bool w_is_longest_of_J = false;
  bool conjugation_fixes_w = false;  // s w sigma(s) = w for all s in J
  bool conclusions_hold() const {
    return sigma_stabilizes_J && w_is_longest_of_J && conjugation_fixes_w;
  }
};

class CoxeterSystem {
 public:
  explicit CoxeterSystem(CoxeterMatrix matrix);

  const CoxeterMatrix& matrix() const { return matrix_; }
  int rank() const { return matrix_.rank(); }
  bool irreducible() const { return irreducible_; }

  CanonicalElement reduce(const Word& word) const;
  int length(const Word& word) const;

  CanonicalElement multiply(const CanonicalElement& a, const CanonicalElement& b) const;
  CanonicalElement multiply_right(const CanonicalElement& a, int s) const;
  CanonicalElement multiply_left(int s, const CanonicalElement& a) const;
  CanonicalElement inverse(const CanonicalElement& a) const;

  std::vector<int> descents(const CanonicalElement& w, Side side) const;
  std::vector<int> support(const CanonicalElement& w) const;

  bool is_spherical(const std::vector<int>& J) const;
  bool is_spherical_all() const;
  CanonicalElement longest_element(const std::vector<int>& J) const;

  std::vector<DiagramAutomorphism> diagram_automorphisms() const;

  // Edge (s,t) present iff m(s,t) >= 3.
  int coxeter_graph_distance(int s, int t) const;
  // Minimum graph distance between the supports; infinite if either support
  // is empty.
  int coxeter_distance(const CanonicalElement& u, const CanonicalElement& v) const;

  // Precondition: s does not occur in the support of w.
  bool commutes_with_support(int s, const CanonicalElement& w) const;

  DescentLemmaReport descent_lemma_witness(const DiagramAutomorphism& sigma,
                                           const CanonicalElement& w) const;

 private:
  CanonicalElement reduce_impl(const Word& word) const;

  CoxeterMatrix matrix_;
  bool irreducible_;
  mutable std::unordered_map<std::string, Word> reduce_memo_;
  mutable std::mutex memo_mutex_;
};

// Faithful permutation realization of small finite types (A1-A3, B2, B3,
// I2(m)); used as an independent oracle against the word engine.
class PermutationOracle {
 public:
  explicit PermutationOracle(const CoxeterSystem& system);

  int degree() const { return degree_; }
  std::vector<int> realize(const Word& word) const;
  const std::vector<std::vector<int>>& generator_images() const { return gens_; }

 private:
  int degree_;
  std::vector<std::vector<int>> gens_;
};

}  // namespace geomver
