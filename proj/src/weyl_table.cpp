#include "geomver/weyl_table.hpp"

#include <algorithm>
#include <deque>

namespace geomver {

WeylTable::WeylTable(std::shared_ptr<const CoxeterSystem> system)
    : system_(std::move(system)) {
  if (!system_->is_spherical_all())
    throw Error("NonSpherical", "Weyl table requires a finite Coxeter group");
  int n = system_->rank();

  // Enumerate all elements by BFS on right multiplication.
  std::map<Word, int> seen;
  std::vector<CanonicalElement> elems{CanonicalElement{}};
  seen[{}] = 0;
  std::deque<int> q{0};
  while (!q.empty()) {
    int a = q.front();
    q.pop_front();
    for (int s = 0; s < n; ++s) {
      CanonicalElement w = system_->multiply_right(elems[a], s);
      if (!seen.count(w.word)) {
        seen[w.word] = static_cast<int>(elems.size());
        elems.push_back(w);
        q.push_back(static_cast<int>(elems.size()) - 1);
      }
    }
  }
  std::sort(elems.begin(), elems.end(), [](const CanonicalElement& a, const CanonicalElement& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.word < b.word;
  });
  words_ = std::move(elems);
  if (words_.size() > 60000)
    throw Error("GroupTooLarge", "Weyl table limited to desk-scale groups");
  for (size_t i = 0; i < words_.size(); ++i)
    index_[words_[i].word] = static_cast<ElementId>(i);

  int N = size();
  right_.assign(N, std::vector<ElementId>(n));
  left_.assign(N, std::vector<ElementId>(n));
  inv_.resize(N);
  support_.resize(N);
  for (int a = 0; a < N; ++a) {
    for (int s = 0; s < n; ++s) {
      right_[a][s] = index_.at(system_->multiply_right(words_[a], s).word);
      left_[a][s] = index_.at(system_->multiply_left(s, words_[a]).word);
    }
    inv_[a] = index_.at(system_->inverse(words_[a]).word);
    uint32_t mask = 0;
    for (int x : words_[a].word) mask |= (1u << x);
    support_[a] = mask;
  }

  w0_conj_.resize(n);
  ElementId w0 = longest();
  for (int s = 0; s < n; ++s) {
    // w0 * s * w0
    ElementId x = mult_right(w0, s);
    x = mult(x, w0);
    if (length(x) != 1) throw Error("Internal", "w0 conjugate of a generator is not a generator");
    w0_conj_[s] = words_[x].word[0];
  }
}

ElementId WeylTable::id_of(const CanonicalElement& w) const {
  auto it = index_.find(w.word);
  if (it == index_.end()) throw Error("UnknownElement", "element not in table");
  return it->second;
}

ElementId WeylTable::mult(ElementId a, ElementId b) const {
  ElementId r = a;
  for (int s : words_[b].word) r = mult_right(r, s);
  return r;
}

}  // namespace geomver
