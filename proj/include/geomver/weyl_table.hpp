#pragma once

// Fully enumerated spherical Weyl group with integer element ids and
// multiplication tables.  Element ids are ordered by (length, canonical
// word), so id 0 is the identity and the last id is the longest element.

#include <cstdint>
#include <map>
#include <memory>

#include "geomver/coxeter.hpp"

namespace geomver {

using ElementId = uint16_t;

class WeylTable {
 public:
  explicit WeylTable(std::shared_ptr<const CoxeterSystem> system);

  const CoxeterSystem& system() const { return *system_; }
  int rank() const { return system_->rank(); }
  int size() const { return static_cast<int>(words_.size()); }

  ElementId identity() const { return 0; }
  ElementId longest() const { return static_cast<ElementId>(size() - 1); }

  const CanonicalElement& element(ElementId id) const { return words_[id]; }
  ElementId id_of(const CanonicalElement& w) const;
  int length(ElementId id) const { return words_[id].length(); }

  ElementId mult_right(ElementId a, int s) const { return right_[a][s]; }
  ElementId mult_left(int s, ElementId a) const { return left_[a][s]; }
  ElementId mult(ElementId a, ElementId b) const;
  ElementId inverse(ElementId a) const { return inv_[a]; }

  uint32_t support_mask(ElementId a) const { return support_[a]; }

  // Conjugation of a generator by the longest element; a diagram
  // automorphism of (W,S).
  int w0_conjugate(int s) const { return w0_conj_[s]; }

 private:
  std::shared_ptr<const CoxeterSystem> system_;
  std::vector<CanonicalElement> words_;
  std::map<Word, ElementId> index_;
  std::vector<std::vector<ElementId>> right_, left_;
  std::vector<ElementId> inv_;
  std::vector<uint32_t> support_;
  std::vector<int> w0_conj_;
};

}  // namespace geomver
