#pragma once

// Self-twinning of a spherical building: both halves are copies of the
// building, delta*(C+, D-) = delta(C, D) w0, and the minus half's type
// function is relabeled by conjugation by w0.  Moves in the second argument
// then multiply the codistance on the right by the panel's twin type; the
// left-multiplied form for the first argument is the mirror image under Tw1.

#include "geomver/building.hpp"
#include "geomver/report.hpp"

namespace geomver {

enum class Half { Plus, Minus };

class TwinModel {
 public:
  explicit TwinModel(std::shared_ptr<const Building> building);

  const Building& building() const { return *building_; }
  const WeylTable& weyl() const { return building_->weyl(); }
  int num_chambers() const { return building_->num_chambers(); }

  // delta*(C^+, D^-) as an element id; the plus->minus direction.
  ElementId codistance_id(Chamber c_plus, Chamber d_minus) const;
  // delta*(C^-, D^+) = codistance_id(D,C)^{-1}  (Tw1).
  ElementId codistance_id_minus(Chamber c_minus, Chamber d_plus) const;

  CanonicalElement codistance(Half half_of_first, Chamber x, Chamber y) const;

  bool opposite_chambers(Chamber c_plus, Chamber d_minus) const {
    return codistance_id(c_plus, d_minus) == weyl().identity();
  }

  // The minus half's type function is the building type relabeled by
  // conjugation by w0, so opposite residues carry equal twin types.
  int minus_twin_type(int building_type) const {
    return weyl().w0_conjugate(building_type);
  }

  // Chamber-wise opposition of a plus-half residue against a minus-half
  // chamber set, checked in both directions.
  bool is_opposite_residues(const std::vector<Chamber>& plus_res,
                            const std::vector<Chamber>& minus_res) const;

  // Exhaustive Tw1/Tw2/Tw3 scan over all cross pairs and generators.
  CheckReport verify_twin_axioms(const std::string& model_name) const;

  // Test hook: override the plus->minus codistance table (the minus->plus
  // direction is still derived via Tw1 from the override).
  void corrupt_codistance(Chamber c, Chamber d, ElementId value);

 private:
  std::shared_ptr<const Building> building_;
  std::vector<ElementId> w0_postmult_;  // id -> id * w0
  std::map<std::pair<Chamber, Chamber>, ElementId> override_;
};

std::shared_ptr<TwinModel> self_twin(std::shared_ptr<const Building> building);

}  // namespace geomver
