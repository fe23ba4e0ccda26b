#pragma once

// Displacement spectra, the opposite-residue descent argument, J-opposition
// and its all-or-nothing equivalence, absolute-point scans, and the
// fixed-simplex search for involutions.

#include "geomver/symmetry.hpp"
#include "geomver/twin.hpp"

namespace geomver {

// Twin type image of a building type under a half-swapping automorphism:
// the building-level sigma composed with conjugation by w0 (the minus
// half's type relabeling).
int twin_type_image(const TwinModel& twin, const BuildingAutomorphism& theta, int s);

struct DisplacementSpectrum {
  std::map<ElementId, long> counts;  // codistance id -> number of chambers
  ElementId min_id = 0;
  int min_length = 0;
  Chamber min_chamber = 0;  // lowest chamber index attaining min_length
  long total = 0;
};

DisplacementSpectrum displacement_spectrum(const TwinModel& twin,
                                           const BuildingAutomorphism& theta);

struct OppositeResidueWitness {
  Chamber chamber = 0;
  std::vector<int> J;      // left descent set of w (empty when w = 1)
  CanonicalElement w;      // minimal-length codistance; equals w_J
  ElementId w_id = 0;
  std::vector<Chamber> residue;  // J-residue of the witness chamber
  std::vector<Chamber> image;    // its image chamber set
};

// Witness at a given chamber, fully validated (w = w_J for J the left
// descents of w, sigma(J) = J, s w sigma(s) = w, residue opposite its
// image); throws WitnessValidationFailed on any violation.  The validation
// is the conclusion of the descent argument, so it holds at every chamber
// where no adjacent chamber has a strictly shorter codistance -- not just
// at the global minimum.
OppositeResidueWitness witness_at(const TwinModel& twin, const BuildingAutomorphism& theta,
                                  Chamber c);

// Global minimum of the displacement spectrum with its validated witness.
OppositeResidueWitness find_opposite_residue(const TwinModel& twin,
                                             const BuildingAutomorphism& theta);

// The descent mechanism: greedily move to an adjacent chamber of strictly
// smaller codistance length until stuck; returns the stall chamber.  A
// single walk can stall at a terminal point above the global minimum (any
// chamber where w = w_J and the whole J-residue sits at w_J), so the
// minimum-length form takes the best stall over all starting chambers.
Chamber local_descent(const TwinModel& twin, const BuildingAutomorphism& theta, Chamber start);
int local_descent_min_length(const TwinModel& twin, const BuildingAutomorphism& theta);

// True iff every (S \ J)-residue is mapped to an opposite residue.  When
// returning true with J nonempty, the key observation delta*(C, C^theta) in
// W_{S\J} is asserted for every chamber.
bool is_J_opposite(const TwinModel& twin, const BuildingAutomorphism& theta,
                   const std::vector<int>& J);

// For every nonempty J: J-opposite iff S-opposite; if S-opposite, the twin
// type map is the identity and every residue of every type is mapped to an
// opposite residue.
CheckReport verify_main2(const TwinModel& twin, const BuildingAutomorphism& theta,
                         const std::string& model_name);
CheckReport verify_main2_group(const TwinModel& twin, const IncidenceGeometry& g,
                               const std::vector<GeometryMap>& maps,
                               const std::string& model_name, int workers = 1);
CheckReport verify_main2_group(const TwinModel& twin,
                               const std::vector<BuildingAutomorphism>& maps,
                               const std::string& model_name, int workers = 1);

// No map in the group is J-opposite for any nonempty J.
CheckReport verify_no_opposite_automorphism(const TwinModel& twin, const IncidenceGeometry& g,
                                            const std::vector<GeometryMap>& maps,
                                            const std::string& model_name, int workers = 1);
CheckReport verify_no_opposite_automorphism(const TwinModel& twin,
                                            const std::vector<BuildingAutomorphism>& maps,
                                            const std::string& model_name, int workers = 1);

// Minimum over points p of the incidence-graph distance from p to its image.
int min_point_displacement(const IncidenceGeometry& g, const GeometryMap& collineation);

// First matching sufficient condition for a duality of order n of PG(2,q) to
// admit an absolute point, with q' the square-free part of q:
//   (i)   q' does not divide n  (q' = 0 divides only 0, so square q -> i);
//   (ii)  q' even, q' | n, 8 does not divide n;
//   (iii) q' = 3 mod 4, q' | n, 4 does not divide n.
enum class BeukjeCondition { None, I, II, III };
BeukjeCondition beukje_condition(int q, int n);
std::string beukje_condition_name(BeukjeCondition c);

// Every duality of the plane has at least one absolute point; when
// beukje_condition(q, order) != none the guarantee must hold (cross-check).
// Optionally fills a histogram absolute-point-count -> number of dualities.
CheckReport verify_absolute_point_theorem(const ProjectivePlane& plane, int workers = 1,
                                          std::map<int, long>* histogram = nullptr);

// For a polarity of PG(2,q), q non-square: exactly q+1 absolute points,
// collinear when q is even, at most two per line when q is odd.
CheckReport baer_polarity_checks(const ProjectivePlane& plane, const GeometryMap& polarity);

struct FixedResidue {
  std::vector<int> J;  // proper subset of the types (J = empty: a chamber)
  std::vector<Chamber> members;
};

// Smallest set-wise fixed proper residue of an involution (by |J|, then by
// lowest member), or nullopt when every chamber is moved to an opposite.
std::optional<FixedResidue> fixed_simplex_search(const Building& b,
                                                 const BuildingAutomorphism& theta);

}  // namespace geomver
