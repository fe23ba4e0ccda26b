#include "geomver/opposition.hpp"

#include <algorithm>
#include <sstream>

namespace geomver {

namespace {

ElementId self_codistance(const TwinModel& twin, const BuildingAutomorphism& theta, Chamber c) {
  return twin.codistance_id(c, theta.img[c]);
}

// Nonempty subsets of {0..n-1} ordered by size, then by bitmask.
std::vector<std::vector<int>> subsets_by_size(int n, bool include_empty) {
  std::vector<std::vector<int>> result;
  for (int size = include_empty ? 0 : 1; size <= n; ++size)
    for (int mask = 0; mask < (1 << n); ++mask) {
      if (__builtin_popcount(mask) != size) continue;
      std::vector<int> J;
      for (int s = 0; s < n; ++s)
        if (mask >> s & 1) J.push_back(s);
      result.push_back(std::move(J));
    }
  return result;
}

std::string join_types(const std::vector<int>& J) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < J.size(); ++i) os << (i ? "," : "") << J[i];
  os << "}";
  return os.str();
}

}  // namespace

int twin_type_image(const TwinModel& twin, const BuildingAutomorphism& theta, int s) {
  return twin.weyl().w0_conjugate(theta.sigma[s]);
}

DisplacementSpectrum displacement_spectrum(const TwinModel& twin,
                                           const BuildingAutomorphism& theta) {
  if (!theta.half_swapping) throw Error("InvalidArgument", "need a half-swapping map");
  DisplacementSpectrum sp;
  const WeylTable& W = twin.weyl();
  sp.min_length = W.length(W.longest()) + 1;
  for (Chamber c = 0; c < twin.num_chambers(); ++c) {
    ElementId w = self_codistance(twin, theta, c);
    ++sp.counts[w];
    ++sp.total;
    if (W.length(w) < sp.min_length) {
      sp.min_length = W.length(w);
      sp.min_id = w;
      sp.min_chamber = c;
    }
  }
  return sp;
}

OppositeResidueWitness witness_at(const TwinModel& twin, const BuildingAutomorphism& theta,
                                  Chamber c) {
  const WeylTable& W = twin.weyl();
  const CoxeterSystem& sys = W.system();

  OppositeResidueWitness wit;
  wit.chamber = c;
  wit.w_id = self_codistance(twin, theta, c);
  wit.w = W.element(wit.w_id);
  for (int s = 0; s < W.rank(); ++s)
    if (W.length(W.mult_left(s, wit.w_id)) < W.length(wit.w_id)) wit.J.push_back(s);

  auto fail = [](const std::string& what) {
    throw Error("WitnessValidationFailed", what);
  };
  if (W.id_of(sys.longest_element(wit.J)) != wit.w_id) fail("w is not the longest element of W_J");
  std::vector<int> sigma_J;
  for (int s : wit.J) sigma_J.push_back(twin_type_image(twin, theta, s));
  std::sort(sigma_J.begin(), sigma_J.end());
  if (sigma_J != wit.J) fail("sigma does not stabilize J");
  for (int s : wit.J)
    if (W.mult_left(s, W.mult_right(wit.w_id, twin_type_image(twin, theta, s))) != wit.w_id)
      fail("s w sigma(s) != w for some s in J");

  wit.residue = twin.building().residue_of(wit.chamber, wit.J);
  wit.image.reserve(wit.residue.size());
  for (Chamber c : wit.residue) wit.image.push_back(theta.img[c]);
  std::sort(wit.image.begin(), wit.image.end());
  if (!twin.is_opposite_residues(wit.residue, wit.image))
    fail("witness residue is not opposite its image");
  return wit;
}

OppositeResidueWitness find_opposite_residue(const TwinModel& twin,
                                             const BuildingAutomorphism& theta) {
  DisplacementSpectrum sp = displacement_spectrum(twin, theta);
  return witness_at(twin, theta, sp.min_chamber);
}

Chamber local_descent(const TwinModel& twin, const BuildingAutomorphism& theta, Chamber start) {
  const WeylTable& W = twin.weyl();
  const Building& B = twin.building();
  Chamber c = start;
  int len = W.length(self_codistance(twin, theta, c));
  for (;;) {
    Chamber best = c;
    int best_len = len;
    for (int s = 0; s < B.rank(); ++s)
      for (Chamber d : B.panel(s, c)) {
        if (d == c) continue;
        int l = W.length(self_codistance(twin, theta, d));
        if (l < best_len || (l == best_len && best_len < len && d < best)) {
          best = d;
          best_len = l;
        }
      }
    if (best_len == len) return c;
    c = best;
    len = best_len;
  }
}

int local_descent_min_length(const TwinModel& twin, const BuildingAutomorphism& theta) {
  const WeylTable& W = twin.weyl();
  int best = W.length(W.longest()) + 1;
  for (Chamber start = 0; start < twin.num_chambers(); ++start) {
    Chamber stall = local_descent(twin, theta, start);
    best = std::min(best, W.length(self_codistance(twin, theta, stall)));
  }
  return best;
}

bool is_J_opposite(const TwinModel& twin, const BuildingAutomorphism& theta,
                   const std::vector<int>& J) {
  if (!theta.half_swapping) throw Error("InvalidArgument", "need a half-swapping map");
  const Building& B = twin.building();
  std::vector<int> complement;
  for (int s = 0; s < B.rank(); ++s)
    if (std::find(J.begin(), J.end(), s) == J.end()) complement.push_back(s);

  const auto& part = B.residues(complement);
  std::vector<Chamber> image;
  for (const auto& residue : part.members) {
    image.clear();
    for (Chamber c : residue) image.push_back(theta.img[c]);
    std::sort(image.begin(), image.end());
    if (!twin.is_opposite_residues(residue, image)) return false;
  }
  if (!J.empty()) {
    // Key observation: J-opposite forces delta*(C, C^theta) in W_{S\J}.
    uint32_t allowed = 0;
    for (int s : complement) allowed |= uint32_t(1) << s;
    const WeylTable& W = twin.weyl();
    for (Chamber c = 0; c < twin.num_chambers(); ++c)
      if (W.support_mask(self_codistance(twin, theta, c)) & ~allowed)
        throw Error("Internal", "J-opposite map with codistance outside W_{S\\J}");
  }
  return true;
}

CheckReport verify_main2(const TwinModel& twin, const BuildingAutomorphism& theta,
                         const std::string& model_name) {
  Stopwatch sw;
  CheckReport rep;
  rep.model = model_name;
  rep.check = "main2";
  int n = twin.building().rank();
  std::vector<int> S(n);
  std::iota(S.begin(), S.end(), 0);
  bool opp_S = is_J_opposite(twin, theta, S);

  for (const auto& J : subsets_by_size(n, false)) {
    ++rep.total;
    if (is_J_opposite(twin, theta, J) != opp_S)
      rep.add_failure(rep.total - 1,
                      "J-opposite for J=" + join_types(J) + " disagrees with S-opposite");
  }
  if (opp_S) {
    ++rep.total;
    for (int s = 0; s < n; ++s)
      if (twin_type_image(twin, theta, s) != s) {
        rep.add_failure(rep.total - 1, "S-opposite map is not twin-type preserving");
        break;
      }
    for (const auto& J : subsets_by_size(n, true)) {
      ++rep.total;
      const auto& part = twin.building().residues(J);
      for (const auto& residue : part.members) {
        std::vector<Chamber> image;
        for (Chamber c : residue) image.push_back(theta.img[c]);
        std::sort(image.begin(), image.end());
        if (!twin.is_opposite_residues(residue, image)) {
          rep.add_failure(rep.total - 1, "S-opposite map with a non-opposite " +
                                             join_types(J) + "-residue");
          break;
        }
      }
    }
  }
  rep.elapsed_ms = sw.elapsed_ms();
  return rep;
}

namespace {

void prewarm_caches(const TwinModel& twin) {
  const Building& B = twin.building();
  for (Chamber c = 0; c < twin.num_chambers(); ++c) B.delta_row(c);
  for (const auto& J : subsets_by_size(B.rank(), true)) B.residues(J);
}

CheckReport scan_group(const TwinModel& twin, const std::string& model_name,
                       const std::string& check, long count, int workers,
                       const std::function<std::optional<std::string>(long)>& fn) {
  Stopwatch sw;
  CheckReport rep;
  rep.model = model_name;
  rep.check = check;
  prewarm_caches(twin);
  parallel_scan(count, workers, fn, rep);
  rep.elapsed_ms = sw.elapsed_ms();
  return rep;
}

std::optional<std::string> main2_one(const TwinModel& twin, const BuildingAutomorphism& theta,
                                     long i) {
  CheckReport r = verify_main2(twin, theta, "");
  if (r.pass()) return std::nullopt;
  return "map " + std::to_string(i) + ": " + r.failures.front().witness;
}

std::optional<std::string> no_opposite_one(const TwinModel& twin,
                                           const BuildingAutomorphism& theta, long i) {
  int n = twin.building().rank();
  for (const auto& J : subsets_by_size(n, false))
    if (is_J_opposite(twin, theta, J))
      return "map " + std::to_string(i) + " is J-opposite for J=" + join_types(J);
  return std::nullopt;
}

}  // namespace

CheckReport verify_main2_group(const TwinModel& twin, const IncidenceGeometry& g,
                               const std::vector<GeometryMap>& maps,
                               const std::string& model_name, int workers) {
  return scan_group(twin, model_name, "main2", maps.size(), workers, [&](long i) {
    return main2_one(twin, lift_to_building(g, twin.building(), maps[i]), i);
  });
}

CheckReport verify_main2_group(const TwinModel& twin,
                               const std::vector<BuildingAutomorphism>& maps,
                               const std::string& model_name, int workers) {
  return scan_group(twin, model_name, "main2", maps.size(), workers,
                    [&](long i) { return main2_one(twin, maps[i], i); });
}

CheckReport verify_no_opposite_automorphism(const TwinModel& twin, const IncidenceGeometry& g,
                                            const std::vector<GeometryMap>& maps,
                                            const std::string& model_name, int workers) {
  return scan_group(twin, model_name, "no-opposite", maps.size(), workers, [&](long i) {
    return no_opposite_one(twin, lift_to_building(g, twin.building(), maps[i]), i);
  });
}

CheckReport verify_no_opposite_automorphism(const TwinModel& twin,
                                            const std::vector<BuildingAutomorphism>& maps,
                                            const std::string& model_name, int workers) {
  return scan_group(twin, model_name, "no-opposite", maps.size(), workers,
                    [&](long i) { return no_opposite_one(twin, maps[i], i); });
}

int min_point_displacement(const IncidenceGeometry& g, const GeometryMap& collineation) {
  if (collineation.duality) throw Error("InvalidArgument", "need a collineation");
  int best = kInfiniteDistance;
  for (int p = 0; p < g.num_points(); ++p)
    best = std::min(best, g.incidence_distance(p, collineation.point_image(p)));
  return best;
}

BeukjeCondition beukje_condition(int q, int n) {
  int qp = square_free_part(q);
  bool divides = (qp == 0) ? (n == 0) : (n % qp == 0);
  if (!divides) return BeukjeCondition::I;
  if (qp % 2 == 0 && n % 8 != 0) return BeukjeCondition::II;
  if (qp % 4 == 3 && n % 4 != 0) return BeukjeCondition::III;
  return BeukjeCondition::None;
}

std::string beukje_condition_name(BeukjeCondition c) {
  switch (c) {
    case BeukjeCondition::I: return "i";
    case BeukjeCondition::II: return "ii";
    case BeukjeCondition::III: return "iii";
    default: return "none";
  }
}

CheckReport verify_absolute_point_theorem(const ProjectivePlane& plane, int workers,
                                          std::map<int, long>* histogram) {
  Stopwatch sw;
  CheckReport rep;
  rep.model = "pg2_" + std::to_string(plane.q);
  rep.check = "absolute-points";
  GeneratedGroup coll = collineation_group(plane);
  std::vector<GeometryMap> dualities = all_dualities(plane, coll);
  std::vector<int> abs_count(dualities.size());
  parallel_scan(
      static_cast<long>(dualities.size()), workers,
      [&](long i) -> std::optional<std::string> {
        const GeometryMap& tau = dualities[i];
        int count = 0;
        for (int p = 0; p < plane.geom.num_points(); ++p)
          if (plane.geom.incident(p, tau.point_image(p))) ++count;
        abs_count[i] = count;
        if (count == 0) {
          // Distinguish a contradicted sufficient condition from the bare
          // theorem failure in the witness.
          if (beukje_condition(plane.q, map_order(tau)) != BeukjeCondition::None)
            return std::string("sufficient condition contradicted: no absolute point");
          return std::string("duality without absolute points");
        }
        return std::nullopt;
      },
      rep);
  if (histogram)
    for (int c : abs_count) ++(*histogram)[c];
  rep.elapsed_ms = sw.elapsed_ms();
  return rep;
}

CheckReport baer_polarity_checks(const ProjectivePlane& plane, const GeometryMap& polarity) {
  Stopwatch sw;
  CheckReport rep;
  rep.model = "pg2_" + std::to_string(plane.q);
  rep.check = "polarity-absolute";
  if (!polarity.duality || map_order(polarity) != 2)
    throw Error("InvalidArgument", "need a polarity (duality of order 2)");
  if (square_free_part(plane.q) == 0)
    throw Error("NotApplicable", "q is a perfect square");
  std::vector<int> abs = absolute_points(plane, polarity);
  ++rep.total;
  if (static_cast<int>(abs.size()) != plane.q + 1)
    rep.add_failure(0, "absolute point count " + std::to_string(abs.size()) +
                           " != q+1 = " + std::to_string(plane.q + 1));
  ++rep.total;
  if (plane.q % 2 == 0) {
    bool collinear = true;
    if (abs.size() >= 2) {
      int l = plane.geom.line_through(abs[0], abs[1]);
      for (int p : abs)
        if (!plane.geom.incident(p, l)) collinear = false;
    }
    if (!collinear) rep.add_failure(1, "absolute points not collinear (q even)");
  } else {
    std::vector<int> per_line(plane.geom.num_lines(), 0);
    for (int p : abs)
      for (int l : plane.geom.lines_through(p)) ++per_line[l];
    for (int l = 0; l < plane.geom.num_lines(); ++l)
      if (per_line[l] > 2) {
        rep.add_failure(1, "line " + std::to_string(l) + " carries " +
                               std::to_string(per_line[l]) + " absolute points (q odd)");
        break;
      }
  }
  rep.elapsed_ms = sw.elapsed_ms();
  return rep;
}

std::optional<FixedResidue> fixed_simplex_search(const Building& b,
                                                 const BuildingAutomorphism& theta) {
  for (Chamber c = 0; c < b.num_chambers(); ++c)
    if (theta.img[theta.img[c]] != c)
      throw Error("NotInvolution", "map has order greater than 2");
  std::vector<std::vector<int>> subsets = subsets_by_size(b.rank(), true);
  std::vector<Chamber> image;
  for (const auto& J : subsets) {
    if (static_cast<int>(J.size()) == b.rank()) continue;  // proper residues only
    const auto& part = b.residues(J);
    for (const auto& residue : part.members) {
      image.clear();
      for (Chamber c : residue) image.push_back(theta.img[c]);
      std::sort(image.begin(), image.end());
      if (image == residue) return FixedResidue{J, residue};
    }
  }
  return std::nullopt;
}

}  // namespace geomver
