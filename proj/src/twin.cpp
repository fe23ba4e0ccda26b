#include "geomver/twin.hpp"

#include <sstream>

namespace geomver {

TwinModel::TwinModel(std::shared_ptr<const Building> building)
    : building_(std::move(building)) {
  const WeylTable& W = building_->weyl();
  w0_postmult_.resize(W.size());
  for (int a = 0; a < W.size(); ++a)
    w0_postmult_[a] = W.mult(static_cast<ElementId>(a), W.longest());
}

ElementId TwinModel::codistance_id(Chamber c_plus, Chamber d_minus) const {
  if (!override_.empty()) {
    auto it = override_.find({c_plus, d_minus});
    if (it != override_.end()) return it->second;
  }
  return w0_postmult_[building_->delta_id(c_plus, d_minus)];
}

ElementId TwinModel::codistance_id_minus(Chamber c_minus, Chamber d_plus) const {
  return weyl().inverse(codistance_id(d_plus, c_minus));
}

CanonicalElement TwinModel::codistance(Half half_of_first, Chamber x, Chamber y) const {
  ElementId id = (half_of_first == Half::Plus) ? codistance_id(x, y)
                                               : codistance_id_minus(x, y);
  return weyl().element(id);
}

bool TwinModel::is_opposite_residues(const std::vector<Chamber>& plus_res,
                                     const std::vector<Chamber>& minus_res) const {
  ElementId one = weyl().identity();
  for (Chamber c : plus_res) {
    bool found = false;
    for (Chamber d : minus_res)
      if (codistance_id(c, d) == one) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  for (Chamber d : minus_res) {
    bool found = false;
    for (Chamber c : plus_res)
      if (codistance_id(c, d) == one) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

void TwinModel::corrupt_codistance(Chamber c, Chamber d, ElementId value) {
  override_[{c, d}] = value;
}

CheckReport TwinModel::verify_twin_axioms(const std::string& model_name) const {
  Stopwatch sw;
  CheckReport rep;
  rep.model = model_name;
  rep.check = "twin-axioms";
  const WeylTable& W = weyl();
  const Building& B = *building_;
  int N = B.num_chambers();
  int n = B.rank();

  auto codist = [&](int eps, Chamber c, Chamber d) {
    return eps == 0 ? codistance_id(c, d) : codistance_id_minus(c, d);
  };

  // Tw1 over all ordered cross pairs, both directions.
  for (Chamber c = 0; c < N; ++c)
    for (Chamber d = 0; d < N; ++d) {
      ++rep.total;
      if (codistance_id_minus(d, c) != W.inverse(codistance_id(c, d))) {
        std::ostringstream os;
        os << "Tw1 violated at (C+=" << c << ", D-=" << d << ")";
        rep.add_failure(static_cast<long>(c) * N + d, os.str());
      }
    }

  // Tw2/Tw3 for both choices of the half of the first argument.  The move
  // is in the second argument, multiplying the codistance on the right by
  // the panel's twin type: the building type itself in the plus half, its
  // w0-conjugate in the relabeled minus half.
  for (int eps = 0; eps < 2; ++eps) {
    for (Chamber c = 0; c < N; ++c)
      for (Chamber d = 0; d < N; ++d) {
        ElementId w = codist(eps, c, d);
        for (int s = 0; s < n; ++s) {
          ++rep.total;
          int twin_type = (eps == 0) ? minus_twin_type(s) : s;
          ElementId ws = W.mult_right(w, twin_type);
          bool down = W.length(ws) < W.length(w);
          bool tw3_found = false;
          for (Chamber e : B.panel(s, d)) {
            if (e == d) continue;
            ElementId we = codist(eps, c, e);
            if (down && we != ws) {
              std::ostringstream os;
              os << "Tw2 violated: eps=" << (eps == 0 ? '+' : '-') << " C=" << c
                 << " D=" << d << " E=" << e << " s=" << s;
              rep.add_failure(static_cast<long>(c) * N + d, os.str());
            }
            if (we == ws) tw3_found = true;
          }
          if (!tw3_found) {
            std::ostringstream os;
            os << "Tw3 violated: eps=" << (eps == 0 ? '+' : '-') << " C=" << c
               << " D=" << d << " s=" << s << " (no chamber at codistance w*s)";
            rep.add_failure(static_cast<long>(c) * N + d, os.str());
          }
        }
      }
  }
  rep.elapsed_ms = sw.elapsed_ms();
  return rep;
}

std::shared_ptr<TwinModel> self_twin(std::shared_ptr<const Building> building) {
  auto twin = std::make_shared<TwinModel>(std::move(building));
  // Construction bug guard: the axiom suite must pass on a fresh model.
  CheckReport rep = twin->verify_twin_axioms("self-twin-construction");
  if (!rep.pass())
    throw Error("AxiomValidationFailed", rep.failures.front().witness);
  return twin;
}

}  // namespace geomver
