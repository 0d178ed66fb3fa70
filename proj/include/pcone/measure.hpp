#pragma once

#include "pcone/pseudocone.hpp"

namespace pcone {

/// Finitely-supported measure on unit directions strictly interior to the
/// polar cone of a reference cone.  Directions are normalized and validated
/// exactly on construction; near-duplicate directions are merged by adding
/// weights; atoms are sorted for deterministic output.
class AtomicMeasure {
 public:
  struct Atom {
    VecD dir;       // unit vector
    double weight;  // > 0
  };

  AtomicMeasure(const PolyCone& c, std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  double total_mass() const;

 private:
  std::vector<Atom> atoms_;
};

/// Facet-area measure: one atom per facet whose normal is strictly interior
/// to the polar cone (exact sign test), weighted by the facet's
/// (n-1)-volume.  Facets with boundary normals contribute nothing.
AtomicMeasure surface_area_measure(const PseudoCone& k);

/// Volume of the complement region between the cone and the set, by two
/// routes: an exact triangulation of the bounded complement, and the
/// divergence-style sum (1/n) Σ h̄_i S_i over the facets.  The complement
/// has finite volume exactly when every negative-offset facet normal is
/// strictly interior to the polar cone; otherwise `finite` is false and the
/// float fields are +infinity.
struct CoconvexVolume {
  bool finite = false;
  Rat exact = 0;             // triangulation value, exact (finite case only)
  double triangulation = 0;  // to_double(exact)
  double divergence = 0;     // (1/n) Σ h̄_i S_i
};
CoconvexVolume coconvex_volume(const PseudoCone& k);

/// Rebuild the set from its truncation: (K ∩ { <x, ref> <= s }) + C, with
/// ref the cone's reference direction and s a raw offset.  For small s this
/// produces a set with infinite complement volume even though it converges
/// to K as s grows.  Throws when the truncation is empty.
PseudoCone truncation_plus_cone(const PseudoCone& k, const Rat& s);

/// Witness for the scaling inequality: dilating the cap of the cone cut by
/// the unit-offset hyperplane of u into the cap at the set's support level
/// keeps it inside the complement, so h̄^n * cap_volume <= complement
/// volume.  Also reports the angular depth of u and the ratio
/// h̄ / depth^{1/n}.
struct DilatationReport {
  double hbar = 0;        // h̄_K(u)
  double cap_volume = 0;  // volume of the cone cut at offset -1 against u
  double coconvex = 0;    // complement volume
  bool holds = false;     // hbar^n * cap_volume <= coconvex * (1 + 1e-9)
  double depth = 0;       // angular distance of u from the polar boundary
  double ratio = 0;       // hbar / depth^{1/n}
};
DilatationReport dilatation_inequality_check(const PseudoCone& k, const VecD& u);

}  // namespace pcone
