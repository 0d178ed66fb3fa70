#pragma once

#include "pcone/polyhedron.hpp"

#include <functional>

namespace pcone {

struct ConeError : std::runtime_error {
  enum class Code { NotPointed, NotFullDim, Input };
  Code code;
  ConeError(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

/// Pointed, full-dimensional closed convex polyhedral cone with apex at the
/// origin.  Stored in canonical dual form: the extreme rays and the facet
/// normals (C = ∩ { x : <x, w> <= 0 }), both primitive integer vectors in
/// lexicographic order.
class PolyCone {
 public:
  static PolyCone from_generators(const std::vector<VecR>& gens);

  const std::vector<VecR>& generators() const { return generators_; }
  const std::vector<VecR>& facet_normals() const { return facet_normals_; }
  int ambient_dim() const { return ambient_dim_; }

  /// Polar cone { y : <y, x> <= 0 for all x in C }.  Exact involution: the
  /// generator and facet-normal lists swap roles.
  PolyCone polar() const;

  bool contains(const VecR& x) const;
  bool strictly_contains(const VecR& x) const;
  bool same_cone_as(const PolyCone& other) const;

  /// Interior reference direction as a primitive integer vector; its
  /// negation is interior to the polar cone, so halfspaces orthogonal to it
  /// cut bounded truncations.
  const VecR& reference_direction() const { return ref_dir_; }
  VecD unit_reference_direction() const;

  /// { x in C : <x, unit ref> <= t }, with the metric height snapped to the
  /// exact rational s = t * |reference_direction()|.
  Polyhedron truncate(double t) const;
  /// { x in C : <x, reference_direction()> <= s } exactly.
  Polyhedron truncate_exact(const Rat& s) const;
  /// The slice { x in C : <x, reference_direction()> = s } exactly.
  Polyhedron section_exact(const Rat& s) const;

  /// The cone as a polyhedron (apex plus extreme rays).
  Polyhedron as_polyhedron() const;

 private:
  PolyCone() = default;
  std::vector<VecR> generators_;
  std::vector<VecR> facet_normals_;
  VecR ref_dir_;
  int ambient_dim_ = 0;
};

/// Geodesic distance on the unit sphere from the direction u to the
/// boundary of the support region of the polar cone — the set of unit
/// directions interior to C°.  Throws std::invalid_argument when u is not
/// interior to C°.  Computed by exact face enumeration of C° with floating
/// projections onto face spans.
double boundary_angle(const PolyCone& c, const VecD& u);

/// Predicate for { u : boundary_angle(c, u) >= tau }; false for directions
/// outside the interior of C°.
std::function<bool(const VecD&)> angular_depth_at_least(const PolyCone& c, double tau);

}  // namespace pcone
