#pragma once

#include "pcone/cone.hpp"

#include <cmath>

namespace pcone {

struct ValidationError : std::runtime_error {
  enum class Code {
    OriginInside,
    RecessionMismatch,
    EmptyIntersection,
    PointOutsideCone,
    Input,
  };
  Code code;
  ValidationError(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  /// Stable identifier used by the CLI ("origin-in-K", ...).
  const char* code_string() const;
};

/// A C-pseudo-cone: a nonempty closed convex set K ⊆ C with recession cone
/// exactly C and o ∉ K, described by halfspaces with non-positive offsets.
/// Immutable; the face lattice is computed once on first use.
class PseudoCone {
 public:
  /// Validate an H-representation against the cone.  Throws
  /// ValidationError naming the violated invariant.
  static PseudoCone validate(const PolyCone& c, const HRep& h);

  const PolyCone& cone() const { return cone_; }
  const Polyhedron& body() const { return body_; }
  const HRep& h() const { return body_.h(); }
  const VRep& v() const { return body_.v(); }
  int ambient_dim() const { return body_.ambient_dim(); }
  const FaceLattice& lattice() const { return body_.lattice(); }

  /// Indices of the halfspaces with strictly negative offset.
  std::vector<int> strict_facets() const;

  /// K ∩ C⁻(t): the truncation with the cone's reference direction.
  Polyhedron truncate(double t) const;
  Polyhedron truncate_exact(const Rat& s) const;

 private:
  PseudoCone(PolyCone c, Polyhedron body) : cone_(std::move(c)), body_(std::move(body)) {}
  PolyCone cone_;
  Polyhedron body_;
};

/// Support function h(K,u) = sup over K of <x,u>; unbounded iff u ∉ C°.
struct SupportValue {
  bool unbounded = false;
  Rat value = 0;
};
SupportValue support(const PseudoCone& k, const VecR& u);

/// h̄(K,u) = −h(K,u) for the normalized direction; throws
/// std::invalid_argument when the support is unbounded.
double hbar(const PseudoCone& k, const VecD& u);

/// Radial function: the smallest λ with λx ∈ K, for x interior to C.
Rat radial(const PseudoCone& k, const VecR& x);

/// Exact minimum-norm point of K and its norm b(K).
VecR nearest_point(const PseudoCone& k);
double distance_b(const PseudoCone& k);

/// shad conv(points) = conv(points) + pos(points).  Throws
/// std::invalid_argument when the origin lies in the convex hull.
Polyhedron shadow(const std::vector<VecR>& points);

/// Faces of K whose normal cone contains a direction satisfying the
/// predicate.  Facet normals are tested directly; lower faces are sampled
/// on their normal-cone extreme directions, pairwise arcs at the given
/// angular resolution, and a coarse barycentric grid.  Returns indices
/// into k.lattice().faces.
std::vector<int> reverse_spherical_image(const PseudoCone& k,
                                         const std::function<bool(const VecD&)>& pred,
                                         double grid_step = M_PI / 180.0);

/// K ∩ L and conv(K ∪ L) over the same cone.
PseudoCone intersect(const PseudoCone& a, const PseudoCone& b);
PseudoCone conv_union(const PseudoCone& a, const PseudoCone& b);

/// Hausdorff distance of the two truncations K∩C⁻(t), L∩C⁻(t).  Throws
/// std::invalid_argument when a truncation is empty.
double truncation_distance(const PseudoCone& k, const PseudoCone& l, double t);

/// A boundary point x with an outer normal v scaled so <x,v> = -1.
struct CrucialPair {
  VecR point;
  VecR normal;
};

/// One pair per facet with negative offset (relative-interior witness) plus
/// one per vertex.
std::vector<CrucialPair> crucial_pairs(const PseudoCone& k);

/// Exact check: x ∈ ∂K, v in the normal cone at x, <x,v> = -1.
bool is_crucial_pair(const PseudoCone& k, const VecR& x, const VecR& v);

}  // namespace pcone
