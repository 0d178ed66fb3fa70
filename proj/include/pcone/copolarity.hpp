#pragma once

#include "pcone/pseudocone.hpp"

#include <optional>

namespace pcone {

/// Position of a face relative to the reference cone: bounded or unbounded,
/// and meeting the cone's interior or contained in its boundary.
enum class FaceClass {
  BoundedInterior,
  BoundedBoundary,
  UnboundedInterior,
  UnboundedBoundary,
};
const char* face_class_name(FaceClass c);

/// Exact classification: boundedness from the face's rays, boundary
/// membership by testing all vertices and rays for equality on a single
/// facet of the cone.
FaceClass classify_face(const PolyCone& c, const Face& f);

/// The copolar set K* = { x : <x,y> <= -1 for all y in K }, an involution
/// exchanging pseudo-cones over C with pseudo-cones over the polar cone.
/// For a facet <x,u> <= t of K: t < 0 contributes the point u/|t| and the
/// ray u; t = 0 contributes the ray u.
PseudoCone copolar(const PseudoCone& k);

/// Copolar of a finite point set: the intersection of the halfspaces
/// <x,y> <= -1 over the points.  Throws std::invalid_argument when the
/// origin lies in the convex hull or when the result is not line-free and
/// full-dimensional over a pointed cone.
PseudoCone copolar_points(const std::vector<VecR>& a);

/// (K ∩ {<x,u> <= 0})* = K* + pos{u}: the copolar of K with the ray u
/// adjoined, re-minimized, as a pseudo-cone over the polar of the cut cone.
/// Throws std::invalid_argument when the cut is empty or degenerate.
PseudoCone copolar_halfspace0(const PseudoCone& k, const VecR& u);

/// Conjugate face: the face of K* where <x,y> = -1 holds for every y in f.
/// Returns an index into kstar.lattice().faces, or nullopt when the
/// conjugate is empty (exactly the unbounded boundary faces).  Throws
/// std::invalid_argument when f is not a face of k.
std::optional<int> conjugate_face_index(const PseudoCone& k, const PseudoCone& kstar,
                                        const Face& f);

/// Per-face classification plus conjugate-face index into the dual lattice,
/// aligned with k.lattice().faces.
struct FaceDuality {
  FaceClass cls;
  std::optional<int> conjugate;
};
std::vector<FaceDuality> classify_faces(const PseudoCone& k, const PseudoCone& kstar);

/// Local cones of a face: the normal cone pos of the active normals, the
/// angle cone (active halfspaces slid to the origin), and the tangent cone
/// at a relative-interior witness z (active halfspaces through z).  The
/// latter two may contain lines, so they stay in H-form.
struct FaceCones {
  VecR witness;
  Polyhedron normal_cone;
  HRep angle_cone;
  HRep tangent_cone;
};
FaceCones face_cones(const PseudoCone& k, const Face& f);

/// Exact equality of the cones pos(g1) and pos(g2).
bool same_cone(const std::vector<VecR>& g1, const std::vector<VecR>& g2, int dim);
/// Exact membership x ∈ pos(gens).
bool cone_member(const std::vector<VecR>& gens, const VecR& x);
/// Exact equality of two nonempty halfspace intersections (lines allowed),
/// decided on homogenization cones.
bool same_region(const HRep& a, const HRep& b);

}  // namespace pcone
