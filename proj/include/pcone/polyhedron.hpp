#pragma once

#include "pcone/linalg.hpp"

#include <bitset>
#include <memory>

namespace pcone {

/// The halfspace { x : <x, normal> <= offset }.
struct Halfspace {
  VecR normal;
  Rat offset;
};

/// Intersection of halfspaces.  Not validated by itself; construct a
/// Polyhedron to validate and canonicalize.
struct HRep {
  std::vector<Halfspace> halfspaces;
  int ambient_dim() const;
};

/// conv(points) + cone(rays).  A valid V-representation has at least one
/// point.
struct VRep {
  std::vector<VecR> points;
  std::vector<VecR> rays;
  int ambient_dim() const;
};

struct PolyhedronError : std::runtime_error {
  enum class Code { Empty, Lineality, Unbounded, Dimension, Input };
  Code code;
  PolyhedronError(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

/// Scale so the normal is a primitive integer vector (offset scaled along).
Halfspace canonical(const Halfspace& h);
/// Canonicalize every halfspace, deduplicate, sort.  Keeps redundant rows.
HRep canonical(const HRep& h);
/// Deduplicate points, make rays primitive, sort both.  Keeps redundant
/// generators.
VRep canonical(const VRep& v);

/// Exact double-description cone { y : <m, y> <= 0 for all m in normals }.
/// Returns a basis of the lineality space and the extreme rays of the
/// pointed part (primitive, minimal).
struct ConeDescription {
  std::vector<VecR> lineality;
  std::vector<VecR> rays;
};
ConeDescription dual_description(const std::vector<VecR>& normals, int dim);

/// H-to-V conversion.  Throws PolyhedronError{Empty} when the intersection
/// is empty and PolyhedronError{Lineality} when the set contains a line.
VRep enumerate_generators(const HRep& h);

/// V-to-H conversion.  Lower-dimensional sets come back with equality pairs
/// (two opposite halfspaces).  The inequalities are irredundant.
HRep enumerate_facets(const VRep& v);

/// Proper nonempty face of a polyhedron.
struct Face {
  int dim = 0;
  bool bounded = true;
  std::bitset<128> active;          // indices into the owning H-rep
  std::vector<int> active_list;     // same, sorted
  std::vector<VecR> vertices;       // sorted lex
  std::vector<VecR> rays;           // primitive, sorted lex
};

struct FaceLattice {
  std::vector<Face> faces;  // sorted by (dim, active set); excludes the body itself
  std::vector<int> of_dim(int d) const;
  /// Containment of faces via active sets: a <= b iff active(a) >= active(b).
  static bool subface(const Face& a, const Face& b);
};

/// Polyhedron with synchronized canonical, irredundant H- and V-
/// representations.  Only pointed (line-free), nonempty sets are
/// representable; construction throws PolyhedronError otherwise.
class Polyhedron {
 public:
  static Polyhedron from_h(const HRep& h);
  static Polyhedron from_v(const VRep& v);

  const HRep& h() const { return h_; }
  const VRep& v() const { return v_; }
  int ambient_dim() const { return ambient_dim_; }
  /// Affine dimension.
  int dim() const { return dim_; }
  bool bounded() const { return v_.rays.empty(); }
  bool full_dim() const { return dim_ == ambient_dim_; }

  bool contains(const VecR& x) const;
  /// Set equality through canonical V-representations.
  bool same_set_as(const Polyhedron& other) const;

  /// Face lattice of a full-dimensional polyhedron (computed once, cached).
  const FaceLattice& lattice() const;

 private:
  Polyhedron() = default;
  HRep h_;
  VRep v_;
  int ambient_dim_ = 0;
  int dim_ = 0;
  mutable std::shared_ptr<const FaceLattice> lattice_;
};

/// Exact volume of a bounded full-dimensional polyhedron.
Rat volume_exact(const Polyhedron& p);

/// Volume of a bounded region; lower-dimensional sets have volume 0.
/// Throws PolyhedronError{Unbounded} for unbounded input.
double region_volume(const Polyhedron& p);

/// k-dimensional volume of conv(points) inside its affine hull; returns 0
/// when the hull has dimension < k.
double polytope_volume(const std::vector<VecR>& points, int k);

/// (n-1)-volume of a bounded face; 0 when the face is degenerate
/// (dimension < n-1).  Throws PolyhedronError{Unbounded} for unbounded
/// faces.
double facet_volume(const Face& f, int ambient_dim);

/// A point in the relative interior of a face (vertex mean plus ray sum).
VecR relative_interior_point(const Face& f);

/// Exact squared Euclidean distance from a point to a full-dimensional
/// polyhedron.
Rat squared_distance(const VecR& x, const Polyhedron& q);

/// Hausdorff distance between two bounded full-dimensional polytopes.
double hausdorff_distance(const Polyhedron& a, const Polyhedron& b);

}  // namespace pcone
