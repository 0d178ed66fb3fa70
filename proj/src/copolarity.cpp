#include "pcone/copolarity.hpp"

#include <algorithm>

namespace pcone {

const char* face_class_name(FaceClass c) {
  switch (c) {
    case FaceClass::BoundedInterior:
      return "bounded-interior";
    case FaceClass::BoundedBoundary:
      return "bounded-boundary";
    case FaceClass::UnboundedInterior:
      return "unbounded-interior";
    case FaceClass::UnboundedBoundary:
      return "unbounded-boundary";
  }
  return "unbounded-boundary";
}

FaceClass classify_face(const PolyCone& c, const Face& f) {
  // A convex subset of the cone's boundary lies within a single facet, so
  // boundary membership is one facet with all generators at equality.
  bool on_boundary = false;
  for (const VecR& w : c.facet_normals()) {
    bool flat = true;
    for (const VecR& p : f.vertices) {
      if (dot(p, w) != 0) {
        flat = false;
        break;
      }
    }
    for (const VecR& r : f.rays) {
      if (!flat) break;
      if (dot(r, w) != 0) flat = false;
    }
    if (flat) {
      on_boundary = true;
      break;
    }
  }
  if (f.bounded) {
    return on_boundary ? FaceClass::BoundedBoundary : FaceClass::BoundedInterior;
  }
  return on_boundary ? FaceClass::UnboundedBoundary : FaceClass::UnboundedInterior;
}

PseudoCone copolar(const PseudoCone& k) {
  VRep v;
  for (const Halfspace& hs : k.h().halfspaces) {
    if (hs.offset < 0) {
      const Rat scale = -1 / hs.offset;
      v.points.push_back((hs.normal * scale).eval());
      v.rays.push_back(hs.normal);
    } else {
      v.rays.push_back(hs.normal);
    }
  }
  const Polyhedron poly = Polyhedron::from_v(v);
  const PolyCone polar = k.cone().polar();
  return PseudoCone::validate(polar, poly.h());
}

PseudoCone copolar_points(const std::vector<VecR>& a) {
  if (a.empty()) throw std::invalid_argument("copolar of an empty point set");
  const int n = static_cast<int>(a.front().size());
  VRep hull;
  hull.points = a;
  const Polyhedron conv = Polyhedron::from_v(hull);
  if (conv.contains(VecR::Zero(n))) {
    throw std::invalid_argument("the origin lies in the convex hull of the points");
  }
  HRep h;
  for (const VecR& y : a) h.halfspaces.push_back({y, Rat(-1)});
  std::optional<Polyhedron> poly;
  try {
    poly.emplace(Polyhedron::from_h(h));
  } catch (const PolyhedronError& e) {
    throw std::invalid_argument(std::string("the copolar of the point set is degenerate: ") +
                                e.what());
  }
  std::optional<PolyCone> rec;
  try {
    rec.emplace(PolyCone::from_generators(poly->v().rays));
  } catch (const ConeError& e) {
    throw std::invalid_argument(
        std::string("the copolar's recession cone is not pointed and full-dimensional: ") +
        e.what());
  }
  return PseudoCone::validate(*rec, poly->h());
}

PseudoCone copolar_halfspace0(const PseudoCone& k, const VecR& u) {
  if (u.size() != k.ambient_dim()) throw std::invalid_argument("direction dimension mismatch");
  if (u.isZero(0)) throw std::invalid_argument("direction must be nonzero");
  // Precondition: K cut by <x,u> <= 0 stays nonempty.
  HRep cut = k.h();
  cut.halfspaces.push_back({u, Rat(0)});
  try {
    Polyhedron::from_h(cut);
  } catch (const PolyhedronError& e) {
    if (e.code == PolyhedronError::Code::Empty) {
      throw std::invalid_argument("the halfspace misses the pseudo-cone");
    }
    throw;
  }
  const PseudoCone ks = copolar(k);
  VRep v = ks.v();
  v.rays.push_back(u);
  const Polyhedron poly = Polyhedron::from_v(v);
  std::vector<VecR> gens = k.cone().polar().generators();
  gens.push_back(u);
  std::optional<PolyCone> rec;
  try {
    rec.emplace(PolyCone::from_generators(gens));
  } catch (const ConeError& e) {
    throw std::invalid_argument(std::string("the cut cone is degenerate: ") + e.what());
  }
  return PseudoCone::validate(*rec, poly.h());
}

namespace {

bool vector_lists_equal(const std::vector<VecR>& a, const std::vector<VecR>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

}  // namespace

std::optional<int> conjugate_face_index(const PseudoCone& k, const PseudoCone& kstar,
                                        const Face& f) {
  const FaceLattice& lat = k.lattice();
  bool known = false;
  for (const Face& g : lat.faces) {
    if (g.active == f.active && g.dim == f.dim) {
      known = true;
      break;
    }
  }
  if (!known) throw std::invalid_argument("the face does not belong to the pseudo-cone");

  // Select the generators of K* pinned by the exact conditions
  // <x,v> = -1 on the vertices and <x,r> = 0 on the rays of the face.
  const auto pinned = [&f](const VecR& x, bool point) {
    const Rat level = point ? Rat(-1) : Rat(0);
    for (const VecR& vtx : f.vertices) {
      if (dot(x, vtx) != level) return false;
    }
    for (const VecR& r : f.rays) {
      if (dot(x, r) != 0) return false;
    }
    return true;
  };
  std::vector<VecR> pts, rys;
  for (const VecR& p : kstar.v().points) {
    if (pinned(p, true)) pts.push_back(p);
  }
  for (const VecR& r : kstar.v().rays) {
    if (pinned(r, false)) rys.push_back(r);
  }
  if (pts.empty()) return std::nullopt;

  const FaceLattice& dual = kstar.lattice();
  for (std::size_t i = 0; i < dual.faces.size(); ++i) {
    if (vector_lists_equal(dual.faces[i].vertices, pts) &&
        vector_lists_equal(dual.faces[i].rays, rys)) {
      return static_cast<int>(i);
    }
  }
  throw std::logic_error("conjugate generators do not span a lattice face");
}

std::vector<FaceDuality> classify_faces(const PseudoCone& k, const PseudoCone& kstar) {
  const FaceLattice& lat = k.lattice();
  std::vector<FaceDuality> out;
  out.reserve(lat.faces.size());
  for (const Face& f : lat.faces) {
    FaceDuality d;
    d.cls = classify_face(k.cone(), f);
    d.conjugate = conjugate_face_index(k, kstar, f);
    out.push_back(d);
  }
  return out;
}

FaceCones face_cones(const PseudoCone& k, const Face& f) {
  if (f.vertices.empty()) throw std::invalid_argument("face without vertices");
  const VecR witness = relative_interior_point(f);
  const std::vector<Halfspace>& hs = k.h().halfspaces;
  VRep nv;
  nv.points.push_back(VecR::Zero(k.ambient_dim()));
  for (int i : f.active_list) nv.rays.push_back(hs[i].normal);
  HRep angle, tangent;
  for (int i : f.active_list) {
    angle.halfspaces.push_back({hs[i].normal, Rat(0)});
    tangent.halfspaces.push_back({hs[i].normal, dot(witness, hs[i].normal)});
  }
  return FaceCones{witness, Polyhedron::from_v(nv), std::move(angle), std::move(tangent)};
}

bool cone_member(const std::vector<VecR>& gens, const VecR& x) {
  if (gens.empty()) return x.isZero(0);
  const int dim = static_cast<int>(gens.front().size());
  const ConeDescription polar = dual_description(gens, dim);
  for (const VecR& r : polar.rays) {
    if (dot(x, r) > 0) return false;
  }
  for (const VecR& l : polar.lineality) {
    if (dot(x, l) != 0) return false;
  }
  return true;
}

bool same_cone(const std::vector<VecR>& g1, const std::vector<VecR>& g2, int dim) {
  const auto inside = [dim](const std::vector<VecR>& gens, const std::vector<VecR>& xs) {
    const ConeDescription polar = dual_description(gens, dim);
    for (const VecR& x : xs) {
      for (const VecR& r : polar.rays) {
        if (dot(x, r) > 0) return false;
      }
      for (const VecR& l : polar.lineality) {
        if (dot(x, l) != 0) return false;
      }
    }
    return true;
  };
  return inside(g1, g2) && inside(g2, g1);
}

bool same_region(const HRep& a, const HRep& b) {
  // Homogenize { x : <x,u_i> <= c_i } to the cone of (x, s) with s >= 0 and
  // <x,u_i> - c_i s <= 0; two nonempty regions coincide exactly when their
  // homogenization cones do, i.e. when the polar cones pos{(u_i, -c_i)} plus
  // the ray (0,...,0,-1) coincide.
  const int n = std::max(a.ambient_dim(), b.ambient_dim());
  const auto lift = [n](const HRep& h) {
    std::vector<VecR> gens;
    for (const Halfspace& hs : h.halfspaces) {
      VecR g(n + 1);
      for (int i = 0; i < n; ++i) g[i] = hs.normal[i];
      g[n] = -hs.offset;
      gens.push_back(g);
    }
    VecR down = VecR::Zero(n + 1);
    down[n] = -1;
    gens.push_back(down);
    return gens;
  };
  if (!a.halfspaces.empty() && !b.halfspaces.empty() && a.ambient_dim() != b.ambient_dim()) {
    return false;
  }
  return same_cone(lift(a), lift(b), n + 1);
}

}  // namespace pcone
