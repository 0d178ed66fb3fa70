#include "pcone/pseudocone.hpp"

#include <algorithm>
#include <set>

namespace pcone {

const char* ValidationError::code_string() const {
  switch (code) {
    case Code::OriginInside:
      return "origin-in-K";
    case Code::RecessionMismatch:
      return "recession-cone-mismatch";
    case Code::EmptyIntersection:
      return "empty-intersection";
    case Code::PointOutsideCone:
      return "point-outside-cone";
    case Code::Input:
      return "input";
  }
  return "input";
}

PseudoCone PseudoCone::validate(const PolyCone& c, const HRep& h) {
  if (h.ambient_dim() != c.ambient_dim()) {
    throw ValidationError(ValidationError::Code::Input,
                          "halfspace dimension does not match the cone");
  }
  std::optional<Polyhedron> body;
  try {
    body.emplace(Polyhedron::from_h(h));
  } catch (const PolyhedronError& e) {
    if (e.code == PolyhedronError::Code::Empty) {
      throw ValidationError(ValidationError::Code::EmptyIntersection,
                            "the halfspace intersection is empty");
    }
    if (e.code == PolyhedronError::Code::Lineality) {
      throw ValidationError(ValidationError::Code::RecessionMismatch,
                            "the set contains a line, so its recession cone is not pointed");
    }
    throw ValidationError(ValidationError::Code::Input, e.what());
  }
  const VecR origin = VecR::Zero(c.ambient_dim());
  if (body->contains(origin)) {
    throw ValidationError(ValidationError::Code::OriginInside, "the origin belongs to the set");
  }
  // Recession cone must equal C exactly.  Both ray lists are canonical
  // (primitive, lexicographically sorted), so equality is list equality.
  const std::vector<VecR>& rays = body->v().rays;
  const std::vector<VecR>& gens = c.generators();
  bool rec_match = rays.size() == gens.size();
  if (rec_match) {
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (rays[i] != gens[i]) {
        rec_match = false;
        break;
      }
    }
  }
  if (!rec_match) {
    throw ValidationError(ValidationError::Code::RecessionMismatch,
                          "the recession cone differs from the reference cone");
  }
  // K ⊆ C follows for the conical part; the vertices must be checked.
  for (const VecR& p : body->v().points) {
    if (!c.contains(p)) {
      throw ValidationError(ValidationError::Code::PointOutsideCone,
                            "a vertex of the set lies outside the cone");
    }
  }
  return PseudoCone(c, std::move(*body));
}

std::vector<int> PseudoCone::strict_facets() const {
  std::vector<int> out;
  const std::vector<Halfspace>& hs = body_.h().halfspaces;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (hs[i].offset < 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

Polyhedron PseudoCone::truncate_exact(const Rat& s) const {
  if (s <= 0) throw std::invalid_argument("truncation level must be positive");
  HRep h = body_.h();
  h.halfspaces.push_back({cone_.reference_direction(), s});
  return Polyhedron::from_h(h);  // Empty propagates as PolyhedronError
}

Polyhedron PseudoCone::truncate(double t) const {
  if (!(t > 0)) throw std::invalid_argument("truncation level must be positive");
  const VecR g = cone_.reference_direction();
  const double norm = std::sqrt(to_double(dot(g, g)));
  return truncate_exact(rat_from_double(t * norm));
}

SupportValue support(const PseudoCone& k, const VecR& u) {
  const LinMaxResult r = linear_max(u, k.v().points, k.v().rays);
  SupportValue s;
  s.unbounded = r.unbounded;
  if (!r.unbounded) s.value = r.value;
  return s;
}

double hbar(const PseudoCone& k, const VecD& u) {
  if (u.size() != k.ambient_dim()) throw std::invalid_argument("direction dimension mismatch");
  const double norm = u.norm();
  if (!(norm > 0)) throw std::invalid_argument("direction must be nonzero");
  const SupportValue s = support(k, rat_vec_from_double(u));
  if (s.unbounded) {
    throw std::invalid_argument("support is unbounded: direction outside the polar cone");
  }
  return -to_double(s.value) / norm;
}

Rat radial(const PseudoCone& k, const VecR& x) {
  if (x.size() != k.ambient_dim()) throw std::invalid_argument("point dimension mismatch");
  if (!k.cone().strictly_contains(x)) {
    throw std::invalid_argument("the radial function requires a point interior to the cone");
  }
  // λx ∈ K ⟺ λ<x,u_i> <= t_i for all facets.  Facets with t_i = 0 are
  // satisfied for every λ > 0 because <x,u_i> < 0 strictly; each facet with
  // t_i < 0 forces λ >= t_i / <x,u_i> (the inner product is negative).
  Rat best = 0;
  bool any = false;
  for (const Halfspace& hs : k.h().halfspaces) {
    if (hs.offset >= 0) continue;
    const Rat d = dot(x, hs.normal);
    if (d >= 0) {
      throw std::logic_error("interior direction with non-negative product against a facet normal");
    }
    const Rat lo = hs.offset / d;
    if (!any || lo > best) {
      best = lo;
      any = true;
    }
  }
  if (!any) throw std::logic_error("no facet with negative offset");
  return best;
}

namespace {

/// Exact squared norm of the nearest point of the face's affine hull to the
/// origin, with the minimizer, or nullopt when the minimizer leaves the set.
std::optional<std::pair<Rat, VecR>> face_nearest(const Polyhedron& p, const Face& f) {
  if (f.vertices.empty()) return std::nullopt;
  const VecR& p0 = f.vertices.front();
  std::vector<VecR> basis;
  for (std::size_t i = 1; i < f.vertices.size(); ++i) basis.push_back(f.vertices[i] - p0);
  for (const VecR& r : f.rays) basis.push_back(r);
  const VecR nearest = project_affine(VecR::Zero(p0.size()), basis, p0);
  if (!p.contains(nearest)) return std::nullopt;
  return std::make_pair(dot(nearest, nearest), nearest);
}

}  // namespace

VecR nearest_point(const PseudoCone& k) {
  const FaceLattice& lat = k.lattice();
  std::optional<std::pair<Rat, VecR>> best;
  // The nearest point of the body lies in the relative interior of some
  // face; projecting onto every face's affine hull and keeping the feasible
  // minimum is therefore exhaustive.
  for (const Face& f : lat.faces) {
    const std::optional<std::pair<Rat, VecR>> cand = face_nearest(k.body(), f);
    if (cand && (!best || cand->first < best->first)) best = cand;
  }
  if (!best) throw std::logic_error("no feasible face projection");
  return best->second;
}

double distance_b(const PseudoCone& k) {
  const VecR x = nearest_point(k);
  return std::sqrt(to_double(dot(x, x)));
}

Polyhedron shadow(const std::vector<VecR>& points) {
  if (points.empty()) throw std::invalid_argument("shadow of an empty point set");
  const int n = static_cast<int>(points.front().size());
  VRep hull;
  hull.points = points;
  const Polyhedron conv = Polyhedron::from_v(hull);
  if (conv.contains(VecR::Zero(n))) {
    throw std::invalid_argument("the origin lies in the convex hull of the points");
  }
  VRep v;
  v.points = points;
  v.rays = points;
  return Polyhedron::from_v(v);
}

namespace {

VecD unit_of(const VecR& v) {
  VecD d(v.size());
  for (int i = 0; i < v.size(); ++i) d[i] = to_double(v[i]);
  const double n = d.norm();
  return d / n;
}

/// Enumerate strictly positive integer weights (1 + extras summing to
/// `extra`) and pass each normalized combination through the callback.
/// Strict positivity keeps the samples in the relative interior of the cone
/// spanned by the directions.
void barycentric_grid(const std::vector<VecD>& dirs, int extra,
                      const std::function<void(const VecD&)>& emit) {
  const int k = static_cast<int>(dirs.size());
  std::vector<int> w(k, 1);
  const std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == k - 1) {
      w[idx] = 1 + left;
      VecD sum = VecD::Zero(dirs.front().size());
      for (int i = 0; i < k; ++i) sum += w[i] * dirs[i];
      const double n = sum.norm();
      if (n > 1e-12) emit(sum / n);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      w[idx] = 1 + v;
      rec(idx + 1, left - v);
    }
  };
  rec(0, extra);
}

}  // namespace

std::vector<int> reverse_spherical_image(const PseudoCone& k,
                                         const std::function<bool(const VecD&)>& pred,
                                         double grid_step) {
  if (!(grid_step > 0)) throw std::invalid_argument("grid step must be positive");
  const FaceLattice& lat = k.lattice();
  const std::vector<Halfspace>& hs = k.h().halfspaces;
  std::vector<int> out;
  for (std::size_t fi = 0; fi < lat.faces.size(); ++fi) {
    const Face& f = lat.faces[fi];
    // Extreme directions of the normal cone at the face: the active normals.
    // A face is reported when the RELATIVE INTERIOR of its normal cone meets
    // the predicate set, so the extreme directions themselves count only for
    // facets (one-dimensional normal cones); for coarser faces they belong
    // to the normal cones of incident larger faces.
    std::vector<VecD> dirs;
    for (int i : f.active_list) dirs.push_back(unit_of(hs[i].normal));
    bool hit = false;
    if (dirs.size() == 1) hit = pred(dirs[0]);
    // Open pairwise arcs: strictly positive combinations of two extreme
    // directions.
    for (std::size_t a = 0; a + 1 < dirs.size() && !hit; ++a) {
      for (std::size_t b = a + 1; b < dirs.size() && !hit; ++b) {
        const double cosang = std::clamp(dirs[a].dot(dirs[b]), -1.0, 1.0);
        const double ang = std::acos(cosang);
        const int steps = std::max(2, static_cast<int>(std::ceil(ang / grid_step)));
        for (int s = 1; s < steps && !hit; ++s) {
          const double t = static_cast<double>(s) / steps;
          VecD m = (1.0 - t) * dirs[a] + t * dirs[b];
          const double n = m.norm();
          if (n < 1e-12) continue;
          if (pred(m / n)) hit = true;
        }
      }
    }
    // Coarse interior samples when the normal cone has three or more
    // extreme directions (pair arcs only cover its two-dimensional faces).
    if (!hit && dirs.size() >= 3) {
      barycentric_grid(dirs, 3, [&](const VecD& d) {
        if (!hit && pred(d)) hit = true;
      });
    }
    if (hit) out.push_back(static_cast<int>(fi));
  }
  return out;
}

PseudoCone intersect(const PseudoCone& a, const PseudoCone& b) {
  if (!a.cone().same_cone_as(b.cone())) {
    throw std::invalid_argument("the operands live over different cones");
  }
  HRep h = a.h();
  for (const Halfspace& hs : b.h().halfspaces) h.halfspaces.push_back(hs);
  return PseudoCone::validate(a.cone(), h);
}

PseudoCone conv_union(const PseudoCone& a, const PseudoCone& b) {
  if (!a.cone().same_cone_as(b.cone())) {
    throw std::invalid_argument("the operands live over different cones");
  }
  VRep v = a.v();
  for (const VecR& p : b.v().points) v.points.push_back(p);
  for (const VecR& r : b.v().rays) v.rays.push_back(r);
  const Polyhedron hull = Polyhedron::from_v(v);
  return PseudoCone::validate(a.cone(), hull.h());
}

double truncation_distance(const PseudoCone& k, const PseudoCone& l, double t) {
  if (!k.cone().same_cone_as(l.cone())) {
    throw std::invalid_argument("the operands live over different cones");
  }
  std::optional<Polyhedron> kt, lt;
  try {
    kt.emplace(k.truncate(t));
    lt.emplace(l.truncate(t));
  } catch (const PolyhedronError& e) {
    if (e.code == PolyhedronError::Code::Empty) {
      throw std::invalid_argument("a truncation is empty at this level");
    }
    throw;
  }
  return hausdorff_distance(*kt, *lt);
}

std::vector<CrucialPair> crucial_pairs(const PseudoCone& k) {
  const FaceLattice& lat = k.lattice();
  const std::vector<Halfspace>& hs = k.h().halfspaces;
  const int n = k.ambient_dim();
  std::vector<CrucialPair> out;
  for (const Face& f : lat.faces) {
    if (f.dim == n - 1) {
      // Facet: exactly one active halfspace; scale its normal so the pairing
      // with any facet point equals -1 (needs a negative offset).
      if (f.active_list.size() != 1) continue;
      const Halfspace& facet = hs[f.active_list.front()];
      if (facet.offset >= 0) continue;
      CrucialPair cp;
      cp.point = relative_interior_point(f);
      const Rat scale = -1 / facet.offset;
      cp.normal = (facet.normal * scale).eval();
      out.push_back(std::move(cp));
    } else if (f.dim == 0) {
      // Vertex: sum the active normals with negative offsets, then rescale.
      VecR v0 = VecR::Zero(n);
      for (int i : f.active_list) {
        if (hs[i].offset < 0) v0 += hs[i].normal;
      }
      const VecR& x = f.vertices.front();
      const Rat s = dot(x, v0);
      if (s >= 0) continue;  // vertex only on offset-zero facets: no pair here
      CrucialPair cp;
      cp.point = x;
      const Rat scale = -1 / s;
      cp.normal = (v0 * scale).eval();
      out.push_back(std::move(cp));
    }
  }
  return out;
}

bool is_crucial_pair(const PseudoCone& k, const VecR& x, const VecR& v) {
  if (x.size() != k.ambient_dim() || v.size() != k.ambient_dim()) return false;
  if (!k.body().contains(x)) return false;
  if (dot(x, v) != Rat(-1)) return false;
  // Gather the active constraints; x must lie on the boundary and v must be
  // a non-negative combination of the active normals.
  std::vector<VecR> active;
  for (const Halfspace& hs : k.h().halfspaces) {
    if (dot(x, hs.normal) == hs.offset) active.push_back(hs.normal);
  }
  if (active.empty()) return false;  // interior point
  VRep cone_v;
  cone_v.points.push_back(VecR::Zero(k.ambient_dim()));
  cone_v.rays = active;
  const Polyhedron normal_cone = Polyhedron::from_v(cone_v);
  return normal_cone.contains(v);
}

}  // namespace pcone
