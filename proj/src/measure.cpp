#include "pcone/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pcone {

namespace {

/// Exact sign test: <d, g> < 0 for every generator g of c, i.e. d lies
/// strictly interior to the polar cone of c.
bool interior_to_polar(const PolyCone& c, const VecR& d) {
  for (const VecR& g : c.generators()) {
    const Rat s = d.dot(g);
    if (!(s < 0)) return false;
  }
  return true;
}

}  // namespace

AtomicMeasure::AtomicMeasure(const PolyCone& c, std::vector<Atom> raw) {
  const int n = c.ambient_dim();
  for (const Atom& a : raw) {
    if (a.dir.size() != n) throw std::invalid_argument("atom dimension mismatch");
    if (!(a.weight > 0) || !std::isfinite(a.weight))
      throw std::invalid_argument("atom weight must be positive and finite");
    const double norm = a.dir.norm();
    if (!(norm > 0) || !std::isfinite(norm))
      throw std::invalid_argument("atom direction must be a nonzero finite vector");
    const VecD d = a.dir / norm;
    if (!interior_to_polar(c, rat_vec_from_double(d)))
      throw std::invalid_argument("atom direction not strictly interior to the polar cone");
    bool merged = false;
    for (Atom& b : atoms_) {
      if ((b.dir - d).norm() <= 1e-9) {
        b.weight += a.weight;
        merged = true;
        break;
      }
    }
    if (!merged) atoms_.push_back(Atom{d, a.weight});
  }
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& x, const Atom& y) {
    return std::lexicographical_compare(x.dir.data(), x.dir.data() + x.dir.size(), y.dir.data(),
                                        y.dir.data() + y.dir.size());
  });
}

double AtomicMeasure::total_mass() const {
  double m = 0;
  for (const Atom& a : atoms_) m += a.weight;
  return m;
}

AtomicMeasure surface_area_measure(const PseudoCone& k) {
  const int n = k.ambient_dim();
  std::vector<AtomicMeasure::Atom> atoms;
  for (const Face& f : k.lattice().faces) {
    if (f.dim != n - 1) continue;
    const Halfspace& hs = k.h().halfspaces[f.active_list.front()];
    if (!interior_to_polar(k.cone(), hs.normal)) continue;
    const double area = facet_volume(f, n);
    if (!(area > 0)) continue;
    VecD dir = to_double(hs.normal);
    dir /= dir.norm();
    atoms.push_back(AtomicMeasure::Atom{dir, area});
  }
  return AtomicMeasure(k.cone(), std::move(atoms));
}

CoconvexVolume coconvex_volume(const PseudoCone& k) {
  const int n = k.ambient_dim();
  const PolyCone& c = k.cone();
  CoconvexVolume out;
  for (int i : k.strict_facets()) {
    if (!interior_to_polar(c, k.h().halfspaces[i].normal)) {
      out.finite = false;
      out.triangulation = std::numeric_limits<double>::infinity();
      out.divergence = std::numeric_limits<double>::infinity();
      return out;
    }
  }
  out.finite = true;

  // The complement is covered by the slabs C ∩ { <x,u_i> >= t_i } over the
  // negative-offset rows; each slab is the hull of the origin and the
  // points where the extreme rays pierce the slab's hyperplane, so the
  // largest reference height over those points bounds the complement.
  const VecR& ref = c.reference_direction();
  Rat s = 0;
  for (int i : k.strict_facets()) {
    const Halfspace& hs = k.h().halfspaces[i];
    for (const VecR& g : c.generators()) {
      const Rat den = hs.normal.dot(g);  // < 0: the normal is interior to C°
      const Rat lam = hs.offset / den;   // > 0
      const Rat height = lam * g.dot(ref);
      if (height > s) s = height;
    }
  }
  s += 1;
  const Rat cone_part = volume_exact(c.truncate_exact(s));
  const Rat body_part = volume_exact(k.truncate_exact(s));
  out.exact = cone_part - body_part;
  out.triangulation = to_double(out.exact);

  double div = 0;
  for (const Face& f : k.lattice().faces) {
    if (f.dim != n - 1) continue;
    const Halfspace& hs = k.h().halfspaces[f.active_list.front()];
    if (!(hs.offset < 0)) continue;
    const double hb =
        to_double(-hs.offset) / std::sqrt(to_double(Rat(hs.normal.dot(hs.normal))));
    div += hb * facet_volume(f, n);
  }
  out.divergence = div / n;
  return out;
}

PseudoCone truncation_plus_cone(const PseudoCone& k, const Rat& s) {
  VRep gen;
  try {
    const Polyhedron trunc = k.truncate_exact(s);
    gen.points = trunc.v().points;
  } catch (const PolyhedronError& e) {
    if (e.code == PolyhedronError::Code::Empty)
      throw std::invalid_argument("truncation is empty at this offset");
    throw;
  }
  gen.rays = k.cone().generators();
  const Polyhedron sum = Polyhedron::from_v(gen);
  return PseudoCone::validate(k.cone(), sum.h());
}

DilatationReport dilatation_inequality_check(const PseudoCone& k, const VecD& u) {
  DilatationReport r;
  const int n = k.ambient_dim();
  const CoconvexVolume cv = coconvex_volume(k);
  if (!cv.finite) throw std::invalid_argument("complement volume is infinite");
  r.coconvex = cv.triangulation;
  r.depth = boundary_angle(k.cone(), u);  // rejects directions outside int C°
  r.hbar = hbar(k, u);

  const VecD un = u / u.norm();
  const VecR ur = rat_vec_from_double(un);
  if (!interior_to_polar(k.cone(), ur))
    throw std::invalid_argument("direction not strictly interior to the polar cone");
  HRep cap;
  for (const VecR& w : k.cone().facet_normals())
    cap.halfspaces.push_back(Halfspace{w, Rat(0)});
  cap.halfspaces.push_back(Halfspace{VecR(-ur), Rat(1)});  // <x, û> >= -1
  r.cap_volume = to_double(volume_exact(Polyhedron::from_h(cap)));

  r.holds = std::pow(r.hbar, n) * r.cap_volume <= r.coconvex * (1.0 + 1e-9);
  r.ratio = r.hbar / std::pow(r.depth, 1.0 / n);
  return r;
}

}  // namespace pcone
