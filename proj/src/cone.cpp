#include "pcone/cone.hpp"

#include <cmath>

namespace pcone {

namespace {

/// Sum of the generators, validated to be interior to C and, negated,
/// interior to C°.  Falls back to the extreme rays of C ∩ (-C°), whose sum
/// always passes validation.
VecR compute_reference(const std::vector<VecR>& gens, const std::vector<VecR>& normals) {
  const Eigen::Index n = gens.front().size();
  auto valid = [&](const VecR& g) {
    for (const VecR& w : normals) {
      if (dot(g, w) >= 0) return false;
    }
    for (const VecR& r : gens) {
      if (dot(g, r) <= 0) return false;
    }
    return true;
  };

  VecR sum = VecR::Zero(n);
  for (const VecR& g : gens) sum += primitive(g);
  sum = primitive(sum);
  if (valid(sum)) return sum;

  HRep deep;
  for (const VecR& w : normals) deep.halfspaces.push_back({w, Rat(0)});
  for (const VecR& r : gens) deep.halfspaces.push_back({-r, Rat(0)});
  const VRep v = enumerate_generators(deep);
  VecR fallback = VecR::Zero(n);
  for (const VecR& r : v.rays) fallback += r;
  fallback = primitive(fallback);
  if (!valid(fallback)) {
    throw std::logic_error("reference direction: fallback failed validation");
  }
  return fallback;
}

}  // namespace

PolyCone PolyCone::from_generators(const std::vector<VecR>& gens) {
  if (gens.empty()) throw ConeError(ConeError::Code::Input, "cone needs generators");
  const Eigen::Index n = gens.front().size();
  VRep v;
  v.points.push_back(VecR::Zero(n));
  v.rays = gens;

  std::optional<Polyhedron> p;
  try {
    p = Polyhedron::from_v(v);
  } catch (const PolyhedronError& e) {
    if (e.code == PolyhedronError::Code::Lineality) {
      throw ConeError(ConeError::Code::NotPointed, "cone is not pointed");
    }
    throw ConeError(ConeError::Code::Input, e.what());
  }
  if (!p->full_dim()) {
    throw ConeError(ConeError::Code::NotFullDim, "cone is not full-dimensional");
  }

  PolyCone c;
  c.ambient_dim_ = static_cast<int>(n);
  c.generators_ = p->v().rays;
  for (const Halfspace& hs : p->h().halfspaces) {
    if (hs.offset != 0) throw std::logic_error("cone facet with nonzero offset");
    c.facet_normals_.push_back(hs.normal);
  }
  c.ref_dir_ = compute_reference(c.generators_, c.facet_normals_);
  return c;
}

PolyCone PolyCone::polar() const {
  PolyCone c;
  c.ambient_dim_ = ambient_dim_;
  c.generators_ = facet_normals_;
  c.facet_normals_ = generators_;
  c.ref_dir_ = compute_reference(c.generators_, c.facet_normals_);
  return c;
}

bool PolyCone::contains(const VecR& x) const {
  for (const VecR& w : facet_normals_) {
    if (dot(x, w) > 0) return false;
  }
  return true;
}

bool PolyCone::strictly_contains(const VecR& x) const {
  for (const VecR& w : facet_normals_) {
    if (dot(x, w) >= 0) return false;
  }
  return true;
}

bool PolyCone::same_cone_as(const PolyCone& other) const {
  return generators_ == other.generators_;
}

VecD PolyCone::unit_reference_direction() const {
  VecD d = to_double(ref_dir_);
  return d / d.norm();
}

Polyhedron PolyCone::truncate_exact(const Rat& s) const {
  if (s <= 0) throw std::invalid_argument("truncate: height must be positive");
  HRep h;
  for (const VecR& w : facet_normals_) h.halfspaces.push_back({w, Rat(0)});
  h.halfspaces.push_back({ref_dir_, s});
  return Polyhedron::from_h(h);
}

Polyhedron PolyCone::truncate(double t) const {
  if (t <= 0) throw std::invalid_argument("truncate: height must be positive");
  const double scale = std::sqrt(to_double(Rat(ref_dir_.dot(ref_dir_))));
  return truncate_exact(rat_from_double(t * scale));
}

Polyhedron PolyCone::section_exact(const Rat& s) const {
  HRep h;
  for (const VecR& w : facet_normals_) h.halfspaces.push_back({w, Rat(0)});
  h.halfspaces.push_back({ref_dir_, s});
  h.halfspaces.push_back({-ref_dir_, -s});
  return Polyhedron::from_h(h);
}

Polyhedron PolyCone::as_polyhedron() const {
  VRep v;
  v.points.push_back(VecR::Zero(ambient_dim_));
  v.rays = generators_;
  return Polyhedron::from_v(v);
}

double boundary_angle(const PolyCone& c, const VecD& u) {
  if (u.size() != c.ambient_dim()) throw std::invalid_argument("boundary_angle: bad dimension");
  const double norm = u.norm();
  if (norm == 0.0) throw std::invalid_argument("boundary_angle: zero direction");
  const VecD uhat = u / norm;

  // Interiority in C°: strictly negative products against the generators.
  for (const VecR& g : c.generators()) {
    if (uhat.dot(to_double(g)) >= 0) {
      throw std::invalid_argument("boundary_angle: direction not interior to the polar cone");
    }
  }

  const Polyhedron polar_poly = c.polar().as_polyhedron();
  const FaceLattice& lat = polar_poly.lattice();
  std::vector<VecD> polar_facets;  // facet normals of C° = generators of C
  for (const VecR& g : c.generators()) polar_facets.push_back(to_double(g));

  double best = std::numeric_limits<double>::infinity();
  for (const Face& f : lat.faces) {
    if (f.dim < 1) continue;  // the apex
    Eigen::MatrixXd b(uhat.size(), static_cast<Eigen::Index>(f.rays.size()));
    for (size_t j = 0; j < f.rays.size(); ++j) {
      b.col(static_cast<Eigen::Index>(j)) = to_double(f.rays[j]);
    }
    const VecD lambda = b.colPivHouseholderQr().solve(uhat);
    const VecD p = b * lambda;
    if (p.norm() < 1e-12) continue;  // apex projection; never the minimizer
    bool inside = true;
    for (const VecD& w : polar_facets) {
      if (p.dot(w) > 1e-12 * p.norm() * w.norm()) {
        inside = false;
        break;
      }
    }
    if (!inside) continue;
    const VecD phat = p / p.norm();
    const double chord = (uhat - phat).norm();
    best = std::min(best, 2.0 * std::asin(std::min(1.0, chord / 2.0)));
  }
  if (!std::isfinite(best)) {
    throw std::logic_error("boundary_angle: no face admitted a projection");
  }
  return best;
}

std::function<bool(const VecD&)> angular_depth_at_least(const PolyCone& c, double tau) {
  // Copy the cone into the closure so the predicate owns its data.
  return [cone = c, tau](const VecD& u) {
    for (const VecR& g : cone.generators()) {
      if (u.dot(to_double(g)) >= 0) return false;
    }
    return boundary_angle(cone, u) >= tau;
  };
}

}  // namespace pcone
