#include "pcone/identities.hpp"

namespace pcone {

namespace {

class Recorder {
 public:
  explicit Recorder(IdentityCheck& check) : check_(check) {}
  void record(bool ok, const std::string& what) {
    ++check_.cases;
    if (!ok) {
      ++check_.failures;
      if (check_.detail.empty()) check_.detail = what;
    }
  }

 private:
  IdentityCheck& check_;
};

bool hrep_equal(const HRep& a, const HRep& b) {
  if (a.halfspaces.size() != b.halfspaces.size()) return false;
  for (std::size_t i = 0; i < a.halfspaces.size(); ++i) {
    if (!(a.halfspaces[i].normal == b.halfspaces[i].normal)) return false;
    if (a.halfspaces[i].offset != b.halfspaces[i].offset) return false;
  }
  return true;
}

bool vector_lists_equal(const std::vector<VecR>& a, const std::vector<VecR>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

bool faces_equal(const Face& a, const Face& b) {
  return vector_lists_equal(a.vertices, b.vertices) && vector_lists_equal(a.rays, b.rays);
}

/// A random point interior to the cone: a strictly positive integer
/// combination of the generators.
VecR interior_point(std::mt19937_64& rng, const PolyCone& c) {
  std::uniform_int_distribution<int> coeff(1, 5);
  VecR x = VecR::Zero(c.ambient_dim());
  for (const VecR& g : c.generators()) {
    const Rat lambda = Rat(coeff(rng));
    x += (g * lambda).eval();
  }
  return x;
}

/// Generators of the polar of the halfspace-intersection cone given in h,
/// as rays plus (doubled) lineality directions.
std::vector<VecR> polar_generators_of_hrep_cone(const HRep& h, int dim) {
  std::vector<VecR> normals;
  for (const Halfspace& hs : h.halfspaces) normals.push_back(hs.normal);
  const ConeDescription d = dual_description(normals, dim);
  std::vector<VecR> gens;
  std::vector<VecR> inner = d.rays;
  for (const VecR& l : d.lineality) {
    inner.push_back(l);
    inner.push_back((-l).eval());
  }
  const ConeDescription p = dual_description(inner, dim);
  gens = p.rays;
  for (const VecR& l : p.lineality) {
    gens.push_back(l);
    gens.push_back((-l).eval());
  }
  return gens;
}

}  // namespace

std::vector<IdentityCheck> identity_battery(const std::vector<PseudoCone>& corpus,
                                            unsigned long long seed, int samples) {
  std::mt19937_64 rng(seed);

  IdentityCheck involution{"copolar-involution", 0, 0, ""};
  IdentityCheck recession{"recession-duality", 0, 0, ""};
  IdentityCheck meet{"copolar-intersection", 0, 0, ""};
  IdentityCheck join{"copolar-union", 0, 0, ""};
  IdentityCheck cut{"copolar-halfspace-cut", 0, 0, ""};
  IdentityCheck radial_support{"radial-support-duality", 0, 0, ""};
  IdentityCheck boundary{"boundary-criterion", 0, 0, ""};
  IdentityCheck crucial{"crucial-pair-swap", 0, 0, ""};
  IdentityCheck dimension{"conjugate-dimension", 0, 0, ""};
  IdentityCheck conj_involution{"conjugate-involution", 0, 0, ""};
  IdentityCheck reversal{"inclusion-reversal", 0, 0, ""};
  IdentityCheck bijection{"class-bijection", 0, 0, ""};
  IdentityCheck normal_angle{"normal-angle-polar", 0, 0, ""};
  IdentityCheck conj_normal{"conjugate-normal-cone", 0, 0, ""};
  IdentityCheck conj_angle{"conjugate-angle-cone", 0, 0, ""};
  IdentityCheck conj_tangent{"conjugate-tangent-cone", 0, 0, ""};

  int index = 0;
  for (const PseudoCone& k : corpus) {
    const std::string tag = "instance " + std::to_string(index++);
    const int n = k.ambient_dim();
    const PseudoCone kstar = copolar(k);

    {
      Recorder r(involution);
      const PseudoCone back = copolar(kstar);
      r.record(hrep_equal(back.h(), k.h()) && back.cone().same_cone_as(k.cone()), tag);
    }
    {
      Recorder r(recession);
      const PolyCone polar = k.cone().polar();
      r.record(vector_lists_equal(kstar.v().rays, polar.generators()) &&
                   kstar.cone().same_cone_as(polar),
               tag);
    }
    {
      // Binary identities against a random partner over the same cone.
      const PseudoCone partner = random_pseudocone(rng, k.cone());
      const PseudoCone partner_star = copolar(partner);
      Recorder rm(meet);
      const PseudoCone lhs_meet = copolar(intersect(k, partner));
      const PseudoCone rhs_meet = conv_union(kstar, partner_star);
      rm.record(lhs_meet.body().same_set_as(rhs_meet.body()) &&
                    lhs_meet.cone().same_cone_as(rhs_meet.cone()),
                tag);
      Recorder rj(join);
      const PseudoCone lhs_join = copolar(conv_union(k, partner));
      const PseudoCone rhs_join = intersect(kstar, partner_star);
      rj.record(lhs_join.body().same_set_as(rhs_join.body()) &&
                    lhs_join.cone().same_cone_as(rhs_join.cone()),
                tag);
    }
    {
      // Zero-offset halfspace cut: u = -(a point of K) keeps the cut
      // nonempty; the result must equal the copolar of the cut set.
      Recorder r(cut);
      const VecR u = (-k.v().points.front()).eval();
      const PseudoCone lhs = copolar_halfspace0(k, u);
      HRep cut_h = k.h();
      cut_h.halfspaces.push_back({u, Rat(0)});
      const PolyCone cut_cone = lhs.cone().polar();
      const PseudoCone cut_set = PseudoCone::validate(cut_cone, cut_h);
      const PseudoCone rhs = copolar(cut_set);
      r.record(lhs.body().same_set_as(rhs.body()) && lhs.cone().same_cone_as(rhs.cone()), tag);
      // A facet normal of the cone adjoins a ray that is already present.
      const VecR w = k.cone().facet_normals().front();
      const PseudoCone same = copolar_halfspace0(k, w);
      r.record(same.body().same_set_as(kstar.body()) && same.cone().same_cone_as(kstar.cone()),
               tag + " (facet normal)");
    }
    {
      Recorder rr(radial_support);
      Recorder rb(boundary);
      for (int s = 0; s < samples; ++s) {
        const VecR x = interior_point(rng, k.cone());
        const Rat rho = radial(k, x);
        const SupportValue h = support(kstar, x);
        rr.record(!h.unbounded && rho * h.value == Rat(-1), tag);
        // rho * x lies on the boundary inside the cone's interior: the
        // support of the copolar there is exactly -1; off the boundary it
        // is not.
        const VecR y = (x * rho).eval();
        const SupportValue hy = support(kstar, y);
        rb.record(!hy.unbounded && hy.value == Rat(-1), tag);
        const SupportValue h2 = support(kstar, (y * 2).eval());
        rb.record(!h2.unbounded && h2.value == Rat(-2), tag);
        const SupportValue hhalf = support(kstar, (y / 2).eval());
        rb.record(!hhalf.unbounded && hhalf.value == Rat(-1) / 2, tag);
      }
    }
    {
      Recorder r(crucial);
      for (const CrucialPair& cp : crucial_pairs(k)) {
        r.record(is_crucial_pair(kstar, cp.normal, cp.point), tag);
      }
    }

    // Face-level checks.
    const FaceLattice& lat = k.lattice();
    const FaceLattice& dual = kstar.lattice();
    const std::vector<FaceDuality> report = classify_faces(k, kstar);
    const std::vector<FaceDuality> dual_report = classify_faces(kstar, k);

    {
      Recorder rd(dimension);
      Recorder ri(conj_involution);
      Recorder rb2(bijection);
      for (std::size_t i = 0; i < lat.faces.size(); ++i) {
        const Face& f = lat.faces[i];
        const FaceDuality& d = report[i];
        if (d.cls == FaceClass::UnboundedBoundary) {
          rd.record(!d.conjugate.has_value(), tag + " (unbounded boundary face)");
          continue;
        }
        rd.record(d.conjugate.has_value() &&
                      f.dim + dual.faces[*d.conjugate].dim == n - 1,
                  tag);
        if (!d.conjugate) continue;
        const Face& fhat = dual.faces[*d.conjugate];
        // Involution: the conjugate of the conjugate is the original face.
        const std::optional<int> back = conjugate_face_index(kstar, k, fhat);
        ri.record(back.has_value() && faces_equal(lat.faces[i], lat.faces[*back]) &&
                      static_cast<std::size_t>(*back) == i,
                  tag);
        // Class map: bounded-interior is self-dual; bounded-boundary and
        // unbounded-interior swap.
        const FaceClass expected =
            d.cls == FaceClass::BoundedInterior    ? FaceClass::BoundedInterior
            : d.cls == FaceClass::BoundedBoundary  ? FaceClass::UnboundedInterior
                                                   : FaceClass::BoundedBoundary;
        rb2.record(dual_report[*d.conjugate].cls == expected, tag);
      }
      // Counting bijections between the classes on both sides.
      const auto count = [](const std::vector<FaceDuality>& rep, FaceClass c) {
        int m = 0;
        for (const FaceDuality& d : rep) {
          if (d.cls == c) ++m;
        }
        return m;
      };
      rb2.record(count(report, FaceClass::BoundedInterior) ==
                     count(dual_report, FaceClass::BoundedInterior),
                 tag + " (count)");
      rb2.record(count(report, FaceClass::BoundedBoundary) ==
                     count(dual_report, FaceClass::UnboundedInterior),
                 tag + " (count)");
      rb2.record(count(report, FaceClass::UnboundedInterior) ==
                     count(dual_report, FaceClass::BoundedBoundary),
                 tag + " (count)");
    }
    {
      Recorder r(reversal);
      for (std::size_t i = 0; i < lat.faces.size(); ++i) {
        for (std::size_t j = 0; j < lat.faces.size(); ++j) {
          if (i == j || !FaceLattice::subface(lat.faces[i], lat.faces[j])) continue;
          if (!report[i].conjugate || !report[j].conjugate) continue;
          r.record(FaceLattice::subface(dual.faces[*report[j].conjugate],
                                        dual.faces[*report[i].conjugate]),
                   tag);
        }
      }
    }
    {
      Recorder rn(normal_angle);
      Recorder rcn(conj_normal);
      Recorder rca(conj_angle);
      Recorder rct(conj_tangent);
      for (std::size_t i = 0; i < lat.faces.size(); ++i) {
        const Face& f = lat.faces[i];
        const FaceCones fc = face_cones(k, f);
        // N = (angle cone)°, with the polar computed independently by two
        // double-description passes.
        std::vector<VecR> normal_gens = fc.normal_cone.v().rays;
        rn.record(same_cone(normal_gens, polar_generators_of_hrep_cone(fc.angle_cone, n), n),
                  tag);
        if (!report[i].conjugate) continue;
        const Face& fhat = dual.faces[*report[i].conjugate];
        const FaceCones dual_fc = face_cones(kstar, fhat);
        // pos F from the face's own generators.
        std::vector<VecR> pos_f = f.vertices;
        for (const VecR& ray : f.rays) pos_f.push_back(ray);
        rcn.record(same_cone(dual_fc.normal_cone.v().rays, pos_f, n), tag);
        // Angle cone of the conjugate = (pos F)°.
        HRep pos_f_polar;
        for (const VecR& g : pos_f) pos_f_polar.halfspaces.push_back({g, Rat(0)});
        rca.record(same_region(dual_fc.angle_cone, pos_f_polar), tag);
        // Tangent cone of the conjugate = copolar of the face's shadow.
        HRep shadow_star;
        for (const VecR& vtx : f.vertices) shadow_star.halfspaces.push_back({vtx, Rat(-1)});
        for (const VecR& ray : f.rays) shadow_star.halfspaces.push_back({ray, Rat(0)});
        rct.record(same_region(dual_fc.tangent_cone, shadow_star), tag);
      }
    }
  }

  return {involution, recession,       meet,     join,      cut,          radial_support,
          boundary,   crucial,         dimension, conj_involution, reversal, bijection,
          normal_angle, conj_normal,   conj_angle, conj_tangent};
}

}  // namespace pcone
