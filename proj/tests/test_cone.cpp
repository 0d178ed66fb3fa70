#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcone/cone.hpp"

#include <cmath>
#include <random>

using namespace pcone;

namespace {

PolyCone orthant(int n) {
  std::vector<VecR> gens;
  for (int i = 0; i < n; ++i) {
    VecR e = VecR::Zero(n);
    e[i] = 1;
    gens.push_back(e);
  }
  return PolyCone::from_generators(gens);
}

VecD dvec(std::initializer_list<double> xs) {
  VecD v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

double angle_between(const VecD& a, const VecD& b) {
  const VecD ah = a / a.norm(), bh = b / b.norm();
  return 2.0 * std::asin(std::min(1.0, (ah - bh).norm() / 2.0));
}

PolyCone random_pointed_cone(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> coord(-3, 3);
  for (;;) {
    std::vector<VecR> gens;
    const int count = n + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) {
      VecR g(n);
      g[0] = 1 + static_cast<int>(rng() % 3);  // open halfspace => pointed
      for (int j = 1; j < n; ++j) g[j] = coord(rng);
      gens.push_back(g);
    }
    try {
      return PolyCone::from_generators(gens);
    } catch (const ConeError&) {
      continue;
    }
  }
}

// Brute-force boundary distance: minimum angle to densely sampled
// directions on the proper faces of the polar cone.
double boundary_angle_oracle(const PolyCone& c, const VecD& u) {
  const PolyCone polar = c.polar();
  const Polyhedron polar_poly = polar.as_polyhedron();
  const FaceLattice& lat = polar_poly.lattice();
  double best = std::numeric_limits<double>::infinity();
  for (const Face& f : lat.faces) {
    if (f.dim < 1) continue;
    std::vector<VecD> rays;
    for (const VecR& r : f.rays) {
      VecD d = to_double(r);
      rays.push_back(d / d.norm());
    }
    if (rays.size() == 1) {
      best = std::min(best, angle_between(u, rays[0]));
      continue;
    }
    const int steps = 5000 / static_cast<int>(rays.size() - 1);
    for (size_t k = 0; k + 1 < rays.size(); ++k) {
      for (int s = 0; s <= steps; ++s) {
        const double t = static_cast<double>(s) / steps;
        const VecD dir = (1.0 - t) * rays[k] + t * rays[k + 1];
        best = std::min(best, angle_between(u, dir));
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("cone construction and canonical storage") {
  const PolyCone c = orthant(2);
  REQUIRE(c.generators().size() == 2);
  CHECK(c.generators()[0] == rat_vec({"0", "1"}));
  CHECK(c.generators()[1] == rat_vec({"1", "0"}));
  REQUIRE(c.facet_normals().size() == 2);
  CHECK(c.facet_normals()[0] == rat_vec({"-1", "0"}));
  CHECK(c.facet_normals()[1] == rat_vec({"0", "-1"}));

  // Redundant generators are dropped.
  const PolyCone r = PolyCone::from_generators(
      {rat_vec({"1", "0"}), rat_vec({"0", "1"}), rat_vec({"1", "1"}), rat_vec({"2", "3"})});
  CHECK(r.same_cone_as(c));

  CHECK_THROWS_AS(PolyCone::from_generators({rat_vec({"1", "0"}), rat_vec({"-1", "0"}),
                                             rat_vec({"0", "1"})}),
                  ConeError);
  CHECK_THROWS_AS(PolyCone::from_generators({rat_vec({"1", "0", "0"}), rat_vec({"0", "1", "0"})}),
                  ConeError);
  try {
    PolyCone::from_generators({rat_vec({"1", "0"}), rat_vec({"-1", "1"}), rat_vec({"-1", "-1"})});
    CHECK(false);
  } catch (const ConeError& e) {
    CHECK(e.code == ConeError::Code::NotPointed);
  }
}

TEST_CASE("polar cone") {
  const PolyCone c2 = orthant(2);
  const PolyCone p2 = c2.polar();
  REQUIRE(p2.generators().size() == 2);
  CHECK(p2.generators()[0] == rat_vec({"-1", "0"}));
  CHECK(p2.generators()[1] == rat_vec({"0", "-1"}));

  const PolyCone c3 = orthant(3);
  const PolyCone p3 = c3.polar();
  for (const VecR& g : p3.generators()) {
    CHECK(g.sum() == -1);  // negative orthant generators
  }

  const PolyCone wedge = PolyCone::from_generators({rat_vec({"1", "0"}), rat_vec({"1", "1"})});
  const PolyCone wp = wedge.polar();
  REQUIRE(wp.generators().size() == 2);
  CHECK(wp.generators()[0] == rat_vec({"-1", "1"}));
  CHECK(wp.generators()[1] == rat_vec({"0", "-1"}));
  // Definitional oracle: every generator pair has non-positive product.
  for (const VecR& g : wedge.generators()) {
    for (const VecR& h : wp.generators()) CHECK(dot(g, h) <= 0);
  }

  std::mt19937_64 rng(20240819);
  for (int trial = 0; trial < 25; ++trial) {
    const PolyCone c = random_pointed_cone(rng, 2 + trial % 3);
    const PolyCone cp = c.polar();
    CHECK(cp.polar().same_cone_as(c));
    for (const VecR& g : c.generators()) {
      for (const VecR& h : cp.generators()) CHECK(dot(g, h) <= 0);
    }
  }
}

TEST_CASE("reference direction") {
  const PolyCone c2 = orthant(2);
  CHECK(c2.reference_direction() == rat_vec({"1", "1"}));
  const VecD u2 = c2.unit_reference_direction();
  CHECK(u2[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(u2[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));

  const PolyCone c3 = orthant(3);
  CHECK(c3.reference_direction() == rat_vec({"1", "1", "1"}));

  const PolyCone wedge = PolyCone::from_generators({rat_vec({"1", "0"}), rat_vec({"1", "1"})});
  CHECK(wedge.reference_direction() == rat_vec({"2", "1"}));

  // Obtuse cone: the generator sum fails interiority, the fallback kicks in.
  const PolyCone obtuse = PolyCone::from_generators({rat_vec({"1", "0"}), rat_vec({"-5", "1"})});
  const VecR v = obtuse.reference_direction();
  CHECK(obtuse.strictly_contains(v));
  for (const VecR& g : obtuse.generators()) CHECK(dot(v, g) > 0);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const PolyCone c = random_pointed_cone(rng, 2 + trial % 3);
    const VecR r = c.reference_direction();
    CHECK(c.strictly_contains(r));
    for (const VecR& g : c.generators()) CHECK(dot(r, g) > 0);
  }
}

TEST_CASE("truncation") {
  const PolyCone c = orthant(2);

  const Polyhedron tri = c.truncate_exact(Rat(1));
  CHECK(tri.bounded());
  REQUIRE(tri.v().points.size() == 3);
  CHECK(tri.v().points[0] == rat_vec({"0", "0"}));
  CHECK(tri.v().points[1] == rat_vec({"0", "1"}));
  CHECK(tri.v().points[2] == rat_vec({"1", "0"}));

  // Metric form: t = 1/sqrt(2) puts the cut through (1,0) and (0,1).
  const Polyhedron trim = c.truncate(1.0 / std::sqrt(2.0));
  REQUIRE(trim.v().points.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    const VecD got = to_double(trim.v().points[i]);
    const VecD want = to_double(tri.v().points[i]);
    CHECK((got - want).norm() < 1e-9);
  }

  // Exact volume homogeneity of the truncation ladder.
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 3;
    const PolyCone rc = random_pointed_cone(rng, n);
    const Rat v1 = volume_exact(rc.truncate_exact(Rat(3)));
    const Rat v2 = volume_exact(rc.truncate_exact(Rat(6)));
    Rat factor = 1;
    for (int i = 0; i < n; ++i) factor *= 2;
    CHECK(v2 == factor * v1);
    // Nesting: every vertex of the smaller truncation lies in the larger.
    const Polyhedron big = rc.truncate_exact(Rat(6));
    const Polyhedron small = rc.truncate_exact(Rat(3));
    for (const VecR& p : small.v().points) CHECK(big.contains(p));
    CHECK(rc.truncate_exact(Rat(5)).bounded());
  }

  CHECK_THROWS_AS(c.truncate(0.0), std::invalid_argument);
  CHECK_THROWS_AS(c.truncate(-1.0), std::invalid_argument);

  // The exact section of the orthant at height 1 is the segment (1,0)-(0,1).
  const Polyhedron sec = c.section_exact(Rat(1));
  CHECK(sec.dim() == 1);
  REQUIRE(sec.v().points.size() == 2);
  CHECK(sec.v().points[0] == rat_vec({"0", "1"}));
  CHECK(sec.v().points[1] == rat_vec({"1", "0"}));
}

TEST_CASE("boundary angle in the plane") {
  const PolyCone c = orthant(2);
  const double s2 = std::sqrt(2.0) / 2;
  CHECK(boundary_angle(c, dvec({-s2, -s2})) == doctest::Approx(M_PI / 4).epsilon(1e-12));

  for (double theta : {0.1, 0.3, 0.7, 1.1, 1.4}) {
    const VecD u = dvec({-std::sin(theta), -std::cos(theta)});
    CHECK(boundary_angle(c, u) ==
          doctest::Approx(std::min(theta, M_PI / 2 - theta)).epsilon(1e-9));
  }

  CHECK_THROWS_AS(boundary_angle(c, dvec({1.0, 1.0})), std::invalid_argument);
  CHECK_THROWS_AS(boundary_angle(c, dvec({-1.0, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS(boundary_angle(c, dvec({0.0, 0.0})), std::invalid_argument);
}

TEST_CASE("boundary angle in space") {
  const PolyCone c = orthant(3);
  const double s3 = 1.0 / std::sqrt(3.0);
  CHECK(boundary_angle(c, dvec({-s3, -s3, -s3})) ==
        doctest::Approx(std::asin(s3)).epsilon(1e-9));
}

TEST_CASE("boundary angle matches the sampling oracle on random cones") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 2;
    const PolyCone c = random_pointed_cone(rng, n);
    // Probe directions: perturbations of the polar's interior direction.
    const VecD axis = -c.polar().unit_reference_direction();
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    for (int probe = 0; probe < 5; ++probe) {
      VecD u = -axis;
      for (int i = 0; i < n; ++i) u[i] += jitter(rng);
      u.normalize();
      bool interior = true;
      for (const VecR& g : c.generators()) {
        if (u.dot(to_double(g)) >= -1e-9) interior = false;
      }
      if (!interior) continue;
      const double fast = boundary_angle(c, u);
      const double slow = boundary_angle_oracle(c, u);
      CHECK(std::abs(fast - slow) < 1e-3);
      CHECK(fast > 0.0);
    }
  }
}

TEST_CASE("boundary angle decays toward the boundary") {
  const PolyCone c = orthant(3);
  // Great-circle path from the deep axis toward the boundary direction -e1.
  const VecD deep = dvec({-1, -1, -1}).normalized();
  const VecD target = dvec({-1, 0, 0});
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 10; ++k) {
    const double t = 0.9 + 0.01 * k;  // the last stretch of the path
    VecD u = ((1 - t) * deep + t * target).normalized();
    const double d = boundary_angle(c, u);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 0.1);
}

TEST_CASE("angular depth predicate") {
  const PolyCone c = orthant(2);
  const auto deep8 = angular_depth_at_least(c, M_PI / 8);
  const double s2 = std::sqrt(2.0) / 2;
  CHECK(deep8(dvec({-s2, -s2})));

  const double th = 10.0 * M_PI / 180.0;
  CHECK(!deep8(dvec({-std::sin(th), -std::cos(th)})));

  // Directions outside the polar interior are rejected outright.
  CHECK(!deep8(dvec({1.0, 0.0})));
  CHECK(!deep8(dvec({-1.0, 0.0})));

  // A threshold above the maximal depth empties the set.
  const auto impossible = angular_depth_at_least(c, M_PI / 4 + 0.01);
  for (double theta = 0.05; theta < M_PI / 2; theta += 0.07) {
    CHECK(!impossible(dvec({-std::sin(theta), -std::cos(theta)})));
  }
}
