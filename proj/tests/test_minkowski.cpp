#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcone/instances.hpp"
#include "pcone/measure.hpp"
#include "pcone/solver.hpp"

#include <cmath>
#include <random>

using namespace pcone;

namespace {

VecD dvec(std::initializer_list<double> vals) {
  VecD v(static_cast<int>(vals.size()));
  int i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

// { x in R^2_+ : x1 + x2 >= 1 }
HRep k1_hrep() {
  HRep h;
  h.halfspaces.push_back({rat_vec({"-1", "-1"}), Rat(-1)});
  h.halfspaces.push_back({rat_vec({"-1", "0"}), Rat(0)});
  h.halfspaces.push_back({rat_vec({"0", "-1"}), Rat(0)});
  return h;
}

PseudoCone k1() { return PseudoCone::validate(orthant_cone(2), k1_hrep()); }

// { x in R^2_+ : 2x1 + x2 >= 2, x1 + 2x2 >= 2 }: complement area 4/3, with
// boundary heights along (1,1) ranging over [4/3, 2].
PseudoCone two_facet_wedge() {
  HRep h;
  h.halfspaces.push_back({rat_vec({"-2", "-1"}), Rat(-2)});
  h.halfspaces.push_back({rat_vec({"-1", "-2"}), Rat(-2)});
  h.halfspaces.push_back({rat_vec({"-1", "0"}), Rat(0)});
  h.halfspaces.push_back({rat_vec({"0", "-1"}), Rat(0)});
  return PseudoCone::validate(orthant_cone(2), h);
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("atomic measures validate, merge, and order their atoms") {
  const PolyCone c = orthant_cone(2);
  const double s = 1.0 / std::sqrt(2.0);

  AtomicMeasure m(c, {{dvec({-1, -1}), 2.0},            // gets normalized
                      {dvec({-s, -s}), 1.0},            // duplicate direction: merged
                      {dvec({-2, -1}), 0.5}});
  CHECK(m.size() == 2);
  CHECK(m.total_mass() == doctest::Approx(3.5));
  // sorted lexicographically by direction
  CHECK(m.atoms()[0].dir[0] == doctest::Approx(-2 / std::sqrt(5.0)));
  CHECK(m.atoms()[0].weight == doctest::Approx(0.5));
  CHECK(m.atoms()[1].dir[0] == doctest::Approx(-s));
  CHECK(m.atoms()[1].weight == doctest::Approx(3.0));
  for (const auto& a : m.atoms()) CHECK(a.dir.norm() == doctest::Approx(1.0));

  CHECK(AtomicMeasure(c, {}).empty());
  CHECK_THROWS_AS(AtomicMeasure(c, {{dvec({-1, -1}), 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(AtomicMeasure(c, {{dvec({-1, -1}), -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(AtomicMeasure(c, {{dvec({0, 0}), 1.0}}), std::invalid_argument);
  // boundary of the polar cone, and outside it
  CHECK_THROWS_AS(AtomicMeasure(c, {{dvec({-1, 0}), 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(AtomicMeasure(c, {{dvec({1, 1}), 1.0}}), std::invalid_argument);
}

TEST_CASE("facet-area measure of the canonical examples") {
  const double s2 = std::sqrt(2.0);

  const AtomicMeasure m1 = surface_area_measure(k1());
  REQUIRE(m1.size() == 1);
  CHECK(m1.atoms()[0].dir[0] == doctest::Approx(-1 / s2));
  CHECK(m1.atoms()[0].dir[1] == doctest::Approx(-1 / s2));
  CHECK(m1.atoms()[0].weight == doctest::Approx(s2));

  // A translate of the cone has only boundary-normal facets: empty measure.
  HRep sh;
  sh.halfspaces.push_back({rat_vec({"-1", "0"}), Rat(-1)});
  sh.halfspaces.push_back({rat_vec({"0", "-1"}), Rat(-1)});
  const PseudoCone shifted = PseudoCone::validate(orthant_cone(2), sh);
  CHECK(surface_area_measure(shifted).empty());

  // Simplex cut in R^3: one facet, the triangle with vertices e1, e2, e3.
  HRep h3;
  h3.halfspaces.push_back({rat_vec({"-1", "-1", "-1"}), Rat(-1)});
  for (int i = 0; i < 3; ++i) {
    VecR u = VecR::Zero(3);
    u[i] = -1;
    h3.halfspaces.push_back({u, Rat(0)});
  }
  const AtomicMeasure m3 = surface_area_measure(PseudoCone::validate(orthant_cone(3), h3));
  REQUIRE(m3.size() == 1);
  const double s3 = std::sqrt(3.0);
  CHECK(m3.atoms()[0].dir[0] == doctest::Approx(-1 / s3));
  CHECK(m3.atoms()[0].weight == doctest::Approx(s3 / 2));  // area of the triangle

  const PseudoCone wedge = two_facet_wedge();
  const AtomicMeasure mw = surface_area_measure(wedge);
  REQUIRE(mw.size() == 2);
  CHECK(mw.atoms()[0].weight == doctest::Approx(2 * std::sqrt(5.0) / 3));
  CHECK(mw.atoms()[1].weight == doctest::Approx(2 * std::sqrt(5.0) / 3));
}

TEST_CASE("complement volume: exact values, both routes, and the infinite case") {
  const CoconvexVolume v1 = coconvex_volume(k1());
  CHECK(v1.finite);
  CHECK(v1.exact == Rat(1) / 2);
  CHECK(v1.triangulation == doctest::Approx(0.5));
  CHECK(v1.divergence == doctest::Approx(0.5));

  HRep h2;  // 2 * K1
  h2.halfspaces.push_back({rat_vec({"-1", "-1"}), Rat(-2)});
  h2.halfspaces.push_back({rat_vec({"-1", "0"}), Rat(0)});
  h2.halfspaces.push_back({rat_vec({"0", "-1"}), Rat(0)});
  const CoconvexVolume v2 = coconvex_volume(PseudoCone::validate(orthant_cone(2), h2));
  CHECK(v2.exact == Rat(2));
  CHECK(v2.divergence == doctest::Approx(2.0));

  const CoconvexVolume vw = coconvex_volume(two_facet_wedge());
  CHECK(vw.exact == Rat(4) / 3);
  CHECK(vw.divergence == doctest::Approx(4.0 / 3));

  // A strict halfspace with a boundary normal leaves an unbounded slab.
  HRep hb = k1_hrep();
  hb.halfspaces.push_back({rat_vec({"-1", "0"}), Rat("-1/2")});
  const CoconvexVolume vb = coconvex_volume(PseudoCone::validate(orthant_cone(2), hb));
  CHECK_FALSE(vb.finite);
  CHECK(std::isinf(vb.triangulation));
  CHECK(std::isinf(vb.divergence));
}

TEST_CASE("the two volume routes agree to 1e-9 on random instances") {
  std::mt19937_64 rng(20240817);
  for (int n : {2, 3}) {
    for (int rep = 0; rep < 6; ++rep) {
      const PolyCone c = (rep % 2 == 0) ? orthant_cone(n) : random_cone(rng, n, n + 2);
      const PseudoCone k = random_pseudocone(rng, c);
      const CoconvexVolume cv = coconvex_volume(k);
      REQUIRE(cv.finite);
      CHECK(rel_err(cv.divergence, cv.triangulation) <= 1e-9);
    }
  }
}

TEST_CASE("rebuilding from a truncation: collapse above, infinite volume below") {
  const PseudoCone k0 = two_facet_wedge();
  REQUIRE(coconvex_volume(k0).finite);

  // Above the largest boundary height the rebuild collapses back to the set.
  for (const Rat& s : {Rat(2), Rat(3), Rat(10)}) {
    const PseudoCone back = truncation_plus_cone(k0, s);
    CHECK(back.body().same_set_as(k0.body()));
  }

  // Below it the rebuild misses a boundary slab of the cone: the complement
  // volume turns infinite while the truncation distance to k0 shrinks.
  double prev_dist = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 6; ++i) {
    const Rat s = Rat(2) - Rat(2, 3) / Rat(1 << (i - 1));
    const PseudoCone ki = truncation_plus_cone(k0, s);
    CHECK_FALSE(coconvex_volume(ki).finite);
    const double dist = truncation_distance(ki, k0, 4.0);
    CHECK(dist < prev_dist);
    prev_dist = dist;
  }
  // the gap closes like sqrt(2) * (2 - s)
  CHECK(prev_dist == doctest::Approx(std::sqrt(2.0) / 48));

  // K1's boundary heights stop at 1, so even a height-1 rebuild collapses.
  CHECK(truncation_plus_cone(k1(), Rat(1)).body().same_set_as(k1().body()));

  CHECK_THROWS_AS(truncation_plus_cone(k0, Rat(1)), std::invalid_argument);
}

TEST_CASE("dilatation inequality report") {
  const PseudoCone k = k1();
  const double s2 = std::sqrt(2.0);

  // Equality case: the set is exactly the complement of the unit cap.
  const DilatationReport r1 = dilatation_inequality_check(k, dvec({-1, -1}));
  CHECK(r1.hbar == doctest::Approx(1 / s2));
  CHECK(r1.cap_volume == doctest::Approx(1.0));
  CHECK(r1.coconvex == doctest::Approx(0.5));
  CHECK(r1.holds);
  CHECK(std::pow(r1.hbar, 2) * r1.cap_volume == doctest::Approx(r1.coconvex));
  CHECK(r1.depth == doctest::Approx(M_PI / 4));
  CHECK(r1.ratio == doctest::Approx((1 / s2) / std::sqrt(M_PI / 4)));

  // Strict case at a slanted direction.
  const DilatationReport r2 = dilatation_inequality_check(k, dvec({-2, -1}));
  CHECK(r2.hbar == doctest::Approx(1 / std::sqrt(5.0)));
  CHECK(r2.cap_volume == doctest::Approx(1.25));
  CHECK(r2.holds);
  CHECK(std::pow(r2.hbar, 2) * r2.cap_volume == doctest::Approx(0.25));

  CHECK_THROWS_AS(dilatation_inequality_check(k, dvec({-1, 0})), std::invalid_argument);
  HRep hb = k1_hrep();
  hb.halfspaces.push_back({rat_vec({"-1", "0"}), Rat("-1/2")});
  const PseudoCone inf_k = PseudoCone::validate(orthant_cone(2), hb);
  CHECK_THROWS_AS(dilatation_inequality_check(inf_k, dvec({-1, -1})), std::invalid_argument);
}

TEST_CASE("dilatation inequality holds across a random corpus") {
  std::mt19937_64 rng(99);
  for (int n : {2, 3}) {
    for (int rep = 0; rep < 4; ++rep) {
      const PolyCone c = (rep % 2 == 0) ? orthant_cone(n) : random_cone(rng, n, n + 1);
      const PseudoCone k = random_pseudocone(rng, c);
      // probe along every facet normal and a blend of them
      VecD blend = VecD::Zero(n);
      for (const auto& hs : k.h().halfspaces) {
        if (!(hs.offset < 0)) continue;
        const VecD u = to_double(hs.normal);
        blend += u / u.norm();
        const DilatationReport r = dilatation_inequality_check(k, u);
        CHECK(r.holds);
        CHECK(r.ratio > 0);
      }
      CHECK(dilatation_inequality_check(k, blend).holds);
    }
  }
}

TEST_CASE("cut evaluation: exact areas match the volume gradient") {
  const PolyCone c = orthant_cone(2);
  const double s2 = std::sqrt(2.0);
  const std::vector<VecD> dirs = {dvec({-1 / s2, -1 / s2})};

  const CutEvaluation e = evaluate_cut(c, dirs, {1.0});
  CHECK(e.volume == doctest::Approx(1.0));  // triangle with legs sqrt(2)
  REQUIRE(e.areas.size() == 1);
  CHECK(e.areas[0] == doctest::Approx(2.0));  // facet length

  // finite differences against the exact areas, in 2d and 3d
  std::mt19937_64 rng(7);
  for (int n : {2, 3}) {
    const PolyCone cone = orthant_cone(n);
    const PseudoCone k = random_pseudocone(rng, cone, 5);
    const AtomicMeasure phi = surface_area_measure(k);
    std::vector<VecD> ds;
    for (const auto& a : phi.atoms()) ds.push_back(a.dir);
    std::vector<double> h(ds.size(), 1.0);
    for (std::size_t i = 0; i < ds.size(); ++i) h[i] = 0.8 + 0.1 * static_cast<double>(i);
    const CutEvaluation base = evaluate_cut(cone, ds, h);
    const double delta = 1e-6;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      std::vector<double> hp = h, hm = h;
      hp[i] += delta;
      hm[i] -= delta;
      const double fd =
          (evaluate_cut(cone, ds, hp).volume - evaluate_cut(cone, ds, hm).volume) / (2 * delta);
      if (base.areas[i] > 0) CHECK(rel_err(fd, base.areas[i]) <= 1e-4);
    }
  }

  // a dominated direction carries no facet
  const CutEvaluation redundant =
      evaluate_cut(c, {dvec({-1 / s2, -1 / s2}), dvec({-2 / std::sqrt(5.0), -1 / std::sqrt(5.0)})},
                   {1.0, 0.1});
  CHECK(redundant.areas[1] == 0.0);

  CHECK_THROWS_AS(evaluate_cut(c, {dvec({-1, -1})}, {1.0}), std::invalid_argument);  // not unit
  CHECK_THROWS_AS(evaluate_cut(c, {dvec({-1 / s2, -1 / s2})}, {0.0}), std::invalid_argument);
}

TEST_CASE("inverse solver recovers the single-atom set exactly") {
  const PolyCone c = orthant_cone(2);
  const double s2 = std::sqrt(2.0);
  const AtomicMeasure phi(c, {{dvec({-1, -1}), s2}});

  const SolveResult r = solve_minkowski(c, phi);
  CHECK(r.state.residual < 1e-6);
  CHECK(r.state.lambda == doctest::Approx(1 / s2).epsilon(1e-9));
  REQUIRE(r.state.hbar.size() == 1);
  CHECK(r.state.hbar[0] == doctest::Approx(1 / s2).epsilon(1e-9));
  CHECK(r.state.volume == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.state.facet_areas[0] == doctest::Approx(s2).epsilon(1e-9));
  CHECK(hbar(r.k, dvec({-1, -1})) == doctest::Approx(1 / s2).epsilon(1e-9));
  // the recovered set is K1 itself
  CHECK(truncation_distance(r.k, k1(), 3.0) < 1e-9);

  CHECK_THROWS_AS(solve_minkowski(c, AtomicMeasure(c, {})), std::invalid_argument);
}

TEST_CASE("inverse solver round-trips random sets through their measures") {
  std::mt19937_64 rng(4242);
  for (int n : {2, 3}) {
    for (int rep = 0; rep < 3; ++rep) {
      const PolyCone c = (rep % 2 == 0) ? orthant_cone(n) : random_cone(rng, n, n + 1);
      const PseudoCone k = random_pseudocone(rng, c, 5);
      const AtomicMeasure phi = surface_area_measure(k);
      REQUIRE(!phi.empty());

      const SolveResult r = solve_minkowski(c, phi);
      CHECK(r.state.residual < 1e-6);
      // uniqueness: the reconstruction has the original support values
      for (const auto& a : phi.atoms()) {
        const double got = hbar(r.k, a.dir);
        const double want = hbar(k, a.dir);
        CHECK(rel_err(got, want) <= 1e-6);
      }
      // and reproduces the measure
      const AtomicMeasure back = surface_area_measure(r.k);
      REQUIRE(back.size() == phi.size());
      for (std::size_t i = 0; i < phi.size(); ++i) {
        CHECK((back.atoms()[i].dir - phi.atoms()[i].dir).norm() <= 1e-9);
        CHECK(rel_err(back.atoms()[i].weight, phi.atoms()[i].weight) <= 1e-6);
      }
    }
  }
}

TEST_CASE("inverse solver: init independence and weight scaling") {
  const PolyCone c = orthant_cone(2);
  const double s2 = std::sqrt(2.0), s5 = std::sqrt(5.0);
  const AtomicMeasure phi(c, {{dvec({-1 / s2, -1 / s2}), 1.0}, {dvec({-2 / s5, -1 / s5}), 0.7}});

  const SolveResult a = solve_minkowski(c, phi);
  const SolveResult b = solve_minkowski(c, phi, RunConfig{}, std::vector<double>{3.0, 0.2});
  REQUIRE(a.state.hbar.size() == 2);
  for (int i = 0; i < 2; ++i)
    CHECK(rel_err(b.state.hbar[i], a.state.hbar[i]) <= 1e-6);

  // scaling the measure by 2^{n-1} doubles the solution
  std::vector<AtomicMeasure::Atom> scaled;
  for (const auto& at : phi.atoms()) scaled.push_back({at.dir, 2.0 * at.weight});
  const SolveResult d = solve_minkowski(c, AtomicMeasure(c, scaled));
  for (int i = 0; i < 2; ++i)
    CHECK(rel_err(d.state.hbar[i], 2.0 * a.state.hbar[i]) <= 1e-6);

  // facet areas of the solution equal the weights
  for (int i = 0; i < 2; ++i)
    CHECK(rel_err(a.state.facet_areas[i], phi.atoms()[i].weight) <= 1e-6);

  // a zero iteration budget cannot move the two-atom start to optimality
  RunConfig tight;
  tight.max_iter = 0;
  try {
    solve_minkowski(c, phi, tight);
    FAIL("expected non-convergence");
  } catch (const SolverError& e) {
    CHECK(e.state.iterations == 0);
    CHECK(e.state.residual >= tight.residual_tol);
    CHECK(e.state.hbar.size() == 2);
  }
}

TEST_CASE("dyadic stage measures walk toward the polar boundary") {
  const PolyCone c = orthant_cone(2);
  const MeasureGenerator gen = dyadic_measure_generator(c);

  const auto s1 = gen(1);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].weight == doctest::Approx(0.5));
  CHECK(s1[0].dir[0] == doctest::Approx(-1 / std::sqrt(2.0)));
  CHECK(s1[0].dir[1] == doctest::Approx(-1 / std::sqrt(2.0)));
  CHECK(boundary_angle(c, s1[0].dir) == doctest::Approx(M_PI / 4));

  const auto s2 = gen(2);
  CHECK(s2[0].weight == doctest::Approx(0.25));
  CHECK(boundary_angle(c, s2[0].dir) == doctest::Approx(M_PI / 8));

  const auto s3 = gen(3);
  CHECK(boundary_angle(c, s3[0].dir) == doctest::Approx(M_PI / 16));

  // divergent weights variant
  const MeasureGenerator div = dyadic_measure_generator(c, 2.0);
  CHECK(div(3)[0].weight == doctest::Approx(8.0));
  CHECK((div(3)[0].dir - s3[0].dir).norm() <= 1e-12);
}

TEST_CASE("deepening pipeline: monotone multipliers and contracting stages") {
  const PolyCone c = orthant_cone(2);
  const PipelineReport rep = truncation_pipeline(c, dyadic_measure_generator(c), 4);

  REQUIRE(rep.stages.size() == 4);
  REQUIRE(rep.t_ladder.size() == 3);
  for (int j = 0; j < 4; ++j) {
    const PipelineStage& st = rep.stages[j];
    CHECK(st.stage == j + 1);
    CHECK(st.atom_count == j + 1);
    CHECK(st.residual < 1e-6);
    CHECK(st.b > 0);
    CHECK(std::isfinite(st.volume));
    if (j > 0) {
      CHECK(st.lambda > rep.stages[j - 1].lambda);
      CHECK(st.tau == doctest::Approx(rep.stages[j - 1].tau / 2));
      REQUIRE(st.trunc_dist.size() == 3);
    }
  }
  // stagewise contraction at every ladder height
  for (int l = 0; l < 3; ++l)
    for (int j = 2; j < 4; ++j)
      CHECK(rep.stages[j].trunc_dist[l] < rep.stages[j - 1].trunc_dist[l]);
  for (int j = 2; j < 4; ++j) CHECK(rep.stages[j].hbar_shift < rep.stages[j - 1].hbar_shift);

  // single stage is a plain solve
  const PipelineReport one = truncation_pipeline(c, dyadic_measure_generator(c), 1);
  CHECK(one.stages.size() == 1);
  CHECK(one.stages[0].trunc_dist.empty());

  // divergent weights still run; the depth series grows instead of settling
  const PipelineReport div = truncation_pipeline(c, dyadic_measure_generator(c, 2.0), 3);
  REQUIRE(div.stages.size() == 3);
  CHECK(div.stages[2].depth_moment > div.stages[1].depth_moment);
  CHECK(div.stages[2].lambda > div.stages[1].lambda);

  CHECK_THROWS_AS(truncation_pipeline(c, dyadic_measure_generator(c), 0), std::invalid_argument);
}
