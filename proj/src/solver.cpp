#include "pcone/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pcone {

namespace {

bool interior_to_polar(const PolyCone& c, const VecR& d) {
  for (const VecR& g : c.generators()) {
    const Rat s = d.dot(g);
    if (!(s < 0)) return false;
  }
  return true;
}

/// Exact cut geometry shared by every evaluation at fixed directions.
struct CutProblem {
  const PolyCone* cone = nullptr;
  std::vector<VecD> dirs;      // unit directions
  std::vector<VecR> dirs_rat;  // their rational snaps (the true geometry)
  int n = 0;

  CutProblem(const PolyCone& c, const std::vector<VecD>& directions)
      : cone(&c), dirs(directions), n(c.ambient_dim()) {
    dirs_rat.reserve(dirs.size());
    for (const VecD& d : dirs) {
      if (d.size() != n) throw std::invalid_argument("direction dimension mismatch");
      const double norm = d.norm();
      if (!(std::abs(norm - 1.0) <= 1e-9))
        throw std::invalid_argument("directions must be unit vectors");
      VecR dr = rat_vec_from_double(d);
      if (!interior_to_polar(c, dr))
        throw std::invalid_argument("direction not strictly interior to the polar cone");
      dirs_rat.push_back(std::move(dr));
    }
  }

  CutEvaluation eval(const std::vector<double>& hbar) const {
    const PolyCone& c = *cone;
    const std::size_t m = dirs_rat.size();
    if (hbar.size() != m) throw std::invalid_argument("offset count mismatch");
    std::vector<Rat> offsets(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (!(hbar[i] > 0) || !std::isfinite(hbar[i]))
        throw std::invalid_argument("offsets must be positive and finite");
      offsets[i] = -rat_from_double(hbar[i]);
    }

    HRep rows;
    for (const VecR& w : c.facet_normals()) rows.halfspaces.push_back(Halfspace{w, Rat(0)});
    for (std::size_t i = 0; i < m; ++i)
      rows.halfspaces.push_back(Halfspace{dirs_rat[i], offsets[i]});
    const Polyhedron k = Polyhedron::from_h(rows);

    // Reference height bound for the complement: it is covered by the
    // slabs C ∩ { <x,u_i> >= -h̄_i }, each the hull of the origin and the
    // ray/hyperplane intersection points.
    const VecR& ref = c.reference_direction();
    Rat s = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (const VecR& g : c.generators()) {
        const Rat den = dirs_rat[i].dot(g);  // < 0
        const Rat lam = offsets[i] / den;    // > 0
        const Rat height = lam * g.dot(ref);
        if (height > s) s = height;
      }
    }
    s += 1;

    HRep cut = k.h();
    cut.halfspaces.push_back(Halfspace{ref, s});
    CutEvaluation out;
    out.exact_volume =
        volume_exact(c.truncate_exact(s)) - volume_exact(Polyhedron::from_h(cut));
    out.volume = to_double(out.exact_volume);

    out.areas.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<VecR> on_facet;
      for (const VecR& v : k.v().points)
        if (Rat(v.dot(dirs_rat[i])) == offsets[i]) on_facet.push_back(v);
      if (on_facet.size() >= static_cast<std::size_t>(n))
        out.areas[i] = polytope_volume(on_facet, n - 1);
    }
    return out;
  }
};

/// Evaluation rescaled to complement volume 1 (analytic, by homogeneity:
/// the volume has degree n and the areas degree n-1 in the offsets).
struct NormEval {
  bool ok = false;             // every direction carries a facet
  std::vector<double> h;       // normalized offsets
  std::vector<double> S;       // areas at the normalized offsets
  double lambda = 0;           // (1/n) Σ α_i h_i
  double residual = std::numeric_limits<double>::infinity();
  std::vector<double> R;       // λ S_i - α_i
};

NormEval norm_eval(const CutProblem& prob, const std::vector<double>& alpha,
                   const std::vector<double>& raw) {
  const CutEvaluation ev = prob.eval(raw);
  const int n = prob.n;
  const std::size_t m = raw.size();
  NormEval out;
  out.ok = true;
  const double cs = std::pow(ev.volume, -1.0 / n);
  const double as = std::pow(cs, n - 1);
  out.h.resize(m);
  out.S.resize(m);
  double f = 0;
  for (std::size_t i = 0; i < m; ++i) {
    out.h[i] = raw[i] * cs;
    out.S[i] = ev.areas[i] * as;
    if (!(out.S[i] > 0)) out.ok = false;
    f += alpha[i] * out.h[i];
  }
  out.lambda = f / n;
  out.R.resize(m);
  double r = 0;
  for (std::size_t i = 0; i < m; ++i) {
    out.R[i] = out.lambda * out.S[i] - alpha[i];
    r = std::max(r, std::abs(out.R[i]) / alpha[i]);
  }
  out.residual = r;
  return out;
}

SolverState state_from(const std::vector<VecD>& dirs, const NormEval& ne, double volume,
                       int iterations) {
  SolverState st;
  st.normals = dirs;
  st.hbar = ne.h;
  st.volume = volume;
  st.facet_areas = ne.S;
  st.lambda = ne.lambda;
  st.iterations = iterations;
  st.residual = ne.residual;
  return st;
}

}  // namespace

CutEvaluation evaluate_cut(const PolyCone& c, const std::vector<VecD>& dirs,
                           const std::vector<double>& hbar) {
  return CutProblem(c, dirs).eval(hbar);
}

SolveResult solve_minkowski(const PolyCone& c, const AtomicMeasure& phi, const RunConfig& cfg,
                            const std::optional<std::vector<double>>& init) {
  const int n = c.ambient_dim();
  RunConfig::check_dimension(n);
  if (phi.empty()) throw std::invalid_argument("measure has no atoms");
  const std::size_t m = phi.size();

  std::vector<VecD> dirs;
  std::vector<double> alpha;
  for (const AtomicMeasure::Atom& a : phi.atoms()) {
    dirs.push_back(a.dir);
    alpha.push_back(a.weight);
  }
  const CutProblem prob(c, dirs);

  std::vector<double> raw = init.value_or(std::vector<double>(m, 1.0));
  if (raw.size() != m) throw std::invalid_argument("starting offsets must match the atom count");
  for (double v : raw)
    if (!(v > 0) || !std::isfinite(v))
      throw std::invalid_argument("starting offsets must be positive and finite");

  // Deepen redundant halfspaces until every direction carries a facet.
  NormEval cur = norm_eval(prob, alpha, raw);
  for (int pass = 0; pass < 256 && !cur.ok; ++pass) {
    for (std::size_t i = 0; i < m; ++i)
      if (!(cur.S[i] > 0)) raw[i] *= 1.5;
    cur = norm_eval(prob, alpha, raw);
  }
  if (!cur.ok)
    throw SolverError("could not realize a facet for every atom from the starting offsets",
                      state_from(dirs, cur, 1.0, 0));

  NormEval best = cur;
  double gamma = 1.0;
  int iters = 0;
  const double lo = 0.5, hi = 2.0;

  while (cur.residual >= cfg.residual_tol && iters < cfg.max_iter) {
    ++iters;

    // Damped multiplicative step on the optimality ratios.
    std::vector<double> cand(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double ratio = alpha[i] / (cur.lambda * cur.S[i]);
      cand[i] = cur.h[i] * std::clamp(std::pow(ratio, gamma), lo, hi);
    }
    NormEval next = norm_eval(prob, alpha, cand);
    if (next.ok && next.residual < cur.residual) {
      cur = std::move(next);
      gamma = std::min(1.0, gamma * 1.25);
      if (cur.residual < best.residual) best = cur;
      continue;
    }

    gamma *= 0.5;
    if (gamma >= 1e-3) continue;

    // Damped least-squares step on the optimality defects, with a
    // forward-difference Jacobian (the defect map of the normalized
    // offsets; its scale-invariance is handled by a minimum-norm solve).
    const double fd = 1e-6;
    Mat<double> jac(m, m);
    bool jac_ok = true;
    for (std::size_t j = 0; j < m && jac_ok; ++j) {
      std::vector<double> hj = cur.h;
      const double step = fd * hj[j];
      hj[j] += step;
      const NormEval ne = norm_eval(prob, alpha, hj);
      if (!ne.ok) {
        jac_ok = false;
        break;
      }
      for (std::size_t i = 0; i < m; ++i) jac(i, j) = (ne.R[i] - cur.R[i]) / step;
    }
    bool advanced = false;
    if (jac_ok) {
      Vec<double> rhs(m);
      for (std::size_t i = 0; i < m; ++i) rhs(i) = -cur.R[i];
      const Vec<double> d = jac.completeOrthogonalDecomposition().solve(rhs);
      double t = 1.0;
      for (int bt = 0; bt < 25; ++bt, t *= 0.5) {
        std::vector<double> cand2(m);
        bool positive = true;
        for (std::size_t i = 0; i < m; ++i) {
          cand2[i] = cur.h[i] + t * d(i);
          if (!(cand2[i] > 0)) positive = false;
        }
        if (!positive) continue;
        NormEval ne = norm_eval(prob, alpha, cand2);
        if (ne.ok && ne.residual < cur.residual) {
          cur = std::move(ne);
          if (cur.residual < best.residual) best = cur;
          gamma = 0.25;
          advanced = true;
          break;
        }
      }
    }
    if (!advanced) break;  // stalled in both step families
  }

  if (!(cur.residual < cfg.residual_tol))
    throw SolverError("no convergence within the iteration budget (best residual " +
                          std::to_string(best.residual) + ")",
                      state_from(dirs, best, 1.0, iters));

  // Rescale so the facet areas meet the weights, and build the solution.
  const double scale = std::pow(cur.lambda, 1.0 / (n - 1));
  std::vector<double> final_h(m);
  for (std::size_t i = 0; i < m; ++i) final_h[i] = cur.h[i] * scale;
  const CutEvaluation fin = prob.eval(final_h);

  HRep rows;
  for (const VecR& w : c.facet_normals()) rows.halfspaces.push_back(Halfspace{w, Rat(0)});
  for (std::size_t i = 0; i < m; ++i)
    rows.halfspaces.push_back(Halfspace{prob.dirs_rat[i], -rat_from_double(final_h[i])});
  PseudoCone k = PseudoCone::validate(c, rows);

  SolverState st;
  st.normals = dirs;
  st.hbar = final_h;
  st.volume = fin.volume;
  st.facet_areas = fin.areas;
  st.lambda = cur.lambda;
  st.iterations = iters;
  st.residual = cur.residual;
  return SolveResult{std::move(k), std::move(st)};
}

MeasureGenerator dyadic_measure_generator(const PolyCone& c, double decay) {
  if (!(decay > 0) || !std::isfinite(decay))
    throw std::invalid_argument("decay must be positive and finite");
  const PolyCone cp = c.polar();
  VecD b0 = to_double(cp.generators().front());
  b0 /= b0.norm();
  VecD vint = cp.unit_reference_direction();
  const double theta = std::acos(std::clamp(b0.dot(vint), -1.0, 1.0));
  if (!(theta > 0)) throw std::invalid_argument("degenerate polar cone geometry");
  return [b0, vint, theta, decay](int stage) {
    if (stage < 1) throw std::invalid_argument("stages are 1-based");
    const double f = std::exp2(1 - stage);  // fraction of the way from the boundary ray
    const VecD dir =
        (std::sin((1.0 - f) * theta) * b0 + std::sin(f * theta) * vint) / std::sin(theta);
    return std::vector<AtomicMeasure::Atom>{
        AtomicMeasure::Atom{dir / dir.norm(), std::pow(decay, stage)}};
  };
}

PipelineReport truncation_pipeline(const PolyCone& c, const MeasureGenerator& gen, int stages,
                                   const RunConfig& cfg) {
  if (stages < 1) throw std::invalid_argument("need at least one stage");
  const int n = c.ambient_dim();
  PipelineReport rep;
  std::vector<AtomicMeasure::Atom> pool;
  std::vector<VecD> stage1_dirs;
  double tau1 = 0;
  std::optional<SolveResult> prev;

  for (int j = 1; j <= stages; ++j) {
    std::vector<AtomicMeasure::Atom> added = gen(j);
    for (AtomicMeasure::Atom& a : added) {
      a.dir /= a.dir.norm();
      pool.push_back(std::move(a));
    }
    if (j == 1) {
      if (pool.empty()) throw std::invalid_argument("stage 1 produced no atoms");
      tau1 = std::numeric_limits<double>::infinity();
      for (const AtomicMeasure::Atom& a : pool) {
        tau1 = std::min(tau1, boundary_angle(c, a.dir));
        stage1_dirs.push_back(a.dir);
      }
    }
    const double tau = tau1 / std::exp2(j - 1);

    std::vector<AtomicMeasure::Atom> selected;
    for (const AtomicMeasure::Atom& a : pool)
      if (boundary_angle(c, a.dir) >= tau * (1 - 1e-9)) selected.push_back(a);
    const AtomicMeasure phi(c, selected);

    // Warm start: carry offsets over by direction match.
    std::optional<std::vector<double>> init;
    if (prev) {
      std::vector<double> start(phi.size(), 1.0);
      for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t p = 0; p < prev->state.normals.size(); ++p)
          if ((phi.atoms()[i].dir - prev->state.normals[p]).norm() <= 1e-9)
            start[i] = prev->state.hbar[p];
      init = std::move(start);
    }

    SolveResult sr = [&] {
      try {
        return solve_minkowski(c, phi, cfg, init);
      } catch (const SolverError& e) {
        throw SolverError("stage " + std::to_string(j) + ": " + e.what(), e.state);
      }
    }();

    PipelineStage st;
    st.stage = j;
    st.tau = tau;
    st.atom_count = static_cast<int>(phi.size());
    st.mass = phi.total_mass();
    for (std::size_t i = 0; i < phi.size(); ++i)
      st.depth_moment += phi.atoms()[i].weight * std::pow(boundary_angle(c, phi.atoms()[i].dir),
                                                          1.0 / n);
    st.lambda = sr.state.lambda;
    st.b = distance_b(sr.k);
    st.volume = sr.state.volume;
    st.iterations = sr.state.iterations;
    st.residual = sr.state.residual;

    if (j == 1) {
      // t0 = 4 b(K_1): the multipliers λ_j grow as atoms accumulate, so the
      // ladder needs headroom above the first solution to keep every later
      // truncation nonempty.
      for (double mult : {2.0, 4.0, 8.0}) rep.t_ladder.push_back(mult * 4.0 * st.b);
    } else {
      for (double t : rep.t_ladder)
        st.trunc_dist.push_back(truncation_distance(prev->k, sr.k, t));
      for (const VecD& d : stage1_dirs)
        st.hbar_shift = std::max(st.hbar_shift, std::abs(hbar(sr.k, d) - hbar(prev->k, d)));
    }
    rep.stages.push_back(std::move(st));
    prev = std::move(sr);
  }
  return rep;
}

}  // namespace pcone
