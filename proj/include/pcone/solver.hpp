#pragma once

#include "pcone/measure.hpp"

#include <functional>
#include <optional>

namespace pcone {

/// Complement volume and per-direction facet areas of the set cut from the
/// cone by the halfspaces <x, u_i> <= -h̄_i (unit directions, positive
/// offsets).  The areas are the partial derivatives of the volume in the
/// offsets; a zero area means the corresponding halfspace is redundant.
struct CutEvaluation {
  Rat exact_volume = 0;
  double volume = 0;
  std::vector<double> areas;
};
CutEvaluation evaluate_cut(const PolyCone& c, const std::vector<VecD>& dirs,
                           const std::vector<double>& hbar);

/// Iteration snapshot of the inverse solver.
struct SolverState {
  std::vector<VecD> normals;       // unit atom directions, in measure order
  std::vector<double> hbar;        // current offsets
  double volume = 0;               // complement volume at hbar
  std::vector<double> facet_areas; // per atom
  double lambda = 0;               // (1/n) Σ α_i h̄_i at the volume-1 state
  int iterations = 0;
  double residual = 0;             // max_i |λ S_i - α_i| / α_i
};

struct SolverError : std::runtime_error {
  SolverState state;
  SolverError(const std::string& msg, SolverState s)
      : std::runtime_error(msg), state(std::move(s)) {}
};

struct SolveResult {
  PseudoCone k;
  SolverState state;
};

/// Inverse problem: find the set over c whose facet-area measure equals
/// phi.  Stage 1 finds the volume-1 minimizer of Σ α_i h̄_i by a damped
/// multiplicative fixed-point iteration on the optimality ratios
/// α_i / (λ S_i), renormalizing the complement volume after every step;
/// stage 2 rescales by λ^{1/(n-1)}, after which the facet areas equal the
/// weights.  `init` overrides the all-ones starting offsets.  Throws
/// std::invalid_argument on an empty measure and SolverError carrying the
/// best state on non-convergence.
SolveResult solve_minkowski(const PolyCone& c, const AtomicMeasure& phi,
                            const RunConfig& cfg = RunConfig{},
                            const std::optional<std::vector<double>>& init = std::nullopt);

/// Atoms added at stage j (1-based); stages accumulate their union.
using MeasureGenerator = std::function<std::vector<AtomicMeasure::Atom>(int)>;

/// Stage measures that deepen dyadically: stage m contributes one atom at
/// angular depth opening * 2^{-m} from a boundary ray of the polar cone,
/// with weight decay^m.  decay = 0.5 gives a convergent depth series,
/// decay = 2 a divergent one.
MeasureGenerator dyadic_measure_generator(const PolyCone& c, double decay = 0.5);

/// One solved stage of the deepening pipeline.
struct PipelineStage {
  int stage = 0;
  double tau = 0;           // depth threshold: atoms with depth >= tau enter
  int atom_count = 0;
  double mass = 0;          // total weight of the stage measure
  double depth_moment = 0;  // Σ w_i * depth_i^{1/n} over the stage atoms
  double lambda = 0;
  double b = 0;             // distance of the stage solution from the origin
  double volume = 0;        // complement volume of the stage solution
  int iterations = 0;
  double residual = 0;
  std::vector<double> trunc_dist;  // to the previous stage, per ladder level
  double hbar_shift = 0;           // max offset change on stage-1 directions
};

struct PipelineReport {
  std::vector<double> t_ladder;  // truncation heights: {2, 4, 8} * b of stage 1
  std::vector<PipelineStage> stages;
};

/// Run the deepening pipeline: at stage j admit the generated atoms with
/// angular depth >= tau_1 / 2^{j-1}, solve, and compare consecutive
/// solutions through truncation distances at a fixed height ladder.
PipelineReport truncation_pipeline(const PolyCone& c, const MeasureGenerator& gen, int stages,
                                   const RunConfig& cfg = RunConfig{});

}  // namespace pcone
