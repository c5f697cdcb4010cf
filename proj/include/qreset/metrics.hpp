// metrics.hpp — Reset-completion detection on sampled trajectories
#pragma once

#include "qreset/lindblad.hpp"

#include <functional>

namespace qreset::metrics {

enum class Approach { Pulsed, SteadyState };

struct ResetOutcome {
    bool finite = false;
    double t_stop = 0.0;  // meaningful only when finite
    Approach approach = Approach::Pulsed;
    double threshold = 0.98;

    static ResetOutcome unreset(Approach a, double th) { return {false, 0.0, a, th}; }
    static ResetOutcome at(double t, Approach a, double th) { return {true, t, a, th}; }
};

// Evaluates p_g at an arbitrary time for bisection refinement of crossings.
using PgEvaluator = std::function<double(double)>;

// Crossing refinement tolerance (absolute, dimensionless time).
inline constexpr double kTimeTol = 1e-6;
// A sample this close under the threshold still counts as above (grazing rule).
inline constexpr double kGrazeTol = 1e-9;

// Earliest upward crossing of the threshold, bisection-refined inside the bracketing
// sample interval. Unreset if no sample reaches the threshold.
ResetOutcome detect_pulsed(const lindblad::Trajectory& traj, double threshold,
                           const PgEvaluator& pg);

// Earliest t* with p_g >= threshold on every sample in [t*, horizon]; the trajectory
// must extend to the horizon. Unreset if the final sample is below the threshold.
ResetOutcome detect_steady(const lindblad::Trajectory& traj, double threshold,
                           double horizon, const PgEvaluator& pg);

// Evaluator backed by re-integration from the trajectory's stored checkpoints.
// References both arguments; keep them alive while the evaluator is in use.
PgEvaluator make_pg_evaluator(const lindblad::ModelSpec& model,
                              const lindblad::Trajectory& traj);

// Convenience wrappers building the evaluator from the model.
ResetOutcome detect_pulsed(const lindblad::ModelSpec& model, const lindblad::Trajectory& traj,
                           double threshold);
ResetOutcome detect_steady(const lindblad::ModelSpec& model, const lindblad::Trajectory& traj,
                           double threshold, double horizon);

} // namespace qreset::metrics
