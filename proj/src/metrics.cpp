// metrics.cpp — Pulsed and steady-state reset detection
#include "qreset/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace qreset::metrics {

namespace {

bool above(double p, double threshold) { return p >= threshold - kGrazeTol; }

// Refine the upward crossing inside [t_lo, t_hi] where p(t_lo) < th <= p(t_hi).
double bisect_crossing(const PgEvaluator& pg, double t_lo, double t_hi, double threshold) {
    while (t_hi - t_lo > kTimeTol) {
        const double mid = 0.5 * (t_lo + t_hi);
        if (above(pg(mid), threshold)) {
            t_hi = mid;
        } else {
            t_lo = mid;
        }
    }
    return 0.5 * (t_lo + t_hi);
}

} // namespace

ResetOutcome detect_pulsed(const lindblad::Trajectory& traj, double threshold,
                           const PgEvaluator& pg) {
    if (traj.times.empty()) {
        throw std::invalid_argument("detect_pulsed: empty trajectory");
    }
    if (above(traj.pg.front(), threshold)) {
        return ResetOutcome::at(traj.times.front(), Approach::Pulsed, threshold);
    }
    for (std::size_t i = 1; i < traj.times.size(); ++i) {
        if (above(traj.pg[i], threshold)) {
            const double t = pg ? bisect_crossing(pg, traj.times[i - 1], traj.times[i], threshold)
                                : traj.times[i];
            return ResetOutcome::at(t, Approach::Pulsed, threshold);
        }
    }
    return ResetOutcome::unreset(Approach::Pulsed, threshold);
}

ResetOutcome detect_steady(const lindblad::Trajectory& traj, double threshold, double horizon,
                           const PgEvaluator& pg) {
    if (traj.times.empty()) {
        throw std::invalid_argument("detect_steady: empty trajectory");
    }
    if (traj.times.back() < horizon - 1e-9) {
        throw std::invalid_argument("detect_steady: trajectory shorter than horizon");
    }
    if (!above(traj.pg.back(), threshold)) {
        return ResetOutcome::unreset(Approach::SteadyState, threshold);
    }
    // Last sample strictly below: the final upward crossing lives in the next interval.
    std::size_t last_below = traj.times.size();  // sentinel: never below
    for (std::size_t i = traj.times.size(); i-- > 0;) {
        if (!above(traj.pg[i], threshold)) {
            last_below = i;
            break;
        }
    }
    if (last_below == traj.times.size()) {
        return ResetOutcome::at(traj.times.front(), Approach::SteadyState, threshold);
    }
    const double t = pg ? bisect_crossing(pg, traj.times[last_below],
                                          traj.times[last_below + 1], threshold)
                        : traj.times[last_below + 1];
    return ResetOutcome::at(t, Approach::SteadyState, threshold);
}

PgEvaluator make_pg_evaluator(const lindblad::ModelSpec& model,
                              const lindblad::Trajectory& traj) {
    return [&model, &traj](double t) { return lindblad::pg_at(model, traj, t); };
}

ResetOutcome detect_pulsed(const lindblad::ModelSpec& model, const lindblad::Trajectory& traj,
                           double threshold) {
    return detect_pulsed(traj, threshold, make_pg_evaluator(model, traj));
}

ResetOutcome detect_steady(const lindblad::ModelSpec& model, const lindblad::Trajectory& traj,
                           double threshold, double horizon) {
    return detect_steady(traj, threshold, horizon, make_pg_evaluator(model, traj));
}

} // namespace qreset::metrics
