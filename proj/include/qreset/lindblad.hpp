// lindblad.hpp — Master-equation right-hand side, adaptive RK45 integration, and the
// Liouvillian matrix-exponential oracle
#pragma once

#include "qreset/hilbert.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qreset::lindblad {

using hilbert::Complex;
using hilbert::Matrix;
using hilbert::Operator;

// One dissipation channel: jump operator on the joint space plus a rate in units of g.
struct CollapseChannel {
    Operator op;
    double rate;

    CollapseChannel(Operator jump, double r);
};

// Piecewise-constant Hamiltonian schedule. The last segment extends to infinity
// regardless of its stated duration, so a single segment means time-independent.
struct Segment {
    double duration;
    Operator hamiltonian;
};
using Schedule = std::vector<Segment>;

// Full description of a reset configuration; everything integrate() needs.
struct ModelSpec {
    Schedule hamiltonian;
    std::vector<CollapseChannel> channels;
    hilbert::DensityMatrix initial;
    std::vector<int> dims;
    int main_index;
    Operator ground_projector;

    ModelSpec(Schedule h, std::vector<CollapseChannel> ch, hilbert::DensityMatrix init,
              std::vector<int> subsystem_dims, int main_idx, Operator ground_proj);

    int dim() const { return initial.dim(); }
};

// Sampled ground-state population of the main subsystem, plus sparse state
// checkpoints used by crossing refinement (and optionally every sampled state).
struct Trajectory {
    std::vector<double> times;
    std::vector<double> pg;
    std::vector<Matrix> states;             // filled only when requested
    std::vector<double> checkpoint_times;   // always; subset of `times`
    std::vector<Matrix> checkpoint_states;

    void validate() const;  // monotone times, pg within [-1e-9, 1+1e-9]
};

struct IntegrateOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    bool store_states = false;
    int checkpoint_stride = 50;
    // Stop sampling once pg reaches this value (first-crossing searches); the
    // trajectory then ends at the first sample at or above it.
    std::optional<double> stop_at_pg{};
};

// Raised when the adaptive step collapses below machine resolution.
class StepSizeUnderflow : public std::runtime_error {
public:
    explicit StepSizeUnderflow(double t);
    double time() const { return time_; }

private:
    double time_;
};

// dρ/dt = −i[H,ρ] + Σ_c (rate_c/2)(2 LρL† − L†Lρ − ρL†L). Hermitian and traceless.
Matrix lindblad_rhs(const Operator& hamiltonian, const std::vector<CollapseChannel>& channels,
                    const Matrix& rho);

// Integrate the master equation on a uniform sample grid of spacing sample_dt,
// hitting every sample time exactly (step clipping, no interpolation).
Trajectory integrate(const ModelSpec& model, double t_end, double sample_dt,
                     const IntegrateOptions& opts = {});

// Ground-state population of the main subsystem at time t, re-integrated from the
// nearest stored checkpoint. Used for bisection refinement of threshold crossings.
double pg_at(const ModelSpec& model, const Trajectory& traj, double t,
             const IntegrateOptions& opts = {});

// ρ(t)’ = exp(𝓛 t) vec(ρ0) with the column-stacked Liouvillian, segment-wise for
// schedules. Verification oracle; refuses dimensions above dim_cap.
hilbert::DensityMatrix exact_propagate(const ModelSpec& model, double t, int dim_cap = 24);

// Sampled oracle trajectory on the same grid convention as integrate().
Trajectory exact_trajectory(const ModelSpec& model, double t_end, double sample_dt,
                            int dim_cap = 24);

// The d²×d² generator for one time-independent segment (column stacking).
Matrix liouvillian(const Operator& hamiltonian, const std::vector<CollapseChannel>& channels);

} // namespace qreset::lindblad
