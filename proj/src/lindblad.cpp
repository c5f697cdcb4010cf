// lindblad.cpp — RK45 (Dormand–Prince) master-equation integrator and exact oracle
#include "qreset/lindblad.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace qreset::lindblad {

namespace {

// Dormand–Prince 4(5) tableau (autonomous right-hand side, c-nodes unused).
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 5th-minus-4th order error weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// Per-segment generator with cached channel products.
struct Generator {
    Matrix h;
    struct Ch {
        Matrix l, ldag, k;  // k = L†L
        double rate;
    };
    std::vector<Ch> chs;

    explicit Generator(const Operator& ham, const std::vector<CollapseChannel>& channels)
        : h(ham.data) {
        chs.reserve(channels.size());
        for (const auto& c : channels) {
            Ch e{c.op.data, c.op.data.adjoint(), Matrix(), c.rate};
            e.k = e.ldag * e.l;
            chs.push_back(std::move(e));
        }
    }

    // `tmp` is caller-provided scratch of the same shape; no allocations inside.
    void rhs(const Matrix& rho, Matrix& out, Matrix& tmp) const {
        const Complex mi(0.0, -1.0);
        tmp.noalias() = h * rho;
        tmp.noalias() -= rho * h;
        out = mi * tmp;
        for (const auto& c : chs) {
            tmp.noalias() = c.l * rho;
            out.noalias() += c.rate * (tmp * c.ldag);
            out.noalias() -= (0.5 * c.rate) * (c.k * rho);
            out.noalias() -= (0.5 * c.rate) * (rho * c.k);
        }
    }
};

double error_norm(const Matrix& err, const Matrix& y0, const Matrix& y1, double atol,
                  double rtol) {
    double acc = 0.0;
    const auto* e = err.data();
    const auto* a = y0.data();
    const auto* b = y1.data();
    const Eigen::Index n = err.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double sc = atol + rtol * std::max(std::abs(a[i]), std::abs(b[i]));
        const double q = std::abs(e[i]) / sc;
        acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(n));
}

// Initial step from the ratio of state to derivative norms; reparameterizes exactly
// under a uniform rescaling of all rates.
double initial_step(const Generator& gen, const Matrix& rho, double h_cap) {
    Matrix f(rho.rows(), rho.cols()), tmp = f;
    gen.rhs(rho, f, tmp);
    const double d0 = rho.norm();
    const double d1 = f.norm();
    const double h = (d1 > 1e-300) ? 0.01 * d0 / d1 : h_cap;
    return std::min(h, h_cap);
}

// Integrate one time-independent stretch from t to t_target, landing exactly.
// `rho` is updated in place; `h` carries the adaptive step across calls.
void advance(const Generator& gen, Matrix& rho, double& t, double t_target, double& h,
             double atol, double rtol) {
    if (t_target <= t) return;
    Matrix k1(rho.rows(), rho.cols()), k2 = k1, k3 = k1, k4 = k1, k5 = k1, k6 = k1, k7 = k1;
    Matrix y = rho, ynew = rho, err = rho, tmp = rho;
    gen.rhs(y, k1, tmp);  // FSAL seed
    while (t < t_target) {
        h = std::min(h, t_target - t);
        const double h_floor = 1e-14 * std::max(1.0, std::abs(t));
        if (h < h_floor) {
            throw StepSizeUnderflow(t);
        }
        ynew = y + h * (a21 * k1);
        gen.rhs(ynew, k2, tmp);
        ynew = y + h * (a31 * k1 + a32 * k2);
        gen.rhs(ynew, k3, tmp);
        ynew = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        gen.rhs(ynew, k4, tmp);
        ynew = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        gen.rhs(ynew, k5, tmp);
        ynew = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        gen.rhs(ynew, k6, tmp);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        gen.rhs(ynew, k7, tmp);
        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double norm = error_norm(err, y, ynew, atol, rtol);
        if (norm <= 1.0) {
            t = (t_target - t <= h * (1.0 + 1e-12)) ? t_target : t + h;
            y = ynew;
            k1 = k7;  // first-same-as-last
            const double fac = (norm > 1e-300) ? 0.9 * std::pow(norm, -0.2) : 5.0;
            h *= std::clamp(fac, 0.2, 5.0);
        } else {
            h *= std::max(0.2, 0.9 * std::pow(norm, -0.2));
        }
    }
    rho = y;
}

double ground_pop(const Matrix& projector, const Matrix& rho) {
    return (projector.cwiseProduct(rho.transpose())).sum().real();
}

int segment_at(const Schedule& sched, double t, double* seg_start) {
    double start = 0.0;
    for (std::size_t s = 0; s + 1 < sched.size(); ++s) {
        if (t < start + sched[s].duration) {
            *seg_start = start;
            return static_cast<int>(s);
        }
        start += sched[s].duration;
    }
    *seg_start = start;
    return static_cast<int>(sched.size()) - 1;
}

} // namespace

CollapseChannel::CollapseChannel(Operator jump, double r) : op(std::move(jump)), rate(r) {
    if (!(rate >= 0.0)) {
        throw std::invalid_argument("CollapseChannel: rate must be non-negative");
    }
}

ModelSpec::ModelSpec(Schedule h, std::vector<CollapseChannel> ch, hilbert::DensityMatrix init,
                     std::vector<int> subsystem_dims, int main_idx, Operator ground_proj)
    : hamiltonian(std::move(h)),
      channels(std::move(ch)),
      initial(std::move(init)),
      dims(std::move(subsystem_dims)),
      main_index(main_idx),
      ground_projector(std::move(ground_proj)) {
    if (hamiltonian.empty()) {
        throw std::invalid_argument("ModelSpec: schedule must have at least one segment");
    }
    const int d = initial.dim();
    for (const auto& seg : hamiltonian) {
        if (seg.hamiltonian.dim() != d) {
            throw std::invalid_argument("ModelSpec: Hamiltonian dimension mismatch");
        }
        if ((seg.hamiltonian.data - seg.hamiltonian.data.adjoint()).cwiseAbs().maxCoeff() >
            1e-12) {
            throw std::invalid_argument("ModelSpec: Hamiltonian not Hermitian");
        }
    }
    for (const auto& c : channels) {
        if (c.op.dim() != d) {
            throw std::invalid_argument("ModelSpec: channel dimension mismatch");
        }
    }
    if (ground_projector.dim() != d) {
        throw std::invalid_argument("ModelSpec: projector dimension mismatch");
    }
    if (main_index < 0 || main_index >= static_cast<int>(dims.size())) {
        throw std::invalid_argument("ModelSpec: main_index out of range");
    }
}

void Trajectory::validate() const {
    if (times.size() != pg.size()) {
        throw std::logic_error("Trajectory: times/pg length mismatch");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw std::logic_error("Trajectory: times not strictly increasing");
        }
    }
    for (double p : pg) {
        if (p < -1e-9 || p > 1.0 + 1e-9) {
            throw std::logic_error("Trajectory: pg outside [0,1] tolerance band");
        }
    }
}

StepSizeUnderflow::StepSizeUnderflow(double t)
    : std::runtime_error("step size underflow at t=" + std::to_string(t)), time_(t) {}

Matrix lindblad_rhs(const Operator& hamiltonian, const std::vector<CollapseChannel>& channels,
                    const Matrix& rho) {
    if (hamiltonian.dim() != rho.rows() || rho.rows() != rho.cols()) {
        throw std::invalid_argument("lindblad_rhs: dimension mismatch");
    }
    for (const auto& c : channels) {
        if (c.op.dim() != rho.rows()) {
            throw std::invalid_argument("lindblad_rhs: channel dimension mismatch");
        }
    }
    Generator gen(hamiltonian, channels);
    Matrix out(rho.rows(), rho.cols()), tmp = out;
    gen.rhs(rho, out, tmp);
    return out;
}

Trajectory integrate(const ModelSpec& model, double t_end, double sample_dt,
                     const IntegrateOptions& opts) {
    if (!(t_end > 0.0) || !(sample_dt > 0.0)) {
        throw std::invalid_argument("integrate: t_end and sample_dt must be positive");
    }
    const long n_samples = static_cast<long>(std::ceil(t_end / sample_dt - 1e-9));

    std::vector<Generator> gens;
    gens.reserve(model.hamiltonian.size());
    for (const auto& seg : model.hamiltonian) {
        gens.emplace_back(seg.hamiltonian, model.channels);
    }

    Matrix rho = model.initial.data;
    const Matrix& proj = model.ground_projector.data;

    Trajectory traj;
    traj.times.reserve(n_samples + 1);
    traj.pg.reserve(n_samples + 1);
    traj.times.push_back(0.0);
    traj.pg.push_back(ground_pop(proj, rho));
    if (opts.store_states) traj.states.push_back(rho);
    traj.checkpoint_times.push_back(0.0);
    traj.checkpoint_states.push_back(rho);

    double t = 0.0;
    double seg_start = 0.0;
    int seg = segment_at(model.hamiltonian, 0.0, &seg_start);
    double h = initial_step(gens[seg], rho, sample_dt);

    for (long i = 1; i <= n_samples; ++i) {
        const double t_sample = (i == n_samples) ? t_end : i * sample_dt;
        // Cross any schedule boundaries inside this sample interval exactly.
        while (seg + 1 < static_cast<int>(model.hamiltonian.size())) {
            const double seg_end = seg_start + model.hamiltonian[seg].duration;
            if (t_sample <= seg_end + 1e-15) break;
            advance(gens[seg], rho, t, seg_end, h, opts.abs_tol, opts.rel_tol);
            seg_start = seg_end;
            ++seg;
        }
        advance(gens[seg], rho, t, t_sample, h, opts.abs_tol, opts.rel_tol);

        traj.times.push_back(t);
        traj.pg.push_back(ground_pop(proj, rho));
        if (opts.store_states) traj.states.push_back(rho);
        if (i % opts.checkpoint_stride == 0 || i == n_samples) {
            traj.checkpoint_times.push_back(t);
            traj.checkpoint_states.push_back(rho);
        }
        if (opts.stop_at_pg && traj.pg.back() >= *opts.stop_at_pg) {
            if (traj.checkpoint_times.back() != t) {
                traj.checkpoint_times.push_back(t);
                traj.checkpoint_states.push_back(rho);
            }
            break;
        }
    }
    traj.validate();
    return traj;
}

double pg_at(const ModelSpec& model, const Trajectory& traj, double t,
             const IntegrateOptions& opts) {
    if (traj.checkpoint_times.empty()) {
        throw std::invalid_argument("pg_at: trajectory has no checkpoints");
    }
    if (t < 0.0) {
        throw std::invalid_argument("pg_at: negative time");
    }
    auto it = std::upper_bound(traj.checkpoint_times.begin(), traj.checkpoint_times.end(), t);
    const auto idx = static_cast<std::size_t>(std::distance(traj.checkpoint_times.begin(), it));
    if (idx == 0) {
        throw std::invalid_argument("pg_at: time precedes first checkpoint");
    }
    Matrix rho = traj.checkpoint_states[idx - 1];
    double tc = traj.checkpoint_times[idx - 1];

    std::vector<Generator> gens;
    for (const auto& seg : model.hamiltonian) {
        gens.emplace_back(seg.hamiltonian, model.channels);
    }
    double seg_start = 0.0;
    int seg = segment_at(model.hamiltonian, tc, &seg_start);
    double h = initial_step(gens[seg], rho, std::max(t - tc, 1e-6));
    while (seg + 1 < static_cast<int>(model.hamiltonian.size())) {
        const double seg_end = seg_start + model.hamiltonian[seg].duration;
        if (t <= seg_end + 1e-15) break;
        advance(gens[seg], rho, tc, seg_end, h, opts.abs_tol, opts.rel_tol);
        seg_start = seg_end;
        ++seg;
    }
    advance(gens[seg], rho, tc, t, h, opts.abs_tol, opts.rel_tol);
    return ground_pop(model.ground_projector.data, rho);
}

Matrix liouvillian(const Operator& hamiltonian, const std::vector<CollapseChannel>& channels) {
    const Eigen::Index d = hamiltonian.data.rows();
    const Matrix id = Matrix::Identity(d, d);
    const Complex mi(0.0, -1.0);
    Matrix l = mi * (Eigen::kroneckerProduct(id, hamiltonian.data).eval() -
                     Eigen::kroneckerProduct(hamiltonian.data.transpose(), id).eval());
    for (const auto& c : channels) {
        const Matrix& jump = c.op.data;
        const Matrix k = jump.adjoint() * jump;
        l += (c.rate / 2.0) *
             (2.0 * Eigen::kroneckerProduct(jump.conjugate(), jump).eval() -
              Eigen::kroneckerProduct(id, k).eval() -
              Eigen::kroneckerProduct(k.transpose(), id).eval());
    }
    return l;
}

namespace {

Eigen::VectorXcd vec(const Matrix& m) {
    return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Matrix unvec(const Eigen::VectorXcd& v, Eigen::Index d) {
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

// Evolve vec(rho) through the schedule up to time t using per-segment exp(L dt).
Eigen::VectorXcd exact_evolve(const ModelSpec& model, double t) {
    Eigen::VectorXcd v = vec(model.initial.data);
    double done = 0.0;
    for (std::size_t s = 0; s < model.hamiltonian.size(); ++s) {
        const bool last = (s + 1 == model.hamiltonian.size());
        const double span =
            last ? (t - done) : std::min(model.hamiltonian[s].duration, t - done);
        if (span <= 0.0) break;
        const Matrix l = liouvillian(model.hamiltonian[s].hamiltonian, model.channels);
        v = (l * span).exp() * v;
        done += span;
        if (done >= t) break;
    }
    return v;
}

} // namespace

hilbert::DensityMatrix exact_propagate(const ModelSpec& model, double t, int dim_cap) {
    if (t < 0.0) {
        throw std::invalid_argument("exact_propagate: t must be >= 0");
    }
    if (model.dim() > dim_cap) {
        throw std::invalid_argument("exact_propagate: dimension exceeds oracle cap");
    }
    if (t == 0.0) {
        return model.initial;
    }
    const Eigen::Index d = model.dim();
    Matrix rho = unvec(exact_evolve(model, t), d);
    rho = 0.5 * (rho + rho.adjoint().eval());  // scrub O(1e-14) asymmetry before validation
    return {std::move(rho), model.dims};
}

Trajectory exact_trajectory(const ModelSpec& model, double t_end, double sample_dt,
                            int dim_cap) {
    if (!(t_end > 0.0) || !(sample_dt > 0.0)) {
        throw std::invalid_argument("exact_trajectory: t_end and sample_dt must be positive");
    }
    if (model.dim() > dim_cap) {
        throw std::invalid_argument("exact_trajectory: dimension exceeds oracle cap");
    }
    const Eigen::Index d = model.dim();
    const long n_samples = static_cast<long>(std::ceil(t_end / sample_dt - 1e-9));
    const Matrix& proj = model.ground_projector.data;

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.pg.push_back(ground_pop(proj, model.initial.data));

    // Precompute one propagator per (segment, used step) pair; schedules are short.
    Eigen::VectorXcd v = vec(model.initial.data);
    double t = 0.0;
    double seg_start = 0.0;
    int seg = 0;
    Matrix step_prop;
    double step_prop_dt = -1.0;
    Matrix seg_liou = liouvillian(model.hamiltonian[0].hamiltonian, model.channels);

    for (long i = 1; i <= n_samples; ++i) {
        const double t_sample = (i == n_samples) ? t_end : i * sample_dt;
        while (seg + 1 < static_cast<int>(model.hamiltonian.size())) {
            const double seg_end = seg_start + model.hamiltonian[seg].duration;
            if (t_sample <= seg_end + 1e-15) break;
            v = (seg_liou * (seg_end - t)).exp() * v;
            t = seg_end;
            seg_start = seg_end;
            ++seg;
            seg_liou = liouvillian(model.hamiltonian[seg].hamiltonian, model.channels);
            step_prop_dt = -1.0;
        }
        const double dt = t_sample - t;
        if (std::abs(dt - step_prop_dt) > 1e-15) {
            step_prop = (seg_liou * dt).exp();
            step_prop_dt = dt;
        }
        v = step_prop * v;
        t = t_sample;
        traj.times.push_back(t);
        traj.pg.push_back(ground_pop(proj, unvec(v, d)));
    }
    traj.validate();
    return traj;
}

} // namespace qreset::lindblad
