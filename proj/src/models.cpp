// models.cpp — Reset-configuration builders
#include "qreset/models.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qreset::models {

using hilbert::Matrix;
using hilbert::Operator;
using lindblad::CollapseChannel;
using lindblad::Schedule;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Operator ground_projector_on(std::vector<int> dims, int main_index) {
    std::vector<Operator> factors;
    factors.reserve(dims.size());
    for (std::size_t s = 0; s < dims.size(); ++s) {
        factors.push_back(static_cast<int>(s) == main_index
                              ? hilbert::transition(dims[s], 0, 0)
                              : hilbert::identity(dims[s]));
    }
    return hilbert::tensor(factors);
}

} // namespace

ModelSpec build_two_qubit(double gamma) {
    if (gamma < 0.0) {
        throw std::invalid_argument("build_two_qubit: gamma must be >= 0");
    }
    const Operator exch =
        hilbert::tensor({hilbert::transition(2, 1, 0), hilbert::transition(2, 0, 1)});
    Matrix h = exch.data + exch.data.adjoint();
    const Operator sigma_minus_aux =
        hilbert::tensor({hilbert::identity(2), hilbert::transition(2, 0, 1)});

    std::vector<int> dims{2, 2};
    const int levels[] = {1, 0};  // |e, g>
    return ModelSpec(Schedule{{kInf, Operator(std::move(h), dims)}},
                     {CollapseChannel(sigma_minus_aux, gamma)},
                     hilbert::basis_state(dims, levels), dims, 0,
                     ground_projector_on(dims, 0));
}

ModelSpec build_two_qubit_cavity(double lambda, double kappa, int n_cavity) {
    if (lambda < 0.0 || kappa < 0.0) {
        throw std::invalid_argument("build_two_qubit_cavity: rates must be >= 0");
    }
    if (n_cavity < 1) {
        throw std::invalid_argument("build_two_qubit_cavity: n_cavity must be >= 1");
    }
    const Operator i2 = hilbert::identity(2);
    const Operator icav = hilbert::identity(n_cavity + 1);
    const Operator exch = hilbert::tensor(
        {hilbert::transition(2, 1, 0), hilbert::transition(2, 0, 1), icav});
    const Operator aux_cav = hilbert::tensor(
        {i2, hilbert::transition(2, 1, 0), hilbert::annihilation(n_cavity)});
    Matrix h = exch.data + lambda * aux_cav.data;
    h += h.adjoint().eval();

    const Operator a_joint = hilbert::tensor({i2, i2, hilbert::annihilation(n_cavity)});

    std::vector<int> dims{2, 2, n_cavity + 1};
    const int levels[] = {1, 0, 0};  // |e, g, 0>
    return ModelSpec(Schedule{{kInf, Operator(std::move(h), dims)}},
                     {CollapseChannel(a_joint, kappa)},
                     hilbert::basis_state(dims, levels), dims, 0,
                     ground_projector_on(dims, 0));
}

namespace {

Matrix ibm_hamiltonian(const IbmParams& p, double delta_c) {
    const Operator it = hilbert::identity(p.n_transmon);
    const Operator a = hilbert::tensor({it, hilbert::annihilation(p.n_cavity)});
    const Operator b = hilbert::tensor(
        {hilbert::annihilation(p.n_transmon - 1), hilbert::identity(p.n_cavity + 1)});
    const Matrix ad = a.data.adjoint();
    const Matrix bd = b.data.adjoint();

    Matrix h = delta_c * (ad * a.data) + p.delta_q * (bd * b.data) +
               (p.alpha / 2.0) * (bd * bd * b.data * b.data);
    Matrix drive = a.data * bd + (p.omega / 2.0) * bd;  // gtilde = 1
    h += drive + drive.adjoint().eval();
    return h;
}

void check_ibm(const IbmParams& p) {
    if (p.n_transmon < 3) {
        throw std::invalid_argument("build_ibm: n_transmon must be >= 3");
    }
    if (p.n_cavity < 1) {
        throw std::invalid_argument("build_ibm: n_cavity must be >= 1");
    }
    if (p.kappa < 0.0 || p.omega < 0.0) {
        throw std::invalid_argument("build_ibm: kappa and omega must be >= 0");
    }
}

} // namespace

double f0g1_resonant_delta_c(const IbmParams& p) {
    check_ibm(p);
    const int nc = p.n_cavity + 1;
    const int i_f0 = 2 * nc;  // |f, 0>
    const int i_g1 = 1;       // |g, 1>

    // Gap between the two eigenvalues whose eigenvectors carry the most
    // |f,0>/|g,1> weight; minimal at the avoided crossing.
    auto gap = [&](double dc) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(ibm_hamiltonian(p, dc));
        const auto& vecs = es.eigenvectors();
        Eigen::VectorXd w = vecs.row(i_f0).cwiseAbs2() + vecs.row(i_g1).cwiseAbs2();
        int first = 0;
        w.maxCoeff(&first);
        w(first) = -1.0;
        int second = 0;
        w.maxCoeff(&second);
        return std::abs(es.eigenvalues()(first) - es.eigenvalues()(second));
    };

    const double bare = 2.0 * p.delta_q + p.alpha;
    const double span = 4.0;
    double best = bare, best_gap = gap(bare);
    for (int i = 0; i <= 160; ++i) {
        const double dc = bare - span + 2.0 * span * i / 160.0;
        const double gp = gap(dc);
        if (gp < best_gap) {
            best = dc;
            best_gap = gp;
        }
    }
    // Golden-section polish on the locally unimodal gap.
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = best - 2.0 * span / 160.0, hi = best + 2.0 * span / 160.0;
    double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
    double g1 = gap(m1), g2 = gap(m2);
    for (int it = 0; it < 80 && hi - lo > 1e-10; ++it) {
        if (g1 < g2) {
            hi = m2; m2 = m1; g2 = g1;
            m1 = hi - phi * (hi - lo);
            g1 = gap(m1);
        } else {
            lo = m1; m1 = m2; g1 = g2;
            m2 = lo + phi * (hi - lo);
            g2 = gap(m2);
        }
    }
    return 0.5 * (lo + hi);
}

ModelSpec build_ibm(const IbmParams& p) {
    check_ibm(p);
    const double dc = p.delta_c ? *p.delta_c : f0g1_resonant_delta_c(p);

    std::vector<int> dims{p.n_transmon, p.n_cavity + 1};
    const Operator a_joint = hilbert::tensor(
        {hilbert::identity(p.n_transmon), hilbert::annihilation(p.n_cavity)});

    std::vector<int> levels{2, 0};  // step-2 start: |f> ⊗ |0>
    return ModelSpec(Schedule{{kInf, Operator(ibm_hamiltonian(p, dc), dims)}},
                     {CollapseChannel(a_joint, p.kappa)},
                     hilbert::basis_state(dims, levels), dims, 0,
                     ground_projector_on(dims, 0));
}

double ground_population(const hilbert::DensityMatrix& rho, const ModelSpec& model) {
    if (rho.dim() != model.dim()) {
        throw std::invalid_argument("ground_population: dimension mismatch");
    }
    return (model.ground_projector.data.cwiseProduct(rho.data.transpose())).sum().real();
}

} // namespace qreset::models
