#include "qreset/models.hpp"
#include "qreset/metrics.hpp"

#include "doctest.h"

using namespace qreset;
using hilbert::Complex;
using hilbert::Matrix;

TEST_CASE("two-qubit model structure") {
    const auto model = models::build_two_qubit(3.0);
    CHECK(model.dims == std::vector<int>{2, 2});

    const Matrix& h = model.hamiltonian[0].hamiltonian.data;
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

    // exactly two off-diagonal unit entries coupling |e,g> (idx 2) and |g,e> (idx 1)
    int nonzero = 0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (std::abs(h(i, j)) > 0) ++nonzero;
        }
    }
    CHECK(nonzero == 2);
    CHECK(std::abs(h(2, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(h(1, 2)) == doctest::Approx(1.0));

    CHECK(model.initial.data(2, 2).real() == doctest::Approx(1.0));
    CHECK(models::ground_population(model.initial, model) == doctest::Approx(0.0));

    CHECK_THROWS_AS(models::build_two_qubit(-0.1), std::invalid_argument);
}

TEST_CASE("two-qubits-cavity model conserves total excitation") {
    const int nc = 2;
    const auto model = models::build_two_qubit_cavity(2.5, 7.0, nc);
    CHECK(model.dims == std::vector<int>{2, 2, nc + 1});

    const auto num_m = hilbert::tensor({hilbert::transition(2, 1, 1), hilbert::identity(2),
                                        hilbert::identity(nc + 1)});
    const auto num_a = hilbert::tensor({hilbert::identity(2), hilbert::transition(2, 1, 1),
                                        hilbert::identity(nc + 1)});
    const auto a = hilbert::tensor({hilbert::identity(2), hilbert::identity(2),
                                    hilbert::annihilation(nc)});
    const Matrix n_total = num_m.data + num_a.data + a.data.adjoint() * a.data;

    const Matrix& h = model.hamiltonian[0].hamiltonian.data;
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((h * n_total - n_total * h).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(models::build_two_qubit_cavity(1.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("cavity truncation is exact for a single excitation") {
    const auto small = models::build_two_qubit_cavity(1.5, 4.0, 1);
    const auto large = models::build_two_qubit_cavity(1.5, 4.0, 5);
    const auto t_small = lindblad::integrate(small, 15.0, 0.05);
    const auto t_large = lindblad::integrate(large, 15.0, 0.05);
    double worst = 0.0;
    for (std::size_t i = 0; i < t_small.pg.size(); ++i) {
        worst = std::max(worst, std::abs(t_small.pg[i] - t_large.pg[i]));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("populations outside the 0/1-excitation sector stay dark") {
    const int nc = 2;
    const auto model = models::build_two_qubit_cavity(2.0, 3.0, nc);
    lindblad::IntegrateOptions opts;
    opts.store_states = true;
    const auto traj = lindblad::integrate(model, 10.0, 0.1, opts);

    // diagonal indices with total excitation >= 2
    std::vector<int> hot;
    for (int m = 0; m < 2; ++m) {
        for (int a = 0; a < 2; ++a) {
            for (int n = 0; n <= nc; ++n) {
                if (m + a + n >= 2) hot.push_back((m * 2 + a) * (nc + 1) + n);
            }
        }
    }
    for (const auto& rho : traj.states) {
        double leak = 0.0;
        for (int idx : hot) leak += rho(idx, idx).real();
        CHECK(leak < 1e-12);
    }
}

TEST_CASE("ibm model structure and stationarity without drive") {
    models::IbmParams p;
    p.n_cavity = 2;
    const auto model = models::build_ibm(p);
    CHECK(model.dims == std::vector<int>{p.n_transmon, p.n_cavity + 1});

    const Matrix& h = model.hamiltonian[0].hamiltonian.data;
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

    // initial state |f,0> has zero ground population
    CHECK(models::ground_population(model.initial, model) == doctest::Approx(0.0));

    // without the drive and far off resonance, |f,0> barely moves
    models::IbmParams off;
    off.omega = 0.0;
    off.n_cavity = 2;
    off.delta_c = 120.0;
    const auto idle = models::build_ibm(off);
    const auto traj = lindblad::integrate(idle, 20.0, 0.1);
    for (double pg : traj.pg) {
        CHECK(pg < 1e-3);
    }
}

TEST_CASE("ibm projector counts any cavity state") {
    models::IbmParams p;
    p.n_cavity = 2;
    const auto model = models::build_ibm(p);
    const int g1[] = {0, 1};
    const auto rho = hilbert::basis_state({p.n_transmon, p.n_cavity + 1}, g1);
    CHECK(models::ground_population(rho, model) == doctest::Approx(1.0));
}

TEST_CASE("ground population of a mixed main qubit") {
    const auto model = models::build_two_qubit(1.0);
    Matrix mixed = Matrix::Zero(4, 4);
    // (I/2)_main ⊗ |g><g|_aux
    mixed(0, 0) = 0.5;
    mixed(2, 2) = 0.5;
    CHECK(models::ground_population({mixed, {2, 2}}, model) == doctest::Approx(0.5));
}

TEST_CASE("ibm default delta_c sits on the dressed resonance, not the bare formula") {
    models::IbmParams p;
    p.n_cavity = 2;
    const double bare = 2.0 * p.delta_q + p.alpha;
    const double dressed = models::f0g1_resonant_delta_c(p);
    CHECK(std::abs(dressed - bare) < 1.0);   // a Stark correction, not a different branch
    CHECK(std::abs(dressed - bare) > 1e-4);  // but measurably shifted
}

TEST_CASE("ibm truncation convergence gate") {
    // Reset time must be insensitive to adding one transmon level and one Fock state.
    const auto detect = [](int nt, int nc) {
        models::IbmParams p;
        p.kappa = 0.04;
        p.n_transmon = nt;
        p.n_cavity = nc;
        const auto model = models::build_ibm(p);
        lindblad::IntegrateOptions opts;
        opts.stop_at_pg = 0.98 - metrics::kGrazeTol;
        const auto traj = lindblad::integrate(model, 120.0, 0.05, opts);
        const auto out = metrics::detect_pulsed(model, traj, 0.98);
        REQUIRE(out.finite);
        return out.t_stop;
    };
    const double coarse = detect(4, 2);
    const double fine = detect(5, 3);
    CHECK(std::abs(fine - coarse) / coarse < 1e-3);
}

TEST_CASE("ibm parameter validation") {
    models::IbmParams p;
    p.n_transmon = 2;
    CHECK_THROWS_AS(models::build_ibm(p), std::invalid_argument);
    p.n_transmon = 4;
    p.kappa = -1.0;
    CHECK_THROWS_AS(models::build_ibm(p), std::invalid_argument);
}
