#include "qreset/metrics.hpp"
#include "qreset/models.hpp"

#include "analytic_oracle.hpp"
#include "doctest.h"

#include <cmath>
#include <functional>

using namespace qreset;
using lindblad::Trajectory;
using metrics::Approach;
using metrics::ResetOutcome;

namespace {

// Sample an analytic curve into a Trajectory; the same function doubles as the
// bisection evaluator, so detection is exact up to the refinement tolerance.
Trajectory sample(const std::function<double(double)>& f, double t_end, double dt) {
    Trajectory traj;
    const long n = static_cast<long>(std::ceil(t_end / dt - 1e-9));
    for (long i = 0; i <= n; ++i) {
        const double t = (i == n) ? t_end : i * dt;
        traj.times.push_back(t);
        traj.pg.push_back(f(t));
    }
    return traj;
}

} // namespace

TEST_CASE("pulsed detection on the undamped Rabi curve") {
    const auto f = [](double t) { return std::sin(t) * std::sin(t); };
    const auto traj = sample(f, 10.0, 0.01);
    const auto out = metrics::detect_pulsed(traj, 0.98, f);
    REQUIRE(out.finite);
    CHECK(out.t_stop == doctest::Approx(std::asin(std::sqrt(0.98))).epsilon(1e-4));
    CHECK(out.threshold == 0.98);
}

TEST_CASE("monotone curve: pulsed and steady agree at ln(50)") {
    const auto f = [](double t) { return 1.0 - std::exp(-t); };
    const auto traj = sample(f, 400.0, 0.05);
    const auto pulsed = metrics::detect_pulsed(traj, 0.98, f);
    const auto steady = metrics::detect_steady(traj, 0.98, 400.0, f);
    REQUIRE(pulsed.finite);
    REQUIRE(steady.finite);
    CHECK(pulsed.t_stop == doctest::Approx(std::log(50.0)).epsilon(1e-4));
    CHECK(std::abs(pulsed.t_stop - steady.t_stop) < 2e-4);
}

TEST_CASE("steady detection waits out recurrences") {
    const double gamma = 0.5;
    const auto f = [gamma](double t) { return oracle::two_qubit_pg(gamma, t); };
    const auto traj = sample(f, 400.0, 0.01);
    const auto pulsed = metrics::detect_pulsed(traj, 0.98, f);
    const auto steady = metrics::detect_steady(traj, 0.98, 400.0, f);
    REQUIRE(pulsed.finite);
    REQUIRE(steady.finite);
    CHECK(pulsed.t_stop < steady.t_stop);
    // after t_stop the curve never dips below threshold again
    for (double t = steady.t_stop; t < 400.0; t += 0.01) {
        CHECK(f(t) >= 0.98 - 2e-9);
    }
}

TEST_CASE("unreset outcomes") {
    const auto f = [](double t) { return std::sin(t) * std::sin(t); };  // recurs forever
    const auto traj = sample(f, 400.0, 0.05);
    const auto steady = metrics::detect_steady(traj, 0.98, 400.0, f);
    CHECK_FALSE(steady.finite);

    const auto low = [](double) { return 0.5; };
    const auto flat = sample(low, 400.0, 0.5);
    CHECK_FALSE(metrics::detect_pulsed(flat, 0.98, low).finite);
    CHECK_FALSE(metrics::detect_steady(flat, 0.98, 400.0, low).finite);
}

TEST_CASE("threshold monotonicity") {
    for (double gamma : {0.8, 2.5, 6.0}) {
        const auto f = [gamma](double t) { return oracle::two_qubit_pg(gamma, t); };
        const auto traj = sample(f, 400.0, 0.01);
        const auto p98 = metrics::detect_pulsed(traj, 0.98, f);
        const auto p995 = metrics::detect_pulsed(traj, 0.995, f);
        const auto s98 = metrics::detect_steady(traj, 0.98, 400.0, f);
        const auto s995 = metrics::detect_steady(traj, 0.995, 400.0, f);
        REQUIRE(p98.finite);
        REQUIRE(p995.finite);
        CHECK(p995.t_stop >= p98.t_stop - 1e-9);
        REQUIRE(s98.finite);
        REQUIRE(s995.finite);
        CHECK(s995.t_stop >= s98.t_stop - 1e-9);
    }
}

TEST_CASE("detection is invariant under sample-grid refinement") {
    for (double gamma : {0.5, 2.13}) {
        const auto f = [gamma](double t) { return oracle::two_qubit_pg(gamma, t); };
        const auto coarse = sample(f, 400.0, 0.02);
        const auto fine = sample(f, 400.0, 0.01);
        const auto pc = metrics::detect_pulsed(coarse, 0.98, f);
        const auto pf = metrics::detect_pulsed(fine, 0.98, f);
        CHECK(std::abs(pc.t_stop - pf.t_stop) < 5e-4);
        const auto sc = metrics::detect_steady(coarse, 0.98, 400.0, f);
        const auto sf = metrics::detect_steady(fine, 0.98, 400.0, f);
        REQUIRE(sc.finite == sf.finite);
        if (sc.finite) {
            CHECK(std::abs(sc.t_stop - sf.t_stop) < 5e-4);
        }
    }
}

TEST_CASE("grazing contact counts as a crossing") {
    // local max exactly threshold - 5e-10 at t = 2 (inside the grazing band)
    const double th = 0.98;
    const auto graze = [th](double t) { return th - 5e-10 - 0.1 * (t - 2.0) * (t - 2.0); };
    const auto traj = sample(graze, 4.0, 0.5);  // t = 2.0 is a sample point
    const auto out = metrics::detect_pulsed(traj, th, graze);
    REQUIRE(out.finite);
    CHECK(out.t_stop == doctest::Approx(2.0).epsilon(1e-3));

    // a miss by 1e-6 does not count
    const auto miss = [th](double t) { return th - 1e-6 - 0.1 * (t - 2.0) * (t - 2.0); };
    const auto traj2 = sample(miss, 4.0, 0.5);
    CHECK_FALSE(metrics::detect_pulsed(traj2, th, miss).finite);
}

TEST_CASE("refinement against the live integrator") {
    const auto model = models::build_two_qubit(0.0);
    const auto traj = lindblad::integrate(model, 5.0, 0.05);
    const auto out = metrics::detect_pulsed(model, traj, 0.98);
    REQUIRE(out.finite);
    CHECK(out.t_stop == doctest::Approx(std::asin(std::sqrt(0.98))).epsilon(2e-5));
}

TEST_CASE("detector preconditions") {
    Trajectory empty;
    const auto f = [](double) { return 0.0; };
    CHECK_THROWS_AS(metrics::detect_pulsed(empty, 0.98, f), std::invalid_argument);

    const auto short_traj = sample([](double t) { return t; }, 1.0, 0.1);
    CHECK_THROWS_AS(metrics::detect_steady(short_traj, 0.98, 400.0, f),
                    std::invalid_argument);
}
