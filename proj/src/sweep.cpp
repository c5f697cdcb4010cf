// sweep.cpp — Grid evaluation, optimum location, and window refinement
#include "qreset/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace qreset::sweep {

using lindblad::IntegrateOptions;
using lindblad::Trajectory;
using metrics::ResetOutcome;

Axis linspace_axis(std::string name, double lo, double hi, int count) {
    if (count < 2) {
        throw std::invalid_argument("linspace_axis: count must be >= 2");
    }
    if (!(hi > lo)) {
        throw std::invalid_argument("linspace_axis: range must have positive length");
    }
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) {
        v[i] = lo + (hi - lo) * i / (count - 1);
    }
    return {std::move(name), std::move(v)};
}

const Cell& SweepGrid::at(std::size_t i1, std::size_t i2) const {
    const std::size_t n2 = axis2 ? axis2->values.size() : 1;
    return cells.at(i1 * n2 + i2);
}

Cell evaluate_cell(const lindblad::ModelSpec& model, Approach approach, double threshold,
                   double horizon, double sample_dt) {
    IntegrateOptions opts;
    if (approach == Approach::Pulsed) {
        opts.stop_at_pg = threshold - metrics::kGrazeTol;  // first crossing ends the run
    }
    const Trajectory traj = lindblad::integrate(model, horizon, sample_dt, opts);
    const ResetOutcome out =
        approach == Approach::Pulsed
            ? metrics::detect_pulsed(model, traj, threshold)
            : metrics::detect_steady(model, traj, threshold, horizon);
    if (!out.finite) {
        return {CellStatus::Unreset, 0.0, {}};
    }
    return {CellStatus::Ok, out.t_stop, {}};
}

namespace {

void check_axis(const Axis& axis) {
    if (axis.values.size() < 2) {
        throw std::invalid_argument("sweep: axes need at least 2 values");
    }
    for (std::size_t i = 1; i < axis.values.size(); ++i) {
        if (!(axis.values[i] > axis.values[i - 1])) {
            throw std::invalid_argument("sweep: axis values must be strictly increasing");
        }
    }
}

} // namespace

SweepGrid sweep(const SweepRequest& req) {
    if (!req.factory) {
        throw std::invalid_argument("sweep: missing model factory");
    }
    check_axis(req.axis1);
    if (req.axis2) check_axis(*req.axis2);

    const std::size_t n1 = req.axis1.values.size();
    const std::size_t n2 = req.axis2 ? req.axis2->values.size() : 1;
    const std::size_t total = n1 * n2;

    SweepGrid grid{req.axis1, req.axis2, std::vector<Cell>(total), req.approach,
                   req.threshold, req.horizon};

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
            const std::size_t i1 = idx / n2;
            const std::size_t i2 = idx % n2;
            double params[2] = {req.axis1.values[i1],
                                req.axis2 ? req.axis2->values[i2] : 0.0};
            try {
                const auto model =
                    req.factory(std::span<const double>(params, req.axis2 ? 2 : 1));
                grid.cells[idx] = evaluate_cell(model, req.approach, req.threshold,
                                                req.horizon, req.sample_dt);
            } catch (const std::exception& e) {
                grid.cells[idx] = {CellStatus::Error, 0.0, e.what()};
            }
        }
    };

    unsigned n_workers = req.workers > 0 ? static_cast<unsigned>(req.workers)
                                         : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(total));
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    return grid;
}

Optimum find_optimum(const SweepGrid& grid) {
    const std::size_t n2 = grid.axis2 ? grid.axis2->values.size() : 1;
    std::optional<Optimum> best;
    for (std::size_t i1 = 0; i1 < grid.axis1.values.size(); ++i1) {
        for (std::size_t i2 = 0; i2 < n2; ++i2) {
            const Cell& c = grid.cells[i1 * n2 + i2];
            if (c.status != CellStatus::Ok) continue;
            // Strict `<` keeps the smallest axis1 (then axis2) value on ties because
            // of the scan order.
            if (!best || c.t_stop < best->t_stop) {
                Optimum o;
                o.params = {grid.axis1.values[i1]};
                o.indices = {i1};
                if (grid.axis2) {
                    o.params.push_back(grid.axis2->values[i2]);
                    o.indices.push_back(i2);
                }
                o.t_stop = c.t_stop;
                best = std::move(o);
            }
        }
    }
    if (!best) {
        throw std::runtime_error("find_optimum: no finite cell in grid");
    }
    return *best;
}

namespace {

Axis refine_axis(const Axis& orig, double center, double shrink, int count) {
    const double range = orig.values.back() - orig.values.front();
    const double lo = std::max(orig.values.front(), center - shrink * range);
    const double hi = std::min(orig.values.back(), center + shrink * range);
    Axis axis = linspace_axis(orig.name, lo, hi, count);
    // Keep the coarse optimum itself on the grid so the refined result can never
    // regress past detector tolerance.
    const double eps = 1e-12 * std::max(1.0, std::abs(center));
    auto it = std::lower_bound(axis.values.begin(), axis.values.end(), center - eps);
    if (it == axis.values.end() || std::abs(*it - center) > eps) {
        axis.values.insert(it, center);
    }
    return axis;
}

} // namespace

Optimum refine_optimum(const SweepRequest& req, const Optimum& coarse, double shrink,
                       int count) {
    if (!(shrink > 0.0)) {
        throw std::invalid_argument("refine_optimum: shrink must be positive");
    }
    SweepRequest fine = req;
    fine.axis1 = refine_axis(req.axis1, coarse.params.at(0), shrink, count);
    if (req.axis2) {
        fine.axis2 = refine_axis(*req.axis2, coarse.params.at(1), shrink, count);
    }
    if (fine.axis1.values.back() - fine.axis1.values.front() < 1e-12) {
        throw std::runtime_error("refine_optimum: window collapsed below resolution");
    }
    return find_optimum(sweep(fine));
}

} // namespace qreset::sweep
