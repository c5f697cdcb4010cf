// sweep.hpp — Reset-time evaluation over 1D/2D parameter grids with a worker pool
#pragma once

#include "qreset/metrics.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qreset::sweep {

using metrics::Approach;

struct Axis {
    std::string name;
    std::vector<double> values;  // strictly increasing
};

Axis linspace_axis(std::string name, double lo, double hi, int count);

enum class CellStatus { Ok, Unreset, Error };

struct Cell {
    CellStatus status = CellStatus::Unreset;
    double t_stop = 0.0;      // valid when status == Ok
    std::string error;        // set when status == Error
};

// Builds the model for one grid point; params has one entry per axis.
using ModelFactory = std::function<lindblad::ModelSpec(std::span<const double>)>;

struct SweepRequest {
    ModelFactory factory;
    Axis axis1;
    std::optional<Axis> axis2{};
    Approach approach = Approach::SteadyState;
    double threshold = 0.98;
    double horizon = 400.0;
    double sample_dt = 0.01;
    int workers = 0;  // 0: hardware concurrency
};

struct SweepGrid {
    Axis axis1;
    std::optional<Axis> axis2;
    std::vector<Cell> cells;  // row-major: index = i1 * |axis2| + i2
    Approach approach = Approach::SteadyState;
    double threshold = 0.98;
    double horizon = 400.0;

    std::size_t cell_count() const { return cells.size(); }
    const Cell& at(std::size_t i1, std::size_t i2 = 0) const;
};

// Evaluate every cell (integrate + detect). Per-cell failures are recorded as
// Error cells, never aborting the sweep; results are deterministic and
// independent of worker count.
SweepGrid sweep(const SweepRequest& req);

struct Optimum {
    std::vector<double> params;
    double t_stop = 0.0;
    std::vector<std::size_t> indices;
};

// Finite cell with minimal t_stop; ties broken towards smaller axis values.
// Throws if every cell is Unreset or Error.
Optimum find_optimum(const SweepGrid& grid);

// Re-sweep a window of ±shrink×range around the coarse optimum (clipped to the
// original axis range, coarse point included) and return the refined optimum.
Optimum refine_optimum(const SweepRequest& req, const Optimum& coarse, double shrink,
                       int count);

// One cell: integrate to the horizon and detect under the chosen approach.
Cell evaluate_cell(const lindblad::ModelSpec& model, Approach approach, double threshold,
                   double horizon, double sample_dt);

} // namespace qreset::sweep
