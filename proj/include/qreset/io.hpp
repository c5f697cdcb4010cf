// io.hpp — Run configuration, unit handling, and CSV/JSON serialization
#pragma once

#include "qreset/models.hpp"
#include "qreset/sweep.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace qreset::io {

enum class ModelKind { TwoQubit, TwoQubitCavity, Ibm };

struct AxisSpec {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

// Effective run configuration after merging defaults, config file, and flags.
struct RunConfig {
    ModelKind model = ModelKind::TwoQubit;

    // two-qubit
    double gamma = 1.0;
    // two-qubits-cavity
    double lambda = 1.0;
    double kappa = 1.0;
    int n_cavity = 1;
    // ibm (kappa shared above)
    double omega = models::IbmParams{}.omega;
    double alpha = models::IbmParams{}.alpha;
    double delta_q = models::IbmParams{}.delta_q;
    std::optional<double> delta_c{};
    int n_transmon = 4;
    int ibm_n_cavity = 5;

    sweep::Approach approach = sweep::Approach::SteadyState;
    double threshold = 0.98;
    double horizon = 400.0;
    double sample_dt = 0.01;

    std::optional<AxisSpec> axis1{};
    std::optional<AxisSpec> axis2{};
    bool refine = false;
    double refine_shrink = 0.1;
    int refine_count = 41;

    std::optional<double> coupling_freq_hz{};  // physical nu_g for ns conversion
    int workers = 0;
    std::string out = "qreset";
};

// Number with an optional frequency unit ("2.5GHz", "10MHz", "0.5" → dimensionless).
struct Quantity {
    double value = 0.0;      // as written, in the unit given
    double hz = 0.0;         // value converted to Hz; 0 when dimensionless
    bool has_unit = false;
};

Quantity parse_quantity(const std::string& text);

// (g·t) → nanoseconds at physical coupling frequency nu_g (Hz): t_ns = gt/(2π·ν)·1e9.
double dimensionless_to_ns(double gt, double nu_hz);
double ns_to_dimensionless(double t_ns, double nu_hz);

// Locale-independent shortest-correct formatting at 12 significant digits.
std::string format_double(double v);

// Config <-> JSON (fixed key names; used for the --config file and the summary echo).
RunConfig config_from_json(const nlohmann::json& j, RunConfig base);
nlohmann::json config_to_json(const RunConfig& cfg);

// Model construction from the effective config; `overrides` substitutes the values
// of the named sweep axes (axis order = axis1, axis2).
lindblad::ModelSpec build_model(const RunConfig& cfg);
sweep::ModelFactory make_factory(const RunConfig& cfg);

// Writers. CSV columns carry 12 significant digits.
void write_trajectory_csv(const std::string& path, const lindblad::Trajectory& traj);
void write_grid_csv(const std::string& path, const sweep::SweepGrid& grid);

const char* model_name(ModelKind m);
const char* approach_name(sweep::Approach a);

} // namespace qreset::io
