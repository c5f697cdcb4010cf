// qreset_cli.cpp — simulate / sweep / purcell subcommands
#include "qreset/io.hpp"
#include "qreset/metrics.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using nlohmann::json;
using namespace qreset;

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
constexpr double kIbmStep1Ns = 75.0;  // fixed population-transfer pulse ahead of step 2

struct CommonFlags {
    std::string config_path;
    std::string model, approach, axis1, axis2, coupling_freq;
    double gamma = 0, lambda = 0, kappa = 0, omega = 0, alpha = 0, delta_q = 0, delta_c = 0;
    double threshold = 0, horizon = 0, sample_dt = 0, refine_shrink = 0;
    int n_cavity = 0, n_transmon = 0, workers = 0, refine_count = 0;
    bool refine = false;
    std::string out;
};

io::AxisSpec parse_axis_flag(const std::string& text) {
    // name:lo:hi:count
    std::istringstream ss(text);
    std::string name, lo, hi, count;
    if (!std::getline(ss, name, ':') || !std::getline(ss, lo, ':') ||
        !std::getline(ss, hi, ':') || !std::getline(ss, count)) {
        throw std::invalid_argument("axis flag must be name:lo:hi:count, got '" + text + "'");
    }
    io::AxisSpec a;
    a.name = name;
    a.lo = std::stod(lo);
    a.hi = std::stod(hi);
    a.count = std::stoi(count);
    return a;
}

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file; flags override its values");
    cmd->add_option("--model", f.model, "two_qubit | two_qubit_cavity | ibm");
    cmd->add_option("--gamma", f.gamma, "auxiliary-qubit decay, units of g");
    cmd->add_option("--lambda", f.lambda, "aux-cavity coupling, units of g");
    cmd->add_option("--kappa", f.kappa, "cavity decay, units of g");
    cmd->add_option("--omega", f.omega, "drive amplitude, units of gtilde (ibm)");
    cmd->add_option("--alpha", f.alpha,
                    "anharmonicity: signed coefficient of the (alpha/2) b'b'bb term (ibm)");
    cmd->add_option("--delta-q", f.delta_q, "qubit-drive detuning, units of gtilde (ibm)");
    cmd->add_option("--delta-c", f.delta_c,
                    "cavity-drive detuning (ibm); omit for the Stark-corrected f0-g1 resonance");
    cmd->add_option("--n-cavity", f.n_cavity, "cavity Fock truncation");
    cmd->add_option("--n-transmon", f.n_transmon, "transmon levels (ibm)");
    cmd->add_option("--approach", f.approach, "pulsed | steady");
    cmd->add_option("--threshold", f.threshold, "ground-population threshold (default 0.98)");
    cmd->add_option("--horizon", f.horizon, "time cap g*t (default 400)");
    cmd->add_option("--sample-dt", f.sample_dt, "sample spacing, units of 1/g (default 0.01)");
    cmd->add_option("--axis1", f.axis1, "sweep axis, name:lo:hi:count");
    cmd->add_option("--axis2", f.axis2, "second sweep axis, name:lo:hi:count");
    cmd->add_flag("--refine", f.refine, "refine the sweep optimum in a shrunk window");
    cmd->add_option("--refine-shrink", f.refine_shrink, "refinement window fraction (default 0.1)");
    cmd->add_option("--refine-count", f.refine_count, "refinement grid points (default 41)");
    cmd->add_option("--coupling-freq", f.coupling_freq,
                    "physical nu_g with unit suffix (e.g. 67MHz) for ns conversion; plain "
                    "frequency, the 2*pi is applied internally");
    cmd->add_option("--workers", f.workers, "sweep worker threads (0: all cores)");
    cmd->add_option("--out", f.out, "output path prefix");
}

io::RunConfig merge_config(const CLI::App* cmd, const CommonFlags& f) {
    io::RunConfig cfg;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) {
            throw std::invalid_argument("cannot read config file '" + f.config_path + "'");
        }
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw std::invalid_argument("config file '" + f.config_path + "': " + e.what());
        }
        cfg = io::config_from_json(j, cfg);
    }
    json flags;  // flags win over file values
    if (cmd->count("--model")) flags["model"] = f.model;
    if (cmd->count("--gamma")) flags["gamma"] = f.gamma;
    if (cmd->count("--lambda")) flags["lambda"] = f.lambda;
    if (cmd->count("--kappa")) flags["kappa"] = f.kappa;
    if (cmd->count("--omega")) flags["omega"] = f.omega;
    if (cmd->count("--alpha")) flags["alpha"] = f.alpha;
    if (cmd->count("--delta-q")) flags["delta_q"] = f.delta_q;
    if (cmd->count("--delta-c")) flags["delta_c"] = f.delta_c;
    if (cmd->count("--n-transmon")) flags["n_transmon"] = f.n_transmon;
    if (cmd->count("--approach")) flags["approach"] = f.approach;
    if (cmd->count("--threshold")) flags["threshold"] = f.threshold;
    if (cmd->count("--horizon")) flags["horizon"] = f.horizon;
    if (cmd->count("--sample-dt")) flags["sample_dt"] = f.sample_dt;
    if (cmd->count("--refine")) flags["refine"] = true;
    if (cmd->count("--refine-shrink")) flags["refine_shrink"] = f.refine_shrink;
    if (cmd->count("--refine-count")) flags["refine_count"] = f.refine_count;
    if (cmd->count("--workers")) flags["workers"] = f.workers;
    if (cmd->count("--out")) flags["out"] = f.out;
    cfg = io::config_from_json(flags, cfg);

    // Options whose meaning depends on the model resolved above.
    if (cmd->count("--n-cavity")) {
        if (cfg.model == io::ModelKind::Ibm) cfg.ibm_n_cavity = f.n_cavity;
        else cfg.n_cavity = f.n_cavity;
    }
    if (cmd->count("--axis1")) cfg.axis1 = parse_axis_flag(f.axis1);
    if (cmd->count("--axis2")) cfg.axis2 = parse_axis_flag(f.axis2);
    if (cmd->count("--coupling-freq")) {
        const io::Quantity q = io::parse_quantity(f.coupling_freq);
        cfg.coupling_freq_hz = q.has_unit ? q.hz : q.value;
    }
    return cfg;
}

json outcome_json(const metrics::ResetOutcome& out) {
    json j;
    j["status"] = out.finite ? "ok" : "unreset";
    if (out.finite) j["t_stop"] = out.t_stop;
    return j;
}

void add_ns_report(json& j, const io::RunConfig& cfg, const metrics::ResetOutcome& out) {
    if (!cfg.coupling_freq_hz || !out.finite) return;
    const double step_ns = io::dimensionless_to_ns(out.t_stop, *cfg.coupling_freq_hz);
    json ns;
    if (cfg.model == io::ModelKind::Ibm) {
        ns["step1_ns"] = kIbmStep1Ns;
        ns["step2_ns"] = step_ns;
        ns["total_ns"] = kIbmStep1Ns + step_ns;
    } else {
        ns["t_ns"] = step_ns;
    }
    j["ns"] = ns;
}

int cmd_simulate(const CLI::App* cmd, const CommonFlags& f) {
    const io::RunConfig cfg = merge_config(cmd, f);
    const auto model = io::build_model(cfg);
    const auto traj = lindblad::integrate(model, cfg.horizon, cfg.sample_dt);

    const auto pulsed = metrics::detect_pulsed(model, traj, cfg.threshold);
    const auto steady = metrics::detect_steady(model, traj, cfg.threshold, cfg.horizon);

    io::write_trajectory_csv(cfg.out + "_trajectory.csv", traj);

    json summary;
    summary["config"] = io::config_to_json(cfg);
    summary["threshold"] = cfg.threshold;
    summary["pulsed"] = outcome_json(pulsed);
    summary["steady"] = outcome_json(steady);
    add_ns_report(summary["pulsed"], cfg, pulsed);
    add_ns_report(summary["steady"], cfg, steady);

    std::ofstream out(cfg.out + "_summary.json");
    out << summary.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("write failed for '" + cfg.out + "_summary.json'");
    }
    std::cout << "wrote " << cfg.out << "_trajectory.csv and " << cfg.out
              << "_summary.json\n";
    return 0;
}

int cmd_sweep(const CLI::App* cmd, const CommonFlags& f) {
    const io::RunConfig cfg = merge_config(cmd, f);
    if (!cfg.axis1) {
        throw std::invalid_argument("sweep: --axis1 name:lo:hi:count is required");
    }
    sweep::SweepRequest req;
    req.factory = io::make_factory(cfg);
    req.axis1 = sweep::linspace_axis(cfg.axis1->name, cfg.axis1->lo, cfg.axis1->hi,
                                     cfg.axis1->count);
    if (cfg.axis2) {
        req.axis2 = sweep::linspace_axis(cfg.axis2->name, cfg.axis2->lo, cfg.axis2->hi,
                                         cfg.axis2->count);
    }
    req.approach = cfg.approach;
    req.threshold = cfg.threshold;
    req.horizon = cfg.horizon;
    req.sample_dt = cfg.sample_dt;
    req.workers = cfg.workers;

    const auto grid = sweep::sweep(req);
    io::write_grid_csv(cfg.out + "_grid.csv", grid);

    json summary;
    summary["config"] = io::config_to_json(cfg);
    json opt;
    try {
        const auto best = sweep::find_optimum(grid);
        opt["status"] = "ok";
        opt["t_stop"] = best.t_stop;
        opt["params"][req.axis1.name] = best.params[0];
        if (req.axis2) opt["params"][req.axis2->name] = best.params[1];
        if (cfg.refine) {
            const auto fine =
                sweep::refine_optimum(req, best, cfg.refine_shrink, cfg.refine_count);
            json r;
            r["t_stop"] = fine.t_stop;
            r["params"][req.axis1.name] = fine.params[0];
            if (req.axis2) r["params"][req.axis2->name] = fine.params[1];
            summary["refined"] = r;
        }
    } catch (const std::runtime_error&) {
        opt["status"] = "unreset";  // no finite cell anywhere
    }
    summary["optimum"] = opt;

    std::ofstream out(cfg.out + "_optimum.json");
    out << summary.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("write failed for '" + cfg.out + "_optimum.json'");
    }
    std::cout << "wrote " << cfg.out << "_grid.csv and " << cfg.out << "_optimum.json\n";
    return 0;
}

struct PurcellFlags {
    std::string detuning, g, rate, lambda, kappa, t_target;
    bool as_json = false;
};

// Angular rate from a quantity: 2*pi*nu for physical frequencies, the raw value
// (already in units of g) otherwise.
double angular(const io::Quantity& q) { return q.has_unit ? kTwoPi * q.hz : q.value; }

int cmd_purcell(const PurcellFlags& f) {
    json out;
    std::optional<double> rate_ang;
    bool rate_physical = false;

    if (!f.lambda.empty() || !f.kappa.empty()) {
        if (f.lambda.empty() || f.kappa.empty()) {
            throw std::invalid_argument("purcell: --lambda and --kappa must be given together");
        }
        const auto lam = io::parse_quantity(f.lambda);
        const auto kap = io::parse_quantity(f.kappa);
        if (lam.has_unit != kap.has_unit) {
            throw std::invalid_argument("purcell: --lambda and --kappa must share units");
        }
        const double gamma_eff = purcell::effective_decay(angular(lam), angular(kap));
        rate_ang = gamma_eff;
        rate_physical = lam.has_unit;
        out["gamma_eff"] = rate_physical ? json{{"rad_per_s", gamma_eff},
                                                {"hz", gamma_eff / kTwoPi}}
                                         : json{{"dimensionless", gamma_eff}};
    }
    if (!f.rate.empty()) {
        const auto q = io::parse_quantity(f.rate);
        rate_ang = angular(q);
        rate_physical = q.has_unit;
    }

    if (!f.detuning.empty()) {
        if (f.g.empty() || !rate_ang) {
            throw std::invalid_argument(
                "purcell: T_Purcell needs --detuning, --g, and --rate (or --lambda/--kappa)");
        }
        const auto det = io::parse_quantity(f.detuning);
        const auto g = io::parse_quantity(f.g);
        if (det.has_unit != g.has_unit) {
            throw std::invalid_argument("purcell: --detuning and --g must share units");
        }
        const double t = purcell::purcell_time(
            {angular(det), angular(g), *rate_ang});
        if (rate_physical) {
            out["t_purcell"] = json{{"seconds", t}, {"us", t * 1e6}};
        } else {
            out["t_purcell"] = json{{"dimensionless", t}};
        }
        const double round_trip = purcell::required_detuning(t, angular(g), *rate_ang);
        out["detuning_round_trip"] = det.has_unit ? round_trip / kTwoPi : round_trip;
    }

    if (!f.t_target.empty()) {
        if (f.g.empty() || !rate_ang) {
            throw std::invalid_argument(
                "purcell: required detuning needs --t-target, --g, and a rate");
        }
        const auto g = io::parse_quantity(f.g);
        const auto tq = io::parse_quantity(f.t_target);  // seconds when g is physical
        const double delta = purcell::required_detuning(tq.value, angular(g), *rate_ang);
        if (g.has_unit) {
            out["required_detuning"] = json{{"rad_per_s", delta},
                                            {"ghz", delta / kTwoPi / 1e9}};
        } else {
            out["required_detuning"] = json{{"dimensionless", delta}};
        }
    }

    if (out.empty()) {
        throw std::invalid_argument("purcell: nothing to compute; see --help");
    }
    if (f.as_json) {
        std::cout << out.dump(2) << '\n';
    } else {
        for (const auto& [key, value] : out.items()) {
            std::cout << key << ": ";
            if (value.is_object()) {
                bool first = true;
                for (const auto& [unit, v] : value.items()) {
                    std::cout << (first ? "" : "  ") << io::format_double(v.get<double>())
                              << " " << unit;
                    first = false;
                }
            } else {
                std::cout << io::format_double(value.get<double>());
            }
            std::cout << '\n';
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lindblad-equation simulator and optimizer for superconducting-qubit reset"};
    app.require_subcommand(1);

    CommonFlags sim_flags, sweep_flags;
    auto* sim = app.add_subcommand("simulate", "integrate one configuration and detect reset");
    add_common_flags(sim, sim_flags);
    auto* swp = app.add_subcommand("sweep", "evaluate reset time over a parameter grid");
    add_common_flags(swp, sweep_flags);

    PurcellFlags pf;
    auto* pur = app.add_subcommand("purcell", "closed-form Purcell feasibility numbers");
    pur->add_option("--detuning", pf.detuning, "idle detuning Delta (unit suffix allowed)");
    pur->add_option("--g", pf.g, "coupling g (unit suffix allowed)");
    pur->add_option("--rate", pf.rate, "induced rate gamma or Gamma_eff");
    pur->add_option("--lambda", pf.lambda, "aux-cavity coupling for Gamma_eff");
    pur->add_option("--kappa", pf.kappa, "cavity decay for Gamma_eff");
    pur->add_option("--t-target", pf.t_target,
                    "target Purcell time (seconds when --g carries a unit)");
    pur->add_flag("--json", pf.as_json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim, sim_flags);
        if (swp->parsed()) return cmd_sweep(swp, sweep_flags);
        if (pur->parsed()) return cmd_purcell(pf);
    } catch (const lindblad::StepSizeUnderflow& e) {
        std::cerr << "error: integrator failed: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
