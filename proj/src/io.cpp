// io.cpp — Config merging, unit parsing, and output serialization
#include "qreset/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace qreset::io {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

ModelKind model_from_name(const std::string& s) {
    if (s == "two_qubit") return ModelKind::TwoQubit;
    if (s == "two_qubit_cavity") return ModelKind::TwoQubitCavity;
    if (s == "ibm") return ModelKind::Ibm;
    throw std::invalid_argument("unknown model '" + s + "'");
}

sweep::Approach approach_from_name(const std::string& s) {
    if (s == "pulsed") return sweep::Approach::Pulsed;
    if (s == "steady") return sweep::Approach::SteadyState;
    throw std::invalid_argument("unknown approach '" + s + "' (pulsed|steady)");
}

AxisSpec axis_from_json(const json& j) {
    AxisSpec a;
    a.name = j.at("name").get<std::string>();
    a.lo = j.at("lo").get<double>();
    a.hi = j.at("hi").get<double>();
    a.count = j.at("count").get<int>();
    if (a.count < 2) {
        throw std::invalid_argument("axis '" + a.name + "': count must be >= 2");
    }
    if (!(a.hi > a.lo)) {
        throw std::invalid_argument("axis '" + a.name + "': hi must exceed lo");
    }
    return a;
}

json axis_to_json(const AxisSpec& a) {
    return json{{"name", a.name}, {"lo", a.lo}, {"hi", a.hi}, {"count", a.count}};
}

} // namespace

const char* model_name(ModelKind m) {
    switch (m) {
        case ModelKind::TwoQubit: return "two_qubit";
        case ModelKind::TwoQubitCavity: return "two_qubit_cavity";
        case ModelKind::Ibm: return "ibm";
    }
    return "?";
}

const char* approach_name(sweep::Approach a) {
    return a == sweep::Approach::Pulsed ? "pulsed" : "steady";
}

Quantity parse_quantity(const std::string& text) {
    if (text.empty()) {
        throw std::invalid_argument("empty quantity");
    }
    std::size_t split = text.size();
    while (split > 0 && !(std::isdigit(static_cast<unsigned char>(text[split - 1])) ||
                          text[split - 1] == '.')) {
        --split;
    }
    const std::string num = text.substr(0, split);
    std::string unit = text.substr(split);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc() || ptr != num.data() + num.size()) {
        throw std::invalid_argument("malformed number in quantity '" + text + "'");
    }
    Quantity q;
    q.value = value;
    if (unit.empty()) {
        return q;
    }
    q.has_unit = true;
    if (unit == "Hz") {
        q.hz = value;
    } else if (unit == "kHz") {
        q.hz = value * 1e3;
    } else if (unit == "MHz") {
        q.hz = value * 1e6;
    } else if (unit == "GHz") {
        q.hz = value * 1e9;
    } else {
        throw std::invalid_argument("malformed unit suffix '" + unit +
                                    "' (Hz, kHz, MHz, GHz, or none)");
    }
    return q;
}

double dimensionless_to_ns(double gt, double nu_hz) {
    if (!(nu_hz > 0.0)) {
        throw std::invalid_argument("coupling frequency must be positive");
    }
    return gt / (kTwoPi * nu_hz) * 1e9;
}

double ns_to_dimensionless(double t_ns, double nu_hz) {
    if (!(nu_hz > 0.0)) {
        throw std::invalid_argument("coupling frequency must be positive");
    }
    return t_ns * 1e-9 * kTwoPi * nu_hz;
}

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

RunConfig config_from_json(const json& j, RunConfig cfg) {
    for (const auto& [key, value] : j.items()) {
        if (key == "model") cfg.model = model_from_name(value.get<std::string>());
        else if (key == "gamma") cfg.gamma = value.get<double>();
        else if (key == "lambda") cfg.lambda = value.get<double>();
        else if (key == "kappa") cfg.kappa = value.get<double>();
        else if (key == "n_cavity") cfg.n_cavity = value.get<int>();
        else if (key == "omega") cfg.omega = value.get<double>();
        else if (key == "alpha") cfg.alpha = value.get<double>();
        else if (key == "delta_q") cfg.delta_q = value.get<double>();
        else if (key == "delta_c") {
            if (value.is_null()) cfg.delta_c.reset();
            else cfg.delta_c = value.get<double>();
        }
        else if (key == "n_transmon") cfg.n_transmon = value.get<int>();
        else if (key == "ibm_n_cavity") cfg.ibm_n_cavity = value.get<int>();
        else if (key == "approach") cfg.approach = approach_from_name(value.get<std::string>());
        else if (key == "threshold") cfg.threshold = value.get<double>();
        else if (key == "horizon") cfg.horizon = value.get<double>();
        else if (key == "sample_dt") cfg.sample_dt = value.get<double>();
        else if (key == "axis1") cfg.axis1 = axis_from_json(value);
        else if (key == "axis2") cfg.axis2 = axis_from_json(value);
        else if (key == "refine") cfg.refine = value.get<bool>();
        else if (key == "refine_shrink") cfg.refine_shrink = value.get<double>();
        else if (key == "refine_count") cfg.refine_count = value.get<int>();
        else if (key == "coupling_freq_hz") {
            if (value.is_null()) cfg.coupling_freq_hz.reset();
            else cfg.coupling_freq_hz = value.get<double>();
        }
        else if (key == "workers") cfg.workers = value.get<int>();
        else if (key == "out") cfg.out = value.get<std::string>();
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) {
        throw std::invalid_argument("config: threshold must lie in (0,1)");
    }
    if (!(cfg.horizon > 0.0)) {
        throw std::invalid_argument("config: horizon must be positive");
    }
    if (!(cfg.sample_dt > 0.0)) {
        throw std::invalid_argument("config: sample_dt must be positive");
    }
    return cfg;
}

json config_to_json(const RunConfig& cfg) {
    json j;
    j["model"] = model_name(cfg.model);
    j["gamma"] = cfg.gamma;
    j["lambda"] = cfg.lambda;
    j["kappa"] = cfg.kappa;
    j["n_cavity"] = cfg.n_cavity;
    j["omega"] = cfg.omega;
    j["alpha"] = cfg.alpha;
    j["delta_q"] = cfg.delta_q;
    if (cfg.delta_c) j["delta_c"] = *cfg.delta_c;
    j["n_transmon"] = cfg.n_transmon;
    j["ibm_n_cavity"] = cfg.ibm_n_cavity;
    j["approach"] = approach_name(cfg.approach);
    j["threshold"] = cfg.threshold;
    j["horizon"] = cfg.horizon;
    j["sample_dt"] = cfg.sample_dt;
    if (cfg.axis1) j["axis1"] = axis_to_json(*cfg.axis1);
    if (cfg.axis2) j["axis2"] = axis_to_json(*cfg.axis2);
    j["refine"] = cfg.refine;
    j["refine_shrink"] = cfg.refine_shrink;
    j["refine_count"] = cfg.refine_count;
    if (cfg.coupling_freq_hz) j["coupling_freq_hz"] = *cfg.coupling_freq_hz;
    j["workers"] = cfg.workers;
    j["out"] = cfg.out;
    return j;
}

namespace {

lindblad::ModelSpec build_with(const RunConfig& cfg,
                               const std::function<double(const std::string&, double)>& value) {
    switch (cfg.model) {
        case ModelKind::TwoQubit:
            return models::build_two_qubit(value("gamma", cfg.gamma));
        case ModelKind::TwoQubitCavity:
            return models::build_two_qubit_cavity(value("lambda", cfg.lambda),
                                                  value("kappa", cfg.kappa), cfg.n_cavity);
        case ModelKind::Ibm: {
            models::IbmParams p;
            p.omega = value("omega", cfg.omega);
            p.kappa = value("kappa", cfg.kappa);
            p.alpha = value("alpha", cfg.alpha);
            p.delta_q = value("delta_q", cfg.delta_q);
            if (cfg.delta_c) p.delta_c = value("delta_c", *cfg.delta_c);
            p.n_transmon = cfg.n_transmon;
            p.n_cavity = cfg.ibm_n_cavity;
            return models::build_ibm(p);
        }
    }
    throw std::logic_error("unreachable model kind");
}

} // namespace

lindblad::ModelSpec build_model(const RunConfig& cfg) {
    return build_with(cfg, [](const std::string&, double base) { return base; });
}

sweep::ModelFactory make_factory(const RunConfig& cfg) {
    if (!cfg.axis1) {
        throw std::invalid_argument("sweep requires axis1");
    }
    const std::string n1 = cfg.axis1->name;
    const std::string n2 = cfg.axis2 ? cfg.axis2->name : "";
    RunConfig base = cfg;
    return [base, n1, n2](std::span<const double> params) {
        return build_with(base, [&](const std::string& name, double def) {
            if (name == n1) return params[0];
            if (!n2.empty() && name == n2 && params.size() > 1) return params[1];
            return def;
        });
    };
}

void write_trajectory_csv(const std::string& path, const lindblad::Trajectory& traj) {
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    f << "t,pg\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        f << format_double(traj.times[i]) << ',' << format_double(traj.pg[i]) << '\n';
    }
    if (!f) {
        throw std::runtime_error("write failed for '" + path + "'");
    }
}

void write_grid_csv(const std::string& path, const sweep::SweepGrid& grid) {
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    f << (grid.axis2 ? "p1,p2,t_stop,status\n" : "p1,t_stop,status\n");
    const std::size_t n2 = grid.axis2 ? grid.axis2->values.size() : 1;
    for (std::size_t i1 = 0; i1 < grid.axis1.values.size(); ++i1) {
        for (std::size_t i2 = 0; i2 < n2; ++i2) {
            const auto& cell = grid.cells[i1 * n2 + i2];
            f << format_double(grid.axis1.values[i1]);
            if (grid.axis2) f << ',' << format_double(grid.axis2->values[i2]);
            f << ',';
            if (cell.status == sweep::CellStatus::Ok) f << format_double(cell.t_stop);
            f << ',';
            switch (cell.status) {
                case sweep::CellStatus::Ok: f << "ok"; break;
                case sweep::CellStatus::Unreset: f << "unreset"; break;
                case sweep::CellStatus::Error: f << "error"; break;
            }
            f << '\n';
        }
    }
    if (!f) {
        throw std::runtime_error("write failed for '" + path + "'");
    }
}

} // namespace qreset::io
