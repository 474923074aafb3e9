#include "cdw/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "cdw/csv.hpp"
#include "cdw/errors.hpp"
#include "cdw/rng.hpp"

namespace cdw {

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::classical: return "classical";
        case ExperimentKind::quantum: return "quantum";
        case ExperimentKind::soliton: return "soliton";
        case ExperimentKind::variational: return "variational";
        case ExperimentKind::fit: return "fit";
    }
    return "unknown";
}

ExperimentKind experiment_from_string(const std::string& name) {
    if (name == "classical") return ExperimentKind::classical;
    if (name == "quantum") return ExperimentKind::quantum;
    if (name == "soliton") return ExperimentKind::soliton;
    if (name == "variational") return ExperimentKind::variational;
    if (name == "fit") return ExperimentKind::fit;
    throw ValidationError("unknown experiment kind '" + name + "'", "experiment");
}

double ClassicalConfig::effective_min_gap() const {
    if (min_gap >= 0.0) return min_gap;
    return 0.01 * grid_length / static_cast<double>(n_sites);
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s) {
    const std::string t = trim(s);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw Error("not a number: '" + t + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s) {
    const std::string t = trim(s);
    std::uint64_t v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw Error("not a non-negative integer: '" + t + "'");
    return v;
}

std::int64_t parse_i64(const std::string& s) {
    const std::string t = trim(s);
    std::int64_t v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw Error("not an integer: '" + t + "'");
    return v;
}

bool parse_bool(const std::string& s) {
    const std::string t = trim(s);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw Error("not a boolean: '" + t + "'");
}

// One mutable binding per config key; shared by the parser, the sweep
// machinery, and the canonical echo.
struct Binding {
    enum class Type { Double, U64, I64, Bool, String, Grid } type;
    void* ptr;

    void set(const std::string& raw) const {
        switch (type) {
            case Type::Double: *static_cast<double*>(ptr) = parse_double(raw); break;
            case Type::U64: *static_cast<std::uint64_t*>(ptr) = parse_u64(raw); break;
            case Type::I64: *static_cast<std::int64_t*>(ptr) = parse_i64(raw); break;
            case Type::Bool: *static_cast<bool*>(ptr) = parse_bool(raw); break;
            case Type::String: *static_cast<std::string*>(ptr) = trim(raw); break;
            case Type::Grid: *static_cast<std::vector<double>*>(ptr) = parse_grid(raw); break;
        }
    }

    std::string get() const {
        switch (type) {
            case Type::Double: return format_double(*static_cast<const double*>(ptr));
            case Type::U64: return std::to_string(*static_cast<const std::uint64_t*>(ptr));
            case Type::I64: return std::to_string(*static_cast<const std::int64_t*>(ptr));
            case Type::Bool: return *static_cast<const bool*>(ptr) ? "true" : "false";
            case Type::String: return *static_cast<const std::string*>(ptr);
            case Type::Grid: {
                const auto& v = *static_cast<const std::vector<double>*>(ptr);
                std::string s;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) s += ", ";
                    s += format_double(v[i]);
                }
                return s;
            }
        }
        return "";
    }
};

using BindingMap = std::map<std::string, Binding>;

BindingMap classical_bindings(ClassicalConfig& c) {
    return {
        {"n_sites", {Binding::Type::U64, &c.n_sites}},
        {"concentration", {Binding::Type::Double, &c.concentration}},
        {"grid_length", {Binding::Type::Double, &c.grid_length}},
        {"min_gap", {Binding::Type::Double, &c.min_gap}},
        {"v_strength", {Binding::Type::Double, &c.v_strength}},
        {"e_dc", {Binding::Type::Double, &c.e_dc}},
        {"e_ac", {Binding::Type::Double, &c.e_ac}},
        {"omega", {Binding::Type::Double, &c.omega}},
        {"dt", {Binding::Type::Double, &c.dt}},
        {"n_steps", {Binding::Type::U64, &c.n_steps}},
        {"probe_omegas", {Binding::Type::Grid, &c.probe_omegas}},
        {"g1", {Binding::Type::Double, &c.g1}},
        {"late_window_frac", {Binding::Type::Double, &c.late_window_frac}},
        {"pinned_tol", {Binding::Type::Double, &c.pinned_tol}},
        {"bisect_iters", {Binding::Type::I64, &c.bisect_iters}},
        {"threshold_fields", {Binding::Type::Grid, &c.threshold_fields}},
        {"rk2_variant", {Binding::Type::String, &c.rk2_variant}},
    };
}

BindingMap quantum_bindings(QuantumConfig& c) {
    return {
        {"scheme", {Binding::Type::String, &c.scheme}},
        {"d_coeff", {Binding::Type::Double, &c.d_coeff}},
        {"mu_e_sq", {Binding::Type::Double, &c.mu_e_sq}},
        {"omega_p_sq", {Binding::Type::Double, &c.omega_p_sq}},
        {"omega_d", {Binding::Type::Double, &c.omega_d}},
        {"hbar", {Binding::Type::Double, &c.hbar}},
        {"x_min", {Binding::Type::Double, &c.x_min}},
        {"x_max", {Binding::Type::Double, &c.x_max}},
        {"n_points", {Binding::Type::U64, &c.n_points}},
        {"dt", {Binding::Type::Double, &c.dt}},
        {"n_steps", {Binding::Type::U64, &c.n_steps}},
        {"packet_center", {Binding::Type::Double, &c.packet_center}},
        {"packet_width", {Binding::Type::Double, &c.packet_width}},
        {"packet_k", {Binding::Type::Double, &c.packet_k}},
        {"boundary", {Binding::Type::String, &c.boundary}},
        {"df_neighbor", {Binding::Type::String, &c.df_neighbor}},
        {"cn_variant", {Binding::Type::String, &c.cn_variant}},
    };
}

BindingMap soliton_bindings(SolitonConfig& c) {
    return {
        {"beta", {Binding::Type::Double, &c.beta}},
        {"n_pendulums", {Binding::Type::U64, &c.n_pendulums}},
        {"spacing", {Binding::Type::Double, &c.spacing}},
        {"omega0_sq", {Binding::Type::Double, &c.omega0_sq}},
        {"omega1_sq", {Binding::Type::Double, &c.omega1_sq}},
        {"dt", {Binding::Type::Double, &c.dt}},
        {"n_steps", {Binding::Type::U64, &c.n_steps}},
        {"x_center", {Binding::Type::Double, &c.x_center}},
        {"profile_z", {Binding::Type::Grid, &c.profile_z}},
        {"residual_h", {Binding::Type::Grid, &c.residual_h}},
    };
}

BindingMap variational_bindings(VariationalConfig& c) {
    return {
        {"d1", {Binding::Type::Double, &c.d1}},
        {"e1", {Binding::Type::Double, &c.e1}},
        {"e2", {Binding::Type::Double, &c.e2}},
        {"delta_p", {Binding::Type::Double, &c.delta_p}},
        {"n_chains", {Binding::Type::U64, &c.n_chains}},
        {"m_max", {Binding::Type::I64, &c.m_max}},
        {"alpha0", {Binding::Type::Double, &c.alpha0}},
        {"alpha_min", {Binding::Type::Double, &c.alpha_min}},
        {"alpha_max", {Binding::Type::Double, &c.alpha_max}},
        {"eta", {Binding::Type::Double, &c.eta}},
        {"points_per_axis", {Binding::Type::U64, &c.points_per_axis}},
        {"theta", {Binding::Type::Grid, &c.theta}},
        {"max_evals", {Binding::Type::U64, &c.max_evals}},
        {"staircase", {Binding::Type::Bool, &c.staircase}},
    };
}

BindingMap fit_bindings(FitConfig& c) {
    return {
        {"law", {Binding::Type::String, &c.law}},
        {"data", {Binding::Type::String, &c.data}},
        {"loss", {Binding::Type::String, &c.loss}},
        {"e_t", {Binding::Type::Double, &c.e_t}},
        {"c_v", {Binding::Type::Double, &c.c_v}},
        {"c_tilde", {Binding::Type::Double, &c.c_tilde}},
        {"g_p", {Binding::Type::Double, &c.g_p}},
        {"max_evals", {Binding::Type::U64, &c.max_evals}},
    };
}

BindingMap section_bindings(RunConfig& config, const std::string& section) {
    if (section == "classical") return classical_bindings(config.classical);
    if (section == "quantum") return quantum_bindings(config.quantum);
    if (section == "soliton") return soliton_bindings(config.soliton);
    if (section == "variational") return variational_bindings(config.variational);
    if (section == "fit") return fit_bindings(config.fit);
    throw ValidationError("unknown section [" + section + "]", section);
}

void check_one_of(const std::string& value, std::initializer_list<const char*> allowed,
                  const std::string& key) {
    for (const char* a : allowed)
        if (value == a) return;
    throw ValidationError("invalid value '" + value + "' for key '" + key + "'", key);
}

} // namespace

std::vector<double> parse_grid(const std::string& text) {
    const std::string t = trim(text);
    if (t.rfind("lin:", 0) == 0) {
        std::vector<std::string> parts;
        std::stringstream ss(t.substr(4));
        std::string part;
        while (std::getline(ss, part, ':')) parts.push_back(part);
        if (parts.size() != 3) throw Error("grid shorthand must be lin:<from>:<to>:<count>");
        const double from = parse_double(parts[0]);
        const double to = parse_double(parts[1]);
        const std::uint64_t count = parse_u64(parts[2]);
        if (count < 2) throw Error("grid count must be >= 2");
        std::vector<double> v(count);
        const double step = (to - from) / static_cast<double>(count - 1);
        for (std::uint64_t i = 0; i < count; ++i)
            v[i] = from + step * static_cast<double>(i);
        v.back() = to;
        return v;
    }
    std::vector<double> v;
    std::stringstream ss(t);
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(parse_double(cell));
    if (v.empty()) throw Error("empty value list");
    return v;
}

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    bool have_experiment = false;
    std::string section;  // empty => global scope
    BindingMap bindings;

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("unterminated section header", line_no);
            section = trim(line.substr(1, line.size() - 2));
            if (section == "sweep") {
                if (!config.sweep) config.sweep = SweepSpec{};
            } else {
                try {
                    bindings = section_bindings(config, section);
                } catch (const ValidationError&) {
                    throw ParseError("unknown section [" + section + "]", line_no);
                }
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", line_no);

        try {
            if (section.empty()) {
                if (key == "experiment") {
                    config.kind = experiment_from_string(value);
                    have_experiment = true;
                } else if (key == "seed") {
                    config.seed = parse_u64(value);
                } else if (key == "out") {
                    config.out_dir = value;
                } else if (key == "jobs") {
                    config.jobs = parse_u64(value);
                } else {
                    throw ValidationError("unknown key '" + key + "'", key);
                }
            } else if (section == "sweep") {
                if (key == "param") config.sweep->param = value;
                else if (key == "values") config.sweep->values = parse_grid(value);
                else throw ValidationError("unknown key '" + key + "' in [sweep]", key);
            } else {
                const auto it = bindings.find(key);
                if (it == bindings.end())
                    throw ValidationError("unknown key '" + key + "' in [" + section + "]", key);
                it->second.set(value);
            }
        } catch (const ValidationError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(std::string(e.what()) + " for key '" + key + "'", line_no);
        }

        if (!section.empty() && section != "sweep" && have_experiment &&
            section != to_string(config.kind)) {
            throw ValidationError("section [" + section + "] is not valid for experiment '" +
                                      to_string(config.kind) + "'",
                                  section);
        }
    }

    if (!have_experiment)
        throw ValidationError("config must set 'experiment'", "experiment");
    config.validate();
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

void RunConfig::validate() const {
    switch (kind) {
        case ExperimentKind::classical: {
            const auto& c = classical;
            if (c.n_sites == 0) throw ValidationError("n_sites must be >= 1", "n_sites");
            if (!(c.grid_length > 0)) throw ValidationError("grid_length must be > 0", "grid_length");
            if (!(c.concentration > 0))
                throw ValidationError("concentration must be > 0", "concentration");
            if (!(c.dt > 0)) throw ValidationError("dt must be > 0", "dt");
            if (c.n_steps == 0) throw ValidationError("n_steps must be >= 1", "n_steps");
            if (c.e_ac < 0) throw ValidationError("e_ac must be >= 0", "e_ac");
            if (c.e_ac > 0 && !(c.omega > 0))
                throw ValidationError("omega must be > 0 when e_ac > 0", "omega");
            for (double w : c.probe_omegas)
                if (!(w > 0)) throw ValidationError("probe_omegas must be > 0", "probe_omegas");
            if (!(c.late_window_frac > 0 && c.late_window_frac <= 1))
                throw ValidationError("late_window_frac must be in (0, 1]", "late_window_frac");
            if (c.bisect_iters < 0) throw ValidationError("bisect_iters must be >= 0", "bisect_iters");
            check_one_of(c.rk2_variant, {"midpoint"}, "rk2_variant");
            break;
        }
        case ExperimentKind::quantum: {
            const auto& c = quantum;
            check_one_of(c.scheme, {"cn", "df"}, "scheme");
            check_one_of(c.boundary, {"dirichlet", "periodic"}, "boundary");
            check_one_of(c.df_neighbor, {"sum", "difference"}, "df_neighbor");
            check_one_of(c.cn_variant, {"standard", "literal"}, "cn_variant");
            if (!(c.d_coeff > 0)) throw ValidationError("d_coeff must be > 0", "d_coeff");
            if (!(c.hbar > 0)) throw ValidationError("hbar must be > 0", "hbar");
            if (!(c.x_max > c.x_min)) throw ValidationError("x_max must exceed x_min", "x_max");
            if (c.n_points < 3) throw ValidationError("n_points must be >= 3", "n_points");
            if (!(c.dt > 0)) throw ValidationError("dt must be > 0", "dt");
            if (c.n_steps == 0) throw ValidationError("n_steps must be >= 1", "n_steps");
            if (!(c.packet_width > 0))
                throw ValidationError("packet_width must be > 0", "packet_width");
            break;
        }
        case ExperimentKind::soliton: {
            const auto& c = soliton;
            if (!(std::abs(c.beta) < 1)) throw ValidationError("|beta| must be < 1", "beta");
            if (c.n_pendulums == 0) throw ValidationError("n_pendulums must be >= 1", "n_pendulums");
            if (!(c.spacing > 0)) throw ValidationError("spacing must be > 0", "spacing");
            if (!(c.omega0_sq > 0)) throw ValidationError("omega0_sq must be > 0", "omega0_sq");
            if (!(c.omega1_sq > 0)) throw ValidationError("omega1_sq must be > 0", "omega1_sq");
            if (!(c.dt > 0)) throw ValidationError("dt must be > 0", "dt");
            for (double h : c.residual_h)
                if (!(h > 0)) throw ValidationError("residual_h entries must be > 0", "residual_h");
            break;
        }
        case ExperimentKind::variational: {
            const auto& c = variational;
            if (!(c.d1 > 0)) throw ValidationError("d1 must be > 0", "d1");
            if (c.e1 < 0 || c.e2 < 0 || c.delta_p < 0)
                throw ValidationError("energies must be >= 0", "e1");
            if (c.n_chains == 0) throw ValidationError("n_chains must be >= 1", "n_chains");
            if (c.m_max < 1) throw ValidationError("m_max must be >= 1", "m_max");
            if (!(c.alpha0 > 0)) throw ValidationError("alpha0 must be > 0", "alpha0");
            if (!(c.alpha_min > 0) || !(c.alpha_max > c.alpha_min))
                throw ValidationError("need 0 < alpha_min < alpha_max", "alpha_min");
            if (!(c.eta >= 1)) throw ValidationError("eta must be >= 1", "eta");
            if (c.points_per_axis < 32 || c.points_per_axis % 2 != 0)
                throw ValidationError("points_per_axis must be even and >= 32", "points_per_axis");
            if (c.staircase && c.n_chains != 2)
                throw ValidationError("staircase output needs n_chains = 2", "staircase");
            break;
        }
        case ExperimentKind::fit: {
            const auto& c = fit;
            check_one_of(c.law, {"ss", "zener"}, "law");
            check_one_of(c.loss, {"linear", "log"}, "loss");
            if (c.data.empty()) throw ValidationError("fit needs a data csv path", "data");
            if (!(c.e_t > 0) || !(c.c_v > 0) || !(c.c_tilde > 0) || !(c.g_p > 0))
                throw ValidationError("init parameters must be > 0", "e_t");
            break;
        }
    }

    if (sweep) {
        if (sweep->param.empty()) throw ValidationError("sweep needs 'param'", "param");
        if (sweep->values.empty()) throw ValidationError("sweep needs 'values'", "values");
        // The param must resolve to a numeric key of the active section.
        RunConfig probe = *this;
        apply_sweep_value(probe, sweep->param, sweep->values.front());
    }
}

std::string RunConfig::canonical() const {
    RunConfig& self = const_cast<RunConfig&>(*this);
    std::string s;
    s += "experiment = " + to_string(kind) + "\n";
    s += "seed = " + std::to_string(seed) + "\n";
    s += "jobs = " + std::to_string(jobs) + "\n";
    s += "[" + to_string(kind) + "]\n";
    for (const auto& [key, binding] : section_bindings(self, to_string(kind)))
        s += key + " = " + binding.get() + "\n";
    if (sweep) {
        s += "[sweep]\n";
        s += "param = " + sweep->param + "\n";
        std::string vals;
        for (std::size_t i = 0; i < sweep->values.size(); ++i) {
            if (i) vals += ", ";
            vals += format_double(sweep->values[i]);
        }
        s += "values = " + vals + "\n";
    }
    return s;
}

void apply_sweep_value(RunConfig& config, const std::string& param, double value) {
    auto bindings = section_bindings(config, to_string(config.kind));
    const auto it = bindings.find(param);
    if (it == bindings.end())
        throw ValidationError("sweep param '" + param + "' is not a key of [" +
                                  to_string(config.kind) + "]",
                              param);
    if (it->second.type != Binding::Type::Double)
        throw ValidationError("sweep param '" + param + "' is not a numeric key", param);
    *static_cast<double*>(it->second.ptr) = value;
}

std::vector<RunConfig> expand_sweep(const RunConfig& config) {
    if (!config.sweep) return {config};
    std::vector<RunConfig> children;
    children.reserve(config.sweep->values.size());
    for (std::size_t i = 0; i < config.sweep->values.size(); ++i) {
        RunConfig child = config;
        child.sweep.reset();
        apply_sweep_value(child, config.sweep->param, config.sweep->values[i]);
        child.seed = derive_seed(config.seed, i);
        children.push_back(std::move(child));
    }
    return children;
}

} // namespace cdw
