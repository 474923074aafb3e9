#ifndef CDW_CONFIG_HPP
#define CDW_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cdw {

enum class ExperimentKind { classical, quantum, soliton, variational, fit };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_from_string(const std::string& name);

struct ClassicalConfig {
    std::uint64_t n_sites = 16;
    double concentration = 1.0;
    double grid_length = 16.0;
    double min_gap = -1.0;  // < 0 => default 0.01 * grid_length / n_sites
    double v_strength = 1.0;
    double e_dc = 0.0;
    double e_ac = 0.0;
    double omega = 0.0;
    double dt = 0.002;
    std::uint64_t n_steps = 10000;
    std::vector<double> probe_omegas;
    double g1 = 1.0;
    double late_window_frac = 0.25;
    double pinned_tol = 1e-6;
    std::int64_t bisect_iters = 4;
    std::vector<double> threshold_fields;  // non-empty => threshold.csv is produced
    std::string rk2_variant = "midpoint";  // pinned; recorded in metadata

    double effective_min_gap() const;
};

struct QuantumConfig {
    std::string scheme = "cn";  // cn | df
    double d_coeff = 1.0;
    double mu_e_sq = 0.0;
    double omega_p_sq = 1.0;
    double omega_d = 0.0;
    double hbar = 1.0;
    double x_min = -20.0;
    double x_max = 20.0;
    std::uint64_t n_points = 512;
    double dt = 0.001;
    std::uint64_t n_steps = 1000;
    double packet_center = 0.0;
    double packet_width = 0.5;
    double packet_k = 0.0;
    std::string boundary = "dirichlet";   // dirichlet | periodic
    std::string df_neighbor = "sum";      // sum | difference
    std::string cn_variant = "standard";  // standard | literal
};

struct SolitonConfig {
    double beta = -0.5;
    std::uint64_t n_pendulums = 401;
    double spacing = 0.05;
    double omega0_sq = 400.0;
    double omega1_sq = 1.0;
    double dt = 0.002;
    std::uint64_t n_steps = 2000;
    double x_center = -1.0;  // < 0 => middle of the chain
    std::vector<double> profile_z;      // default linspace -10..10, 401 points
    std::vector<double> residual_h;     // default {0.2, 0.1, 0.05}
};

struct VariationalConfig {
    double d1 = 174.091;
    double e1 = 1e-5;
    double e2 = 1e-6;
    double delta_p = 0.005;
    std::uint64_t n_chains = 2;
    std::int64_t m_max = 2;
    double alpha0 = 0.3;
    double alpha_min = 0.02;
    double alpha_max = 2.0;
    double eta = 20.0;
    std::uint64_t points_per_axis = 256;
    std::vector<double> theta;  // sweep grid; default linspace -4pi..4pi, 65 points
    std::uint64_t max_evals = 20000;
    bool staircase = true;  // also emit staircase.csv (two chains only)
};

struct FitConfig {
    std::string law = "ss";  // ss | zener
    std::string data;        // csv path with columns (e, i)
    std::string loss = "linear";  // linear | log
    double e_t = 1.0;
    double c_v = 1.0;
    double c_tilde = 1.0;
    double g_p = 1.0;
    std::uint64_t max_evals = 20000;
};

struct SweepSpec {
    std::string param;           // numeric key of the active experiment section
    std::vector<double> values;
};

struct RunConfig {
    ExperimentKind kind = ExperimentKind::classical;
    std::uint64_t seed = 0;
    std::string out_dir;  // empty => out_<kind>
    std::uint64_t jobs = 0;  // 0 => hardware concurrency

    ClassicalConfig classical;
    QuantumConfig quantum;
    SolitonConfig soliton;
    VariationalConfig variational;
    FitConfig fit;
    std::optional<SweepSpec> sweep;

    void validate() const;  // throws ValidationError naming the offending key
    // Complete canonical key = value echo; meta.txt embeds it so a run
    // directory is self-describing.
    std::string canonical() const;
};

// Key-value text with [section] blocks and '#' comments; the grammar is
// documented in the repository README. Unknown keys and sections are errors.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Grid shorthand used by list-valued keys: either comma-separated numbers or
// lin:<from>:<to>:<count>.
std::vector<double> parse_grid(const std::string& text);

// Sets a numeric key of the active experiment section; used by sweeps.
void apply_sweep_value(RunConfig& config, const std::string& param, double value);

std::vector<RunConfig> expand_sweep(const RunConfig& config);

} // namespace cdw

#endif
