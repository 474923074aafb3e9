#include "cdw/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <thread>
#include <vector>

#include "cdw/classical.hpp"
#include "cdw/csv.hpp"
#include "cdw/current_laws.hpp"
#include "cdw/errors.hpp"
#include "cdw/model.hpp"
#include "cdw/quantum.hpp"
#include "cdw/sine_gordon.hpp"
#include "cdw/variational.hpp"

namespace cdw {

namespace fs = std::filesystem;

std::string version_string() { return "cdw-lab 0.1.0"; }

namespace {

void write_meta(const fs::path& dir, const RunConfig& config, const std::string& status,
                const std::string& error, double wall_ms) {
    std::ofstream meta(dir / "meta.txt", std::ios::binary);
    meta << "# cdw-lab run metadata\n";
    meta << "version = " << version_string() << "\n";
    meta << "status = " << status << "\n";
    if (!error.empty()) meta << "error = " << error << "\n";
    meta << "wall_ms = " << format_double(wall_ms) << "\n";
    meta << "# resolved configuration\n";
    meta << config.canonical();
}

void run_classical(const RunConfig& config, const fs::path& dir) {
    const auto& c = config.classical;
    const ImpurityLattice lattice =
        generate_impurities(c.n_sites, c.concentration, c.grid_length, config.seed,
                            c.effective_min_gap());
    DriveField drive;
    drive.e_dc = c.e_dc;
    drive.e_ac = c.e_ac;
    drive.omega = c.omega;
    drive.validate();

    TransportOptions opts;
    opts.g1 = c.g1;
    const TransportResult result =
        run_transport(lattice, drive, c.v_strength, c.dt, c.n_steps, c.probe_omegas, opts);

    {
        CsvWriter trace(dir / "trace.csv", {"t", "mean_phase", "mean_phase_dot"});
        for (std::size_t i = 0; i < result.trace.t.size(); ++i)
            trace.write_row({result.trace.t[i], result.trace.mean_phase[i],
                             result.trace.mean_phase_dot[i]});
    }
    {
        CsvWriter response(dir / "response.csv",
                           {"omega", "re_sigma", "im_sigma", "re_eps", "im_eps"});
        for (double omega : c.probe_omegas) {
            const auto sigma = conductivity(result.accumulator, omega);
            const auto eps = dielectric(sigma, omega);
            response.write_row({omega, sigma.real(), sigma.imag(), eps.real(), eps.imag()});
        }
    }
    if (!c.threshold_fields.empty()) {
        ThresholdOptions topts;
        topts.late_window_frac = c.late_window_frac;
        topts.pinned_tol = c.pinned_tol;
        topts.bisect_iters = static_cast<int>(c.bisect_iters);
        const ThresholdResult scan =
            threshold_scan(lattice, c.threshold_fields, c.v_strength, c.dt, c.n_steps, topts);
        CsvWriter threshold(dir / "threshold.csv", {"e_dc", "class"});
        for (const auto& p : scan.points)
            threshold.write_cells({format_double(p.e_dc), p.pinned ? "pinned" : "sliding"});
        std::ofstream eth(dir / "e_th.txt", std::ios::binary);
        eth << "e_th = " << format_double(scan.e_th) << "\n";
        eth << "bracket_lo = " << format_double(scan.bracket_lo) << "\n";
        eth << "bracket_hi = " << format_double(scan.bracket_hi) << "\n";
    }
}

void run_quantum(const RunConfig& config, const fs::path& dir) {
    const auto& c = config.quantum;
    SchwingerParams params;
    params.d_coeff = c.d_coeff;
    params.mu_e_sq = c.mu_e_sq;
    params.omega_p_sq = c.omega_p_sq;
    params.omega_d = c.omega_d;
    params.hbar = c.hbar;

    const double dx = (c.x_max - c.x_min) / static_cast<double>(c.n_points - 1);
    const WaveFunction wf0 =
        gaussian_packet(c.x_min, dx, c.n_points, c.packet_center, c.packet_width, c.packet_k);

    EvolveOptions opts;
    opts.boundary = (c.boundary == "periodic") ? Boundary::periodic : Boundary::dirichlet;
    opts.df_neighbor =
        (c.df_neighbor == "difference") ? NeighborSign::difference : NeighborSign::sum;
    opts.cn_variant =
        (c.cn_variant == "literal") ? CnVariant::mixed_level_literal : CnVariant::standard;
    const Scheme scheme = (c.scheme == "df") ? Scheme::dufort_frankel : Scheme::crank_nicolson;

    const ChainTrace trace = evolve_chain(wf0, params, scheme, c.dt, c.n_steps, opts);
    {
        CsvWriter qtrace(dir / "qtrace.csv", {"t", "mean_x", "norm", "flag"});
        for (const auto& row : trace.rows)
            qtrace.write_row({row.t, row.mean_x, row.norm, static_cast<double>(row.flag)});
    }
    if (trace.terminated_early) throw BlowUpError(trace.error, trace.fail_step);
}

void run_soliton(const RunConfig& config, const fs::path& dir) {
    const auto& c = config.soliton;
    SolitonSpec spec;
    spec.beta = c.beta;
    spec.sign = +1;

    std::vector<double> z_grid = c.profile_z;
    if (z_grid.empty()) {
        z_grid.resize(401);
        for (std::size_t i = 0; i < z_grid.size(); ++i)
            z_grid[i] = -10.0 + 20.0 * static_cast<double>(i) / 400.0;
    }
    {
        CsvWriter profile(dir / "profile.csv", {"z", "phi"});
        for (double z : z_grid) profile.write_row({z, soliton_profile(z, 0.0, spec)});
    }

    PendulumChainParams params;
    params.omega0_sq = c.omega0_sq;
    params.omega1_sq = c.omega1_sq;
    params.d = c.spacing;
    params.n = c.n_pendulums;
    params.ends = ChainEnds::clamped;
    params.left_value = 0.0;
    params.right_value = 2.0 * std::numbers::pi;

    const double x_center = (c.x_center >= 0.0)
                                ? c.x_center
                                : 0.5 * c.spacing * static_cast<double>(c.n_pendulums - 1);
    ChainState state = chain_from_soliton(params, spec, x_center);
    {
        CsvWriter chain(dir / "chain.csv", {"t", "center", "energy"});
        chain.write_row({state.t, kink_center(state, params), chain_energy(state, params)});
        for (std::uint64_t step = 0; step < c.n_steps; ++step) {
            pendulum_chain_step(state, params, c.dt);
            chain.write_row({state.t, kink_center(state, params), chain_energy(state, params)});
        }
    }

    std::vector<double> h_list = c.residual_h;
    if (h_list.empty()) h_list = {0.2, 0.1, 0.05};
    {
        CsvWriter residual(dir / "residual.csv", {"h", "max_resid"});
        for (double h : h_list) {
            const double half_span = 8.0;
            const auto n = static_cast<std::size_t>(std::floor(2.0 * half_span / h)) + 1;
            std::vector<double> field(n * n);
            for (std::size_t iz = 0; iz < n; ++iz)
                for (std::size_t it = 0; it < n; ++it) {
                    const double z = -half_span + h * static_cast<double>(iz);
                    const double tau = -half_span + h * static_cast<double>(it);
                    field[iz * n + it] = soliton_profile(z, tau, spec);
                }
            const ResidualNorms norms = sg_residual(field, n, n, h, h);
            residual.write_row({h, norms.max_abs});
        }
    }
}

void run_variational(const RunConfig& config, const fs::path& dir) {
    const auto& c = config.variational;
    ChainHamiltonianParams params;
    params.d1 = c.d1;
    params.e1 = c.e1;
    params.e2 = c.e2;
    params.delta_p = c.delta_p;
    params.n_chains = c.n_chains;

    QuadratureGrid grid;
    grid.eta = c.eta;
    grid.points_per_axis = c.points_per_axis;

    MinimizeOptions opts;
    opts.max_evals = c.max_evals;
    opts.alpha_min = c.alpha_min;
    opts.alpha_max = c.alpha_max;
    opts.m_max = static_cast<int>(c.m_max);
    opts.alpha0 = c.alpha0;

    std::vector<double> theta_grid = c.theta;
    if (theta_grid.empty()) {
        theta_grid.resize(65);
        const double lo = -4.0 * std::numbers::pi, hi = 4.0 * std::numbers::pi;
        for (std::size_t i = 0; i < theta_grid.size(); ++i)
            theta_grid[i] = lo + (hi - lo) * static_cast<double>(i) / 64.0;
    }

    const auto band = band_structure(params, theta_grid, grid, opts);
    {
        CsvWriter band_csv(dir / "band.csv", {"theta", "e_min", "dominant_m", "alpha"});
        for (const auto& p : band)
            band_csv.write_row({p.theta, p.e_min, static_cast<double>(p.dominant_m), p.alpha});
    }
    {
        CsvWriter state_csv(dir / "state.csv", {"theta", "chain", "m", "b"});
        for (const auto& p : band) {
            const int m_max = p.state.m_max();
            for (std::size_t chain = 0; chain < p.state.n_chains(); ++chain)
                for (int m = -m_max; m <= m_max; ++m)
                    state_csv.write_row({p.theta, static_cast<double>(chain),
                                         static_cast<double>(m), p.state.coeff(chain, m)});
        }
    }
    if (c.staircase) {
        const auto stair = phase_staircase(params, theta_grid, grid, opts);
        CsvWriter stair_csv(dir / "staircase.csv", {"theta", "mean_phi", "mean_phi_tracked"});
        for (const auto& p : stair)
            stair_csv.write_row({p.theta, p.mean_phi, p.mean_phi_tracked});
    }
}

void run_fit(const RunConfig& config, const fs::path& dir) {
    const auto& c = config.fit;
    const CsvTable table = read_csv(c.data);
    if (table.header.size() < 2)
        throw Error("fit data csv needs columns (e, i)");
    std::vector<CurrentSample> data;
    data.reserve(table.rows.size());
    for (const auto& row : table.rows) data.push_back({row[0], row[1]});

    CurrentLawParams init;
    init.e_t = c.e_t;
    init.c_v = c.c_v;
    init.c_tilde = c.c_tilde;
    init.g_p = c.g_p;

    const CurrentLaw law = (c.law == "zener") ? CurrentLaw::zener : CurrentLaw::ss;
    const FitLoss loss = (c.loss == "log") ? FitLoss::log : FitLoss::linear;
    const FitResult result = fit_current_law(data, law, init, loss, c.max_evals);

    {
        CsvWriter fit_csv(dir / "fit.csv", {"param", "value"});
        if (law == CurrentLaw::ss) {
            fit_csv.write_cells({"e_t", format_double(result.params.e_t)});
            fit_csv.write_cells({"c_v", format_double(result.params.c_v)});
            fit_csv.write_cells({"c_tilde", format_double(result.params.c_tilde)});
        } else {
            fit_csv.write_cells({"e_t", format_double(result.params.e_t)});
            fit_csv.write_cells({"g_p", format_double(result.params.g_p)});
        }
        fit_csv.write_cells({"rms_residual", format_double(result.rms_residual)});
        fit_csv.write_cells({"converged", result.converged ? "1" : "0"});
        fit_csv.write_cells({"rank_deficient", result.rank_deficient ? "1" : "0"});
    }
    {
        double e_min = data.front().e, e_max = data.front().e;
        for (const auto& s : data) {
            e_min = std::min(e_min, s.e);
            e_max = std::max(e_max, s.e);
        }
        CsvWriter curve(dir / "fitcurve.csv", {"e", "i_model"});
        const std::size_t n = 200;
        for (std::size_t i = 0; i < n; ++i) {
            const double e =
                e_min + (e_max - e_min) * static_cast<double>(i) / static_cast<double>(n - 1);
            const double v = (law == CurrentLaw::ss) ? current_ss(e, result.params)
                                                     : current_zener(e, result.params);
            curve.write_row({e, v});
        }
    }
}

RunOutcome run_single(const RunConfig& config, const fs::path& dir) {
    RunOutcome outcome;
    outcome.out_dir = dir.string();
    const auto t0 = std::chrono::steady_clock::now();
    std::string status = "ok";
    try {
        fs::create_directories(dir);
        switch (config.kind) {
            case ExperimentKind::classical: run_classical(config, dir); break;
            case ExperimentKind::quantum: run_quantum(config, dir); break;
            case ExperimentKind::soliton: run_soliton(config, dir); break;
            case ExperimentKind::variational: run_variational(config, dir); break;
            case ExperimentKind::fit: run_fit(config, dir); break;
        }
    } catch (const std::exception& e) {
        outcome.exit_status = 1;
        outcome.error = e.what();
        status = "error";
        std::ofstream err(dir / "error.txt", std::ios::binary);
        err << e.what() << "\n";
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    write_meta(dir, config, status, outcome.error, wall_ms);
    return outcome;
}

} // namespace

RunOutcome run(const RunConfig& config) {
    config.validate();
    const fs::path out_dir =
        config.out_dir.empty() ? fs::path("out_" + to_string(config.kind))
                               : fs::path(config.out_dir);

    if (!config.sweep) return run_single(config, out_dir);

    const auto sweep_t0 = std::chrono::steady_clock::now();
    const auto children = expand_sweep(config);
    fs::create_directories(out_dir);

    std::vector<RunOutcome> outcomes(children.size());
    std::atomic<std::size_t> cursor{0};
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t degree =
        std::min<std::size_t>(children.size(),
                              config.jobs > 0 ? static_cast<std::size_t>(config.jobs) : hw);

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= children.size()) return;
            const std::string name =
                "sweep_" + std::to_string(i) + "_" + config.sweep->param + "=" +
                format_double(config.sweep->values[i]);
            outcomes[i] = run_single(children[i], out_dir / name);
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < degree; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    RunOutcome outcome;
    outcome.out_dir = out_dir.string();
    {
        CsvWriter index(out_dir / "index.csv", {"child", "param", "value", "status"});
        for (std::size_t i = 0; i < children.size(); ++i) {
            index.write_cells({std::to_string(i), config.sweep->param,
                               format_double(config.sweep->values[i]),
                               outcomes[i].exit_status == 0 ? "ok" : "error"});
            if (outcomes[i].exit_status != 0 && outcome.exit_status == 0) {
                outcome.exit_status = outcomes[i].exit_status;
                outcome.error = outcomes[i].error;
            }
        }
    }
    const auto sweep_t1 = std::chrono::steady_clock::now();
    write_meta(out_dir, config, outcome.exit_status == 0 ? "ok" : "error", outcome.error,
               std::chrono::duration<double, std::milli>(sweep_t1 - sweep_t0).count());
    return outcome;
}

} // namespace cdw
