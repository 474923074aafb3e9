// Acceptance suite: one check per release criterion, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cdw/classical.hpp"
#include "cdw/config.hpp"
#include "cdw/csv.hpp"
#include "cdw/current_laws.hpp"
#include "cdw/harness.hpp"
#include "cdw/model.hpp"
#include "cdw/quantum.hpp"
#include "cdw/sine_gordon.hpp"
#include "cdw/variational.hpp"

using namespace cdw;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
    int id;
    std::string name;
    std::function<bool(std::string&)> check;
};

bool nearly(double a, double b, double rel) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale <= rel;
}

// ---------------------------------------------------------------- criterion 1
// Pinned/sliding dichotomy on the 64-site seed-42 lattice.
bool check_dichotomy(std::string& detail) {
    const auto lattice = generate_impurities(64, 1.0, 64.0, 42, 0.01);
    std::vector<double> grid(12);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = 0.05 * static_cast<double>(i + 1);  // 0.05 .. 0.60

    ThresholdOptions opts;
    opts.bisect_iters = 4;
    const auto scan = threshold_scan(lattice, grid, 1.0, 0.005, 60000, opts);

    std::size_t pinned = 0, sliding = 0;
    int transitions = 0;
    for (std::size_t i = 0; i < scan.points.size(); ++i) {
        if (scan.points[i].pinned) ++pinned;
        else ++sliding;
        if (i > 0 && scan.points[i].pinned != scan.points[i - 1].pinned) ++transitions;
    }

    bool slopes_ok = true;
    for (const auto& p : scan.points) {
        if (p.e_dc < scan.e_th && std::abs(p.late_slope) >= 1e-6) slopes_ok = false;
        if (p.e_dc > scan.e_th && p.late_slope <= 1e-3) slopes_ok = false;
    }

    std::ostringstream os;
    os << "e_th=" << format_double(scan.e_th) << " pinned=" << pinned
       << " sliding=" << sliding << " transitions=" << transitions;
    detail = os.str();
    return pinned > 0 && sliding > 0 && transitions == 1 && slopes_ok;
}

// ---------------------------------------------------------------- criterion 2
// Rescaled dielectric response grows toward the threshold.
bool check_dielectric_trend(std::string& detail) {
    const auto lattice = generate_impurities(64, 1.0, 64.0, 42, 0.01);

    ThresholdOptions topts;
    topts.bisect_iters = 4;
    std::vector<double> grid(12);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 0.05 * static_cast<double>(i + 1);
    const double e_th = threshold_scan(lattice, grid, 1.0, 0.005, 60000, topts).e_th;

    const double probe_omega = 0.02;  // well below the crossover frequency
    const std::vector<double> fractions = {0.30, 0.55, 0.75, 0.88, 0.95, 0.985};
    std::vector<double> magnitude;
    for (double f : fractions) {
        DriveField drive;
        drive.e_dc = f * e_th;
        drive.e_ac = 1e-3 * e_th;
        drive.omega = probe_omega;
        // Integrate whole probe periods so the in-loop DFT sits on the tone.
        const double dt = 0.01;
        const auto periods = 6.0;
        const auto steps =
            static_cast<std::size_t>(std::llround(periods * 2.0 * kPi / probe_omega / dt));
        const auto r = run_transport(lattice, drive, 1.0, dt, steps, {probe_omega});
        const auto eps = dielectric(conductivity(r.accumulator, probe_omega), probe_omega);
        magnitude.push_back(std::abs(eps));
    }

    bool monotone = true;
    for (std::size_t i = 0; i + 1 < magnitude.size(); ++i)
        if (magnitude[i + 1] <= magnitude[i]) monotone = false;
    const double ratio = magnitude.back() / magnitude.front();

    std::ostringstream os;
    os << "e_th=" << format_double(e_th) << " |eps|/|eps_init| at last field="
       << format_double(ratio);
    detail = os.str();
    return monotone && ratio >= 10.0;
}

// ---------------------------------------------------------------- criterion 3
// In-loop DFT equals a post-hoc DFT; synthetic cosine recovers g1 T / 2.
bool check_inloop_dft(std::string& detail) {
    const auto lattice = generate_impurities(32, 1.0, 32.0, 7, 0.01);
    DriveField drive;
    drive.e_dc = 0.25;
    drive.e_ac = 0.05;
    drive.omega = 0.4;
    const std::vector<double> probes = {0.2, 0.4, 0.8};
    const double dt = 0.01;
    const auto r = run_transport(lattice, drive, 1.0, dt, 10000, probes);

    double worst = 0.0;
    for (double omega : probes) {
        std::complex<double> posthoc(0.0, 0.0);
        for (std::size_t n = 0; n < r.trace.t.size(); ++n) {
            const double wt = omega * r.trace.t[n];
            posthoc += r.trace.mean_phase_dot[n] * dt *
                       std::complex<double>(std::cos(wt), std::sin(wt));
        }
        const auto sigma = conductivity(r.accumulator, omega);
        const double scale = std::max(std::abs(posthoc), 1e-300);
        worst = std::max(worst, std::abs(sigma - posthoc) / scale);
    }

    const double omega0 = 2.0, g1 = 1.0, dt_s = 1e-3;
    const std::size_t n_steps = 100000;
    ResponseAccumulator acc({omega0}, g1);
    for (std::size_t n = 0; n < n_steps; ++n) {
        const double t = static_cast<double>(n) * dt_s;
        acc.accumulate(t, std::cos(omega0 * t), dt_s);
    }
    const double t_total = static_cast<double>(n_steps) * dt_s;
    const double re = conductivity(acc, omega0).real();
    const double cosine_err = std::abs(re - g1 * t_total / 2.0) / (g1 * t_total / 2.0);

    std::ostringstream os;
    os << "max rel diff=" << format_double(worst)
       << " cosine recovery err=" << format_double(cosine_err);
    detail = os.str();
    return worst < 1e-10 && cosine_err < 0.005;
}

// ---------------------------------------------------------------- criterion 4
// Crank-Nicolson norm conservation; Dufort-Frankel cross-scheme agreement.
bool check_quantum_norms(std::string& detail) {
    auto norm_drift = [](const SchwingerParams& p, const WaveFunction& wf0) {
        const auto trace = evolve_chain(wf0, p, Scheme::crank_nicolson, 0.002, 10000);
        if (trace.terminated_early) return 1.0;
        const double n0 = trace.rows.front().norm;
        double drift = 0.0;
        for (const auto& row : trace.rows)
            drift = std::max(drift, std::abs(row.norm / n0 - 1.0));
        return drift;
    };

    SchwingerParams free_p;
    free_p.d_coeff = 1.0;
    const auto wf_free = gaussian_packet(-16.0, 32.0 / 511.0, 512, 0.0, 1.0);
    const double drift_free = norm_drift(free_p, wf_free);

    SchwingerParams wash;
    wash.d_coeff = 1.0;
    wash.mu_e_sq = 0.1;
    wash.omega_p_sq = 2.0;
    wash.omega_d = 0.3;
    const double drift_wash = norm_drift(wash, wf_free);

    // Cross-scheme <x> comparison on a moving free packet. The Dufort-Frankel
    // consistency error carries a (dt/dx)^2 term, so the refinement ladder
    // uses diffusive scaling: dx -> dx/2, dt -> dt/4.
    auto cross_disagreement = [&](double dx, double dt, double t_end) {
        const double span = 48.0;
        const auto n = static_cast<std::size_t>(std::llround(span / dx)) + 1;
        const auto wf0 = gaussian_packet(-span / 2.0, dx, n, -6.0, 1.5, 1.0);
        const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));

        WaveFunction cn = wf0;
        for (std::size_t s = 0; s < steps; ++s) cn = step_crank_nicolson(cn, free_p, dt);

        WaveFunction prev = wf0;
        WaveFunction cur = step_crank_nicolson(wf0, free_p, dt);
        for (std::size_t s = 1; s < steps; ++s) {
            WaveFunction next = step_dufort_frankel(cur, prev, free_p, dt);
            prev = std::move(cur);
            cur = std::move(next);
        }
        return std::abs(cn.mean_x() - cur.mean_x());
    };

    const double t_end = 4.0;
    const double coarse = cross_disagreement(0.1875, 0.01, t_end);
    const double fine = cross_disagreement(0.09375, 0.0025, t_end);
    const double shrink = coarse / fine;

    std::ostringstream os;
    os << "cn drift free=" << format_double(drift_free)
       << " washboard=" << format_double(drift_wash)
       << " df-cn diff=" << format_double(coarse) << " shrink=" << format_double(shrink);
    detail = os.str();
    return drift_free < 1e-8 && drift_wash < 1e-8 && coarse < 1e-3 && shrink > 3.0 &&
           shrink < 6.0;
}

// ---------------------------------------------------------------- criterion 5
// Driven single chain: oscillatory <x> with growing envelope, no transmission.
bool check_single_chain_pathology(std::string& detail) {
    SchwingerParams p;
    p.d_coeff = 10.0;
    p.mu_e_sq = 0.05;
    p.omega_p_sq = 1.0;
    p.omega_d = 0.5;  // near the well frequency omega_p / sqrt(2)

    const double omega_h = std::sqrt(p.omega_p_sq / 2.0);
    const double sigma = std::sqrt(1.0 / (2.0 * p.d_coeff * omega_h));
    const auto wf0 = gaussian_packet(-3.0 * kPi, 6.0 * kPi / 767.0, 768, 0.0, sigma);

    const double dt = 0.01;
    const std::size_t steps = 12000;
    EvolveOptions opts;
    const auto trace = evolve_chain(wf0, p, Scheme::crank_nicolson, dt, steps, opts);
    if (trace.terminated_early) {
        detail = "run terminated early: " + trace.error;
        return false;
    }

    // Transmission past the first cosine barrier maximum at x = pi, measured
    // on the final state and along the way.
    double max_beyond = 0.0;
    {
        WaveFunction wf = wf0;
        for (std::size_t s = 0; s < steps; ++s) {
            wf = step_crank_nicolson(wf, p, dt);
            if (s % 200 == 0) max_beyond = std::max(max_beyond, probability_beyond(wf, kPi));
        }
        max_beyond = std::max(max_beyond, probability_beyond(wf, kPi));
    }

    // Oscillation count: sign changes of the detrended mean-x increments.
    std::vector<double> xs;
    for (const auto& row : trace.rows) xs.push_back(row.mean_x);
    int sign_changes = 0;
    for (std::size_t i = 2; i < xs.size(); ++i) {
        const double d1 = xs[i] - xs[i - 1];
        const double d0 = xs[i - 1] - xs[i - 2];
        if (d1 * d0 < 0.0) ++sign_changes;
    }

    // Envelope growth: peak |x - mean| in the second half vs the first half.
    const std::size_t half = xs.size() / 2;
    double mean = 0.0;
    for (double v : xs) mean += v;
    mean /= static_cast<double>(xs.size());
    double amp_first = 0.0, amp_second = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double a = std::abs(xs[i] - mean);
        if (i < half) amp_first = std::max(amp_first, a);
        else amp_second = std::max(amp_second, a);
    }

    std::ostringstream os;
    os << "oscillations=" << sign_changes << " envelope ratio="
       << format_double(amp_second / amp_first)
       << " max transmitted=" << format_double(max_beyond);
    detail = os.str();
    return sign_changes >= 6 && amp_second > 1.15 * amp_first && max_beyond < 0.01;
}

// ---------------------------------------------------------------- criterion 6
// Soliton analytics: hand value, residual order, kink speed.
bool check_soliton(std::string& detail) {
    SolitonSpec spec;
    spec.beta = -0.5;
    const double at_origin = soliton_profile(0.0, 0.0, spec);
    const bool exact_pi = (at_origin == kPi);

    auto residual_at = [&](double h) {
        const double half_span = 4.0;
        const auto n = static_cast<std::size_t>(std::floor(2.0 * half_span / h)) + 1;
        std::vector<double> field(n * n);
        for (std::size_t iz = 0; iz < n; ++iz)
            for (std::size_t it = 0; it < n; ++it)
                field[iz * n + it] = soliton_profile(-half_span + h * static_cast<double>(iz),
                                                     -half_span + h * static_cast<double>(it),
                                                     spec);
        return sg_residual(field, n, n, h, h).max_abs;
    };
    const double order = std::log2(residual_at(0.1) / residual_at(0.05));

    PendulumChainParams params;
    params.omega0_sq = 400.0;
    params.omega1_sq = 1.0;
    params.d = 0.05;
    params.n = 401;
    params.ends = ChainEnds::clamped;
    params.left_value = 0.0;
    params.right_value = 2.0 * kPi;
    const double x_mid = 0.5 * params.d * static_cast<double>(params.n - 1);
    ChainState chain = chain_from_soliton(params, spec, x_mid);
    const double c0 = kink_center(chain, params);
    while (std::abs(kink_center(chain, params) - c0) < 10.0 * params.d && chain.t < 10.0)
        pendulum_chain_step(chain, params, 0.002);
    const double speed = std::abs(kink_center(chain, params) - c0) / chain.t;
    const double target = std::sqrt(params.v_squared()) * std::abs(spec.beta);

    std::ostringstream os;
    os << "phi(0,0)=" << format_double(at_origin) << " order=" << format_double(order)
       << " speed=" << format_double(speed) << " (target " << format_double(target) << ")";
    detail = os.str();
    return exact_pi && order > 1.8 && order < 2.2 &&
           std::abs(speed - target) / target < 0.02;
}

// ---------------------------------------------------------------- criterion 7
// Closed-form variational integrals at 1e-6 relative.
bool check_variational_closed_forms(std::string& detail) {
    QuadratureGrid grid;
    const double alpha = 0.5;

    ChainHamiltonianParams kin;
    kin.d1 = 174.091;
    kin.n_chains = 1;
    const auto g0 = VariationalState::single_packet(1, 2, 0, alpha);
    const double e_kin = energy_expectation(kin, g0, grid);
    const bool kin_ok = nearly(e_kin, alpha / (2.0 * kin.d1), 1e-6);

    ChainHamiltonianParams chg;
    chg.d1 = 1e12;
    chg.e2 = 1.0;
    chg.n_chains = 1;
    const double e_chg = energy_expectation(chg, g0, grid);
    const bool chg_ok = nearly(e_chg, 1.0 / (4.0 * alpha), 1e-6);

    ChainHamiltonianParams pin;
    pin.d1 = 1e12;
    pin.e1 = 1.0;
    pin.n_chains = 1;
    const double e_pin = energy_expectation(pin, g0, grid);
    const bool pin_ok = nearly(1.0 - e_pin, std::exp(-1.0 / (8.0 * alpha)), 1e-6);

    std::ostringstream os;
    os << "kinetic=" << format_double(e_kin) << " quadratic=" << format_double(e_chg)
       << " <cos>=" << format_double(1.0 - e_pin);
    detail = os.str();
    return kin_ok && chg_ok && pin_ok;
}

ChainHamiltonianParams paper_two_chain(double theta = 0.0) {
    ChainHamiltonianParams p;
    p.d1 = 174.091;
    p.e1 = 1e-5;
    p.e2 = 1e-6;
    p.delta_p = 0.005;
    p.theta = theta;
    p.n_chains = 2;
    return p;
}

// ---------------------------------------------------------------- criterion 8
// Five parabolic arcs over [-4 pi, 4 pi], symmetric in theta.
std::vector<BandPoint>& band_cache() {
    static std::vector<BandPoint> cache;
    return cache;
}

std::vector<double> theta_grid_criterion8() {
    std::vector<double> grid(65);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = -4.0 * kPi + 8.0 * kPi * static_cast<double>(i) / 64.0;
    return grid;
}

bool check_band_structure(std::string& detail) {
    QuadratureGrid grid;
    grid.points_per_axis = 128;
    MinimizeOptions opts;
    opts.m_max = 2;

    const auto thetas = theta_grid_criterion8();
    const auto band = band_structure(paper_two_chain(), thetas, grid, opts);
    band_cache() = band;

    std::vector<int> labels;
    for (const auto& p : band)
        if (labels.empty() || labels.back() != p.dominant_m) labels.push_back(p.dominant_m);
    std::vector<int> distinct = labels;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    double worst_sym = 0.0;
    const std::size_t n = band.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& left = band[i];
        const auto& right = band[n - 1 - i];
        worst_sym = std::max(worst_sym, std::abs(left.e_min - right.e_min));
    }

    std::ostringstream os;
    os << "distinct m labels=" << distinct.size() << " segments=" << labels.size()
       << " max |E(th)-E(-th)|=" << format_double(worst_sym);
    detail = os.str();
    return distinct.size() == 5 && labels.size() == 5 && worst_sym < 1e-6;
}

// ---------------------------------------------------------------- criterion 9
// Monotone staircase with jumps at the band transitions; Delta' = 0 has none.
bool check_staircase(std::string& detail) {
    QuadratureGrid grid;
    grid.points_per_axis = 128;
    MinimizeOptions opts;
    opts.m_max = 2;

    const double dtheta = kPi / 8.0;
    std::vector<double> thetas;
    for (double th = 0.0; th <= 8.0 * kPi + 1e-9; th += dtheta) thetas.push_back(th);

    const auto stairs = phase_staircase(paper_two_chain(), thetas, grid, opts);

    bool monotone = true;
    std::vector<double> jump_locations;
    for (std::size_t i = 0; i + 1 < stairs.size(); ++i) {
        const double d = stairs[i + 1].mean_phi - stairs[i].mean_phi;
        if (d < -1e-3) monotone = false;
        if (d > kPi) jump_locations.push_back(0.5 * (stairs[i].theta + stairs[i + 1].theta));
    }

    // Dominant-m transition locations from the stored band sweep (criterion 8)
    // restricted to theta >= 0, bracket-matched within one staircase cell.
    std::vector<double> m_transitions;
    const auto& band = band_cache();
    for (std::size_t i = 0; i + 1 < band.size(); ++i)
        if (band[i].dominant_m != band[i + 1].dominant_m && band[i + 1].theta > 0.0)
            m_transitions.push_back(0.5 * (band[i].theta + band[i + 1].theta));

    bool jumps_match = !jump_locations.empty();
    for (double j : jump_locations) {
        bool matched = false;
        for (double m : m_transitions)
            if (std::abs(j - m) <= dtheta) matched = true;
        if (!matched) jumps_match = false;
    }

    // Decoupled control: Delta' = 0 loses the abrupt jumps.
    auto decoupled = paper_two_chain();
    decoupled.delta_p = 0.0;
    const auto flat = phase_staircase(decoupled, thetas, grid, opts);
    double max_step = 0.0;
    for (std::size_t i = 0; i + 1 < flat.size(); ++i)
        max_step = std::max(max_step, std::abs(flat[i + 1].mean_phi - flat[i].mean_phi));

    std::ostringstream os;
    os << "jumps=" << jump_locations.size() << " m-transitions(th>0)=" << m_transitions.size()
       << " decoupled max step=" << format_double(max_step);
    detail = os.str();
    return monotone && jumps_match && max_step < kPi;
}

// --------------------------------------------------------------- criterion 10
// Current-law fits on synthetic data.
bool check_current_fits(std::string& detail) {
    CurrentLawParams truth;
    truth.e_t = 1.0;
    truth.c_v = 1.4;
    truth.c_tilde = 2.5;
    truth.g_p = 2.0;

    std::vector<CurrentSample> ss_data;
    double scale = 0.0;
    for (int k = 0; k < 48; ++k) {
        const double e = 0.4 + 0.45 * k;
        const double i = current_ss(e, truth);
        ss_data.push_back({e, i});
        scale = std::max(scale, std::abs(i));
    }

    CurrentLawParams init;
    init.e_t = truth.e_t;  // E_T enters only through E_T c_V; pinned for the fit
    const auto self_fit = fit_current_law(ss_data, CurrentLaw::ss, init);
    const auto cross_fit = fit_current_law(ss_data, CurrentLaw::zener, init);

    const double err_cv = std::abs(self_fit.params.c_v - truth.c_v) / truth.c_v;
    const double err_ct = std::abs(self_fit.params.c_tilde - truth.c_tilde) / truth.c_tilde;

    bool zener_zero_below = true;
    CurrentLawParams zp;
    zp.e_t = 1.7;
    for (double e : {0.0, 0.4, 1.0, 1.7})
        if (current_zener(e, zp) != 0.0) zener_zero_below = false;

    std::ostringstream os;
    os << "c_v err=" << format_double(err_cv) << " c_tilde err=" << format_double(err_ct)
       << " self rms=" << format_double(self_fit.rms_residual)
       << " zener rms=" << format_double(cross_fit.rms_residual);
    detail = os.str();
    return err_cv < 1e-4 && err_ct < 1e-4 && self_fit.rms_residual < 1e-6 * scale &&
           cross_fit.rms_residual > self_fit.rms_residual && zener_zero_below;
}

// --------------------------------------------------------------- criterion 11
// Byte-identical reruns for every experiment kind.
bool check_determinism(std::string& detail) {
    const fs::path base = fs::temp_directory_path() / "cdw_lab_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    const std::string fit_data = (base / "fit_data.csv").string();
    {
        CsvWriter data(fit_data, {"e", "i"});
        CurrentLawParams truth;
        truth.g_p = 2.0;
        for (int k = 0; k < 24; ++k) {
            const double e = 1.1 + 0.7 * k;
            data.write_row({e, current_zener(e, truth)});
        }
    }

    const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
        {"experiment = classical\nseed = 11\n[classical]\nn_sites = 12\ngrid_length = 12\n"
         "e_dc = 0.3\ndt = 0.01\nn_steps = 3000\nprobe_omegas = 0.5\n",
         {"trace.csv", "response.csv"}},
        {"experiment = quantum\nseed = 12\n[quantum]\nscheme = cn\nn_points = 128\n"
         "x_min = -10\nx_max = 10\ndt = 0.01\nn_steps = 500\nomega_p_sq = 1\n"
         "packet_width = 0.7\n",
         {"qtrace.csv"}},
        {"experiment = soliton\nseed = 13\n[soliton]\nbeta = -0.5\nn_pendulums = 101\n"
         "spacing = 0.1\nomega0_sq = 100\nn_steps = 200\n",
         {"profile.csv", "chain.csv", "residual.csv"}},
        {"experiment = variational\nseed = 14\n[variational]\npoints_per_axis = 64\n"
         "theta = lin:0:3.2:5\nmax_evals = 3000\n",
         {"band.csv", "staircase.csv", "state.csv"}},
        {"experiment = fit\nseed = 15\n[fit]\nlaw = zener\ndata = " + fit_data + "\n",
         {"fit.csv", "fitcurve.csv"}},
    };

    for (const auto& [text, files] : cases) {
        RunConfig a = parse_config(text);
        RunConfig b = parse_config(text);
        a.out_dir = (base / ("a_" + to_string(a.kind))).string();
        b.out_dir = (base / ("b_" + to_string(b.kind))).string();
        const auto ra = run(a);
        const auto rb = run(b);
        if (ra.exit_status != 0 || rb.exit_status != 0) {
            detail = to_string(a.kind) + " run failed: " + ra.error + rb.error;
            return false;
        }
        for (const auto& f : files) {
            if (slurp(fs::path(a.out_dir) / f) != slurp(fs::path(b.out_dir) / f)) {
                detail = to_string(a.kind) + "/" + f + " differs between reruns";
                return false;
            }
        }
    }
    detail = "all five experiment kinds rerun byte-identically";
    return true;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "classical pinned/sliding dichotomy", check_dichotomy},
        {2, "dielectric blow-up trend toward E_th", check_dielectric_trend},
        {3, "in-loop DFT correctness", check_inloop_dft},
        {4, "quantum norm conservation and scheme agreement", check_quantum_norms},
        {5, "single-chain resonance without transmission", check_single_chain_pathology},
        {6, "soliton analytics and kink propagation", check_soliton},
        {7, "variational closed-form integrals", check_variational_closed_forms},
        {8, "five-arc band structure with parity", check_band_structure},
        {9, "tunneling staircase tied to band transitions", check_staircase},
        {10, "current-law fits on synthetic data", check_current_fits},
        {11, "byte-identical reruns", check_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const auto t1 = std::chrono::steady_clock::now();
        const double secs = std::chrono::duration<double>(t1 - t0).count();
        std::printf("[%s] criterion %2d: %s (%s; %.1fs)\n", ok ? "PASS" : "FAIL", c.id,
                    c.name.c_str(), detail.c_str(), secs);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}
