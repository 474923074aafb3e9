#include "cdw/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cdw/errors.hpp"

namespace cdw {

namespace {

constexpr double kOverflowGuard = 1e9;

void check_aligned(const PhaseState& state, const ImpurityLattice& lattice) {
    if (state.phases.size() != lattice.size())
        throw InvalidParameterError("phase state not aligned with lattice");
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

} // namespace

double discrete_laplacian(const PhaseState& state, const ImpurityLattice& lattice,
                          std::size_t i) {
    check_aligned(state, lattice);
    const std::size_t n = lattice.size();
    const double phi_i = state.phases[i];
    const double phi_r = state.phases[(i + 1 < n) ? i + 1 : 0];
    const double phi_l = state.phases[(i > 0) ? i - 1 : n - 1];
    const double gap_r = lattice.forward_gap(i);
    const double gap_l = lattice.backward_gap(i);
    if (gap_r == 0.0 || gap_l == 0.0)
        throw DegenerateGapError("zero site gap in laplacian stencil");
    return (phi_r - phi_i) / gap_r - (phi_i - phi_l) / gap_l;
}

void phase_rhs(const PhaseState& state, const ImpurityLattice& lattice,
               const DriveField& drive, double v_strength, double t,
               std::vector<double>& out) {
    check_aligned(state, lattice);
    const std::size_t n = lattice.size();
    out.resize(n);
    const double field = field_at(drive, t);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = discrete_laplacian(state, lattice, i) +
                 0.5 * field * lattice.forward_gap(i) +
                 v_strength * std::sin(lattice.pinning_phases[i] + state.phases[i]);
    }
}

PhaseState step_rk2(const PhaseState& state, const ImpurityLattice& lattice,
                    const DriveField& drive, double v_strength, double dt) {
    if (!(dt > 0.0)) throw InvalidParameterError("dt must be positive");
    check_aligned(state, lattice);
    const std::size_t n = lattice.size();

    std::vector<double> k1;
    phase_rhs(state, lattice, drive, v_strength, state.t, k1);

    PhaseState mid;
    mid.phases.resize(n);
    for (std::size_t i = 0; i < n; ++i) mid.phases[i] = state.phases[i] + 0.5 * dt * k1[i];
    mid.t = state.t + 0.5 * dt;

    std::vector<double> k2;
    phase_rhs(mid, lattice, drive, v_strength, mid.t, k2);

    PhaseState next;
    next.phases.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        next.phases[i] = state.phases[i] + dt * k2[i];
        if (!std::isfinite(next.phases[i]) || std::abs(next.phases[i]) > kOverflowGuard)
            throw DivergenceError("phase diverged beyond overflow guard", 0);
    }
    next.t = state.t + dt;
    return next;
}

ResponseAccumulator::ResponseAccumulator(std::vector<double> probe_frequencies, double g1)
    : probe_frequencies_(std::move(probe_frequencies)),
      cos_sums_(probe_frequencies_.size(), 0.0),
      sin_sums_(probe_frequencies_.size(), 0.0),
      g1_(g1) {}

void ResponseAccumulator::accumulate(double t, double mean_phase_dot, double dt) {
    for (std::size_t k = 0; k < probe_frequencies_.size(); ++k) {
        const double wt = probe_frequencies_[k] * t;
        cos_sums_[k] += mean_phase_dot * std::cos(wt) * dt;
        sin_sums_[k] += mean_phase_dot * std::sin(wt) * dt;
    }
    ++steps_;
}

std::size_t ResponseAccumulator::index_of(double omega) const {
    for (std::size_t k = 0; k < probe_frequencies_.size(); ++k)
        if (probe_frequencies_[k] == omega) return k;
    throw UnknownFrequencyError("frequency not among accumulator probes");
}

std::complex<double> conductivity(const ResponseAccumulator& acc, double omega) {
    const std::size_t k = acc.index_of(omega);
    return {acc.g1() * acc.cos_sum(k), acc.g1() * acc.sin_sum(k)};
}

std::complex<double> dielectric(std::complex<double> sigma, double omega) {
    if (!(omega > 0.0)) throw ZeroFrequencyError("dielectric requires omega > 0");
    const double four_pi = 4.0 * std::numbers::pi;
    return {four_pi * sigma.imag() / omega, four_pi * sigma.real() / omega};
}

TransportResult run_transport(const ImpurityLattice& lattice, const DriveField& drive,
                              double v_strength, double dt, std::size_t n_steps,
                              const std::vector<double>& probe_frequencies,
                              const TransportOptions& opts) {
    if (n_steps == 0) throw InvalidParameterError("n_steps must be >= 1");
    lattice.validate();

    PhaseState state = opts.initial;
    if (state.phases.empty()) {
        state.phases.assign(lattice.size(), 0.0);
        state.t = 0.0;
    }
    check_aligned(state, lattice);

    TransportResult result;
    result.accumulator = ResponseAccumulator(probe_frequencies, opts.g1);
    result.trace.t.reserve(n_steps);
    result.trace.mean_phase.reserve(n_steps);
    result.trace.mean_phase_dot.reserve(n_steps);

    std::vector<double> k1, k2;
    std::vector<double> mid(lattice.size());
    for (std::size_t n = 0; n < n_steps; ++n) {
        // <phi_dot> is the lattice mean of the RHS at the step start state,
        // the same k1 the midpoint stage reuses.
        phase_rhs(state, lattice, drive, v_strength, state.t, k1);
        const double mean_dot = mean(k1);

        result.trace.t.push_back(state.t);
        result.trace.mean_phase.push_back(mean(state.phases));
        result.trace.mean_phase_dot.push_back(mean_dot);
        result.accumulator.accumulate(state.t, mean_dot, dt);

        PhaseState midstate;
        midstate.phases.resize(lattice.size());
        for (std::size_t i = 0; i < lattice.size(); ++i)
            midstate.phases[i] = state.phases[i] + 0.5 * dt * k1[i];
        midstate.t = state.t + 0.5 * dt;
        phase_rhs(midstate, lattice, drive, v_strength, midstate.t, k2);

        for (std::size_t i = 0; i < lattice.size(); ++i) {
            state.phases[i] += dt * k2[i];
            if (!std::isfinite(state.phases[i]) || std::abs(state.phases[i]) > kOverflowGuard)
                throw DivergenceError("phase diverged beyond overflow guard", n);
        }
        state.t += dt;
    }
    result.final_state = std::move(state);
    return result;
}

namespace {

// Mean <phi_dot> over the trailing window of a run at fixed DC field.
double late_slope(const ImpurityLattice& lattice, double e_dc, double v_strength,
                  double dt, std::size_t n_steps, double window_frac) {
    DriveField drive;
    drive.e_dc = e_dc;
    TransportResult r = run_transport(lattice, drive, v_strength, dt, n_steps, {});
    const std::size_t n = r.trace.mean_phase_dot.size();
    std::size_t window = static_cast<std::size_t>(window_frac * static_cast<double>(n));
    window = std::max<std::size_t>(window, 1);
    double s = 0.0;
    for (std::size_t i = n - window; i < n; ++i) s += r.trace.mean_phase_dot[i];
    return s / static_cast<double>(window);
}

} // namespace

ThresholdResult threshold_scan(const ImpurityLattice& lattice, const std::vector<double>& e_dc_grid,
                               double v_strength, double dt, std::size_t n_steps,
                               const ThresholdOptions& opts) {
    if (e_dc_grid.size() < 2) throw InvalidParameterError("field grid needs >= 2 points");
    if (!std::is_sorted(e_dc_grid.begin(), e_dc_grid.end()))
        throw InvalidParameterError("field grid must be monotone increasing");

    ThresholdResult result;
    result.points.reserve(e_dc_grid.size());
    for (double e : e_dc_grid) {
        const double slope = late_slope(lattice, e, v_strength, dt, n_steps, opts.late_window_frac);
        result.points.push_back({e, std::abs(slope) < opts.pinned_tol, slope});
    }

    double lo = -1.0, hi = -1.0;
    for (const auto& p : result.points) {
        if (p.pinned) lo = p.e_dc;        // largest pinned (grid is increasing)
        else if (hi < 0.0) hi = p.e_dc;   // smallest sliding
    }
    if (lo < 0.0 || hi < 0.0)
        throw UnresolvedThresholdError("all fields classified identically; widen the grid");

    for (int k = 0; k < opts.bisect_iters; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double slope = late_slope(lattice, mid, v_strength, dt, n_steps, opts.late_window_frac);
        if (std::abs(slope) < opts.pinned_tol) lo = mid;
        else hi = mid;
    }

    result.bracket_lo = lo;
    result.bracket_hi = hi;
    result.e_th = 0.5 * (lo + hi);
    return result;
}

WashboardState step_washboard(const WashboardState& state, const WashboardParams& params,
                              const DriveField& drive, double dt) {
    if (!(dt > 0.0)) throw InvalidParameterError("dt must be positive");
    params.validate();
    const double inv_tau = 1.0 / params.tau;
    auto accel = [&](double phi, double phi_dot, double t) {
        return params.coupling * field_at(drive, t) - inv_tau * phi_dot -
               params.omega0_sq * std::sin(phi);
    };

    const double a1 = accel(state.phi, state.phi_dot, state.t);
    const double phi_mid = state.phi + 0.5 * dt * state.phi_dot;
    const double vel_mid = state.phi_dot + 0.5 * dt * a1;
    const double a2 = accel(phi_mid, vel_mid, state.t + 0.5 * dt);

    WashboardState next;
    next.phi = state.phi + dt * vel_mid;
    next.phi_dot = state.phi_dot + dt * a2;
    next.t = state.t + dt;
    if (!std::isfinite(next.phi) || std::abs(next.phi) > kOverflowGuard)
        throw DivergenceError("washboard phase diverged", 0);
    return next;
}

} // namespace cdw
