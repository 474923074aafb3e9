#ifndef CDW_CLASSICAL_HPP
#define CDW_CLASSICAL_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "cdw/model.hpp"

namespace cdw {

// Phase values phi_i aligned index-for-index with an ImpurityLattice.
struct PhaseState {
    std::vector<double> phases;
    double t = 0.0;
};

// Non-uniform second difference of Eq.-2.3 form,
//   (phi_{i+1}-phi_i)/(X_{i+1}-X_i) - (phi_i-phi_{i-1})/(X_i-X_{i-1}),
// with ring closure at the ends: the left neighbor of the first site is
// (phi_N, X_N - L) and the right neighbor of the last site is (phi_1, X_1 + L).
double discrete_laplacian(const PhaseState& state, const ImpurityLattice& lattice,
                          std::size_t i);

// Overdamped pinning dynamics:
//   phi_dot_i = lap_i + (1/2) E(t) (X_{i+1}-X_i) + V sin(theta_i + phi_i)
// The drive term uses the forward gap, wrapping at the last site.
void phase_rhs(const PhaseState& state, const ImpurityLattice& lattice,
               const DriveField& drive, double v_strength, double t,
               std::vector<double>& out);

// Midpoint second-order step; advances t by dt.
// Throws DivergenceError when any |phi_i| exceeds the overflow guard (1e9)
// or turns non-finite.
PhaseState step_rk2(const PhaseState& state, const ImpurityLattice& lattice,
                    const DriveField& drive, double v_strength, double dt);

// Running in-loop DFT of the mean phase velocity: per probe frequency,
//   cos_sum += <phi_dot>_n cos(w t_n) dt,  sin_sum += <phi_dot>_n sin(w t_n) dt,
// updated exactly once per accepted integrator step.
class ResponseAccumulator {
public:
    ResponseAccumulator() = default;
    ResponseAccumulator(std::vector<double> probe_frequencies, double g1 = 1.0);

    void accumulate(double t, double mean_phase_dot, double dt);

    const std::vector<double>& probe_frequencies() const { return probe_frequencies_; }
    double g1() const { return g1_; }
    double cos_sum(std::size_t k) const { return cos_sums_[k]; }
    double sin_sum(std::size_t k) const { return sin_sums_[k]; }
    std::size_t steps() const { return steps_; }

    // Index of a probe frequency; throws UnknownFrequencyError if absent.
    std::size_t index_of(double omega) const;

private:
    std::vector<double> probe_frequencies_;
    std::vector<double> cos_sums_;
    std::vector<double> sin_sums_;
    double g1_ = 1.0;
    std::size_t steps_ = 0;
};

/// sigma(w) = g1 * cos_sum(w) + i * g1 * sin_sum(w)
std::complex<double> conductivity(const ResponseAccumulator& acc, double omega);

/// eps(w) = 4*pi * (Im sigma / w) + i * 4*pi * (Re sigma / w); throws for w <= 0.
std::complex<double> dielectric(std::complex<double> sigma, double omega);

struct TransportTrace {
    std::vector<double> t;               // step start times
    std::vector<double> mean_phase;      // <phi> at step start
    std::vector<double> mean_phase_dot;  // lattice mean of the RHS at step start
};

struct TransportResult {
    TransportTrace trace;
    ResponseAccumulator accumulator;
    PhaseState final_state;
};

struct TransportOptions {
    double g1 = 1.0;
    PhaseState initial;  // empty phases => start from phi == 0
};

TransportResult run_transport(const ImpurityLattice& lattice, const DriveField& drive,
                              double v_strength, double dt, std::size_t n_steps,
                              const std::vector<double>& probe_frequencies,
                              const TransportOptions& opts = {});

struct ThresholdOptions {
    double late_window_frac = 0.25;  // fraction of steps used for the late-time slope
    double pinned_tol = 1e-6;        // mean <phi_dot> below this classifies as pinned
    int bisect_iters = 4;            // extra runs refining the bracket
};

struct ThresholdPoint {
    double e_dc;
    bool pinned;
    double late_slope;  // mean <phi_dot> over the late window
};

struct ThresholdResult {
    std::vector<ThresholdPoint> points;
    double e_th;           // midpoint of the refined bracket
    double bracket_lo;     // largest field classified pinned
    double bracket_hi;     // smallest field classified sliding
};

// Classifies each field of a monotone grid as pinned or sliding, then bisects
// the threshold between the largest pinned and smallest sliding field.
// Throws UnresolvedThresholdError when every field classifies identically.
ThresholdResult threshold_scan(const ImpurityLattice& lattice, const std::vector<double>& e_dc_grid,
                               double v_strength, double dt, std::size_t n_steps,
                               const ThresholdOptions& opts = {});

struct WashboardState {
    double phi = 0.0;
    double phi_dot = 0.0;
    double t = 0.0;
};

// One midpoint step of phi_dd + (1/tau) phi_d + omega0_sq sin(phi) = coupling*E(t).
WashboardState step_washboard(const WashboardState& state, const WashboardParams& params,
                              const DriveField& drive, double dt);

} // namespace cdw

#endif
