#ifndef CDW_SINE_GORDON_HPP
#define CDW_SINE_GORDON_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace cdw {

// Kink/antikink branch of the dimensionless sine-Gordon equation.
struct SolitonSpec {
    double beta = 0.0;  // dimensionless velocity, |beta| < 1
    int sign = +1;      // +1 kink, -1 antikink

    void validate() const;
};

/// phi_pm(z, tau) = 4 arctan(exp(+/- (z + beta tau) / sqrt(1 - beta^2)))
double soliton_profile(double z, double tau, const SolitonSpec& spec);

// d(phi)/d(tau) of the profile; used to seed chain velocities.
double soliton_profile_dtau(double z, double tau, const SolitonSpec& spec);

/// (z, tau) = (omega1 x / v, omega1 t)
std::pair<double, double> to_dimensionless(double x, double t, double omega1, double v);
std::pair<double, double> from_dimensionless(double z, double tau, double omega1, double v);

struct ResidualNorms {
    double max_abs;
    double l2;
};

// Central-difference residual of phi_tautau - phi_zz + sin(phi) on a uniform
// (z, tau) grid; field(iz, itau) is stored row-major with n_tau columns.
// Interior points only. Throws GridTooSmallError below 5 points per axis.
ResidualNorms sg_residual(const std::vector<double>& field, std::size_t n_z,
                          std::size_t n_tau, double hz, double htau);

enum class ChainEnds { clamped, free };

// Coupled-pendulum discretization
//   phi_dd_i = omega0_sq [(phi_{i+1}-phi_i) - (phi_i-phi_{i-1})] - omega1_sq sin(phi_i)
// with the invariant v^2 = omega0_sq * d^2.
struct PendulumChainParams {
    double omega0_sq = 1.0;  // torsion coupling / (m l^2)
    double omega1_sq = 1.0;  // gravity (pinning) / (m l^2)
    double d = 1.0;          // horizontal spacing
    std::size_t n = 0;       // pendulum count
    ChainEnds ends = ChainEnds::clamped;
    double left_value = 0.0;   // clamped end values
    double right_value = 0.0;

    double v_squared() const { return omega0_sq * d * d; }
    void validate() const;

    // Mechanical parameterization: torsion modulus eta, line density rho,
    // pendulum length l. Then omega0_sq = eta / (rho d^2 l^2) and
    // v^2 = eta / (rho l^2) independent of the spacing d.
    static PendulumChainParams from_mechanical(double eta, double rho, double l, double d,
                                               double e1, std::size_t n);
};

struct ChainState {
    std::vector<double> phases;
    std::vector<double> velocities;
    double t = 0.0;
};

// One velocity-Verlet (leapfrog) step of the undamped chain.
void pendulum_chain_step(ChainState& state, const PendulumChainParams& params, double dt);

// Total energy per unit (m l^2): kinetic + torsion bonds + pinning.
double chain_energy(const ChainState& state, const PendulumChainParams& params);

// x-position of the phi = pi crossing, linearly interpolated; the chain is
// assumed to host a single kink (monotone-ish profile). Site i sits at x = i*d.
double kink_center(const ChainState& state, const PendulumChainParams& params);

// Chain state sampled from the analytic kink at time t = 0, centered at
// x_center, using the dimensionless map with v = sqrt(v_squared).
ChainState chain_from_soliton(const PendulumChainParams& params, const SolitonSpec& spec,
                              double x_center);

} // namespace cdw

#endif
