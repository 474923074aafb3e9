#ifndef CDW_QUANTUM_HPP
#define CDW_QUANTUM_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace cdw {

// Single-chain Schroedinger evolution over the phase coordinate,
//   i hbar dpsi/dt = -(hbar^2 / 2 D) psi_xx + V(x, t) psi,
// with the washboard potential of the extended Schwinger model.
struct SchwingerParams {
    double d_coeff = 1.0;     // D, mass-like coefficient (> 0)
    double mu_e_sq = 0.0;     // mu_E^2, quadratic (charging) stiffness
    double omega_p_sq = 0.0;  // omega_p^2, cosine (pinning) stiffness
    double omega_d = 0.0;     // drive frequency: Theta = omega_d * t
    double hbar = 1.0;

    void validate() const;

    // Alternate parameterization: mu_E^2 = 2 * E_c, matching the multi-chain
    // charging term E_c (phi - Theta)^2.
    static SchwingerParams from_charging_energy(double e_c, double d_coeff,
                                                double omega_p_sq, double omega_d,
                                                double hbar = 1.0);
};

/// V(x, t) = (1/2) mu_E^2 (x - omega_d t)^2 + (1/2) D omega_p^2 (1 - cos x)
double washboard_potential(double x, double t, const SchwingerParams& params);

struct WaveFunction {
    std::vector<std::complex<double>> amplitudes;  // psi_j on x_j = x0 + j*dx
    double x0 = 0.0;
    double dx = 1.0;
    double t = 0.0;
    std::size_t step_index = 0;

    std::size_t size() const { return amplitudes.size(); }
    double x(std::size_t j) const { return x0 + static_cast<double>(j) * dx; }
    double norm() const;    // sum |psi_j|^2 dx
    double mean_x() const;  // sum x_j |psi_j|^2 dx / norm
    void validate() const;
};

// Normalized Gaussian packet exp(-(x-center)^2/(4 width^2) + i k x).
WaveFunction gaussian_packet(double x0, double dx, std::size_t n_points,
                             double center, double width, double wavenumber = 0.0);

// Probability mass at x > x_cut, as a fraction of the total norm.
double probability_beyond(const WaveFunction& wf, double x_cut);

enum class Boundary { dirichlet, periodic };

// Two-level implicit time-centered step (tridiagonal solve, V at t + dt/2).
// Unitary for the discrete norm up to roundoff.
WaveFunction step_crank_nicolson(const WaveFunction& wf, const SchwingerParams& params,
                                 double dt, Boundary boundary = Boundary::dirichlet);

// Literal transcription of the mixed-level three-time-level stencil variant:
//   psi(j,n+1) = psi(j,n-1) + i dt ( (hbar/D) [psi(j+1,n) - psi(j-1,n) - 2 psi(j,n)
//                + psi(j+1,n+1) + psi(j-1,n+1) - 2 psi(j,n+1)] / dx^2
//                - (2 V(j,n)/hbar) psi(j,n) )
// Solved implicitly for the n+1 level. Kept for comparison only; not a
// recommended propagation scheme.
WaveFunction step_mixed_level_literal(const WaveFunction& wf_n, const WaveFunction& wf_prev,
                                      const SchwingerParams& params, double dt,
                                      Boundary boundary = Boundary::dirichlet);

enum class NeighborSign {
    sum,        // standard Dufort-Frankel neighbor sum (default)
    difference  // literal printed variant psi_{j-1} - psi_{j+1}
};

// Mesh ratio as printed alongside the three-level scheme:
// R~ = -i dt hbar / (2 D dx^2). The propagation below uses r = -R~ so the
// update is consistent with the Schroedinger sign convention above.
std::complex<double> dufort_frankel_r_tilde(double dt, const SchwingerParams& params, double dx);

// Three-level Dufort-Frankel step, explicit and unconditionally stable for
// V = 0: with r = -R~,
//   psi^{n+1}_j = [2r/(1+2r)] (psi^n_{j-1} +/- psi^n_{j+1})
//              + [(1-2r)/(1+2r)] psi^{n-1}_j - [2 i dt/((1+2r) hbar)] V psi^n_j.
// First step is bootstrapped with one Crank-Nicolson step by evolve_chain.
WaveFunction step_dufort_frankel(const WaveFunction& wf_n, const WaveFunction& wf_prev,
                                 const SchwingerParams& params, double dt,
                                 Boundary boundary = Boundary::dirichlet,
                                 NeighborSign neighbor = NeighborSign::sum);

enum class Scheme { crank_nicolson, dufort_frankel };

enum class CnVariant { standard, mixed_level_literal };

struct EvolveOptions {
    Boundary boundary = Boundary::dirichlet;
    NeighborSign df_neighbor = NeighborSign::sum;
    CnVariant cn_variant = CnVariant::standard;
    double blowup_factor = 10.0;  // abort when norm exceeds this multiple of the start norm
};

struct ChainTraceRow {
    double t;
    double mean_x;
    double norm;
    int flag;  // 0 normal, 1 blow-up terminated
};

struct ChainTrace {
    std::vector<ChainTraceRow> rows;
    bool terminated_early = false;
    std::size_t fail_step = 0;
    std::string error;
    WaveFunction final_wf;
};

ChainTrace evolve_chain(const WaveFunction& wf0, const SchwingerParams& params,
                        Scheme scheme, double dt, std::size_t n_steps,
                        const EvolveOptions& opts = {});

} // namespace cdw

#endif
