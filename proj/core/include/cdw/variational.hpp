#ifndef CDW_VARIATIONAL_HPP
#define CDW_VARIATIONAL_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace cdw {

// Multi-chain Hamiltonian with Peierls coupling between adjacent chains:
//   H = sum_n [ Pi_n^2 / (2 D1) + E1 (1 - cos phi_n) + E2 (phi_n - Theta)^2 ]
//     + Delta' sum_{n>=2} (1 - cos(phi_n - phi_{n-1}))
struct ChainHamiltonianParams {
    double d1 = 1.0;       // kinetic mass D1
    double e1 = 0.0;       // pinning energy E_p
    double e2 = 0.0;       // charging energy E_c
    double delta_p = 0.0;  // Peierls coupling Delta'
    double theta = 0.0;    // drive Theta (radians)
    std::size_t n_chains = 1;
    double hbar = 1.0;

    void validate() const;
    // Paper regime Delta' >> E1 >> E2; informational, never enforced.
    bool in_paper_regime() const;
};

// Per-chain Gaussian packet mixture sum_m b_m exp(-alpha (phi - 2 pi m)^2),
// m = -M..M, with each chain's coefficient vector on the unit sphere.
struct VariationalState {
    std::vector<std::vector<double>> coefficients;  // [chain][m + M]
    double alpha = 0.5;

    std::size_t n_chains() const { return coefficients.size(); }
    int m_max() const { return static_cast<int>((coefficients.front().size() - 1) / 2); }
    double coeff(std::size_t chain, int m) const {
        return coefficients[chain][static_cast<std::size_t>(m + m_max())];
    }

    void validate() const;  // throws InvalidStateError off the unit sphere

    static VariationalState single_packet(std::size_t n_chains, int m_max, int m, double alpha);
    static VariationalState uniform(std::size_t n_chains, int m_max, double alpha);
};

struct QuadratureGrid {
    double eta = 20.0;                 // domain [-eta pi, eta pi] per axis
    std::size_t points_per_axis = 256; // Simpson panels (even); nodes = panels + 1
    enum class Rule { simpson } rule = Rule::simpson;

    void validate() const;
    double h() const;
    std::vector<double> nodes() const;
    std::vector<double> weights() const;  // Simpson weights including h
};

// Trial amplitude N * prod_n u_n(phi_n), normalized so the grid integral of
// |Psi|^2 over the quadrature domain is 1.
double trial_amplitude(std::span<const double> phis, const VariationalState& state,
                       const QuadratureGrid& grid);

// <Psi|H|Psi> by tensor-product Simpson quadrature. The product structure of
// the trial state lets every term factor into per-chain 1-D sums; the values
// are identical to the explicit dense tensor sum up to roundoff (see
// energy_expectation_dense). With richardson_check set, the energy is
// recomputed on a half-resolution grid and a relative difference > 1e-4
// throws QuadratureUnderresolvedError.
double energy_expectation(const ChainHamiltonianParams& params, const VariationalState& state,
                          const QuadratureGrid& grid, bool richardson_check = true);

// Explicit dense tensor-product accumulation; n_chains <= 2 only. Kept as the
// reference route for the factorized evaluation.
double energy_expectation_dense(const ChainHamiltonianParams& params,
                                const VariationalState& state, const QuadratureGrid& grid);

struct MinimizeOptions {
    std::size_t max_evals = 20000;  // per simplex run
    double alpha_min = 0.02;
    double alpha_max = 2.0;
    double f_tol = 1e-14;
    double x_tol = 1e-9;
    int m_max = 2;       // packet window for sweep-generated initial states
    double alpha0 = 0.3; // width seed for sweep-generated initial states
};

struct MinimizeResult {
    double e_min;
    VariationalState state;
    bool converged;
    std::size_t evals;
};

// Constrained minimization over ({b_m} per chain, alpha): coefficients move on
// the unit sphere through spherical angles, alpha through its logarithm.
// Restarts are systematic: every single-packet basis state, the uniform
// mixture, an equal mix of the two packets nearest Theta/2pi, and the caller's
// init (8 starts at M = 2). Returns best-so-far with converged = false rather
// than throwing when the evaluation budget runs out.
MinimizeResult minimize_energy(const ChainHamiltonianParams& params, const QuadratureGrid& grid,
                               const VariationalState& init, const MinimizeOptions& opts = {});

// Packet index with the largest coefficient weight summed over chains.
int dominant_packet(const VariationalState& state);

struct BandPoint {
    double theta;
    double e_min;
    int dominant_m;
    double alpha;
    VariationalState state;
    bool converged;
};

// E_min(Theta) sweep; each solve warm-starts from the previous argmin on top
// of the systematic restarts. Per-point failures are recorded, not thrown.
std::vector<BandPoint> band_structure(const ChainHamiltonianParams& params_base,
                                      const std::vector<double>& theta_grid,
                                      const QuadratureGrid& grid,
                                      const MinimizeOptions& opts = {});

// <Phi> = (1/2) <phi_1 + phi_2> over |Psi|^2; two chains.
double mean_phase(const VariationalState& state, const QuadratureGrid& grid);

struct StaircasePoint {
    double theta;
    double mean_phi;          // from the global best-of-restarts minimum
    double mean_phi_tracked;  // from the warm-start-only (tracked) branch
    int dominant_m;
    double e_min;
};

std::vector<StaircasePoint> phase_staircase(const ChainHamiltonianParams& params_base,
                                            const std::vector<double>& theta_grid,
                                            const QuadratureGrid& grid,
                                            const MinimizeOptions& opts = {});

} // namespace cdw

#endif
