#ifndef CDW_MODEL_HPP
#define CDW_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cdw {

// Random pinning sites X_i = c*R_i on a ring of circumference grid_length,
// each carrying a random pinning phase theta_i in [0, 2*pi).
//
// All gaps, including the wrap-around gap X_1 + L - X_N, are kept >= min_gap
// so the non-uniform second-difference stencil never divides by a near-zero
// spacing. Fields are immutable after construction.
struct ImpurityLattice {
    std::vector<double> sites;           // strictly increasing, all in (0, grid_length)
    std::vector<double> pinning_phases;  // theta_i in [0, 2*pi)
    double concentration = 1.0;
    double grid_length = 0.0;            // L, in site units (= c * l)
    double min_gap = 0.0;                // effective floor in site units (= c * input floor)
    std::uint64_t seed = 0;

    std::size_t size() const { return sites.size(); }

    // Forward gap X_{i+1} - X_i; the last site wraps to X_1 + L.
    double forward_gap(std::size_t i) const;
    // Backward gap X_i - X_{i-1}; the first site wraps to X_N - L.
    double backward_gap(std::size_t i) const;

    void validate() const;  // throws on any broken invariant
};

// Uniform draws in (0, l), sorted, then gap-repaired by rejection resampling:
// any site violating the (cyclic) min-gap floor is redrawn, up to 10^4
// attempts. Positions and the domain are then scaled by the concentration c.
ImpurityLattice generate_impurities(std::size_t n, double c, double l,
                                    std::uint64_t seed, double min_gap);

struct DriveField {
    double e_dc = 0.0;
    double e_ac = 0.0;
    double omega = 0.0;

    void validate() const;
};

/// E(t) = e_dc + e_ac * sin(omega * t)
double field_at(const DriveField& drive, double t);

// Rigid-phase washboard reference model (uniform impurity spacing):
//   phi_dd + (1/tau) phi_d + omega0_sq * sin(phi) = coupling * E(t)
struct WashboardParams {
    double tau = 1.0;        // damping time
    double omega0_sq = 1.0;  // pinning frequency squared
    double coupling = 1.0;   // lumped e*Q/M_F drive coefficient

    void validate() const;
};

} // namespace cdw

#endif
