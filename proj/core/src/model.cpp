#include "cdw/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cdw/errors.hpp"
#include "cdw/rng.hpp"

namespace cdw {

double ImpurityLattice::forward_gap(std::size_t i) const {
    if (i + 1 < sites.size()) return sites[i + 1] - sites[i];
    return sites.front() + grid_length - sites.back();
}

double ImpurityLattice::backward_gap(std::size_t i) const {
    if (i > 0) return sites[i] - sites[i - 1];
    return sites.front() - (sites.back() - grid_length);
}

void ImpurityLattice::validate() const {
    if (sites.empty()) throw InvalidParameterError("lattice has no sites");
    if (sites.size() != pinning_phases.size())
        throw InvalidParameterError("sites/pinning_phases length mismatch");
    if (grid_length <= 0.0) throw InvalidParameterError("grid_length must be positive");
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (!(sites[i] > 0.0 && sites[i] < grid_length))
            throw InvalidParameterError("site " + std::to_string(i) + " outside (0, L)");
        if (i > 0 && !(sites[i] > sites[i - 1]))
            throw InvalidParameterError("sites not strictly increasing at index " + std::to_string(i));
        if (!(pinning_phases[i] >= 0.0 && pinning_phases[i] < two_pi))
            throw InvalidParameterError("pinning phase " + std::to_string(i) + " outside [0, 2pi)");
        if (forward_gap(i) < min_gap)
            throw InvalidParameterError("gap below min_gap at index " + std::to_string(i));
    }
}

namespace {

// Smallest cyclic gap and the index of the later site of the offending pair.
std::pair<double, std::size_t> worst_gap(const std::vector<double>& r, double l) {
    double best = r.front() + l - r.back();
    std::size_t idx = 0;  // wrap pair offends the first site
    for (std::size_t i = 1; i < r.size(); ++i) {
        const double g = r[i] - r[i - 1];
        if (g < best) {
            best = g;
            idx = i;
        }
    }
    return {best, idx};
}

} // namespace

ImpurityLattice generate_impurities(std::size_t n, double c, double l,
                                    std::uint64_t seed, double min_gap) {
    if (n == 0) throw InvalidParameterError("n must be >= 1");
    if (l <= 0.0) throw InvalidParameterError("l must be positive");
    if (c <= 0.0) throw InvalidParameterError("concentration must be positive");
    if (min_gap < 0.0) throw InvalidParameterError("min_gap must be non-negative");
    if (min_gap * static_cast<double>(n) >= l)
        throw InfeasiblePackingError("min_gap * n >= l: cannot place " + std::to_string(n) +
                                     " sites with gap floor " + std::to_string(min_gap) +
                                     " in length " + std::to_string(l));

    Pcg32 rng(seed);
    auto draw = [&]() {
        double r;
        do {
            r = rng.uniform() * l;
        } while (r <= 0.0);
        return r;
    };

    std::vector<double> r(n);
    for (auto& v : r) v = draw();
    std::sort(r.begin(), r.end());

    if (n > 1 && min_gap > 0.0) {
        constexpr int kMaxAttempts = 10000;
        int attempts = 0;
        for (;;) {
            auto [gap, idx] = worst_gap(r, l);
            if (gap >= min_gap) break;
            if (++attempts > kMaxAttempts)
                throw InfeasiblePackingError("gap repair did not converge after 10^4 redraws");
            r[idx] = draw();
            std::sort(r.begin(), r.end());
        }
    }

    ImpurityLattice lattice;
    lattice.sites.resize(n);
    for (std::size_t i = 0; i < n; ++i) lattice.sites[i] = c * r[i];
    lattice.pinning_phases.resize(n);
    const double two_pi = 2.0 * std::numbers::pi;
    for (auto& th : lattice.pinning_phases) {
        do {
            th = rng.uniform() * two_pi;
        } while (th >= two_pi);
    }
    lattice.concentration = c;
    lattice.grid_length = c * l;
    lattice.min_gap = c * min_gap;
    lattice.seed = seed;
    lattice.validate();
    return lattice;
}

void DriveField::validate() const {
    if (e_ac < 0.0) throw InvalidParameterError("e_ac must be non-negative");
    if (e_ac > 0.0 && !(omega > 0.0))
        throw InvalidParameterError("omega must be positive when e_ac > 0");
}

double field_at(const DriveField& drive, double t) {
    if (drive.e_ac == 0.0) return drive.e_dc;
    return drive.e_dc + drive.e_ac * std::sin(drive.omega * t);
}

void WashboardParams::validate() const {
    if (!(tau > 0.0)) throw InvalidParameterError("tau must be positive");
    if (omega0_sq < 0.0) throw InvalidParameterError("omega0_sq must be non-negative");
}

} // namespace cdw
