#ifndef CDW_OPTIMIZE_HPP
#define CDW_OPTIMIZE_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace cdw {

struct NelderMeadOptions {
    std::size_t max_evals = 20000;
    double f_tol = 1e-13;        // absolute spread of simplex values
    double x_tol = 1e-10;        // max vertex distance from the best point
    double initial_step = 0.25;  // per-dimension offset of the start simplex
};

struct NelderMeadResult {
    std::vector<double> x;
    double f;
    std::size_t evals;
    bool converged;
};

// Deterministic derivative-free downhill simplex (reflection 1, expansion 2,
// contraction 0.5, shrink 0.5).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0,
                             const NelderMeadOptions& opts = {});

// Unit vector on S^{n-1} from n-1 spherical angles (and back). Keeps
// coefficient vectors exactly normalized inside unconstrained searches.
std::vector<double> sphere_from_angles(const std::vector<double>& angles);
std::vector<double> angles_from_unit(const std::vector<double>& unit);

} // namespace cdw

#endif
