#include "cdw/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cdw/errors.hpp"

namespace cdw {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0,
                             const NelderMeadOptions& opts) {
    const std::size_t dim = x0.size();
    if (dim == 0) throw InvalidParameterError("nelder_mead needs >= 1 dimension");

    std::size_t evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };

    std::vector<std::vector<double>> verts(dim + 1, x0);
    std::vector<double> fvals(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) {
        double step = opts.initial_step;
        if (x0[i] != 0.0) step = opts.initial_step * std::abs(x0[i]) + 0.5 * opts.initial_step;
        verts[i + 1][i] += step;
    }
    for (std::size_t i = 0; i <= dim; ++i) fvals[i] = eval(verts[i]);

    std::vector<std::size_t> order(dim + 1);
    auto sort_simplex = [&]() {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    };

    std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);
    bool converged = false;
    while (evals < opts.max_evals) {
        sort_simplex();
        const std::size_t best = order[0], worst = order[dim], second = order[dim - 1];

        const double spread = std::abs(fvals[worst] - fvals[best]);
        double xdist = 0.0;
        for (std::size_t i = 1; i <= dim; ++i) {
            double d = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                const double dd = verts[order[i]][k] - verts[best][k];
                d += dd * dd;
            }
            xdist = std::max(xdist, std::sqrt(d));
        }
        if (spread < opts.f_tol && xdist < opts.x_tol) {
            converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += verts[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        for (std::size_t k = 0; k < dim; ++k) xr[k] = centroid[k] + (centroid[k] - verts[worst][k]);
        const double fr = eval(xr);

        if (fr < fvals[best]) {
            for (std::size_t k = 0; k < dim; ++k)
                xe[k] = centroid[k] + 2.0 * (centroid[k] - verts[worst][k]);
            const double fe = eval(xe);
            if (fe < fr) {
                verts[worst] = xe;
                fvals[worst] = fe;
            } else {
                verts[worst] = xr;
                fvals[worst] = fr;
            }
        } else if (fr < fvals[second]) {
            verts[worst] = xr;
            fvals[worst] = fr;
        } else {
            const bool outside = fr < fvals[worst];
            const auto& ref = outside ? xr : verts[worst];
            for (std::size_t k = 0; k < dim; ++k) xc[k] = centroid[k] + 0.5 * (ref[k] - centroid[k]);
            const double fc = eval(xc);
            if (fc < (outside ? fr : fvals[worst])) {
                verts[worst] = xc;
                fvals[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= dim; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < dim; ++k)
                        verts[i][k] = verts[best][k] + 0.5 * (verts[i][k] - verts[best][k]);
                    fvals[i] = eval(verts[i]);
                    if (evals >= opts.max_evals) break;
                }
            }
        }
    }

    sort_simplex();
    return {verts[order[0]], fvals[order[0]], evals, converged};
}

std::vector<double> sphere_from_angles(const std::vector<double>& angles) {
    std::vector<double> unit(angles.size() + 1);
    double sin_prod = 1.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        unit[i] = sin_prod * std::cos(angles[i]);
        sin_prod *= std::sin(angles[i]);
    }
    unit.back() = sin_prod;
    return unit;
}

std::vector<double> angles_from_unit(const std::vector<double>& unit) {
    if (unit.size() < 2) throw InvalidParameterError("unit vector needs >= 2 components");
    std::vector<double> angles(unit.size() - 1);
    double tail_sq = 0.0;
    for (double u : unit) tail_sq += u * u;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        tail_sq -= unit[i] * unit[i];
        const double tail = std::sqrt(std::max(tail_sq, 0.0));
        angles[i] = std::atan2(tail, unit[i]);
    }
    // atan2 makes every angle but the last lie in [0, pi]; recover the sign of
    // the final component.
    if (unit.back() < 0.0 && !angles.empty()) angles.back() = -angles.back();
    return angles;
}

} // namespace cdw
