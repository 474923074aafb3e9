#include "cdw/current_laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cdw/errors.hpp"
#include "cdw/optimize.hpp"

namespace cdw {

void CurrentLawParams::validate() const {
    if (!(e_t > 0.0) || !(c_v > 0.0) || !(c_tilde > 0.0) || !(g_p > 0.0))
        throw InvalidParameterError("current-law parameters must be positive");
}

double current_ss(double e, const CurrentLawParams& p) {
    if (!(e > 0.0)) throw InvalidParameterError("current_ss requires e > 0");
    const double a = p.e_t * p.c_v;
    const double sq_up = std::sqrt(2.0 * e / a);
    const double sq_dn = std::sqrt(a / e);
    // cosh(u) exp(-a/e) = (exp(u - a/e) + exp(-u - a/e)) / 2 with u = sq_up - sq_dn.
    const double u = sq_up - sq_dn;
    const double damp = a / e;
    return 0.5 * p.c_tilde * (std::exp(u - damp) + std::exp(-u - damp));
}

double current_zener(double e, const CurrentLawParams& p) {
    if (e < 0.0) throw InvalidParameterError("current_zener requires e >= 0");
    if (e <= p.e_t) return 0.0;
    return p.g_p * (e - p.e_t) * std::exp(-p.e_t / e);
}

namespace {

double model_current(double e, CurrentLaw law, const CurrentLawParams& p) {
    return law == CurrentLaw::ss ? current_ss(e, p) : current_zener(e, p);
}

double sum_sq_loss(const std::vector<CurrentSample>& data, CurrentLaw law,
                   const CurrentLawParams& p, FitLoss loss) {
    double s = 0.0;
    for (const auto& sample : data) {
        const double model = model_current(sample.e, law, p);
        double r;
        if (loss == FitLoss::log) {
            const double floor = 1e-300;
            r = std::log(std::max(model, floor)) - std::log(std::max(sample.i, floor));
        } else {
            r = model - sample.i;
        }
        s += r * r;
    }
    return s;
}

} // namespace

FitResult fit_current_law(const std::vector<CurrentSample>& data, CurrentLaw law,
                          const CurrentLawParams& init, FitLoss loss,
                          std::size_t max_evals) {
    if (data.empty()) throw InvalidParameterError("fit needs at least one data point");
    init.validate();
    for (const auto& s : data)
        if (!(s.e > 0.0)) throw InvalidParameterError("fit data requires e > 0");

    double e_min = std::numeric_limits<double>::max(), e_max = 0.0;
    for (const auto& s : data) {
        e_min = std::min(e_min, s.e);
        e_max = std::max(e_max, s.e);
    }
    const bool rank_deficient = data.size() < 4 || e_max < 10.0 * e_min;

    auto params_from = [&](const std::vector<double>& x) {
        CurrentLawParams p = init;
        if (law == CurrentLaw::ss) {
            p.c_v = std::exp(x[0]);
            p.c_tilde = std::exp(x[1]);
        } else {
            p.e_t = std::exp(x[0]);
            p.g_p = std::exp(x[1]);
        }
        return p;
    };
    auto objective = [&](const std::vector<double>& x) {
        return sum_sq_loss(data, law, params_from(x), loss);
    };

    std::vector<double> x0(2);
    if (law == CurrentLaw::ss) {
        x0[0] = std::log(init.c_v);
        x0[1] = std::log(init.c_tilde);
    } else {
        x0[0] = std::log(init.e_t);
        x0[1] = std::log(init.g_p);
    }

    NelderMeadOptions nm;
    nm.max_evals = max_evals;
    nm.f_tol = 1e-24;
    nm.x_tol = 1e-12;
    NelderMeadResult best = nelder_mead(objective, x0, nm);
    // One polish pass from the first optimum tightens the basin.
    NelderMeadResult polish = nelder_mead(objective, best.x, nm);
    if (polish.f < best.f) {
        polish.evals += best.evals;
        best = polish;
    }

    FitResult result;
    result.params = params_from(best.x);
    result.rms_residual = std::sqrt(best.f / static_cast<double>(data.size()));
    result.converged = best.converged;
    result.rank_deficient = rank_deficient;
    result.evals = best.evals;
    return result;
}

} // namespace cdw
