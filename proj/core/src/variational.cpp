#include "cdw/variational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cdw/errors.hpp"
#include "cdw/optimize.hpp"

namespace cdw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNormTol = 1e-12;
constexpr double kPenaltyEnergy = 1e100;

} // namespace

void ChainHamiltonianParams::validate() const {
    if (!(d1 > 0.0)) throw InvalidParameterError("d1 must be positive");
    if (e1 < 0.0 || e2 < 0.0 || delta_p < 0.0)
        throw InvalidParameterError("energies must be non-negative");
    if (n_chains == 0) throw InvalidParameterError("n_chains must be >= 1");
    if (!(hbar > 0.0)) throw InvalidParameterError("hbar must be positive");
}

bool ChainHamiltonianParams::in_paper_regime() const {
    return delta_p > e1 && e1 > e2;
}

void VariationalState::validate() const {
    if (coefficients.empty()) throw InvalidStateError("state has no chains");
    const std::size_t width = coefficients.front().size();
    if (width % 2 == 0) throw InvalidStateError("coefficient count must be odd (m = -M..M)");
    for (const auto& b : coefficients) {
        if (b.size() != width) throw InvalidStateError("chains have mismatched packet counts");
        double s = 0.0;
        for (double v : b) s += v * v;
        if (std::abs(s - 1.0) > kNormTol)
            throw InvalidStateError("chain coefficients not normalized (sum b_m^2 != 1)");
    }
    if (!(alpha > 0.0)) throw InvalidStateError("alpha must be positive");
}

VariationalState VariationalState::single_packet(std::size_t n_chains, int m_max, int m,
                                                 double alpha) {
    VariationalState s;
    s.alpha = alpha;
    std::vector<double> b(2 * static_cast<std::size_t>(m_max) + 1, 0.0);
    b[static_cast<std::size_t>(m + m_max)] = 1.0;
    s.coefficients.assign(n_chains, b);
    return s;
}

VariationalState VariationalState::uniform(std::size_t n_chains, int m_max, double alpha) {
    VariationalState s;
    s.alpha = alpha;
    const std::size_t width = 2 * static_cast<std::size_t>(m_max) + 1;
    std::vector<double> b(width, 1.0 / std::sqrt(static_cast<double>(width)));
    s.coefficients.assign(n_chains, b);
    return s;
}

void QuadratureGrid::validate() const {
    if (!(eta >= 1.0)) throw InvalidParameterError("eta must be >= 1");
    if (points_per_axis < 32) throw InvalidParameterError("points_per_axis must be >= 32");
    if (points_per_axis % 2 != 0)
        throw InvalidParameterError("points_per_axis must be even (Simpson panels)");
}

double QuadratureGrid::h() const {
    return 2.0 * eta * std::numbers::pi / static_cast<double>(points_per_axis);
}

std::vector<double> QuadratureGrid::nodes() const {
    validate();
    const double lo = -eta * std::numbers::pi;
    const double step = h();
    std::vector<double> x(points_per_axis + 1);
    for (std::size_t i = 0; i <= points_per_axis; ++i)
        x[i] = lo + step * static_cast<double>(i);
    return x;
}

std::vector<double> QuadratureGrid::weights() const {
    validate();
    const double step = h();
    std::vector<double> w(points_per_axis + 1, 0.0);
    w.front() = w.back() = step / 3.0;
    for (std::size_t i = 1; i < points_per_axis; ++i)
        w[i] = (i % 2 == 1) ? 4.0 * step / 3.0 : 2.0 * step / 3.0;
    return w;
}

namespace {

double packet_mixture(double phi, const std::vector<double>& b, int m_max, double alpha) {
    double u = 0.0;
    for (int m = -m_max; m <= m_max; ++m) {
        const double d = phi - kTwoPi * static_cast<double>(m);
        u += b[static_cast<std::size_t>(m + m_max)] * std::exp(-alpha * d * d);
    }
    return u;
}

// Per-chain 1-D quadrature reductions; everything the factorized energy needs.
struct ChainMoments {
    double norm;    // integral of u^2
    double kin;     // integral of u'^2 / norm
    double cos_v;   // <cos phi>
    double sin_v;   // <sin phi>
    double phi1;    // <phi>
    double phi2;    // <phi^2>
};

ChainMoments reduce_chain(const std::vector<double>& b, int m_max, double alpha,
                          const std::vector<double>& nodes, const std::vector<double>& weights) {
    double norm = 0.0, kin = 0.0, cos_v = 0.0, sin_v = 0.0, phi1 = 0.0, phi2 = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double phi = nodes[i];
        double u = 0.0, du = 0.0;
        for (int m = -m_max; m <= m_max; ++m) {
            const double d = phi - kTwoPi * static_cast<double>(m);
            const double g = b[static_cast<std::size_t>(m + m_max)] * std::exp(-alpha * d * d);
            u += g;
            du += -2.0 * alpha * d * g;
        }
        const double w = weights[i];
        const double u2 = u * u;
        norm += w * u2;
        kin += w * du * du;
        cos_v += w * u2 * std::cos(phi);
        sin_v += w * u2 * std::sin(phi);
        phi1 += w * u2 * phi;
        phi2 += w * u2 * phi * phi;
    }
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw QuadratureUnderresolvedError("trial-state norm vanished on the quadrature grid");
    return {norm, kin / norm, cos_v / norm, sin_v / norm, phi1 / norm, phi2 / norm};
}

double energy_from_moments(const ChainHamiltonianParams& p,
                           const std::vector<ChainMoments>& mom) {
    double e = 0.0;
    for (std::size_t n = 0; n < mom.size(); ++n) {
        e += p.hbar * p.hbar * mom[n].kin / (2.0 * p.d1);
        e += p.e1 * (1.0 - mom[n].cos_v);
        e += p.e2 * (mom[n].phi2 - 2.0 * p.theta * mom[n].phi1 + p.theta * p.theta);
        if (n > 0) {
            // <cos(phi_n - phi_{n-1})> factorizes for a product state.
            e += p.delta_p *
                 (1.0 - (mom[n].cos_v * mom[n - 1].cos_v + mom[n].sin_v * mom[n - 1].sin_v));
        }
    }
    return e;
}

double energy_on_grid(const ChainHamiltonianParams& params, const VariationalState& state,
                      const QuadratureGrid& grid) {
    const auto nodes = grid.nodes();
    const auto weights = grid.weights();
    std::vector<ChainMoments> mom;
    mom.reserve(state.n_chains());
    for (const auto& b : state.coefficients)
        mom.push_back(reduce_chain(b, state.m_max(), state.alpha, nodes, weights));
    return energy_from_moments(params, mom);
}

} // namespace

double trial_amplitude(std::span<const double> phis, const VariationalState& state,
                       const QuadratureGrid& grid) {
    state.validate();
    if (phis.size() != state.n_chains())
        throw InvalidParameterError("phase vector length must equal n_chains");
    const auto nodes = grid.nodes();
    const auto weights = grid.weights();

    double value = 1.0, norm_product = 1.0;
    for (std::size_t n = 0; n < state.n_chains(); ++n) {
        const auto& b = state.coefficients[n];
        value *= packet_mixture(phis[n], b, state.m_max(), state.alpha);
        double norm = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double u = packet_mixture(nodes[i], b, state.m_max(), state.alpha);
            norm += weights[i] * u * u;
        }
        norm_product *= norm;
    }
    if (!(norm_product > 0.0))
        throw QuadratureUnderresolvedError("trial-state norm vanished on the quadrature grid");
    return value / std::sqrt(norm_product);
}

double energy_expectation(const ChainHamiltonianParams& params, const VariationalState& state,
                          const QuadratureGrid& grid, bool richardson_check) {
    params.validate();
    state.validate();
    grid.validate();
    if (state.n_chains() != params.n_chains)
        throw InvalidParameterError("state chain count does not match params");

    const double e = energy_on_grid(params, state, grid);
    if (richardson_check && grid.points_per_axis >= 64) {
        QuadratureGrid half = grid;
        half.points_per_axis = grid.points_per_axis / 2;
        const double e_half = energy_on_grid(params, state, half);
        const double scale = std::max({std::abs(e), std::abs(e_half), 1e-300});
        if (std::abs(e - e_half) / scale > 1e-4)
            throw QuadratureUnderresolvedError("quadrature Richardson check failed: grid "
                                               "and grid/2 energies differ by > 1e-4 relative");
    }
    return e;
}

double energy_expectation_dense(const ChainHamiltonianParams& params,
                                const VariationalState& state, const QuadratureGrid& grid) {
    params.validate();
    state.validate();
    grid.validate();
    if (state.n_chains() != params.n_chains)
        throw InvalidParameterError("state chain count does not match params");
    if (params.n_chains > 2)
        throw InvalidParameterError("dense quadrature supports n_chains <= 2");

    const auto nodes = grid.nodes();
    const auto weights = grid.weights();
    const int m_max = state.m_max();
    const double alpha = state.alpha;

    if (params.n_chains == 1) {
        const auto& b = state.coefficients[0];
        double z = 0.0, kin = 0.0, pin = 0.0, chg = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double phi = nodes[i];
            double u = 0.0, du = 0.0;
            for (int m = -m_max; m <= m_max; ++m) {
                const double d = phi - kTwoPi * static_cast<double>(m);
                const double g = b[static_cast<std::size_t>(m + m_max)] * std::exp(-alpha * d * d);
                u += g;
                du += -2.0 * alpha * d * g;
            }
            const double w = weights[i];
            z += w * u * u;
            kin += w * du * du;
            pin += w * u * u * (1.0 - std::cos(phi));
            const double dphi = phi - params.theta;
            chg += w * u * u * dphi * dphi;
        }
        if (!(z > 0.0)) throw QuadratureUnderresolvedError("trial-state norm vanished");
        return (params.hbar * params.hbar / (2.0 * params.d1)) * kin / z + params.e1 * pin / z +
               params.e2 * chg / z;
    }

    // Two chains: precompute per-axis values, then accumulate the full tensor sum.
    const std::size_t np = nodes.size();
    std::vector<double> u1(np), du1(np), u2(np), du2(np);
    for (std::size_t i = 0; i < np; ++i) {
        const double phi = nodes[i];
        double a = 0.0, da = 0.0, c = 0.0, dc = 0.0;
        for (int m = -m_max; m <= m_max; ++m) {
            const double d = phi - kTwoPi * static_cast<double>(m);
            const double e = std::exp(-alpha * d * d);
            const double g1 = state.coefficients[0][static_cast<std::size_t>(m + m_max)] * e;
            const double g2 = state.coefficients[1][static_cast<std::size_t>(m + m_max)] * e;
            a += g1;
            da += -2.0 * alpha * d * g1;
            c += g2;
            dc += -2.0 * alpha * d * g2;
        }
        u1[i] = a;
        du1[i] = da;
        u2[i] = c;
        du2[i] = dc;
    }

    double z = 0.0, acc = 0.0;
    const double kin_pref = params.hbar * params.hbar / (2.0 * params.d1);
    for (std::size_t i = 0; i < np; ++i) {
        const double phi1 = nodes[i];
        const double w1 = weights[i];
        const double p1 = u1[i] * u1[i];
        const double dp1 = du1[i] * du1[i];
        const double t1 = phi1 - params.theta;
        for (std::size_t j = 0; j < np; ++j) {
            const double phi2 = nodes[j];
            const double w = w1 * weights[j];
            const double p2 = u2[j] * u2[j];
            const double dp2 = du2[j] * du2[j];
            const double t2 = phi2 - params.theta;
            const double dens = p1 * p2;
            z += w * dens;
            double h_local = kin_pref * (dp1 * p2 + p1 * dp2);
            h_local += params.e1 * dens * (2.0 - std::cos(phi1) - std::cos(phi2));
            h_local += params.e2 * dens * (t1 * t1 + t2 * t2);
            h_local += params.delta_p * dens * (1.0 - std::cos(phi2 - phi1));
            acc += w * h_local;
        }
    }
    if (!(z > 0.0)) throw QuadratureUnderresolvedError("trial-state norm vanished");
    return acc / z;
}

int dominant_packet(const VariationalState& state) {
    const int m_max = state.m_max();
    int best_m = -m_max;
    double best_w = -1.0;
    for (int m = -m_max; m <= m_max; ++m) {
        double w = 0.0;
        for (const auto& b : state.coefficients) {
            const double v = b[static_cast<std::size_t>(m + m_max)];
            w += v * v;
        }
        if (w > best_w) {
            best_w = w;
            best_m = m;
        }
    }
    return best_m;
}

namespace {

// Pack/unpack between the optimizer vector (spherical angles per chain plus
// log alpha) and a VariationalState.
std::vector<double> pack_state(const VariationalState& s) {
    std::vector<double> x;
    for (const auto& b : s.coefficients) {
        const auto angles = angles_from_unit(b);
        x.insert(x.end(), angles.begin(), angles.end());
    }
    x.push_back(std::log(s.alpha));
    return x;
}

VariationalState unpack_state(const std::vector<double>& x, std::size_t n_chains, int m_max,
                              const MinimizeOptions& opts, double* penalty) {
    const std::size_t per_chain = 2 * static_cast<std::size_t>(m_max);
    VariationalState s;
    s.coefficients.resize(n_chains);
    std::size_t k = 0;
    for (std::size_t n = 0; n < n_chains; ++n) {
        std::vector<double> angles(x.begin() + static_cast<std::ptrdiff_t>(k),
                                   x.begin() + static_cast<std::ptrdiff_t>(k + per_chain));
        s.coefficients[n] = sphere_from_angles(angles);
        k += per_chain;
    }
    const double log_alpha = x[k];
    const double lo = std::log(opts.alpha_min), hi = std::log(opts.alpha_max);
    const double clamped = std::clamp(log_alpha, lo, hi);
    if (penalty) {
        const double excess = log_alpha - clamped;
        *penalty = 1e3 * excess * excess;
    }
    s.alpha = std::exp(clamped);
    return s;
}

std::vector<VariationalState> systematic_starts(const ChainHamiltonianParams& params,
                                                const VariationalState& init) {
    const int m_max = init.m_max();
    const std::size_t n_chains = init.n_chains();
    const double alpha = init.alpha;

    std::vector<VariationalState> starts;
    for (int m = -m_max; m <= m_max; ++m)
        starts.push_back(VariationalState::single_packet(n_chains, m_max, m, alpha));
    starts.push_back(VariationalState::uniform(n_chains, m_max, alpha));

    // Equal mix of the two packets flanking Theta / 2 pi; the contested pair
    // near an arc crossing.
    const double frac = params.theta / kTwoPi;
    int lo = static_cast<int>(std::floor(frac));
    lo = std::clamp(lo, -m_max, m_max - 1);
    VariationalState pair = VariationalState::single_packet(n_chains, m_max, lo, alpha);
    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    for (auto& b : pair.coefficients) {
        b[static_cast<std::size_t>(lo + m_max)] = inv_rt2;
        b[static_cast<std::size_t>(lo + 1 + m_max)] = inv_rt2;
    }
    starts.push_back(pair);

    starts.push_back(init);
    return starts;
}

} // namespace

MinimizeResult minimize_energy(const ChainHamiltonianParams& params, const QuadratureGrid& grid,
                               const VariationalState& init, const MinimizeOptions& opts) {
    params.validate();
    init.validate();
    grid.validate();
    if (init.n_chains() != params.n_chains)
        throw InvalidParameterError("init state chain count does not match params");

    const int m_max = init.m_max();
    const std::size_t n_chains = params.n_chains;
    const auto nodes = grid.nodes();
    const auto weights = grid.weights();

    auto objective = [&](const std::vector<double>& x) {
        double penalty = 0.0;
        const VariationalState s = unpack_state(x, n_chains, m_max, opts, &penalty);
        std::vector<ChainMoments> mom;
        mom.reserve(n_chains);
        try {
            for (const auto& b : s.coefficients)
                mom.push_back(reduce_chain(b, m_max, s.alpha, nodes, weights));
        } catch (const QuadratureUnderresolvedError&) {
            return kPenaltyEnergy;
        }
        return energy_from_moments(params, mom) + penalty;
    };

    NelderMeadOptions nm;
    nm.max_evals = opts.max_evals;
    nm.f_tol = opts.f_tol;
    nm.x_tol = opts.x_tol;
    nm.initial_step = 0.2;

    MinimizeResult best;
    best.e_min = kPenaltyEnergy;
    best.converged = false;
    best.evals = 0;

    for (const auto& start : systematic_starts(params, init)) {
        const auto x0 = pack_state(start);
        const NelderMeadResult r = nelder_mead(objective, x0, nm);
        best.evals += r.evals;
        if (r.f < best.e_min) {
            best.e_min = r.f;
            best.state = unpack_state(r.x, n_chains, m_max, opts, nullptr);
            best.converged = r.converged;
        }
    }
    return best;
}

std::vector<BandPoint> band_structure(const ChainHamiltonianParams& params_base,
                                      const std::vector<double>& theta_grid,
                                      const QuadratureGrid& grid,
                                      const MinimizeOptions& opts) {
    if (!std::is_sorted(theta_grid.begin(), theta_grid.end()))
        throw InvalidParameterError("theta grid must be monotone");

    std::vector<BandPoint> band;
    band.reserve(theta_grid.size());
    VariationalState warm;
    bool have_warm = false;

    for (double theta : theta_grid) {
        ChainHamiltonianParams p = params_base;
        p.theta = theta;
        const VariationalState init =
            have_warm ? warm
                      : VariationalState::single_packet(
                            p.n_chains, opts.m_max,
                            std::clamp(static_cast<int>(std::lround(theta / kTwoPi)),
                                       -opts.m_max, opts.m_max),
                            opts.alpha0);
        const MinimizeResult r = minimize_energy(p, grid, init, opts);
        band.push_back({theta, r.e_min, dominant_packet(r.state), r.state.alpha, r.state,
                        r.converged});
        warm = r.state;
        have_warm = true;
    }
    return band;
}

double mean_phase(const VariationalState& state, const QuadratureGrid& grid) {
    state.validate();
    grid.validate();
    if (state.n_chains() != 2)
        throw InvalidParameterError("mean_phase is defined for two chains");
    const auto nodes = grid.nodes();
    const auto weights = grid.weights();
    double sum = 0.0;
    for (const auto& b : state.coefficients)
        sum += reduce_chain(b, state.m_max(), state.alpha, nodes, weights).phi1;
    return 0.5 * sum;
}

std::vector<StaircasePoint> phase_staircase(const ChainHamiltonianParams& params_base,
                                            const std::vector<double>& theta_grid,
                                            const QuadratureGrid& grid,
                                            const MinimizeOptions& opts) {
    if (params_base.n_chains != 2)
        throw InvalidParameterError("phase_staircase is defined for two chains");
    if (!std::is_sorted(theta_grid.begin(), theta_grid.end()))
        throw InvalidParameterError("theta grid must be monotone");

    std::vector<StaircasePoint> rows;
    rows.reserve(theta_grid.size());

    const int m_max = opts.m_max;
    VariationalState warm_global =
        VariationalState::single_packet(2, m_max, 0, opts.alpha0);
    VariationalState tracked = warm_global;
    bool have_warm = false;

    const auto nodes = grid.nodes();
    const auto weights = grid.weights();

    for (double theta : theta_grid) {
        ChainHamiltonianParams p = params_base;
        p.theta = theta;
        const VariationalState init =
            have_warm ? warm_global
                      : VariationalState::single_packet(
                            2, m_max,
                            std::clamp(static_cast<int>(std::lround(theta / kTwoPi)),
                                       -m_max, m_max),
                            opts.alpha0);

        const MinimizeResult global = minimize_energy(p, grid, init, opts);

        // The tracked branch follows its local minimum with a single
        // warm-started solve; no restarts, so it can lag behind the global
        // minimum near arc crossings.
        auto tracked_objective = [&](const std::vector<double>& x) {
            double penalty = 0.0;
            const VariationalState s = unpack_state(x, 2, m_max, opts, &penalty);
            std::vector<ChainMoments> mom;
            try {
                for (const auto& b : s.coefficients)
                    mom.push_back(reduce_chain(b, m_max, s.alpha, nodes, weights));
            } catch (const QuadratureUnderresolvedError&) {
                return kPenaltyEnergy;
            }
            return energy_from_moments(p, mom) + penalty;
        };
        NelderMeadOptions nm;
        nm.max_evals = opts.max_evals;
        nm.f_tol = opts.f_tol;
        nm.x_tol = opts.x_tol;
        nm.initial_step = 0.2;
        const NelderMeadResult tr = nelder_mead(tracked_objective, pack_state(tracked), nm);
        tracked = unpack_state(tr.x, 2, m_max, opts, nullptr);

        rows.push_back({theta, mean_phase(global.state, grid), mean_phase(tracked, grid),
                        dominant_packet(global.state), global.e_min});
        warm_global = global.state;
        have_warm = true;
    }
    return rows;
}

} // namespace cdw
