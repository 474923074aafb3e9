#include "cdw/sine_gordon.hpp"

#include <cmath>
#include <numbers>

#include "cdw/errors.hpp"

namespace cdw {

void SolitonSpec::validate() const {
    if (!(std::abs(beta) < 1.0)) throw InvalidBetaError("|beta| must be < 1");
    if (sign != 1 && sign != -1) throw InvalidParameterError("sign must be +1 or -1");
}

double soliton_profile(double z, double tau, const SolitonSpec& spec) {
    spec.validate();
    const double gamma = std::sqrt(1.0 - spec.beta * spec.beta);
    const double u = static_cast<double>(spec.sign) * (z + spec.beta * tau) / gamma;
    return 4.0 * std::atan(std::exp(u));
}

double soliton_profile_dtau(double z, double tau, const SolitonSpec& spec) {
    spec.validate();
    const double gamma = std::sqrt(1.0 - spec.beta * spec.beta);
    const double u = static_cast<double>(spec.sign) * (z + spec.beta * tau) / gamma;
    return 2.0 / std::cosh(u) * static_cast<double>(spec.sign) * spec.beta / gamma;
}

std::pair<double, double> to_dimensionless(double x, double t, double omega1, double v) {
    if (!(omega1 > 0.0) || !(v > 0.0))
        throw InvalidParameterError("omega1 and v must be positive");
    return {omega1 * x / v, omega1 * t};
}

std::pair<double, double> from_dimensionless(double z, double tau, double omega1, double v) {
    if (!(omega1 > 0.0) || !(v > 0.0))
        throw InvalidParameterError("omega1 and v must be positive");
    return {v * z / omega1, tau / omega1};
}

ResidualNorms sg_residual(const std::vector<double>& field, std::size_t n_z,
                          std::size_t n_tau, double hz, double htau) {
    if (n_z < 5 || n_tau < 5)
        throw GridTooSmallError("residual grid needs >= 5 points per axis");
    if (field.size() != n_z * n_tau)
        throw InvalidParameterError("field size does not match grid dimensions");
    if (!(hz > 0.0) || !(htau > 0.0))
        throw InvalidParameterError("grid spacings must be positive");

    auto at = [&](std::size_t iz, std::size_t it) { return field[iz * n_tau + it]; };
    const double inv_hz2 = 1.0 / (hz * hz);
    const double inv_ht2 = 1.0 / (htau * htau);

    double max_abs = 0.0, sum_sq = 0.0;
    for (std::size_t iz = 1; iz + 1 < n_z; ++iz) {
        for (std::size_t it = 1; it + 1 < n_tau; ++it) {
            const double f = at(iz, it);
            const double phi_tt = (at(iz, it + 1) - 2.0 * f + at(iz, it - 1)) * inv_ht2;
            const double phi_zz = (at(iz + 1, it) - 2.0 * f + at(iz - 1, it)) * inv_hz2;
            const double r = phi_tt - phi_zz + std::sin(f);
            max_abs = std::max(max_abs, std::abs(r));
            sum_sq += r * r;
        }
    }
    return {max_abs, std::sqrt(sum_sq * hz * htau)};
}

void PendulumChainParams::validate() const {
    if (!(omega0_sq > 0.0)) throw InvalidParameterError("omega0_sq must be positive");
    if (omega1_sq < 0.0) throw InvalidParameterError("omega1_sq must be non-negative");
    if (!(d > 0.0)) throw InvalidParameterError("spacing d must be positive");
    if (n == 0) throw InvalidParameterError("chain needs >= 1 pendulum");
}

PendulumChainParams PendulumChainParams::from_mechanical(double eta, double rho, double l,
                                                         double d, double e1, std::size_t n) {
    if (!(eta > 0.0) || !(rho > 0.0) || !(l > 0.0) || !(d > 0.0))
        throw InvalidParameterError("mechanical parameters must be positive");
    PendulumChainParams p;
    // Delta' = eta / d and m_e = rho * d, so omega0_sq = eta / (rho d^2 l^2).
    p.omega0_sq = eta / (rho * d * d * l * l);
    p.omega1_sq = e1 / (rho * d * l * l);
    p.d = d;
    p.n = n;
    p.validate();
    return p;
}

namespace {

constexpr double kOverflowGuard = 1e9;

void chain_accel(const ChainState& state, const PendulumChainParams& params,
                 std::vector<double>& accel) {
    const std::size_t n = state.phases.size();
    accel.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = state.phases[i];
        double left, right;
        if (params.ends == ChainEnds::clamped) {
            left = (i > 0) ? state.phases[i - 1] : params.left_value;
            right = (i + 1 < n) ? state.phases[i + 1] : params.right_value;
        } else {
            left = (i > 0) ? state.phases[i - 1] : phi;
            right = (i + 1 < n) ? state.phases[i + 1] : phi;
        }
        accel[i] = params.omega0_sq * (right - 2.0 * phi + left) -
                   params.omega1_sq * std::sin(phi);
    }
}

} // namespace

void pendulum_chain_step(ChainState& state, const PendulumChainParams& params, double dt) {
    if (!(dt > 0.0)) throw InvalidParameterError("dt must be positive");
    params.validate();
    if (state.phases.size() != params.n || state.velocities.size() != params.n)
        throw InvalidParameterError("chain state not aligned with params");

    std::vector<double> accel;
    chain_accel(state, params, accel);
    for (std::size_t i = 0; i < params.n; ++i) {
        state.velocities[i] += 0.5 * dt * accel[i];
        state.phases[i] += dt * state.velocities[i];
        if (!std::isfinite(state.phases[i]) || std::abs(state.phases[i]) > kOverflowGuard)
            throw DivergenceError("pendulum chain diverged", 0);
    }
    chain_accel(state, params, accel);
    for (std::size_t i = 0; i < params.n; ++i) state.velocities[i] += 0.5 * dt * accel[i];
    state.t += dt;
}

double chain_energy(const ChainState& state, const PendulumChainParams& params) {
    const std::size_t n = state.phases.size();
    double kinetic = 0.0, pinning = 0.0, torsion = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        kinetic += 0.5 * state.velocities[i] * state.velocities[i];
        pinning += params.omega1_sq * (1.0 - std::cos(state.phases[i]));
        if (i + 1 < n) {
            const double dphi = state.phases[i + 1] - state.phases[i];
            torsion += 0.5 * params.omega0_sq * dphi * dphi;
        }
    }
    if (params.ends == ChainEnds::clamped && n > 0) {
        const double dl = state.phases.front() - params.left_value;
        const double dr = params.right_value - state.phases.back();
        torsion += 0.5 * params.omega0_sq * (dl * dl + dr * dr);
    }
    return kinetic + pinning + torsion;
}

double kink_center(const ChainState& state, const PendulumChainParams& params) {
    const double pi = std::numbers::pi;
    const std::size_t n = state.phases.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = state.phases[i] - pi;
        const double b = state.phases[i + 1] - pi;
        if (a == 0.0) return params.d * static_cast<double>(i);
        if (a * b < 0.0) {
            const double frac = a / (a - b);
            return params.d * (static_cast<double>(i) + frac);
        }
    }
    throw Error("no phi = pi crossing found in chain");
}

ChainState chain_from_soliton(const PendulumChainParams& params, const SolitonSpec& spec,
                              double x_center) {
    params.validate();
    spec.validate();
    const double v = std::sqrt(params.v_squared());
    const double omega1 = std::sqrt(params.omega1_sq);
    if (!(omega1 > 0.0))
        throw InvalidParameterError("soliton initialization needs omega1_sq > 0");

    ChainState state;
    state.phases.resize(params.n);
    state.velocities.resize(params.n);
    for (std::size_t i = 0; i < params.n; ++i) {
        const double x = params.d * static_cast<double>(i);
        const auto [z, tau] = to_dimensionless(x - x_center, 0.0, omega1, v);
        state.phases[i] = soliton_profile(z, tau, spec);
        state.velocities[i] = omega1 * soliton_profile_dtau(z, tau, spec);
    }
    return state;
}

} // namespace cdw
