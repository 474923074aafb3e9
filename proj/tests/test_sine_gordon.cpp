#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cdw/errors.hpp"
#include "cdw/sine_gordon.hpp"

using namespace cdw;

TEST_CASE("kink hand values at beta = -0.5") {
    SolitonSpec spec;
    spec.beta = -0.5;
    CHECK(soliton_profile(0.0, 0.0, spec) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(soliton_profile(-40.0, 0.0, spec) == doctest::Approx(0.0));
    CHECK(soliton_profile(40.0, 0.0, spec) ==
          doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("profile is monotone in z and bounded in (0, 2pi)") {
    SolitonSpec spec;
    spec.beta = 0.3;
    double prev = soliton_profile(-12.0, 1.7, spec);
    for (int k = 1; k <= 240; ++k) {
        const double z = -12.0 + 0.1 * k;
        const double v = soliton_profile(z, 1.7, spec);
        CHECK(v > prev);
        CHECK(v > 0.0);
        CHECK(v < 2.0 * std::numbers::pi);
        prev = v;
    }
}

TEST_CASE("kink plus antikink sum to 2 pi pointwise") {
    SolitonSpec kink;
    kink.beta = -0.5;
    SolitonSpec anti = kink;
    anti.sign = -1;
    for (double z : {-3.0, -0.7, 0.0, 1.1, 4.0})
        for (double tau : {0.0, 0.9, 2.4})
            CHECK(soliton_profile(z, tau, kink) + soliton_profile(z, tau, anti) ==
                  doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("invalid beta") {
    SolitonSpec spec;
    spec.beta = 1.0;
    CHECK_THROWS_AS(soliton_profile(0.0, 0.0, spec), InvalidBetaError);
}

TEST_CASE("dimensionless transform hand values and round trip") {
    CHECK(to_dimensionless(0.0, 0.0, 2.0, 3.0) == std::pair{0.0, 0.0});
    const auto [z, tau] = to_dimensionless(2.0, 3.0, 1.0, 2.0);
    CHECK(z == doctest::Approx(1.0));
    CHECK(tau == doctest::Approx(3.0));

    const auto [x, t] = from_dimensionless(z, tau, 1.0, 2.0);
    CHECK(x == doctest::Approx(2.0));
    CHECK(t == doctest::Approx(3.0));

    CHECK_THROWS_AS(to_dimensionless(1.0, 1.0, 0.0, 1.0), InvalidParameterError);
}

namespace {

std::vector<double> sample_profile(const SolitonSpec& spec, double half_span, double h,
                                   std::size_t& n_out) {
    const auto n = static_cast<std::size_t>(std::floor(2.0 * half_span / h)) + 1;
    std::vector<double> field(n * n);
    for (std::size_t iz = 0; iz < n; ++iz)
        for (std::size_t it = 0; it < n; ++it) {
            const double z = -half_span + h * static_cast<double>(iz);
            const double tau = -half_span + h * static_cast<double>(it);
            field[iz * n + it] = soliton_profile(z, tau, spec);
        }
    n_out = n;
    return field;
}

} // namespace

TEST_CASE("residual of vacuum fields vanishes") {
    std::vector<double> zeros(36, 0.0);
    const auto r0 = sg_residual(zeros, 6, 6, 0.1, 0.1);
    CHECK(r0.max_abs == doctest::Approx(0.0));

    std::vector<double> pis(36, std::numbers::pi);
    const auto rpi = sg_residual(pis, 6, 6, 0.1, 0.1);
    CHECK(rpi.max_abs < 1e-12);  // sin(pi) at roundoff
}

TEST_CASE("residual grid-too-small error") {
    std::vector<double> f(16, 0.0);
    CHECK_THROWS_AS(sg_residual(f, 4, 4, 0.1, 0.1), GridTooSmallError);
}

TEST_CASE("analytic soliton residual converges at second order") {
    SolitonSpec spec;
    spec.beta = -0.5;
    std::size_t n = 0;
    const auto coarse = sample_profile(spec, 4.0, 0.1, n);
    const double r_coarse = sg_residual(coarse, n, n, 0.1, 0.1).max_abs;
    const auto fine = sample_profile(spec, 4.0, 0.05, n);
    const double r_fine = sg_residual(fine, n, n, 0.05, 0.05).max_abs;
    const double order = std::log2(r_coarse / r_fine);
    CHECK(order == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("pendulum chain equilibrium is a fixed point") {
    PendulumChainParams params;
    params.omega0_sq = 4.0;
    params.omega1_sq = 1.0;
    params.d = 0.5;
    params.n = 8;
    params.ends = ChainEnds::free;
    ChainState s;
    s.phases.assign(8, 0.0);
    s.velocities.assign(8, 0.0);
    pendulum_chain_step(s, params, 0.01);
    for (double v : s.phases) CHECK(v == 0.0);
    for (double v : s.velocities) CHECK(v == 0.0);
}

TEST_CASE("single pendulum small-amplitude frequency is omega1 within 1%") {
    PendulumChainParams params;
    params.omega0_sq = 1e-30;  // decoupled (omega0_sq must stay positive)
    params.omega1_sq = 9.0;
    params.d = 1.0;
    params.n = 1;
    params.ends = ChainEnds::free;

    ChainState s;
    s.phases = {1e-3};
    s.velocities = {0.0};
    const double dt = 1e-4;
    int crossings = 0;
    double first = 0.0, last = 0.0, prev = s.phases[0];
    while (s.t < 30.0) {
        pendulum_chain_step(s, params, dt);
        if (prev < 0.0 && s.phases[0] >= 0.0) {
            const double t_cross = s.t - dt * s.phases[0] / (s.phases[0] - prev);
            if (crossings == 0) first = t_cross;
            last = t_cross;
            ++crossings;
        }
        prev = s.phases[0];
    }
    REQUIRE(crossings >= 2);
    const double omega = 2.0 * std::numbers::pi * (crossings - 1) / (last - first);
    CHECK(omega == doctest::Approx(3.0).epsilon(0.01));
}

TEST_CASE("discretized kink propagates at v beta within 2%") {
    PendulumChainParams params;
    params.omega0_sq = 400.0;  // v = omega0 d = 1
    params.omega1_sq = 1.0;
    params.d = 0.05;
    params.n = 401;
    params.ends = ChainEnds::clamped;
    params.left_value = 0.0;
    params.right_value = 2.0 * std::numbers::pi;

    SolitonSpec spec;
    spec.beta = -0.5;
    const double x_mid = 0.5 * params.d * static_cast<double>(params.n - 1);
    ChainState s = chain_from_soliton(params, spec, x_mid);

    const double c0 = kink_center(s, params);
    const double dt = 0.002;
    // Track until the kink crosses ten spacings.
    while (std::abs(kink_center(s, params) - c0) < 10.0 * params.d) {
        REQUIRE(s.t < 10.0);
        pendulum_chain_step(s, params, dt);
    }
    const double c1 = kink_center(s, params);
    const double speed = std::abs(c1 - c0) / s.t;
    const double expected = std::sqrt(params.v_squared()) * std::abs(spec.beta);
    CHECK(speed == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("undamped chain energy drifts below 0.1% over 1e5 steps") {
    PendulumChainParams params;
    params.omega0_sq = 100.0;
    params.omega1_sq = 1.0;
    params.d = 0.1;
    params.n = 101;
    params.ends = ChainEnds::clamped;
    params.left_value = 0.0;
    params.right_value = 2.0 * std::numbers::pi;

    SolitonSpec spec;
    spec.beta = -0.4;
    ChainState s = chain_from_soliton(params, spec, 5.0);
    const double e0 = chain_energy(s, params);
    double max_drift = 0.0;
    for (int k = 0; k < 100000; ++k) {
        pendulum_chain_step(s, params, 0.002);
        max_drift = std::max(max_drift, std::abs(chain_energy(s, params) - e0));
    }
    CHECK(max_drift / e0 < 1e-3);
}

TEST_CASE("v^2 invariant under mechanical reparameterization") {
    // Any (eta, rho, l, d) with fixed eta / (rho l^2) shares v^2.
    const auto a = PendulumChainParams::from_mechanical(2.0, 0.5, 1.0, 0.1, 1.0, 10);
    const auto b = PendulumChainParams::from_mechanical(8.0, 2.0, 1.0, 0.025, 1.0, 10);
    const auto c = PendulumChainParams::from_mechanical(4.0, 0.25, 2.0, 0.4, 1.0, 10);
    CHECK(a.v_squared() == doctest::Approx(4.0));
    CHECK(b.v_squared() == doctest::Approx(4.0));
    CHECK(c.v_squared() == doctest::Approx(4.0));
    CHECK(a.omega0_sq != b.omega0_sq);  // spacing differs, invariant does not
}
