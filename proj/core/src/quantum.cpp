#include "cdw/quantum.hpp"

#include <cmath>

#include "cdw/errors.hpp"

namespace cdw {

using cplx = std::complex<double>;

void SchwingerParams::validate() const {
    if (!(d_coeff > 0.0)) throw InvalidParameterError("d_coeff must be positive");
    if (mu_e_sq < 0.0 || omega_p_sq < 0.0 || omega_d < 0.0)
        throw InvalidParameterError("frequencies must be non-negative");
    if (!(hbar > 0.0)) throw InvalidParameterError("hbar must be positive");
}

SchwingerParams SchwingerParams::from_charging_energy(double e_c, double d_coeff,
                                                      double omega_p_sq, double omega_d,
                                                      double hbar) {
    SchwingerParams p;
    p.d_coeff = d_coeff;
    p.mu_e_sq = 2.0 * e_c;
    p.omega_p_sq = omega_p_sq;
    p.omega_d = omega_d;
    p.hbar = hbar;
    p.validate();
    return p;
}

double washboard_potential(double x, double t, const SchwingerParams& params) {
    const double shifted = x - params.omega_d * t;
    return 0.5 * params.mu_e_sq * shifted * shifted +
           0.5 * params.d_coeff * params.omega_p_sq * (1.0 - std::cos(x));
}

double WaveFunction::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s * dx;
}

double WaveFunction::mean_x() const {
    double s = 0.0, w = 0.0;
    for (std::size_t j = 0; j < amplitudes.size(); ++j) {
        const double p = std::norm(amplitudes[j]);
        s += x(j) * p;
        w += p;
    }
    return s / w;
}

void WaveFunction::validate() const {
    if (amplitudes.size() < 3) throw InvalidParameterError("wavefunction needs >= 3 grid points");
    if (!(dx > 0.0)) throw InvalidParameterError("dx must be positive");
    const double n = norm();
    if (!std::isfinite(n) || !(n > 0.0))
        throw InvalidParameterError("wavefunction norm must be finite and positive");
}

WaveFunction gaussian_packet(double x0, double dx, std::size_t n_points,
                             double center, double width, double wavenumber) {
    if (!(width > 0.0)) throw InvalidParameterError("packet width must be positive");
    WaveFunction wf;
    wf.x0 = x0;
    wf.dx = dx;
    wf.amplitudes.resize(n_points);
    for (std::size_t j = 0; j < n_points; ++j) {
        const double x = wf.x(j);
        const double arg = (x - center) / (2.0 * width);
        wf.amplitudes[j] = std::polar(std::exp(-arg * arg), wavenumber * x);
    }
    const double n = wf.norm();
    const double scale = 1.0 / std::sqrt(n);
    for (auto& a : wf.amplitudes) a *= scale;
    wf.validate();
    return wf;
}

double probability_beyond(const WaveFunction& wf, double x_cut) {
    double beyond = 0.0, total = 0.0;
    for (std::size_t j = 0; j < wf.size(); ++j) {
        const double p = std::norm(wf.amplitudes[j]);
        total += p;
        if (wf.x(j) > x_cut) beyond += p;
    }
    return beyond / total;
}

namespace {

constexpr double kPivotTiny = 1e-300;

// Thomas solve of a constant-coefficient tridiagonal system
// (off * u_{j-1} + diag_j * u_j + off * u_{j+1} = rhs_j), Dirichlet ends.
std::vector<cplx> solve_tridiagonal(cplx off, const std::vector<cplx>& diag,
                                    std::vector<cplx> rhs) {
    const std::size_t n = diag.size();
    std::vector<cplx> c_prime(n);
    cplx denom = diag[0];
    if (std::abs(denom) < kPivotTiny) throw SolverSingularError("near-zero pivot");
    c_prime[0] = off / denom;
    rhs[0] /= denom;
    for (std::size_t j = 1; j < n; ++j) {
        denom = diag[j] - off * c_prime[j - 1];
        if (std::abs(denom) < kPivotTiny) throw SolverSingularError("near-zero pivot");
        c_prime[j] = off / denom;
        rhs[j] = (rhs[j] - off * rhs[j - 1]) / denom;
    }
    for (std::size_t j = n - 1; j-- > 0;) rhs[j] -= c_prime[j] * rhs[j + 1];
    return rhs;
}

// Cyclic variant via Sherman-Morrison; corner entries equal the off value.
std::vector<cplx> solve_cyclic_tridiagonal(cplx off, std::vector<cplx> diag,
                                           const std::vector<cplx>& rhs) {
    const std::size_t n = diag.size();
    const cplx gamma = -diag[0];
    diag[0] -= gamma;
    diag[n - 1] -= off * off / gamma;

    std::vector<cplx> u(n, cplx(0.0));
    u[0] = gamma;
    u[n - 1] = off;

    const auto y = solve_tridiagonal(off, diag, rhs);
    const auto z = solve_tridiagonal(off, diag, u);

    const cplx vy = y[0] + (off / gamma) * y[n - 1];
    const cplx vz = z[0] + (off / gamma) * z[n - 1];
    const cplx factor = vy / (1.0 + vz);

    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = y[j] - factor * z[j];
    return out;
}

void check_blowup(const WaveFunction& next, double norm_before) {
    const double norm_after = next.norm();
    if (!std::isfinite(norm_after) || norm_after > 10.0 * norm_before)
        throw BlowUpError("wavefunction norm blew up", next.step_index);
}

} // namespace

WaveFunction step_crank_nicolson(const WaveFunction& wf, const SchwingerParams& params,
                                 double dt, Boundary boundary) {
    if (!(dt > 0.0)) throw InvalidParameterError("dt must be positive");
    params.validate();
    const std::size_t n = wf.size();
    const double dx2 = wf.dx * wf.dx;
    const double kin = params.hbar * params.hbar / (2.0 * params.d_coeff * dx2);
    const cplx half_step = cplx(0.0, dt / (2.0 * params.hbar));
    const double t_mid = wf.t + 0.5 * dt;

    // (I + i dt/(2 hbar) H) psi' = (I - i dt/(2 hbar) H) psi, H evaluated at t_mid.
    const cplx off = half_step * cplx(-kin);
    std::vector<cplx> diag(n), rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double h_diag = 2.0 * kin + washboard_potential(wf.x(j), t_mid, params);
        diag[j] = 1.0 + half_step * h_diag;
        const cplx d_rhs = 1.0 - half_step * h_diag;
        const std::size_t jl = (j > 0) ? j - 1 : n - 1;
        const std::size_t jr = (j + 1 < n) ? j + 1 : 0;
        cplx neighbors;
        if (boundary == Boundary::periodic) {
            neighbors = wf.amplitudes[jl] + wf.amplitudes[jr];
        } else {
            neighbors = (j > 0 ? wf.amplitudes[j - 1] : cplx(0.0)) +
                        (j + 1 < n ? wf.amplitudes[j + 1] : cplx(0.0));
        }
        rhs[j] = d_rhs * wf.amplitudes[j] - off * neighbors;
    }

    WaveFunction next = wf;
    next.amplitudes = (boundary == Boundary::periodic)
                          ? solve_cyclic_tridiagonal(off, diag, rhs)
                          : solve_tridiagonal(off, diag, rhs);
    next.t = wf.t + dt;
    next.step_index = wf.step_index + 1;
    check_blowup(next, wf.norm());
    return next;
}

WaveFunction step_mixed_level_literal(const WaveFunction& wf_n, const WaveFunction& wf_prev,
                                      const SchwingerParams& params, double dt,
                                      Boundary boundary) {
    if (!(dt > 0.0)) throw InvalidParameterError("dt must be positive");
    if (wf_n.size() != wf_prev.size())
        throw InvalidParameterError("time levels have mismatched grids");
    params.validate();
    const std::size_t n = wf_n.size();
    const double dx2 = wf_n.dx * wf_n.dx;
    const cplx i_dt(0.0, dt);
    const cplx kappa = i_dt * params.hbar / (params.d_coeff * dx2);

    // Move the n+1 spatial terms to the left side; the printed n-level term
    // keeps its asymmetric psi(j+1,n) - psi(j-1,n) form.
    const cplx off = -kappa;
    std::vector<cplx> diag(n, 1.0 + 2.0 * kappa);
    std::vector<cplx> rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t jl = (j > 0) ? j - 1 : n - 1;
        const std::size_t jr = (j + 1 < n) ? j + 1 : 0;
        cplx right = wf_n.amplitudes[jr], left = wf_n.amplitudes[jl];
        if (boundary == Boundary::dirichlet) {
            if (j == 0) left = 0.0;
            if (j + 1 == n) right = 0.0;
        }
        const double v = washboard_potential(wf_n.x(j), wf_n.t, params);
        rhs[j] = wf_prev.amplitudes[j] +
                 kappa * (right - left - 2.0 * wf_n.amplitudes[j]) -
                 i_dt * (2.0 * v / params.hbar) * wf_n.amplitudes[j];
    }

    WaveFunction next = wf_n;
    next.amplitudes = (boundary == Boundary::periodic)
                          ? solve_cyclic_tridiagonal(off, diag, rhs)
                          : solve_tridiagonal(off, diag, rhs);
    next.t = wf_n.t + dt;
    next.step_index = wf_n.step_index + 1;
    check_blowup(next, wf_n.norm());
    return next;
}

std::complex<double> dufort_frankel_r_tilde(double dt, const SchwingerParams& params, double dx) {
    return cplx(0.0, -dt * params.hbar / (2.0 * params.d_coeff * dx * dx));
}

WaveFunction step_dufort_frankel(const WaveFunction& wf_n, const WaveFunction& wf_prev,
                                 const SchwingerParams& params, double dt,
                                 Boundary boundary, NeighborSign neighbor) {
    if (!(dt > 0.0)) throw InvalidParameterError("dt must be positive");
    if (wf_n.size() != wf_prev.size())
        throw InvalidParameterError("time levels have mismatched grids");
    params.validate();
    const std::size_t n = wf_n.size();

    const cplx r = -dufort_frankel_r_tilde(dt, params, wf_n.dx);
    const cplx denom = 1.0 + 2.0 * r;
    const cplx c_neighbor = 2.0 * r / denom;
    const cplx c_prev = (1.0 - 2.0 * r) / denom;
    const cplx c_pot = cplx(0.0, 2.0 * dt / params.hbar) / denom;

    WaveFunction next = wf_n;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t jl = (j > 0) ? j - 1 : n - 1;
        const std::size_t jr = (j + 1 < n) ? j + 1 : 0;
        cplx left = wf_n.amplitudes[jl], right = wf_n.amplitudes[jr];
        if (boundary == Boundary::dirichlet) {
            if (j == 0) left = 0.0;
            if (j + 1 == n) right = 0.0;
        }
        const cplx pair = (neighbor == NeighborSign::sum) ? (left + right) : (left - right);
        const double v = washboard_potential(wf_n.x(j), wf_n.t, params);
        next.amplitudes[j] = c_neighbor * pair + c_prev * wf_prev.amplitudes[j] -
                             c_pot * v * wf_n.amplitudes[j];
    }
    next.t = wf_n.t + dt;
    next.step_index = wf_n.step_index + 1;
    check_blowup(next, wf_n.norm());
    return next;
}

ChainTrace evolve_chain(const WaveFunction& wf0, const SchwingerParams& params,
                        Scheme scheme, double dt, std::size_t n_steps,
                        const EvolveOptions& opts) {
    wf0.validate();
    params.validate();

    ChainTrace trace;
    trace.rows.reserve(n_steps + 1);
    const double norm0 = wf0.norm();
    trace.rows.push_back({wf0.t, wf0.mean_x(), norm0, 0});

    WaveFunction current = wf0;
    WaveFunction previous;  // one level back, for the three-level schemes
    bool have_previous = false;

    for (std::size_t step = 0; step < n_steps; ++step) {
        WaveFunction next;
        try {
            switch (scheme) {
                case Scheme::crank_nicolson:
                    if (opts.cn_variant == CnVariant::mixed_level_literal) {
                        if (!have_previous) {
                            next = step_crank_nicolson(current, params, dt, opts.boundary);
                        } else {
                            next = step_mixed_level_literal(current, previous, params, dt,
                                                            opts.boundary);
                        }
                    } else {
                        next = step_crank_nicolson(current, params, dt, opts.boundary);
                    }
                    break;
                case Scheme::dufort_frankel:
                    if (!have_previous) {
                        next = step_crank_nicolson(current, params, dt, opts.boundary);
                    } else {
                        next = step_dufort_frankel(current, previous, params, dt,
                                                   opts.boundary, opts.df_neighbor);
                    }
                    break;
            }
        } catch (const Error& e) {
            trace.terminated_early = true;
            trace.fail_step = step;
            trace.error = e.what();
            if (!trace.rows.empty()) trace.rows.back().flag = 1;
            trace.final_wf = std::move(current);
            return trace;
        }

        const double norm = next.norm();
        trace.rows.push_back({next.t, next.mean_x(), norm, 0});
        if (!std::isfinite(norm) || norm > opts.blowup_factor * norm0) {
            trace.terminated_early = true;
            trace.fail_step = step;
            trace.error = "wavefunction norm blew up (step " + std::to_string(step) + ")";
            trace.rows.back().flag = 1;
            trace.final_wf = std::move(next);
            return trace;
        }
        previous = std::move(current);
        have_previous = true;
        current = std::move(next);
    }
    trace.final_wf = std::move(current);
    return trace;
}

} // namespace cdw
