#include "ssbh/limits.hpp"

#include <cmath>
#include <numbers>

#include "ssbh/error.hpp"

namespace ssbh {

namespace {

// s * Gamma(s / 2), continued to s = 0 through s Gamma(s/2) = 2 Gamma(1 + s/2).
double s_gamma_half(double s) { return 2.0 * numerics::gamma_fn(1.0 + 0.5 * s); }

}  // namespace

NesbResult nesb_populations(const Setup& setup) {
    setup.validate();
    NesbResult r;
    r.gap = level_freq(0, setup.system);
    const double g1 = setup.bath1.gamma, g2 = setup.bath2.gamma;
    const double n1 = bose(r.gap, setup.bath1), n2 = bose(r.gap, setup.bath2);
    const double denom = g1 * (1.0 + 2.0 * n1) + g2 * (1.0 + 2.0 * n2);
    r.rho0 = (g1 * (n1 + 1.0) + g2 * (n2 + 1.0)) / denom;
    r.rho1 = (g1 * n1 + g2 * n2) / denom;
    return r;
}

NesbResult nesb_currents(const Setup& setup) {
    NesbResult r = nesb_populations(setup);
    const double g1 = setup.bath1.gamma, g2 = setup.bath2.gamma;
    const double n1 = bose(r.gap, setup.bath1), n2 = bose(r.gap, setup.bath2);
    const double eps2 = setup.system.eps * setup.system.eps;
    r.current_particle = eps2 * g1 * g2 * spectral_density(r.gap, setup.spectral) * (n1 - n2) /
                         (g1 * (1.0 + 2.0 * n1) + g2 * (1.0 + 2.0 * n2));
    r.current_energy = r.gap * r.current_particle;
    return r;
}

double effective_temperature_harmonic(const Setup& setup) {
    setup.validate();
    if (setup.system.chi != 0.0)
        throw Error(ErrorCode::RequiresHarmonic, "effective temperature needs chi = 0");
    const double w = setup.system.omega0;
    const double g1 = setup.bath1.gamma, g2 = setup.bath2.gamma;
    // coth(x/2) - 1 = 2 nbar; invert the weighted mean of nbar in closed form.
    const double nbar = (g1 * bose(w, setup.bath1) + g2 * bose(w, setup.bath2)) / (g1 + g2);
    const double beta = std::log1p(1.0 / nbar) / w;
    return 1.0 / beta;
}

double effective_temperature_highT(const Setup& setup) noexcept {
    const double g1 = setup.bath1.gamma, g2 = setup.bath2.gamma;
    return (g1 * setup.bath1.temperature + g2 * setup.bath2.temperature) / (g1 + g2);
}

HighTAverages highT_averages(const Setup& setup) {
    setup.validate();
    const double chi = setup.system.chi;
    if (chi == 0.0) throw Error(ErrorCode::DegenerateChi, "high-T averages are singular at chi = 0");
    const double t = effective_temperature_highT(setup);
    const double occ = std::sqrt(t / (std::numbers::pi * chi));
    return {occ, t + (setup.system.omega0 + 2.0 * chi) * occ};
}

double conductance_plateau(const Setup& setup) noexcept {
    const double g1 = setup.bath1.gamma, g2 = setup.bath2.gamma;
    return setup.system.eps * setup.system.eps * g1 * g2 / (g1 + g2);
}

double k_function(double s, const Setup& setup, const numerics::QuadratureSpec& quad) {
    setup.validate();
    if (!(s >= 0.0)) throw Error(ErrorCode::InvalidParameter, "K(s) needs s >= 0");
    const double chi = setup.system.chi;
    if (!(chi > 0.0)) throw Error(ErrorCode::DegenerateChi, "K(s) needs chi > 0");
    const double t = effective_temperature_highT(setup);
    const double dt = setup.bath1.temperature - setup.bath2.temperature;
    const double gap = setup.system.omega0 + chi;
    auto integrand = [=](double y) {
        const double root = std::sqrt(y);
        return (std::sqrt(t / chi) * root + 1.0) * std::pow(gap + 2.0 * std::sqrt(t * chi) * root, s);
    };
    const double integral = numerics::integrate_halfline(integrand, quad).value;
    return conductance_plateau(setup) * dt / (std::sqrt(std::numbers::pi) * t) * integral;
}

HighTScaling highT_scaling(const Setup& setup, const numerics::QuadratureSpec& quad) {
    HighTScaling out;
    out.t_eff = effective_temperature_highT(setup);
    out.amp = conductance_plateau(setup);
    out.k_s = k_function(setup.spectral.s, setup, quad);
    out.k_s1 = k_function(setup.spectral.s + 1.0, setup, quad);
    return out;
}

double f_function(double z, double s, const numerics::QuadratureSpec& quad) {
    if (!(z > 0.0)) throw Error(ErrorCode::InvalidParameter, "F(z, s) needs z > 0");
    if (!(s >= 0.0)) throw Error(ErrorCode::InvalidParameter, "F(z, s) needs s >= 0");
    auto integrand = [=](double y) {
        const double root = std::sqrt(z * y);
        return (root + 1.0) * std::pow(1.0 + 2.0 * root, s);
    };
    return numerics::integrate_halfline(integrand, quad).value;
}

double k_asymptote_scaled(double s, const Setup& setup) {
    const double chi = setup.system.chi;
    if (!(chi > 0.0)) throw Error(ErrorCode::DegenerateChi, "K asymptote needs chi > 0");
    const double z = effective_temperature_highT(setup) / chi;
    return std::pow(2.0, s - 1.0) * conductance_plateau(setup) / std::sqrt(std::numbers::pi) *
           std::pow(z, 0.5 * (s - 1.0)) * s_gamma_half(s);
}

double current_ratio_asymptote(const Setup& setup, double s) {
    const double chi = setup.system.chi;
    if (!(chi > 0.0)) throw Error(ErrorCode::DegenerateChi, "current ratio asymptote needs chi > 0");
    if (!(s >= 0.0)) throw Error(ErrorCode::InvalidParameter, "current ratio asymptote needs s >= 0");
    const double z = effective_temperature_highT(setup) / chi;
    return 2.0 * std::sqrt(z) * (s + 1.0) * numerics::gamma_fn(0.5 * (s + 1.0)) / s_gamma_half(s);
}

}  // namespace ssbh
