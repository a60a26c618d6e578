// limits.hpp: closed forms for the two-level (spin-boson) limit, the harmonic
// limit, and the high-temperature asymptotics of averages and currents
//
// These are reference formulas. They are never substituted for the exact sums
// in ness.hpp; callers compare against them explicitly.

#pragma once

#include "ssbh/model.hpp"
#include "ssbh/numerics.hpp"

namespace ssbh {

// Two-level truncation, gap omega0 + chi.
struct NesbResult {
    double rho0{1.0};
    double rho1{0.0};
    double current_particle{0.0};
    double current_energy{0.0};
    double gap{0.0};
};

NesbResult nesb_populations(const Setup& setup);
// Populations plus I_SB and J_SB = gap * I_SB.
NesbResult nesb_currents(const Setup& setup);

// chi = 0 only (RequiresHarmonic otherwise). Populations are geometric with
// ratio exp(-omega0 / T_eff), where the mean occupation is the
// coupling-weighted mean of the bath occupations at omega0.
double effective_temperature_harmonic(const Setup& setup);

// (G1 T1 + G2 T2) / (G1 + G2)
double effective_temperature_highT(const Setup& setup) noexcept;

struct HighTAverages {
    double occupation{0.0};
    double energy{0.0};
};
// <N> ~ sqrt(T/(pi chi)), <H> ~ T + (omega0 + 2 chi) sqrt(T/(pi chi)) with T the
// effective temperature. DegenerateChi for chi = 0.
HighTAverages highT_averages(const Setup& setup);

// eps^2 G1 G2 / (G1 + G2), the high-temperature harmonic conductance.
double conductance_plateau(const Setup& setup) noexcept;

struct HighTScaling {
    double t_eff{0.0};
    double amp{0.0};
    double k_s{0.0};   // particle-current estimate
    double k_s1{0.0};  // energy-current estimate
};

// K(s) = A dT / (sqrt(pi) T) * int dy y^{-1/2} e^{-y} (sqrt(T y/chi) + 1) (omega0 + chi + 2 sqrt(T chi y))^s
double k_function(double s, const Setup& setup, const numerics::QuadratureSpec& quad = {});
HighTScaling highT_scaling(const Setup& setup, const numerics::QuadratureSpec& quad = {});

// F(z, s) = int dy y^{-1/2} e^{-y} (sqrt(z y) + 1) (1 + 2 sqrt(z y))^s
double f_function(double z, double s, const numerics::QuadratureSpec& quad = {});

// Large-T/chi asymptote of K(s) / (chi^{s-1} dT).
double k_asymptote_scaled(double s, const Setup& setup);

// J / (chi I) ~ 2 sqrt(T/chi) (s+1) Gamma((s+1)/2) / (s Gamma(s/2)), using the setup's temperatures.
double current_ratio_asymptote(const Setup& setup, double s);

}  // namespace ssbh
