// dynamics.hpp: transient relaxation of the level populations
//
// The truncated generator M is a birth-death matrix. With the diagonal
// similarity d_n = sqrt(prod_{p<n} C_p / D_{p+1}) it becomes symmetric
// tridiagonal with off-diagonal -sqrt(C_n D_{n+1}), so its spectrum is real
// and exp(-eps^2 M t) follows from one symmetric eigendecomposition.
//
// The window 0..n_max is closed at the top (C_{n_max} is dropped) so every
// column sums to zero; the dropped rate must satisfy C_{n_max}/D_{n_max} < 1e-6.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ssbh/model.hpp"
#include "ssbh/ness.hpp"

namespace ssbh {

struct RateMatrix {
    Setup setup;
    std::vector<double> diag;   // C_n + D_n, with C_{n_max} omitted on the last entry
    std::vector<double> lower;  // M[n+1][n] = -C_n
    std::vector<double> upper;  // M[n][n+1] = -D_{n+1}
    std::array<std::vector<double>, 2> c_bath;  // per-bath C_n, zero at n_max
    std::array<std::vector<double>, 2> d_bath;
    double truncation_ratio{0.0};  // C_{n_max} / D_{n_max} of the untruncated chain

    std::size_t size() const noexcept { return diag.size(); }
    Level n_max() const noexcept { return diag.size() - 1; }
    double column_sum(std::size_t k) const;
    std::vector<double> apply(const std::vector<double>& v) const;
};

// InadmissibleTruncation if C_{n_max}/D_{n_max} >= 1e-6.
RateMatrix build_rate_matrix(const Setup& setup, Level n_max);
// Window from truncation_level.
RateMatrix build_rate_matrix(const Setup& setup, const TruncationOptions& opts = {});

struct TimeSeries {
    std::vector<double> times;
    std::vector<std::vector<double>> populations;  // populations[i][n] at times[i]
    std::vector<double> occupation;
    std::vector<double> energy;
    // Into the system from bath l: dN/dt = particle_current[0] + particle_current[1].
    std::array<std::vector<double>, 2> particle_current;
    std::array<std::vector<double>, 2> energy_current;
    std::vector<bool> below_bath_time;  // t < 1/omega_c, outside the Markov regime
};

// Log-spaced grid, the default for transient output.
std::vector<double> log_time_grid(double t_min, double t_max, std::size_t points);

// rho(t) = exp(-eps^2 M t) rho0. rho0 may be shorter than M (zero padded).
TimeSeries evolve(const RateMatrix& m, const std::vector<double>& rho0,
                  const std::vector<double>& times, double eps);

std::vector<double> vacuum_state(std::size_t size);

struct TssResult {
    double lambda1{0.0};          // smallest nonzero eigenvalue of M (eps excluded)
    double t_ss{0.0};             // 1 / (eps^2 lambda1)
    double spectral_radius{0.0};
    double max_imag{0.0};         // from a general (nonsymmetric) eigensolve of M
    bool imag_checked{false};     // false when M was too large for the dense check
};

TssResult relaxation_time(const RateMatrix& m, double eps);

// Closed-form chi = 0 relaxation: dN/dt = eps^2 sum_l J_l(omega0) (n_l - N).
struct HarmonicRelaxation {
    double rate{0.0};                  // eps^2 sum_l J_l(omega0)
    double t_ss{0.0};
    double n_ss{0.0};
    std::array<double, 2> bath_rate{};       // eps^2 J_l(omega0)
    std::array<double, 2> bath_occupation{};
    double omega0{1.0};

    double occupation(double t, double n_initial) const noexcept;
    CurrentPair from_bath(std::size_t l, double t, double n_initial) const noexcept;
};

HarmonicRelaxation tss_harmonic(const Setup& setup);

struct NesbRelaxation {
    double gap_rate{0.0};     // eps^2 (C_0 + D_1)
    double t_ss{0.0};         // 1 / gap_rate
    double t_ss_asymptote{0.0};  // 1 / (eps^2 (omega0 + chi)^s (G1 + G2))
};

NesbRelaxation tss_nesb(const Setup& setup);

}  // namespace ssbh
