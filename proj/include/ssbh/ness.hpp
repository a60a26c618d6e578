// ness.hpp: exact nonequilibrium steady state of the diagonal master equation
//
// The steady state satisfies rho_n D_n = rho_{n-1} C_{n-1} level by level, so
// populations follow from a running product of ratios that are all below one.
// The product never overflows and the normalisation is accumulated alongside.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ssbh/model.hpp"

namespace ssbh {

struct TruncationOptions {
    double tol{1e-10};         // relative accuracy of <N>, I and J
    std::size_t cap{200000};   // hard limit on n_max

    void validate() const;
};

struct NessDistribution {
    std::vector<double> rho;  // rho_0 .. rho_{n_max}
    Level n_max{0};
    double z_tilde{1.0};      // sum of rho_n / rho_0
    double tail_bound{0.0};   // upper bound on the probability beyond n_max
    double ratio_check{0.0};  // max relative residual of rho_n D_n = rho_{n-1} C_{n-1}
};

struct CurrentPair {
    double particle{0.0};
    double energy{0.0};
};

struct SteadyCurrents {
    CurrentPair total;                     // kernel form, positive when flowing bath 1 -> bath 2
    std::array<CurrentPair, 2> from_bath;  // into the system from each bath; from_bath[1] = -total
    double form_mismatch{0.0};             // relative gap between kernel and per-bath forms
    bool degenerate_kernel{false};
};

// Smallest n_max with rho_{n_max}/rho_0 < tol * 1e-4 and, when chi > 0,
// C_{n_max}/D_{n_max} < 1e-6; doubled until <N>, I and J move by less than tol.
Level truncation_level(const Setup& setup, const TruncationOptions& opts = {});

NessDistribution steady_populations(const Setup& setup, const TruncationOptions& opts = {});

// Populations on the fixed window 0..n_max (no convergence check).
NessDistribution steady_populations_at(const Setup& setup, Level n_max);

double mean_occupation(const NessDistribution& dist) noexcept;
double mean_energy(const NessDistribution& dist, const SystemParams& system) noexcept;

SteadyCurrents steady_currents(const Setup& setup, const NessDistribution& dist);
SteadyCurrents steady_currents(const Setup& setup, const TruncationOptions& opts = {});

}  // namespace ssbh
