// rectification.hpp: forward/backward bias comparison under asymmetric coupling
//
// Bias convention: forward means T1 = Tm + dT/2, T2 = Tm - dT/2 with couplings
// G1 = L (1 - g), G2 = L (1 + g); backward swaps the two temperatures.
// R = [X(dT, g) + X(-dT, g)] / X(dT, 0), positive when the larger current flows
// with the cold bath more strongly coupled.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ssbh/model.hpp"
#include "ssbh/ness.hpp"

namespace ssbh {

struct AsymmetryParams {
    double lambda{1.0};
    double gamma{0.0};  // in [0, 1]

    void validate() const;
};

// (G1, G2) = (L (1 - g), L (1 + g))
std::pair<double, double> gammas_from_asymmetry(const AsymmetryParams& p);

struct Bias {
    double t_mean{1.0};
    double delta_t{0.0};
};

struct RectificationResult {
    double r_i{0.0};
    double r_j{0.0};
    CurrentPair forward;
    CurrentPair backward;
    CurrentPair forward_symmetric;   // g = 0 reference
    CurrentPair backward_symmetric;
};

// `base` supplies the system, spectral and mu values; couplings and
// temperatures are overwritten. ZeroDenominator if the g = 0 reference vanishes.
RectificationResult rectification(const Setup& base, const Bias& bias, const AsymmetryParams& p,
                                  const TruncationOptions& opts = {});

// Setup at the given bias and asymmetry (forward orientation).
Setup biased_setup(const Setup& base, const Bias& bias, const AsymmetryParams& p);

struct GammaSweepRow {
    double chi{0.0};
    std::vector<double> gammas;
    std::vector<RectificationResult> results;
    double argmax_r_i{0.0};  // gamma with the largest R_I
    double argmax_abs_r_i{0.0};
    double argmax_abs_r_j{0.0};
};

std::vector<GammaSweepRow> sweep_gamma(const Setup& base, const Bias& bias, double lambda,
                                       const std::vector<double>& chis,
                                       const std::vector<double>& gammas,
                                       const TruncationOptions& opts = {},
                                       std::size_t threads = 1);

struct RjZero {
    double chi_star{0.0};
    double bracket_lo{0.0};
    double bracket_hi{0.0};
    double r_j{0.0};
    double r_i{0.0};
    int iterations{0};
};

// Bisection of chi -> R_J(chi) on [chi_lo, chi_hi], at most 60 halvings, stopping once
// |R_J| < 1e-8 max(|R_J(chi_lo)|, |R_J(chi_hi)|). NoSignChange if the endpoints agree in sign.
RjZero find_rj_zero(const Setup& base, const Bias& bias, const AsymmetryParams& p,
                    double chi_lo, double chi_hi, const TruncationOptions& opts = {});

}  // namespace ssbh
