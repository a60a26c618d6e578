// rates.hpp: birth/death rates of the diagonal master equation and the
// steady-state current kernel
//
// Rates exclude the eps^2 prefactor; callers apply it where a time scale or a
// current is produced.

#pragma once

#include <array>

#include "ssbh/model.hpp"

namespace ssbh {

struct LevelRates {
    Level level{0};
    std::array<double, 2> c_bath{};  // n -> n+1, per bath
    std::array<double, 2> d_bath{};  // n -> n-1, per bath
    double c{0.0};
    double d{0.0};
};

// (n+1) gamma J(omega_n) nbar(omega_n)
double rate_up(Level n, const BathParams& bath, const SystemParams& system,
               const SpectralParams& spectral);

// n gamma J(omega_{n-1}) (nbar(omega_{n-1}) + 1); exactly zero at n = 0
double rate_down(Level n, const BathParams& bath, const SystemParams& system,
                 const SpectralParams& spectral);

LevelRates level_rates(Level n, const Setup& setup);

struct KernelValue {
    double value{0.0};
    bool degenerate{false};  // both occupations underflowed; value reported as 0
};

// eps^2 G1 G2 J(omega) (n1 - n2) / (G1 n1 + G2 n2)
KernelValue current_kernel(double omega, const Setup& setup);

}  // namespace ssbh
