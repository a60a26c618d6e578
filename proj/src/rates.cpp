#include "ssbh/rates.hpp"

namespace ssbh {

double rate_up(Level n, const BathParams& bath, const SystemParams& system,
               const SpectralParams& spectral) {
    const double w = level_freq(n, system);
    return (static_cast<double>(n) + 1.0) * bath.gamma * spectral_density(w, spectral) * bose(w, bath);
}

double rate_down(Level n, const BathParams& bath, const SystemParams& system,
                 const SpectralParams& spectral) {
    if (n == 0) return 0.0;
    const double w = level_freq(n - 1, system);
    return static_cast<double>(n) * bath.gamma * spectral_density(w, spectral) * (bose(w, bath) + 1.0);
}

LevelRates level_rates(Level n, const Setup& setup) {
    LevelRates r;
    r.level = n;
    r.c_bath = {rate_up(n, setup.bath1, setup.system, setup.spectral),
                rate_up(n, setup.bath2, setup.system, setup.spectral)};
    r.d_bath = {rate_down(n, setup.bath1, setup.system, setup.spectral),
                rate_down(n, setup.bath2, setup.system, setup.spectral)};
    r.c = r.c_bath[0] + r.c_bath[1];
    r.d = r.d_bath[0] + r.d_bath[1];
    return r;
}

KernelValue current_kernel(double omega, const Setup& setup) {
    const double g1 = setup.bath1.gamma;
    const double g2 = setup.bath2.gamma;
    const double n1 = bose(omega, setup.bath1);
    const double n2 = bose(omega, setup.bath2);
    const double denom = g1 * n1 + g2 * n2;
    if (denom == 0.0) return {0.0, true};
    const double eps2 = setup.system.eps * setup.system.eps;
    return {eps2 * g1 * g2 * spectral_density(omega, setup.spectral) * (n1 - n2) / denom, false};
}

}  // namespace ssbh
