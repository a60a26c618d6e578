// model.hpp: parameters of the single-site Bose-Hubbard oscillator and its two baths
//
// Energies are in units of omega0 and times in units of 1/omega0 by convention,
// but every value is stored explicitly so omega0 != 1 works too.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ssbh {

using Level = std::size_t;

struct SystemParams {
    double omega0{1.0};  // linear level spacing
    double chi{0.0};     // Bose-Hubbard (Kerr) interaction
    double eps{0.1};     // system-bath coupling scale, rates carry eps^2

    void validate() const;
};

struct BathParams {
    double gamma{1.0};        // coupling weight, bath density is gamma * J(omega)
    double temperature{1.0};
    double mu{0.0};

    void validate() const;
};

// J(omega) = omega^s exp(-omega / omega_c), shared by both baths.
struct SpectralParams {
    double s{1.0};
    double omega_c{1000.0};

    void validate() const;
};

struct Setup {
    SystemParams system;
    BathParams bath1;
    BathParams bath2;
    SpectralParams spectral;

    // Throws Error(InvalidParameter) on any violated invariant.
    void validate() const;

    // Soft diagnostics, e.g. a cutoff that is not far above every other scale.
    std::vector<std::string> warnings() const;

    // Same couplings, temperatures exchanged.
    Setup with_swapped_temperatures() const;
};

// Transition frequency between levels n and n+1: omega0 + chi (2n + 1).
double level_freq(Level n, const SystemParams& system) noexcept;

// E_n = omega0 n + chi n^2.
double level_energy(Level n, const SystemParams& system) noexcept;

// Bose occupation 1 / (exp((omega - mu)/T) - 1), evaluated through expm1.
double bose(double omega, const BathParams& bath);

double spectral_density(double omega, const SpectralParams& spectral) noexcept;

}  // namespace ssbh
