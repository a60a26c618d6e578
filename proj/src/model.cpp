#include "ssbh/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ssbh/error.hpp"

namespace ssbh {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::NonPositiveGap: return "NonPositiveGap";
        case ErrorCode::TruncationOverflow: return "TruncationOverflow";
        case ErrorCode::InadmissibleTruncation: return "InadmissibleTruncation";
        case ErrorCode::QuadratureFailure: return "QuadratureFailure";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::RequiresHarmonic: return "RequiresHarmonic";
        case ErrorCode::DegenerateChi: return "DegenerateChi";
        case ErrorCode::EigenFailure: return "EigenFailure";
        case ErrorCode::NonPhysicalState: return "NonPhysicalState";
        case ErrorCode::SpectralGapUnresolved: return "SpectralGapUnresolved";
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::NoSignChange: return "NoSignChange";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidParameter, what);
}

}  // namespace

void SystemParams::validate() const {
    require(std::isfinite(omega0) && omega0 > 0.0, "omega0 must be > 0");
    require(std::isfinite(chi) && chi >= 0.0, "chi must be >= 0");
    require(std::isfinite(eps) && eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
}

void BathParams::validate() const {
    require(std::isfinite(gamma) && gamma >= 0.0, "bath gamma must be >= 0");
    require(std::isfinite(temperature) && temperature > 0.0, "bath temperature must be > 0");
    require(std::isfinite(mu), "bath mu must be finite");
}

void SpectralParams::validate() const {
    require(std::isfinite(s) && s >= 0.0, "spectral exponent s must be >= 0");
    require(std::isfinite(omega_c) && omega_c > 0.0, "omega_c must be > 0");
}

void Setup::validate() const {
    system.validate();
    bath1.validate();
    bath2.validate();
    spectral.validate();
    require(bath1.gamma + bath2.gamma > 0.0, "at least one bath must be coupled");
    const double gap = level_freq(0, system);
    require(bath1.mu < gap && bath2.mu < gap, "bath mu must lie below omega0 + chi");
}

std::vector<std::string> Setup::warnings() const {
    std::vector<std::string> out;
    const double scale = std::max({system.omega0, system.chi, bath1.temperature,
                                   bath2.temperature});
    if (spectral.omega_c < 100.0 * scale) {
        std::ostringstream msg;
        msg << "omega_c = " << spectral.omega_c << " is below 100 x max(omega0, chi, T1, T2) = "
            << 100.0 * scale << "; the cutoff will shape the results";
        out.push_back(msg.str());
    }
    return out;
}

Setup Setup::with_swapped_temperatures() const {
    Setup out = *this;
    std::swap(out.bath1.temperature, out.bath2.temperature);
    return out;
}

double level_freq(Level n, const SystemParams& system) noexcept {
    return system.omega0 + system.chi * (2.0 * static_cast<double>(n) + 1.0);
}

double level_energy(Level n, const SystemParams& system) noexcept {
    const double x = static_cast<double>(n);
    return system.omega0 * x + system.chi * x * x;
}

double bose(double omega, const BathParams& bath) {
    const double gap = omega - bath.mu;
    if (!(gap > 0.0)) throw Error(ErrorCode::NonPositiveGap, "bose factor needs omega > mu");
    return 1.0 / std::expm1(gap / bath.temperature);
}

double spectral_density(double omega, const SpectralParams& spectral) noexcept {
    if (omega <= 0.0) return spectral.s == 0.0 ? 1.0 : 0.0;
    return std::pow(omega, spectral.s) * std::exp(-omega / spectral.omega_c);
}

}  // namespace ssbh
