// error.hpp: failure kinds raised by the solver modules

#pragma once

#include <stdexcept>
#include <string>

namespace ssbh {

enum class ErrorCode {
    InvalidParameter,
    NonPositiveGap,
    TruncationOverflow,
    InadmissibleTruncation,
    QuadratureFailure,
    DomainError,
    RequiresHarmonic,
    DegenerateChi,
    EigenFailure,
    NonPhysicalState,
    SpectralGapUnresolved,
    ZeroDenominator,
    NoSignChange,
    ConfigError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ssbh
