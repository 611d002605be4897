#pragma once

#include <stdexcept>
#include <string>

namespace modflow {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct SingularPoint : Error { using Error::Error; };
struct ChartBoundary : Error { using Error::Error; };
struct FitFailure : Error { using Error::Error; };
struct GridEscape : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct DomainViolation : Error { using Error::Error; };
struct LifetimeBoundary : Error { using Error::Error; };
struct WindowTooSmall : Error { using Error::Error; };

struct ConfigError : Error { using Error::Error; };

// thrown only when the caller asked for strict alias checking
struct AliasWarning : Error { using Error::Error; };

} // namespace modflow
