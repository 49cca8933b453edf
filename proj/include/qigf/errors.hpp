#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qigf {

enum class ErrorKind {
    Domain,
    Param,
    NoConvergence,
    SupportMismatch,
    DegenerateDensity,
    DivergentIntegral,
    ZeroSpacing,
    TooSmall,
};

std::string_view to_string(ErrorKind kind);

/// Base of every error raised by the library. `kind()` is stable and is what
/// the command-line tool reports.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

namespace detail {
template <ErrorKind K>
class KindedError : public Error {
public:
    explicit KindedError(const std::string& what) : Error(K, what) {}
};
}  // namespace detail

using DomainError = detail::KindedError<ErrorKind::Domain>;
using ParamError = detail::KindedError<ErrorKind::Param>;
using NoConvergence = detail::KindedError<ErrorKind::NoConvergence>;
using SupportMismatch = detail::KindedError<ErrorKind::SupportMismatch>;
using DegenerateDensity = detail::KindedError<ErrorKind::DegenerateDensity>;
using DivergentIntegral = detail::KindedError<ErrorKind::DivergentIntegral>;
using ZeroSpacing = detail::KindedError<ErrorKind::ZeroSpacing>;
using TooSmall = detail::KindedError<ErrorKind::TooSmall>;

}  // namespace qigf
