#include "qigf/errors.hpp"
#include "qigf/eval_config.hpp"

namespace qigf {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Param: return "ParamError";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SupportMismatch: return "SupportMismatch";
    case ErrorKind::DegenerateDensity: return "DegenerateDensity";
    case ErrorKind::DivergentIntegral: return "DivergentIntegral";
    case ErrorKind::ZeroSpacing: return "ZeroSpacing";
    case ErrorKind::TooSmall: return "TooSmall";
    }
    return "Error";
}

void EvalConfig::validate() const
{
    if (!(quad_rel_tol > 0) || !(quad_abs_tol > 0) || !(root_tol > 0) ||
        !(fd_step > 0) || max_subdivisions == 0)
        throw ParamError("EvalConfig: tolerances, step and budget must be positive");
    if (!(endpoint_eps > 0) || !(endpoint_eps < 1e-3))
        throw ParamError("EvalConfig: endpoint_eps must lie in (0, 1e-3)");
}

}  // namespace qigf
