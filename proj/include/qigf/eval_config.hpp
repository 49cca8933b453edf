#pragma once

#include <cstddef>

namespace qigf {

/// Numerical policy shared by every evaluation routine.
struct EvalConfig {
    double quad_rel_tol = 1e-9;
    double quad_abs_tol = 1e-12;
    /// Integrals run over [endpoint_eps, 1 - endpoint_eps].
    double endpoint_eps = 1e-10;
    double root_tol = 1e-12;
    double fd_step = 1e-5;
    /// Cap on quadrature subintervals and on bisection steps.
    std::size_t max_subdivisions = 200;

    /// Throws ParamError unless every field is strictly positive and
    /// endpoint_eps < 1e-3.
    void validate() const;
};

}  // namespace qigf
