#pragma once

#include <cstddef>
#include <functional>

namespace qigf {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t subdivisions = 0;
};

struct QuadOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    std::size_t max_subdivisions = 200;
};

/// Globally adaptive 21-point Gauss-Kronrod quadrature of f over [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate is below max(abs_tol, rel_tol * |value|). Throws DivergentIntegral
/// if f returns a non-finite value or the subdivision budget runs out.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opts = {});

}  // namespace qigf
