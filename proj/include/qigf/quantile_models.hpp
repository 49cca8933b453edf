#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qigf/eval_config.hpp"

namespace qigf {

// Parametric families. Each struct holds the family's parameters in the order
// used by the command-line grammar.

/// Q(p) = -mean * log(1 - p).
struct Exponential {
    double mean;
    bool operator==(const Exponential&) const = default;
};
/// Q(p) = (1 - p)^(-gamma).
struct ParetoI {
    double gamma;
    bool operator==(const ParetoI&) const = default;
};
/// Q(p) = (1 - p)^(-1/beta) - 1.
struct ParetoII {
    double beta;
    bool operator==(const ParetoII&) const = default;
};
/// Q(p) = scale * p^(1/shape).
struct Power {
    double scale;
    double shape;
    bool operator==(const Power&) const = default;
};
/// Q(p) = c * p^lambda1 * (1 - p)^(-lambda2).
struct PowerPareto {
    double c;
    double lambda1;
    double lambda2;
    bool operator==(const PowerPareto&) const = default;
};
/// Q(p) = sigma * ((beta + 1) p^beta - beta p^(beta + 1)).
struct Govindarajulu {
    double sigma;
    double beta;
    bool operator==(const Govindarajulu&) const = default;
};
/// Q(p) = log((a + b p) / (a (1 + p))) / (a + b), increasing for b > a > 0.
struct LinearHazardQuantile {
    double a;
    double b;
    bool operator==(const LinearHazardQuantile&) const = default;
};
/// Q(p) = -lambda / log(p).
struct ReciprocalExponential {
    double lambda;
    bool operator==(const ReciprocalExponential&) const = default;
};

using Family = std::variant<Exponential, ParetoI, ParetoII, Power, PowerPareto, Govindarajulu,
                            LinearHazardQuantile, ReciprocalExponential>;

/// An immutable parametric quantile function with its derivative and inverse.
///
/// Parameter constraints are checked on construction (ParamError). Endpoint
/// evaluations p = 0 or p = 1 are allowed when the limit is finite.
class QuantileModel {
public:
    explicit QuantileModel(Family family);

    const Family& family() const noexcept { return family_; }
    std::string name() const;
    std::vector<double> params() const;

    /// Q(p).
    double quantile(double p) const;
    /// q(p) = dQ/dp, for 0 < p < 1.
    double quantile_density(double p) const;
    /// The inverse Q^{-1}(x) = F(x). Closed form where the family has one,
    /// otherwise bisection on [eps, 1 - eps].
    double cdf(double x, const EvalConfig& cfg = {}) const;
    /// f(x) = 1 / q(F(x)); closed form where available.
    double density(double x, const EvalConfig& cfg = {}) const;

    /// Q(0) and Q(1) as limits (upper may be +infinity).
    double support_lower() const;
    double support_upper() const;

    bool has_closed_form_inverse() const;

    friend bool operator==(const QuantileModel& lhs, const QuantileModel& rhs);

private:
    Family family_;
};

// Operation-named entry points.
double eval_Q(const QuantileModel& model, double p);
double eval_q(const QuantileModel& model, double p);
double invert_Q(const QuantileModel& model, double x, const EvalConfig& cfg = {});

/// H(p) = 1 / ((1 - p) q(p)).
double hazard_quantile(const QuantileModel& model, double p);
/// H~(p) = 1 / (p q(p)).
double reversed_hazard_quantile(const QuantileModel& model, double p);

}  // namespace qigf
