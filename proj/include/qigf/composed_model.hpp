#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "qigf/eval_config.hpp"
#include "qigf/quantile_models.hpp"

namespace qigf {

/// Pairs (or semiparametric relations) whose distortion has a known closed
/// form. The numeric composition path carries no tag.
enum class ClosedForm {
    Identity,
    ExpPair,               // shape = mean1 / mean2
    ParetoIPair,           // shape = gamma1 / gamma2
    ParetoIIPair,          // shape = beta2 / beta1
    PHTheta,               // shape = theta
    ReversedPH,            // shape = c1
    ProportionalOddsSurvival,  // shape = r
    ProportionalOddsCdf,   // shape = theta
    GTransformSurvival,
    GTransformCdf,
    GovindarajuluRecipExp,
    GovindarajuluPower,
    PowerParetoPower,
};

std::string_view to_string(ClosedForm tag);

/// True for the tags whose distortion is 1 - (1 - p)^shape.
bool is_survival_power(ClosedForm tag);

/// The distortion Q3 = Q2^{-1} o Q1 on [0, 1] with density q3.
///
/// Immutable and cheap to copy; every member is safe to call concurrently.
class ComposedModel {
public:
    struct Parts {
        std::function<double(double)> distortion;
        std::function<double(double)> density;
        std::optional<ClosedForm> closed_form;
        double shape = 0.0;
        std::optional<std::pair<QuantileModel, QuantileModel>> marginals;
        std::string label;
    };

    explicit ComposedModel(Parts parts);

    /// Q3(p) = p, q3(p) = 1.
    static ComposedModel identity();

    /// Q3(p) for 0 <= p <= 1.
    double distortion(double p) const;
    /// q3(p) for 0 < p < 1.
    double distortion_density(double p) const;

    const std::optional<ClosedForm>& closed_form() const noexcept { return parts_.closed_form; }
    double shape() const noexcept { return parts_.shape; }
    const std::optional<std::pair<QuantileModel, QuantileModel>>& marginals() const noexcept
    {
        return parts_.marginals;
    }
    const std::string& label() const noexcept { return parts_.label; }

private:
    Parts parts_;
};

/// Build Q3 = Q2^{-1}(Q1(p)).
///
/// Pairs matching a known closed form (exponential, Pareto I, Pareto II,
/// Govindarajulu vs reciprocal exponential or power, power-Pareto vs power)
/// are tagged and evaluated analytically. Anything else uses
/// Q3 = F2(Q1(p)) and q3 = q1(p) f2(Q1(p)). Throws SupportMismatch when the
/// support of Q1 is not inside the closure of the support of Q2.
ComposedModel compose(const QuantileModel& first, const QuantileModel& second,
                      const EvalConfig& cfg = {});

/// Same as compose() but never takes a closed-form shortcut.
ComposedModel compose_numeric(const QuantileModel& first, const QuantileModel& second,
                              const EvalConfig& cfg = {});

/// H3(p) = 1 / ((1 - p) q3(p)).
double hazard_quantile(const ComposedModel& model, double p);
/// H~3(p) = 1 / (p q3(p)).
double reversed_hazard_quantile(const ComposedModel& model, double p);

}  // namespace qigf
