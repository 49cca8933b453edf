#pragma once

#include <map>
#include <vector>

#include "qigf/composed_model.hpp"
#include "qigf/eval_config.hpp"

namespace qigf {

/// Order of the generating function; strictly positive.
class Alpha {
public:
    explicit Alpha(double value);
    double value() const noexcept { return value_; }
    bool is_one() const noexcept { return value_ == 1.0; }

private:
    double value_;
};

enum class Method { ClosedForm, Quadrature };

/// Evaluation route. Auto prefers a closed form and falls back to quadrature.
enum class Route { Auto, ClosedForm, Quadrature };

struct IgfValue {
    double value = 0.0;
    Method method = Method::Quadrature;
    /// Quadrature error estimate (0 for closed forms).
    double est_abs_error = 0.0;
};

/// I*_alpha = integral over (0,1) of q3(p)^(1 - alpha).
IgfValue igf(const ComposedModel& model, Alpha alpha, const EvalConfig& cfg = {},
             Route route = Route::Auto);

/// Residual form R*_alpha(u); u = 0 returns igf().
IgfValue igf_residual(const ComposedModel& model, Alpha alpha, double u,
                      const EvalConfig& cfg = {}, Route route = Route::Auto);

/// Past form J*_alpha(u); u = 1 returns igf().
IgfValue igf_past(const ComposedModel& model, Alpha alpha, double u, const EvalConfig& cfg = {},
                  Route route = Route::Auto);

/// Quantile Kullback-Leibler divergence, -integral of log q3.
double kl_divergence(const ComposedModel& model, const EvalConfig& cfg = {});

/// dI*_alpha/d alpha at alpha = 1 by central difference with step fd_step.
double kl_by_derivative(const ComposedModel& model, const EvalConfig& cfg = {});

/// Integral of (-log q3)^k, the k-th alpha-derivative of I* at 1.
double generalized_kl(const ComposedModel& model, int k, const EvalConfig& cfg = {});

/// S_k = integral of (log q3)^k. S_0 = 1.
double log_moment(const ComposedModel& model, int k, const EvalConfig& cfg = {});

/// Partial sum over k = 0..terms of (1 - alpha)^k / k! * S_k.
double igf_series(const ComposedModel& model, Alpha alpha, int terms, const EvalConfig& cfg = {});

struct IgfBounds {
    /// max(0, (1 - alpha) S_1).
    double lower = 0.0;
    /// Integral of H3(p)^(alpha - 1).
    double upper = 0.0;
};

IgfBounds igf_bounds(const ComposedModel& model, Alpha alpha, const EvalConfig& cfg = {});

struct DivergencePanel {
    double kl = 0.0;
    /// 1 - I*_{1/2}.
    double hellinger = 0.0;
    /// -log I*_{1/2}.
    double bhattacharyya = 0.0;
    /// Renyi divergence log(I*_alpha) / (alpha - 1) keyed by order.
    std::map<double, double> renyi;
};

/// Assemble the panel from a value of I*_{1/2}, the K-L divergence and the
/// I*_alpha at each Renyi order. Shared by the model and sample routes.
DivergencePanel assemble_panel(double kl, double igf_half,
                               const std::map<double, double>& igf_at_orders);

DivergencePanel divergence_panel(const ComposedModel& model, const std::vector<double>& renyi_orders,
                                 const EvalConfig& cfg = {});

}  // namespace qigf
