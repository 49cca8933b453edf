#include "qigf/igf.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "qigf/errors.hpp"
#include "qigf/quadrature.hpp"

namespace qigf {

Alpha::Alpha(double value) : value_(value)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream os;
        os << "alpha must be a finite positive number, got " << value;
        throw ParamError(os.str());
    }
}

namespace {

QuadOptions quad_options(const EvalConfig& cfg)
{
    return {cfg.quad_rel_tol, cfg.quad_abs_tol, cfg.max_subdivisions};
}

QuadResult integrate_clipped(const std::function<double(double)>& f, double lo, double hi,
                             const EvalConfig& cfg)
{
    const double a = std::max(lo, cfg.endpoint_eps);
    const double b = std::min(hi, 1.0 - cfg.endpoint_eps);
    return integrate(f, a, b, quad_options(cfg));
}

std::function<double(double)> power_integrand(const ComposedModel& model, double exponent)
{
    return [&model, exponent](double p) { return std::pow(model.distortion_density(p), exponent); };
}

/// v^(1-a) (1 - v^(2a-1)) / (k (2a-1)), the integral shared by both
/// proportional-odds closed forms (log form at a = 1/2).
double odds_kernel(double v, double k, double a)
{
    const double head = std::pow(v, 1.0 - a);
    if (a == 0.5) return head * (-std::log(v)) / k;
    return head * (-std::expm1((2.0 * a - 1.0) * std::log(v))) / (k * (2.0 * a - 1.0));
}

double survival_power_igf(double c, double a)
{
    const double denom = a + c * (1.0 - a);
    if (!(denom > 0.0)) {
        std::ostringstream os;
        os << "closed form diverges: alpha + c(1 - alpha) = " << denom << " <= 0 (c = " << c
           << ", alpha = " << a << ")";
        throw DivergentIntegral(os.str());
    }
    return std::pow(c, 1.0 - a) / denom;
}

std::optional<double> closed_igf(const ComposedModel& model, double a)
{
    if (!model.closed_form()) return std::nullopt;
    const ClosedForm tag = *model.closed_form();
    const double c = model.shape();
    if (tag == ClosedForm::Identity) return 1.0;
    if (is_survival_power(tag) || tag == ClosedForm::ReversedPH) return survival_power_igf(c, a);
    if (tag == ClosedForm::ProportionalOddsSurvival || tag == ClosedForm::ProportionalOddsCdf) {
        if (c == 1.0) return 1.0;
        return odds_kernel(c, 1.0 - c, a);
    }
    return std::nullopt;
}

std::optional<double> closed_residual(const ComposedModel& model, double a, double u)
{
    if (!model.closed_form()) return std::nullopt;
    const ClosedForm tag = *model.closed_form();
    const double c = model.shape();
    if (tag == ClosedForm::Identity) return 1.0;
    if (is_survival_power(tag)) return survival_power_igf(c, a);
    if (tag == ClosedForm::ProportionalOddsSurvival) {
        if (!(a > 0.5))
            throw DivergentIntegral("proportional-odds residual closed form requires alpha > 1/2");
        const double v = 1.0 - (1.0 - c) * (1.0 - u);
        return odds_kernel(v, 1.0 - c, a) / (1.0 - u);
    }
    return std::nullopt;
}

std::optional<double> closed_past(const ComposedModel& model, double a, double u)
{
    if (!model.closed_form()) return std::nullopt;
    const ClosedForm tag = *model.closed_form();
    const double c = model.shape();
    if (tag == ClosedForm::Identity) return 1.0;
    if (tag == ClosedForm::ReversedPH) return survival_power_igf(c, a);
    if (is_survival_power(tag)) {
        const double k = c * (1.0 - a) + a;
        if (!(k > 0.0)) throw DivergentIntegral("past closed form diverges: c(1 - alpha) + alpha <= 0");
        const double head = -std::expm1(c * std::log1p(-u));  // 1 - (1-u)^c
        const double tail = -std::expm1(k * std::log1p(-u));  // 1 - (1-u)^k
        return std::pow(head, a - 1.0) / std::pow(u, a) * std::pow(c, 1.0 - a) * tail / k;
    }
    if (tag == ClosedForm::ProportionalOddsCdf) {
        if (c == 1.0) return 1.0;
        const double w = c + u * (1.0 - c);
        // w^(1-a) theta^(1-a) (w^(2a-1) - theta^(2a-1)) / (u (1-theta) (2a-1))
        const double scale = std::pow(w * c, 1.0 - a) / (u * (1.0 - c));
        if (a == 0.5) return scale * std::log(w / c);
        return scale * (std::pow(w, 2.0 * a - 1.0) - std::pow(c, 2.0 * a - 1.0)) / (2.0 * a - 1.0);
    }
    return std::nullopt;
}

[[noreturn]] void no_closed_form(const ComposedModel& model, const char* what)
{
    throw ParamError(std::string("no closed form for ") + what + " of " + model.label());
}

IgfValue finish_quadrature(double prefactor, const QuadResult& r)
{
    const double value = prefactor * r.value;
    if (!std::isfinite(value)) throw DivergentIntegral("non-finite result");
    return {value, Method::Quadrature, std::abs(prefactor) * r.abs_error};
}

}  // namespace

IgfValue igf(const ComposedModel& model, Alpha alpha, const EvalConfig& cfg, Route route)
{
    const double a = alpha.value();
    if (alpha.is_one()) return {1.0, Method::ClosedForm, 0.0};
    if (route != Route::Quadrature) {
        if (auto v = closed_igf(model, a)) return {*v, Method::ClosedForm, 0.0};
        if (route == Route::ClosedForm) no_closed_form(model, "I*");
    }
    cfg.validate();
    return finish_quadrature(1.0, integrate_clipped(power_integrand(model, 1.0 - a), 0.0, 1.0, cfg));
}

IgfValue igf_residual(const ComposedModel& model, Alpha alpha, double u, const EvalConfig& cfg,
                      Route route)
{
    if (!(u >= 0.0 && u < 1.0)) throw DomainError("residual form needs 0 <= u < 1");
    if (u == 0.0) return igf(model, alpha, cfg, route);
    const double a = alpha.value();
    if (alpha.is_one()) return {1.0, Method::ClosedForm, 0.0};
    if (route != Route::Quadrature) {
        try {
            if (auto v = closed_residual(model, a, u)) return {*v, Method::ClosedForm, 0.0};
        } catch (const DivergentIntegral&) {
            if (route == Route::ClosedForm) throw;
        }
        if (route == Route::ClosedForm) no_closed_form(model, "R*");
    }
    cfg.validate();
    if (u >= 1.0 - cfg.endpoint_eps) throw DomainError("u lies inside the clipped endpoint region");
    const double prefactor =
        std::pow(1.0 - model.distortion(u), a - 1.0) / std::pow(1.0 - u, a);
    return finish_quadrature(prefactor,
                             integrate_clipped(power_integrand(model, 1.0 - a), u, 1.0, cfg));
}

IgfValue igf_past(const ComposedModel& model, Alpha alpha, double u, const EvalConfig& cfg,
                  Route route)
{
    if (!(u > 0.0 && u <= 1.0)) throw DomainError("past form needs 0 < u <= 1");
    if (u == 1.0) return igf(model, alpha, cfg, route);
    const double a = alpha.value();
    if (alpha.is_one()) return {1.0, Method::ClosedForm, 0.0};
    if (route != Route::Quadrature) {
        if (auto v = closed_past(model, a, u)) return {*v, Method::ClosedForm, 0.0};
        if (route == Route::ClosedForm) no_closed_form(model, "J*");
    }
    cfg.validate();
    if (u <= cfg.endpoint_eps) throw DomainError("u lies inside the clipped endpoint region");
    const double prefactor = std::pow(model.distortion(u), a - 1.0) / std::pow(u, a);
    return finish_quadrature(prefactor,
                             integrate_clipped(power_integrand(model, 1.0 - a), 0.0, u, cfg));
}

double kl_divergence(const ComposedModel& model, const EvalConfig& cfg)
{
    cfg.validate();
    auto f = [&model](double p) { return -std::log(model.distortion_density(p)); };
    return integrate_clipped(f, 0.0, 1.0, cfg).value;
}

double kl_by_derivative(const ComposedModel& model, const EvalConfig& cfg)
{
    cfg.validate();
    const double h = cfg.fd_step;
    std::optional<double> up;
    std::optional<double> down;
    try {
        up = closed_igf(model, 1.0 + h);
        down = closed_igf(model, 1.0 - h);
    } catch (const DivergentIntegral&) {
        up.reset();
    }
    if (up && down) return (*up - *down) / (2.0 * h);
    // (q^-h - q^h) / 2h integrated in one pass.
    auto f = [&model, h](double p) {
        return -std::sinh(h * std::log(model.distortion_density(p))) / h;
    };
    return integrate_clipped(f, 0.0, 1.0, cfg).value;
}

double log_moment(const ComposedModel& model, int k, const EvalConfig& cfg)
{
    if (k < 0) throw ParamError("log moment order must be >= 0");
    if (k == 0) return 1.0;
    cfg.validate();
    auto f = [&model, k](double p) { return std::pow(std::log(model.distortion_density(p)), k); };
    return integrate_clipped(f, 0.0, 1.0, cfg).value;
}

double generalized_kl(const ComposedModel& model, int k, const EvalConfig& cfg)
{
    if (k < 1) throw ParamError("generalized K-L order must be >= 1");
    cfg.validate();
    auto f = [&model, k](double p) { return std::pow(-std::log(model.distortion_density(p)), k); };
    return integrate_clipped(f, 0.0, 1.0, cfg).value;
}

double igf_series(const ComposedModel& model, Alpha alpha, int terms, const EvalConfig& cfg)
{
    if (terms < 0) throw ParamError("series needs a nonnegative number of terms");
    if (alpha.is_one()) return 1.0;
    const double step = 1.0 - alpha.value();
    double sum = 0.0;
    double coeff = 1.0;  // (1 - alpha)^k / k!
    for (int k = 0; k <= terms; ++k) {
        if (k > 0) coeff *= step / k;
        sum += coeff * log_moment(model, k, cfg);
    }
    return sum;
}

IgfBounds igf_bounds(const ComposedModel& model, Alpha alpha, const EvalConfig& cfg)
{
    const double a = alpha.value();
    if (alpha.is_one()) return {0.0, 1.0};
    IgfBounds out;
    try {
        out.lower = std::max(0.0, (1.0 - a) * log_moment(model, 1, cfg));
    } catch (const DivergentIntegral& e) {
        throw DivergentIntegral(std::string("lower bound: ") + e.what());
    }
    try {
        auto f = [&model, a](double p) {
            return std::pow((1.0 - p) * model.distortion_density(p), 1.0 - a);
        };
        out.upper = integrate_clipped(f, 0.0, 1.0, cfg).value;
    } catch (const DivergentIntegral& e) {
        throw DivergentIntegral(std::string("upper bound: ") + e.what());
    }
    return out;
}

DivergencePanel assemble_panel(double kl, double igf_half,
                               const std::map<double, double>& igf_at_orders)
{
    DivergencePanel panel;
    panel.kl = kl;
    panel.hellinger = 1.0 - igf_half;
    panel.bhattacharyya = -std::log(igf_half);
    for (const auto& [order, value] : igf_at_orders)
        panel.renyi[order] = std::log(value) / (order - 1.0);
    return panel;
}

DivergencePanel divergence_panel(const ComposedModel& model, const std::vector<double>& renyi_orders,
                                 const EvalConfig& cfg)
{
    std::map<double, double> at_orders;
    for (double order : renyi_orders) {
        if (order == 1.0) throw ParamError("Renyi order 1 is reported as the K-L divergence");
        at_orders[order] = igf(model, Alpha(order), cfg).value;
    }
    const double half = igf(model, Alpha(0.5), cfg).value;
    return assemble_panel(kl_divergence(model, cfg), half, at_orders);
}

}  // namespace qigf
