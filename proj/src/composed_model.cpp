#include "qigf/composed_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qigf/errors.hpp"
#include "qigf/quadrature.hpp"

namespace qigf {

std::string_view to_string(ClosedForm tag)
{
    switch (tag) {
    case ClosedForm::Identity: return "Identity";
    case ClosedForm::ExpPair: return "ExpPair";
    case ClosedForm::ParetoIPair: return "ParetoIPair";
    case ClosedForm::ParetoIIPair: return "ParetoIIPair";
    case ClosedForm::PHTheta: return "PHTheta";
    case ClosedForm::ReversedPH: return "ReversedPH";
    case ClosedForm::ProportionalOddsSurvival: return "ProportionalOddsSurvival";
    case ClosedForm::ProportionalOddsCdf: return "ProportionalOddsCdf";
    case ClosedForm::GTransformSurvival: return "GTransformSurvival";
    case ClosedForm::GTransformCdf: return "GTransformCdf";
    case ClosedForm::GovindarajuluRecipExp: return "GovindarajuluRecipExp";
    case ClosedForm::GovindarajuluPower: return "GovindarajuluPower";
    case ClosedForm::PowerParetoPower: return "PowerParetoPower";
    }
    return "?";
}

bool is_survival_power(ClosedForm tag)
{
    return tag == ClosedForm::ExpPair || tag == ClosedForm::ParetoIPair ||
           tag == ClosedForm::ParetoIIPair || tag == ClosedForm::PHTheta;
}

ComposedModel::ComposedModel(Parts parts) : parts_(std::move(parts))
{
    if (!parts_.distortion || !parts_.density)
        throw ParamError("ComposedModel: distortion and density must be set");
}

ComposedModel ComposedModel::identity()
{
    return ComposedModel(Parts{
        [](double p) { return p; },
        [](double) { return 1.0; },
        ClosedForm::Identity,
        1.0,
        std::nullopt,
        "identity",
    });
}

double ComposedModel::distortion(double p) const
{
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << "distortion: probability " << p << " outside [0, 1]";
        throw DomainError(os.str());
    }
    return parts_.distortion(p);
}

double ComposedModel::distortion_density(double p) const
{
    if (!(p > 0.0 && p < 1.0)) {
        std::ostringstream os;
        os << "distortion density: probability " << p << " outside (0, 1)";
        throw DomainError(os.str());
    }
    return parts_.density(p);
}

namespace {

std::string pair_label(const QuantileModel& first, const QuantileModel& second)
{
    std::ostringstream os;
    auto put = [&os](const QuantileModel& m) {
        os << m.name() << ':';
        const auto params = m.params();
        for (std::size_t i = 0; i < params.size(); ++i) os << (i ? "," : "") << params[i];
    };
    put(first);
    os << '/';
    put(second);
    return os.str();
}

ComposedModel survival_power(double c, ClosedForm tag, const QuantileModel& first,
                             const QuantileModel& second)
{
    return ComposedModel({
        [c](double p) { return p == 1.0 ? 1.0 : -std::expm1(c * std::log1p(-p)); },
        [c](double p) { return c * std::pow(1.0 - p, c - 1.0); },
        tag,
        c,
        std::make_pair(first, second),
        pair_label(first, second),
    });
}

void check_support(const QuantileModel& first, const QuantileModel& second, const EvalConfig& cfg)
{
    const double lo = first.quantile(cfg.endpoint_eps);
    const double hi = first.quantile(1.0 - cfg.endpoint_eps);
    const double slack_lo = cfg.root_tol * std::max(1.0, std::abs(lo));
    const double slack_hi = cfg.root_tol * std::max(1.0, std::abs(hi));
    if (lo < second.support_lower() - slack_lo || hi > second.support_upper() + slack_hi) {
        std::ostringstream os;
        os << "support of " << first.name() << " ([" << lo << ", " << hi
           << "] at the clip) is not inside the support of " << second.name() << " (["
           << second.support_lower() << ", " << second.support_upper() << "])";
        throw SupportMismatch(os.str());
    }
}

}  // namespace

ComposedModel compose_numeric(const QuantileModel& first, const QuantileModel& second,
                              const EvalConfig& cfg)
{
    cfg.validate();
    check_support(first, second, cfg);
    auto value = [first, second, cfg](double p) {
        if (p == 1.0 && !std::isfinite(first.support_upper())) return 1.0;
        return second.cdf(first.quantile(p), cfg);
    };
    auto density = [first, second, cfg](double p) {
        return first.quantile_density(p) * second.density(first.quantile(p), cfg);
    };
    return ComposedModel({value, density, std::nullopt, 0.0, std::make_pair(first, second),
                          pair_label(first, second)});
}

ComposedModel compose(const QuantileModel& first, const QuantileModel& second,
                      const EvalConfig& cfg)
{
    cfg.validate();
    const Family& f1 = first.family();
    const Family& f2 = second.family();

    if (auto a = std::get_if<Exponential>(&f1)) {
        if (auto b = std::get_if<Exponential>(&f2))
            return survival_power(a->mean / b->mean, ClosedForm::ExpPair, first, second);
    }
    if (auto a = std::get_if<ParetoI>(&f1)) {
        if (auto b = std::get_if<ParetoI>(&f2))
            return survival_power(a->gamma / b->gamma, ClosedForm::ParetoIPair, first, second);
    }
    if (auto a = std::get_if<ParetoII>(&f1)) {
        if (auto b = std::get_if<ParetoII>(&f2))
            return survival_power(b->beta / a->beta, ClosedForm::ParetoIIPair, first, second);
    }
    if (std::holds_alternative<Govindarajulu>(f1)) {
        if (auto b = std::get_if<ReciprocalExponential>(&f2)) {
            const double lambda = b->lambda;
            auto value = [first, lambda](double p) {
                const double x = first.quantile(p);
                return x > 0.0 ? std::exp(-lambda / x) : 0.0;
            };
            auto density = [first, lambda](double p) {
                const double x = first.quantile(p);
                const double tail = x > 0.0 ? std::exp(-lambda / x) : 0.0;
                if (tail == 0.0) return 0.0;
                return tail * lambda * first.quantile_density(p) / (x * x);
            };
            return ComposedModel({value, density, ClosedForm::GovindarajuluRecipExp, lambda,
                                  std::make_pair(first, second), pair_label(first, second)});
        }
        if (auto b = std::get_if<Power>(&f2)) {
            check_support(first, second, cfg);
            const double scale = b->scale;
            const double shape = b->shape;
            auto value = [first, scale, shape](double p) {
                return std::pow(first.quantile(p) / scale, shape);
            };
            auto density = [first, scale, shape](double p) {
                return shape * std::pow(first.quantile(p) / scale, shape - 1.0) *
                       first.quantile_density(p) / scale;
            };
            return ComposedModel({value, density, ClosedForm::GovindarajuluPower, shape,
                                  std::make_pair(first, second), pair_label(first, second)});
        }
    }
    if (auto a = std::get_if<PowerPareto>(&f1)) {
        if (auto b = std::get_if<Power>(&f2)) {
            // Printed closed-form integrand for this pair; the distortion is its
            // running integral.
            const double k = b->shape;
            const double factor = k * std::pow(a->c / b->scale, k);
            const double e0 = a->lambda1 * k - 1.0;
            const double e1 = a->lambda2 * k - 1.0;
            const double l1 = a->lambda1;
            const double l2 = a->lambda2;
            auto density = [=](double p) {
                return factor * std::pow(p, e0) * std::pow(1.0 - p, e1) * (l1 + p * (l2 - l1));
            };
            const QuadOptions opts{cfg.quad_rel_tol, cfg.quad_abs_tol, cfg.max_subdivisions};
            auto value = [density, opts](double p) {
                if (p == 0.0) return 0.0;
                return integrate(density, 0.0, p, opts).value;
            };
            return ComposedModel({value, density, ClosedForm::PowerParetoPower, k,
                                  std::make_pair(first, second), pair_label(first, second)});
        }
    }
    return compose_numeric(first, second, cfg);
}

double hazard_quantile(const ComposedModel& model, double p)
{
    const double q = model.distortion_density(p);
    if (!(q > 0.0)) throw DegenerateDensity("hazard quantile: q3(p) = 0");
    return 1.0 / ((1.0 - p) * q);
}

double reversed_hazard_quantile(const ComposedModel& model, double p)
{
    const double q = model.distortion_density(p);
    if (!(q > 0.0)) throw DegenerateDensity("reversed hazard quantile: q3(p) = 0");
    return 1.0 / (p * q);
}

}  // namespace qigf
