#include "qigf/quantile_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qigf/errors.hpp"

namespace qigf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* what)
{
    if (!ok) throw ParamError(what);
}

void check_probability_open(double p)
{
    if (!(p > 0.0 && p < 1.0)) {
        std::ostringstream os;
        os << "probability " << p << " outside (0, 1)";
        throw DomainError(os.str());
    }
}

void validate(const Family& family)
{
    std::visit(Overloaded{
                   [](const Exponential& m) { require(m.mean > 0, "exponential: mean must be > 0"); },
                   [](const ParetoI& m) { require(m.gamma > 0, "pareto1: gamma must be > 0"); },
                   [](const ParetoII& m) { require(m.beta > 0, "pareto2: beta must be > 0"); },
                   [](const Power& m) {
                       require(m.scale > 0 && m.shape > 0, "power: scale and shape must be > 0");
                   },
                   [](const PowerPareto& m) {
                       require(m.c > 0 && m.lambda1 > 0 && m.lambda2 > 0,
                               "powerpareto: c, lambda1, lambda2 must be > 0");
                   },
                   [](const Govindarajulu& m) {
                       require(m.sigma > 0 && m.beta > 0, "govindarajulu: sigma and beta must be > 0");
                   },
                   [](const LinearHazardQuantile& m) {
                       require(m.a > 0 && m.a + m.b > 0, "lhq: need a > 0 and a + b > 0");
                       // q(p) carries the factor (b - a); b <= a gives a nonincreasing Q.
                       require(m.b > m.a, "lhq: quantile function is nondecreasing only for b > a");
                   },
                   [](const ReciprocalExponential& m) {
                       require(m.lambda > 0, "recipexp: lambda must be > 0");
                   },
               },
               family);
}

}  // namespace

QuantileModel::QuantileModel(Family family) : family_(family) { validate(family_); }

std::string QuantileModel::name() const
{
    return std::visit(Overloaded{
                          [](const Exponential&) { return "exp"; },
                          [](const ParetoI&) { return "pareto1"; },
                          [](const ParetoII&) { return "pareto2"; },
                          [](const Power&) { return "power"; },
                          [](const PowerPareto&) { return "powerpareto"; },
                          [](const Govindarajulu&) { return "govindarajulu"; },
                          [](const LinearHazardQuantile&) { return "lhq"; },
                          [](const ReciprocalExponential&) { return "recipexp"; },
                      },
                      family_);
}

std::vector<double> QuantileModel::params() const
{
    return std::visit(Overloaded{
                          [](const Exponential& m) { return std::vector{m.mean}; },
                          [](const ParetoI& m) { return std::vector{m.gamma}; },
                          [](const ParetoII& m) { return std::vector{m.beta}; },
                          [](const Power& m) { return std::vector{m.scale, m.shape}; },
                          [](const PowerPareto& m) { return std::vector{m.c, m.lambda1, m.lambda2}; },
                          [](const Govindarajulu& m) { return std::vector{m.sigma, m.beta}; },
                          [](const LinearHazardQuantile& m) { return std::vector{m.a, m.b}; },
                          [](const ReciprocalExponential& m) { return std::vector{m.lambda}; },
                      },
                      family_);
}

double QuantileModel::support_lower() const
{
    return std::visit(Overloaded{
                          [](const ParetoI&) { return 1.0; },
                          [](const auto&) { return 0.0; },
                      },
                      family_);
}

double QuantileModel::support_upper() const
{
    return std::visit(Overloaded{
                          [](const Power& m) { return m.scale; },
                          [](const Govindarajulu& m) { return m.sigma; },
                          [](const LinearHazardQuantile& m) {
                              return std::log((m.a + m.b) / (2.0 * m.a)) / (m.a + m.b);
                          },
                          [](const auto&) { return kInf; },
                      },
                      family_);
}

bool QuantileModel::has_closed_form_inverse() const
{
    return !std::holds_alternative<PowerPareto>(family_) &&
           !std::holds_alternative<Govindarajulu>(family_);
}

double QuantileModel::quantile(double p) const
{
    if (p == 0.0) return support_lower();
    if (p == 1.0) {
        const double upper = support_upper();
        if (!std::isfinite(upper)) throw DomainError("quantile at p = 1 is infinite");
        return upper;
    }
    check_probability_open(p);
    return std::visit(
        Overloaded{
            [p](const Exponential& m) { return -m.mean * std::log1p(-p); },
            [p](const ParetoI& m) { return std::pow(1.0 - p, -m.gamma); },
            [p](const ParetoII& m) { return std::expm1(-std::log1p(-p) / m.beta); },
            [p](const Power& m) { return m.scale * std::pow(p, 1.0 / m.shape); },
            [p](const PowerPareto& m) {
                return m.c * std::pow(p, m.lambda1) * std::pow(1.0 - p, -m.lambda2);
            },
            [p](const Govindarajulu& m) {
                const double pb = std::pow(p, m.beta);
                return m.sigma * pb * ((m.beta + 1.0) - m.beta * p);
            },
            [p](const LinearHazardQuantile& m) {
                return (std::log(m.a + m.b * p) - std::log(m.a) - std::log1p(p)) / (m.a + m.b);
            },
            [p](const ReciprocalExponential& m) { return -m.lambda / std::log(p); },
        },
        family_);
}

double QuantileModel::quantile_density(double p) const
{
    check_probability_open(p);
    return std::visit(
        Overloaded{
            [p](const Exponential& m) { return m.mean / (1.0 - p); },
            [p](const ParetoI& m) { return m.gamma * std::pow(1.0 - p, -m.gamma - 1.0); },
            [p](const ParetoII& m) { return std::pow(1.0 - p, -1.0 / m.beta - 1.0) / m.beta; },
            [p](const Power& m) { return m.scale / m.shape * std::pow(p, 1.0 / m.shape - 1.0); },
            [p](const PowerPareto& m) {
                return m.c * std::pow(p, m.lambda1 - 1.0) * std::pow(1.0 - p, -m.lambda2 - 1.0) *
                       (m.lambda1 + p * (m.lambda2 - m.lambda1));
            },
            [p](const Govindarajulu& m) {
                return m.sigma * m.beta * (m.beta + 1.0) * std::pow(p, m.beta - 1.0) * (1.0 - p);
            },
            [p](const LinearHazardQuantile& m) {
                return (m.b - m.a) / ((m.a + m.b) * (m.a + m.b * p) * (1.0 + p));
            },
            [p](const ReciprocalExponential& m) {
                const double lp = std::log(p);
                return m.lambda / (p * lp * lp);
            },
        },
        family_);
}

namespace {

double bisect_inverse(const QuantileModel& model, double x, const EvalConfig& cfg)
{
    double lo = cfg.endpoint_eps;
    double hi = 1.0 - cfg.endpoint_eps;
    const double slack = cfg.root_tol * std::max(1.0, std::abs(x));
    const double q_lo = model.quantile(lo);
    const double q_hi = model.quantile(hi);
    if (x < q_lo - slack || x > q_hi + slack) {
        std::ostringstream os;
        os << model.name() << ": value " << x << " outside [Q(eps), Q(1-eps)] = [" << q_lo << ", "
           << q_hi << "]";
        throw DomainError(os.str());
    }
    if (x <= q_lo) return lo;
    if (x >= q_hi) return hi;
    for (std::size_t step = 0; step < cfg.max_subdivisions; ++step) {
        const double mid = 0.5 * (lo + hi);
        // Interval exhausted at machine resolution.
        if (!(lo < mid && mid < hi)) return mid;
        const double q_mid = model.quantile(mid);
        if (std::abs(q_mid - x) <= slack) return mid;
        if (q_mid < x)
            lo = mid;
        else
            hi = mid;
    }
    throw NoConvergence(model.name() + ": bisection did not converge");
}

}  // namespace

double QuantileModel::cdf(double x, const EvalConfig& cfg) const
{
    if (std::isnan(x)) throw DomainError("cdf of NaN");
    if (!has_closed_form_inverse()) return bisect_inverse(*this, x, cfg);

    const double lower = support_lower();
    const double upper = support_upper();
    const double slack = cfg.root_tol * std::max(1.0, std::abs(x));
    if (x < lower - slack || x > upper + slack) {
        std::ostringstream os;
        os << name() << ": value " << x << " outside support [" << lower << ", " << upper << "]";
        throw DomainError(os.str());
    }
    if (x <= lower) return 0.0;
    if (x >= upper) return 1.0;
    return std::visit(
        Overloaded{
            [x](const Exponential& m) { return -std::expm1(-x / m.mean); },
            [x](const ParetoI& m) { return -std::expm1(-std::log(x) / m.gamma); },
            [x](const ParetoII& m) { return -std::expm1(-m.beta * std::log1p(x)); },
            [x](const Power& m) { return std::pow(x / m.scale, m.shape); },
            [x](const LinearHazardQuantile& m) {
                const double y = std::exp((m.a + m.b) * x);
                return m.a * (y - 1.0) / (m.b - m.a * y);
            },
            [x](const ReciprocalExponential& m) { return std::exp(-m.lambda / x); },
            [](const auto&) -> double { return std::numeric_limits<double>::quiet_NaN(); },
        },
        family_);
}

double QuantileModel::density(double x, const EvalConfig& cfg) const
{
    const double lower = support_lower();
    const double upper = support_upper();
    if (x < lower || x > upper) return 0.0;
    return std::visit(
        Overloaded{
            [x](const Exponential& m) { return std::exp(-x / m.mean) / m.mean; },
            [x](const ParetoI& m) { return std::pow(x, -1.0 / m.gamma - 1.0) / m.gamma; },
            [x](const ParetoII& m) { return m.beta * std::pow(1.0 + x, -m.beta - 1.0); },
            [x](const Power& m) {
                return m.shape * std::pow(x, m.shape - 1.0) / std::pow(m.scale, m.shape);
            },
            [x](const ReciprocalExponential& m) {
                if (x == 0.0) return 0.0;
                return m.lambda / (x * x) * std::exp(-m.lambda / x);
            },
            [this, x, &cfg](const auto&) {
                const double p = cdf(x, cfg);
                const double q = quantile_density(p);
                if (!(q > 0.0)) throw DegenerateDensity(name() + ": zero quantile density");
                return 1.0 / q;
            },
        },
        family_);
}

bool operator==(const QuantileModel& lhs, const QuantileModel& rhs)
{
    return lhs.family_ == rhs.family_;
}

double eval_Q(const QuantileModel& model, double p) { return model.quantile(p); }

double eval_q(const QuantileModel& model, double p) { return model.quantile_density(p); }

double invert_Q(const QuantileModel& model, double x, const EvalConfig& cfg)
{
    return model.cdf(x, cfg);
}

double hazard_quantile(const QuantileModel& model, double p)
{
    const double q = model.quantile_density(p);
    if (!(q > 0.0)) throw DegenerateDensity("hazard quantile: q(p) = 0");
    return 1.0 / ((1.0 - p) * q);
}

double reversed_hazard_quantile(const QuantileModel& model, double p)
{
    const double q = model.quantile_density(p);
    if (!(q > 0.0)) throw DegenerateDensity("reversed hazard quantile: q(p) = 0");
    return 1.0 / (p * q);
}

}  // namespace qigf
