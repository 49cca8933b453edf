#include "qigf/semiparam.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qigf/errors.hpp"

namespace qigf {

UnitDistribution::UnitDistribution(std::function<double(double)> cdf,
                                   std::function<double(double)> density, std::string label)
    : cdf_(std::move(cdf)), density_(std::move(density)), label_(std::move(label))
{
}

UnitDistribution UnitDistribution::power(double theta)
{
    if (!(theta > 0.0)) throw ParamError("power G: theta must be > 0");
    return UnitDistribution([theta](double x) { return std::pow(x, theta); },
                            [theta](double x) { return theta * std::pow(x, theta - 1.0); },
                            "power");
}

UnitDistribution UnitDistribution::odds(double theta)
{
    if (!(theta > 0.0)) throw ParamError("odds G: theta must be > 0");
    return UnitDistribution(
        [theta](double x) { return x / (theta + x * (1.0 - theta)); },
        [theta](double x) {
            const double w = theta + x * (1.0 - theta);
            return theta / (w * w);
        },
        "odds");
}

UnitDistribution UnitDistribution::table(std::vector<double> x, std::vector<double> g)
{
    if (x.size() != g.size() || x.size() < 2) throw ParamError("G table: need >= 2 matching points");
    if (x.front() != 0.0 || x.back() != 1.0 || g.front() != 0.0 || g.back() != 1.0)
        throw ParamError("G table: must run from (0, 0) to (1, 1)");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]) || !(g[i] > g[i - 1]))
            throw ParamError("G table: x and G must be strictly increasing");

    // Fritsch-Carlson slopes.
    const std::size_t n = x.size();
    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) secant[i] = (g[i + 1] - g[i]) / (x[i + 1] - x[i]);
    std::vector<double> slope(n);
    slope.front() = secant.front();
    slope.back() = secant.back();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (secant[i - 1] * secant[i] <= 0.0) {
            slope[i] = 0.0;
        } else {
            const double w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
            const double w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
            slope[i] = (w1 + w2) / (w1 / secant[i - 1] + w2 / secant[i]);
        }
    }

    struct Table {
        std::vector<double> x, g, m;
        std::size_t cell(double t) const
        {
            auto it = std::upper_bound(x.begin(), x.end(), t);
            const auto i = static_cast<std::size_t>(std::distance(x.begin(), it));
            return std::clamp<std::size_t>(i, 1, x.size() - 1) - 1;
        }
    };
    auto tab = std::make_shared<const Table>(Table{std::move(x), std::move(g), std::move(slope)});

    auto cdf = [tab](double t) {
        const std::size_t i = tab->cell(t);
        const double h = tab->x[i + 1] - tab->x[i];
        const double s = (t - tab->x[i]) / h;
        const double s2 = s * s;
        const double s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * tab->g[i] + (s3 - 2 * s2 + s) * h * tab->m[i] +
               (-2 * s3 + 3 * s2) * tab->g[i + 1] + (s3 - s2) * h * tab->m[i + 1];
    };
    auto density = [tab](double t) {
        const std::size_t i = tab->cell(t);
        const double h = tab->x[i + 1] - tab->x[i];
        const double s = (t - tab->x[i]) / h;
        const double s2 = s * s;
        return ((6 * s2 - 6 * s) * tab->g[i] + (3 * s2 - 4 * s + 1) * h * tab->m[i] +
                (-6 * s2 + 6 * s) * tab->g[i + 1] + (3 * s2 - 2 * s) * h * tab->m[i + 1]) /
               h;
    };
    return UnitDistribution(cdf, density, "table");
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string labelled(const char* name, double value)
{
    std::ostringstream os;
    os << name << ':' << value;
    return os.str();
}

}  // namespace

ComposedModel distortion_to_composed(const DistortionSpec& spec)
{
    using Parts = ComposedModel::Parts;
    return std::visit(
        Overloaded{
            [](const ProportionalHazards& s) {
                if (!(s.theta > 0.0)) throw ParamError("ph: theta must be > 0");
                const double t = s.theta;
                return ComposedModel(Parts{
                    [t](double p) { return 1.0 - std::pow(1.0 - p, t); },
                    [t](double p) { return t * std::pow(1.0 - p, t - 1.0); },
                    ClosedForm::PHTheta, t, std::nullopt, labelled("ph", t)});
            },
            [](const ProportionalOddsSurvival& s) {
                if (!(s.r > 0.0 && s.r < 1.0)) throw ParamError("po: r must lie in (0, 1)");
                const double r = s.r;
                return ComposedModel(Parts{
                    [r](double p) { return 1.0 - r * (1.0 - p) / (1.0 - (1.0 - r) * (1.0 - p)); },
                    [r](double p) {
                        const double v = 1.0 - (1.0 - r) * (1.0 - p);
                        return r / (v * v);
                    },
                    ClosedForm::ProportionalOddsSurvival, r, std::nullopt, labelled("po", r)});
            },
            [](const ProportionalOddsCdf& s) {
                if (!(s.theta > 0.0)) throw ParamError("pocdf: theta must be > 0");
                const double t = s.theta;
                return ComposedModel(Parts{
                    [t](double u) { return u / (t + u * (1.0 - t)); },
                    [t](double u) {
                        const double w = t + u * (1.0 - t);
                        return t / (w * w);
                    },
                    ClosedForm::ProportionalOddsCdf, t, std::nullopt, labelled("pocdf", t)});
            },
            [](const ReversedProportionalHazards& s) {
                if (!(s.c1 > 0.0)) throw ParamError("rph: c1 must be > 0");
                const double c = s.c1;
                return ComposedModel(Parts{
                    [c](double u) { return std::pow(u, c); },
                    [c](double u) { return c * std::pow(u, c - 1.0); },
                    ClosedForm::ReversedPH, c, std::nullopt, labelled("rph", c)});
            },
            [](const GTransformSurvival& s) {
                const UnitDistribution g = s.g;
                return ComposedModel(Parts{
                    [g](double p) { return 1.0 - g.cdf(1.0 - p); },
                    [g](double p) { return g.density(1.0 - p); },
                    ClosedForm::GTransformSurvival, 0.0, std::nullopt, "gsurv:" + g.label()});
            },
            [](const GTransformCdf& s) {
                const UnitDistribution g = s.g;
                return ComposedModel(Parts{
                    [g](double p) { return g.cdf(p); },
                    [g](double p) { return g.density(p); },
                    ClosedForm::GTransformCdf, 0.0, std::nullopt, "gcdf:" + g.label()});
            },
        },
        spec);
}

MonotoneTransform::MonotoneTransform(std::function<double(double)> forward,
                                     std::function<double(double)> inverse, std::string label)
    : forward_(std::move(forward)), inverse_(std::move(inverse)), label_(std::move(label))
{
}

MonotoneTransform MonotoneTransform::identity()
{
    return {[](double x) { return x; }, [](double y) { return y; }, "identity"};
}

MonotoneTransform MonotoneTransform::log()
{
    return {[](double x) {
                if (!(x > 0.0)) throw DomainError("log transform needs x > 0");
                return std::log(x);
            },
            [](double y) { return std::exp(y); }, "log"};
}

MonotoneTransform MonotoneTransform::exp()
{
    return {[](double x) { return std::exp(x); },
            [](double y) {
                if (!(y > 0.0)) throw DomainError("exp transform inverse needs y > 0");
                return std::log(y);
            },
            "exp"};
}

MonotoneTransform MonotoneTransform::affine(double scale, double shift)
{
    if (!(scale > 0.0)) throw ParamError("affine transform: scale must be > 0");
    return {[scale, shift](double x) { return scale * x + shift; },
            [scale, shift](double y) { return (y - shift) / scale; }, "affine"};
}

MonotoneTransform MonotoneTransform::power(double k)
{
    if (!(k > 0.0)) throw ParamError("power transform: exponent must be > 0");
    return {[k](double x) {
                if (x < 0.0) throw DomainError("power transform needs x >= 0");
                return std::pow(x, k);
            },
            [k](double y) {
                if (y < 0.0) throw DomainError("power transform inverse needs y >= 0");
                return std::pow(y, 1.0 / k);
            },
            "power"};
}

MonotoneTransform MonotoneTransform::custom(std::function<double(double)> forward,
                                            std::function<double(double)> inverse,
                                            std::string label)
{
    if (!forward || !inverse) throw ParamError("custom transform needs both directions");
    return {std::move(forward), std::move(inverse), std::move(label)};
}

ComposedModel transformed_composition(const QuantileModel& first, const QuantileModel& second,
                                      const MonotoneTransform& t1, const MonotoneTransform& t2,
                                      const EvalConfig& cfg)
{
    cfg.validate();
    auto value = [first, second, t1, t2, cfg](double p) {
        return second.cdf(t2.inverse(t1.forward(first.quantile(p))), cfg);
    };
    try {
        value(cfg.endpoint_eps);
        value(1.0 - cfg.endpoint_eps);
    } catch (const DomainError& e) {
        throw SupportMismatch(std::string("transformed pair: ") + e.what());
    }
    auto density = [value, cfg](double p) {
        const double h = std::min({cfg.fd_step, p, 1.0 - p}) / 2.0;
        auto central = [&](double step) { return (value(p + step) - value(p - step)) / (2.0 * step); };
        return (4.0 * central(h / 2.0) - central(h)) / 3.0;
    };
    return ComposedModel(ComposedModel::Parts{
        value, density, std::nullopt, 0.0, std::make_pair(first, second),
        "transformed(" + t1.label() + "," + t2.label() + ")"});
}

IgfValue transformed_igf(const QuantileModel& first, const QuantileModel& second,
                         const MonotoneTransform& t1, const MonotoneTransform& t2, Alpha alpha,
                         const EvalConfig& cfg)
{
    const ComposedModel model = transformed_composition(first, second, t1, t2, cfg);
    return igf(model, alpha, cfg, Route::Quadrature);
}

namespace {

template <class Eval>
ConstancyReport constancy(const std::vector<double>& grid, Eval eval)
{
    if (grid.empty()) throw ParamError("constancy check needs a nonempty grid");
    for (double u : grid)
        if (!(u > 0.0 && u < 1.0)) throw DomainError("constancy grid must lie inside (0, 1)");
    ConstancyReport report;
    report.reference = eval(grid.front());
    for (double u : grid) report.max_dev = std::max(report.max_dev, std::abs(eval(u) - report.reference));
    report.is_constant = report.max_dev <= 1e-6 * std::abs(report.reference);
    return report;
}

}  // namespace

ConstancyReport residual_constancy_check(const ComposedModel& model, Alpha alpha,
                                         const std::vector<double>& grid, const EvalConfig& cfg)
{
    return constancy(grid, [&](double u) {
        return igf_residual(model, alpha, u, cfg, Route::Quadrature).value;
    });
}

ConstancyReport past_constancy_check(const ComposedModel& model, Alpha alpha,
                                     const std::vector<double>& grid, const EvalConfig& cfg)
{
    return constancy(grid, [&](double u) {
        return igf_past(model, alpha, u, cfg, Route::Quadrature).value;
    });
}

}  // namespace qigf
