#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qigf/composed_model.hpp"
#include "qigf/igf.hpp"

namespace qigf {

/// A continuous distribution G on [0, 1] with density g, used to transform a
/// baseline survival function or cdf.
class UnitDistribution {
public:
    /// G(x) = x^theta.
    static UnitDistribution power(double theta);
    /// G(x) = x / (theta + x (1 - theta)), the proportional-odds kernel.
    static UnitDistribution odds(double theta);
    /// Monotone cubic (Fritsch-Carlson) interpolation through (x, G(x)) with
    /// x running from 0 to 1 and G from 0 to 1, both strictly increasing.
    static UnitDistribution table(std::vector<double> x, std::vector<double> g);

    double cdf(double x) const { return cdf_(x); }
    double density(double x) const { return density_(x); }
    const std::string& label() const noexcept { return label_; }

private:
    UnitDistribution(std::function<double(double)> cdf, std::function<double(double)> density,
                     std::string label);

    std::function<double(double)> cdf_;
    std::function<double(double)> density_;
    std::string label_;
};

struct ProportionalHazards {
    double theta;
};
/// Survival odds ratio r, 0 < r < 1.
struct ProportionalOddsSurvival {
    double r;
};
/// Cdf-scale proportional odds with Q3(u) = u / (theta + u (1 - theta)).
struct ProportionalOddsCdf {
    double theta;
};
/// Q3(u) = u^c1.
struct ReversedProportionalHazards {
    double c1;
};
/// Survival transform: survival2 = G(survival1), Q3(p) = 1 - G(1 - p).
struct GTransformSurvival {
    UnitDistribution g;
};
/// Cdf transform: F2 = G(F1), Q3(p) = G(p).
struct GTransformCdf {
    UnitDistribution g;
};

using DistortionSpec = std::variant<ProportionalHazards, ProportionalOddsSurvival,
                                    ProportionalOddsCdf, ReversedProportionalHazards,
                                    GTransformSurvival, GTransformCdf>;

/// Build the distortion implied by a semiparametric relation between the two
/// lifetimes. Throws ParamError on invalid parameters.
ComposedModel distortion_to_composed(const DistortionSpec& spec);

/// A nondecreasing invertible map applied to a lifetime.
class MonotoneTransform {
public:
    static MonotoneTransform identity();
    static MonotoneTransform log();
    static MonotoneTransform exp();
    /// x -> scale * x + shift, scale > 0.
    static MonotoneTransform affine(double scale, double shift);
    /// x -> x^k on x >= 0, k > 0.
    static MonotoneTransform power(double k);
    /// Arbitrary monotone pair supplied by the caller.
    static MonotoneTransform custom(std::function<double(double)> forward,
                                    std::function<double(double)> inverse, std::string label);

    double forward(double x) const { return forward_(x); }
    double inverse(double y) const { return inverse_(y); }
    const std::string& label() const noexcept { return label_; }

private:
    MonotoneTransform(std::function<double(double)> forward, std::function<double(double)> inverse,
                      std::string label);

    std::function<double(double)> forward_;
    std::function<double(double)> inverse_;
    std::string label_;
};

/// Distortion of the pair (T1(X1), T2(X2)): p -> F2(T2^{-1}(T1(Q1(p)))), with
/// density by Richardson-extrapolated central differences.
ComposedModel transformed_composition(const QuantileModel& first, const QuantileModel& second,
                                      const MonotoneTransform& t1, const MonotoneTransform& t2,
                                      const EvalConfig& cfg = {});

/// I*_alpha of the transformed pair by quadrature.
IgfValue transformed_igf(const QuantileModel& first, const QuantileModel& second,
                         const MonotoneTransform& t1, const MonotoneTransform& t2, Alpha alpha,
                         const EvalConfig& cfg = {});

struct ConstancyReport {
    bool is_constant = false;
    /// max over the grid of |value(u) - value(grid[0])|.
    double max_dev = 0.0;
    double reference = 0.0;
};

/// Evaluate R*_alpha on the grid by quadrature; constant when the deviation
/// is within 1e-6 of the first value (relative).
ConstancyReport residual_constancy_check(const ComposedModel& model, Alpha alpha,
                                         const std::vector<double>& grid,
                                         const EvalConfig& cfg = {});

/// As residual_constancy_check, for J*_alpha.
ConstancyReport past_constancy_check(const ComposedModel& model, Alpha alpha,
                                     const std::vector<double>& grid, const EvalConfig& cfg = {});

}  // namespace qigf
