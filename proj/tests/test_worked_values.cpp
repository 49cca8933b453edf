#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qigf/errors.hpp"
#include "qigf/estimation.hpp"
#include "qigf/igf.hpp"
#include "qigf/semiparam.hpp"

using namespace qigf;

TEST_CASE("quantile densities and hazards")
{
    CHECK(eval_q(QuantileModel(Exponential{2.0}), 0.5) == doctest::Approx(4.0));
    CHECK(eval_q(QuantileModel(Power{1.0, 1.0}), 0.3) == doctest::Approx(1.0));
    CHECK(eval_q(QuantileModel(Govindarajulu{1.0, 1.0}), 0.25) == doctest::Approx(1.5));
    CHECK(invert_Q(QuantileModel(Exponential{2.0}), 2.0 * std::log(2.0)) == doctest::Approx(0.5));
    CHECK(invert_Q(QuantileModel(Power{74.13, 1.0 / 0.17}), 74.13) == 1.0);
    CHECK(hazard_quantile(QuantileModel(Exponential{2.0}), 0.5) == doctest::Approx(0.5));
    CHECK(reversed_hazard_quantile(QuantileModel(Exponential{1.0}), 0.5) == doctest::Approx(1.0));
    for (double p : {0.1, 0.6}) CHECK(hazard_quantile(ComposedModel::identity(), p) == doctest::Approx(1.0 / (1.0 - p)));
}

TEST_CASE("identity composition measures")
{
    const auto id = ComposedModel::identity();
    CHECK(std::abs(kl_divergence(id)) < 1e-15);
    CHECK(std::abs(generalized_kl(id, 2)) < 1e-15);
    const auto p = divergence_panel(id, {0.25, 2.0});
    CHECK(p.hellinger == 0.0);
    CHECK(p.bhattacharyya == 0.0);
    for (const auto& [order, v] : p.renyi) CHECK(v == 0.0);
    const auto ph1 = distortion_to_composed(ProportionalHazards{1.0});
    for (double q : {0.2, 0.7}) CHECK(ph1.distortion_density(q) == 1.0);
}

TEST_CASE("PH panel values")
{
    const auto p = divergence_panel(distortion_to_composed(ProportionalHazards{2.0}), {});
    CHECK(p.hellinger == doctest::Approx(0.057191).epsilon(1e-5));
    CHECK(p.bhattacharyya == doctest::Approx(0.058892).epsilon(1e-5));
    CHECK(kl_divergence(distortion_to_composed(ProportionalHazards{2.0})) == doctest::Approx(0.306853).epsilon(1e-6));
}

TEST_CASE("second K-L moment of PH against the midpoint oracle")
{
    const double riemann =
        oracle::midpoint([](double p) { return std::pow(std::log(2.0 * (1.0 - p)), 2); }, 0.0, 1.0, 1000000);
    CHECK(generalized_kl(distortion_to_composed(ProportionalHazards{2.0}), 2) == doctest::Approx(riemann).epsilon(1e-5));
}

TEST_CASE("bounds at simple orders")
{
    const auto e = compose(QuantileModel(Exponential{2.0}), QuantileModel(Exponential{1.0}));
    const auto one = igf_bounds(e, Alpha(1.0));
    CHECK(one.lower == 0.0);
    CHECK(one.upper == 1.0);
    CHECK(igf_bounds(e, Alpha(0.5)).lower == 0.0);
    CHECK(igf_bounds(e, Alpha(1.5)).lower == doctest::Approx(0.5 * 0.306853).epsilon(1e-5));
    CHECK(igf(e, Alpha(1.5)).value == doctest::Approx(std::pow(2.0, -0.5) / 0.5));
}

TEST_CASE("dynamic forms near their limits")
{
    const auto e = compose_numeric(QuantileModel(Exponential{2.0}), QuantileModel(Exponential{1.0}));
    const auto ph = distortion_to_composed(ProportionalHazards{2.0});
    for (const auto* m : {&e, &ph}) {
        const double i = igf(*m, Alpha(0.6)).value;
        CHECK(std::abs(igf_residual(*m, Alpha(0.6), 1e-6, {}, Route::Quadrature).value - i) <= 1e-4);
        CHECK(std::abs(igf_past(*m, Alpha(0.6), 1.0 - 1e-6, {}, Route::Quadrature).value - i) <= 1e-4);
    }
}

TEST_CASE("pareto II past form depends on u")
{
    const auto m = compose(QuantileModel(ParetoII{1.0}), QuantileModel(ParetoII{2.0}));
    std::vector<double> grid;
    for (int k = 1; k <= 9; ++k) grid.push_back(k / 10.0);
    CHECK_FALSE(past_constancy_check(m, Alpha(0.5), grid).is_constant);
    CHECK(past_constancy_check(ComposedModel::identity(), Alpha(0.5), grid).is_constant);
    CHECK(residual_constancy_check(ComposedModel::identity(), Alpha(0.5), grid).reference == doctest::Approx(1.0));
}

TEST_CASE("transforms that cancel")
{
    const auto log = MonotoneTransform::log();
    const auto v = transformed_igf(QuantileModel(ParetoI{2.0}), QuantileModel(ParetoI{1.0}), log, log, Alpha(0.5));
    CHECK(v.value == doctest::Approx(0.942809).epsilon(1e-6));
    const auto twice = MonotoneTransform::affine(2.0, 0.0);
    const auto w = transformed_igf(QuantileModel(Exponential{2.0}), QuantileModel(Exponential{1.0}), twice, twice,
                                   Alpha(0.5));
    CHECK(w.value == doctest::Approx(0.942809).epsilon(1e-6));
}

TEST_CASE("sample ordering examples")
{
    const auto s = order_sample({0.5, 0.5, 0.9});
    CHECK(s.values()[0] == 0.5);
    CHECK(s.values()[1] > 0.5);
    CHECK(s.values()[1] < 0.9);
    const auto id = sample_from_Q3(ComposedModel::identity(), 1000, 1);
    for (std::size_t i = 0; i < id.size(); ++i) {
        CHECK((id.values()[i] >= 0.0 && id.values()[i] <= 1.0));
        if (i) CHECK(id.values()[i] > id.values()[i - 1]);
    }
}

TEST_CASE("two-sample mode with equal laws")
{
    // A much larger second sample keeps Z nearly tie free, so the spacing
    // estimate settles at Gamma(2 - alpha).
    const auto x1 = uniform_stream(5000, 1);
    const auto x2 = uniform_stream(2000000, 2);
    const auto z = empirical_Q3_sample(x1, x2);
    CHECK(std::abs(estimate_igf(z, Alpha(0.5)).estimate - std::tgamma(1.5)) < 0.02);
}
