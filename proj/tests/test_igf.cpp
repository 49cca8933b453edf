#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qigf/errors.hpp"
#include "qigf/igf.hpp"
#include "qigf/semiparam.hpp"

using namespace qigf;

namespace {

ComposedModel exp_pair(double m1, double m2)
{
    return compose(QuantileModel(Exponential{m1}), QuantileModel(Exponential{m2}));
}

ComposedModel numeric_exp_pair(double m1, double m2)
{
    return compose_numeric(QuantileModel(Exponential{m1}), QuantileModel(Exponential{m2}));
}

}  // namespace

TEST_CASE("alpha validation")
{
    CHECK_THROWS_AS(Alpha{0.0}, ParamError);
    CHECK_THROWS_AS(Alpha{-1.0}, ParamError);
    CHECK_THROWS_AS(Alpha{INFINITY}, ParamError);
    CHECK(Alpha(1.0).is_one());
}

TEST_CASE("exponential pair closed form")
{
    // (lambda1/lambda2)^(1-alpha) lambda2 / (lambda1 + alpha (lambda2 - lambda1)), evaluated directly
    auto direct = [](double l1, double l2, double a) { return std::pow(l1 / l2, 1.0 - a) * l2 / (l1 + a * (l2 - l1)); };
    CHECK(igf(exp_pair(2.0, 1.0), Alpha(0.5)).value == doctest::Approx(0.942809041582).epsilon(1e-12));
    for (double a : {0.25, 0.5, 0.75, 1.5})
        for (auto [l1, l2] : {std::pair{0.7, 1.3}, std::pair{1.0, 1.0}}) {
            CAPTURE(a);
            CHECK(igf(exp_pair(l1, l2), Alpha(a)).value == doctest::Approx(direct(l1, l2, a)).epsilon(1e-12));
            CHECK(igf(numeric_exp_pair(l1, l2), Alpha(a)).value ==
                  doctest::Approx(direct(l1, l2, a)).epsilon(1e-6));
        }
    CHECK_THROWS_AS(igf(exp_pair(2.0, 1.0), Alpha(2.0), {}, Route::ClosedForm), DivergentIntegral);
}

TEST_CASE("alpha one and identity")
{
    CHECK(igf(exp_pair(2.0, 1.0), Alpha(1.0)).value == 1.0);
    CHECK(igf_residual(exp_pair(2.0, 1.0), Alpha(1.0), 0.4).value == 1.0);
    CHECK(igf_past(exp_pair(2.0, 1.0), Alpha(1.0), 0.4).value == 1.0);
    for (double a : {0.3, 0.5, 2.0, 3.0})
        CHECK(igf(ComposedModel::identity(), Alpha(a), {}, Route::Quadrature).value ==
              doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("route control")
{
    const auto numeric = numeric_exp_pair(2.0, 1.0);
    CHECK_THROWS_AS(igf(numeric, Alpha(0.5), {}, Route::ClosedForm), ParamError);
    const auto closed = igf(exp_pair(2.0, 1.0), Alpha(0.5), {}, Route::ClosedForm);
    const auto quad = igf(exp_pair(2.0, 1.0), Alpha(0.5), {}, Route::Quadrature);
    CHECK(closed.method == Method::ClosedForm);
    CHECK(quad.method == Method::Quadrature);
    CHECK(quad.value == doctest::Approx(closed.value).epsilon(1e-9));
}

TEST_CASE("residual and past reduce at the ends")
{
    const auto m = compose(QuantileModel(Govindarajulu{1.0, 1.0}), QuantileModel(ReciprocalExponential{0.7}));
    const double whole = igf(m, Alpha(0.3)).value;
    CHECK(igf_residual(m, Alpha(0.3), 0.0).value == whole);
    CHECK(igf_past(m, Alpha(0.3), 1.0).value == whole);
    CHECK_THROWS_AS(igf_residual(m, Alpha(0.3), 1.0), DomainError);
    CHECK_THROWS_AS(igf_past(m, Alpha(0.3), 0.0), DomainError);
}

TEST_CASE("survival power residual is constant")
{
    const auto m = exp_pair(2.0, 1.0);
    for (double u : {0.1, 0.5, 0.9})
        CHECK(igf_residual(m, Alpha(0.5), u, {}, Route::Quadrature).value ==
              doctest::Approx(0.942809041582).epsilon(1e-8));
}

TEST_CASE("pareto II past closed form")
{
    const auto m = compose(QuantileModel(ParetoII{2.0}), QuantileModel(ParetoII{3.0}));
    const double c = 1.5;
    for (double a : {0.5, 0.7, 1.8})
        for (double u : {0.2, 0.6}) {
            const double k = c * (1.0 - a) + a;
            const double direct = std::pow(1.0 - std::pow(1.0 - u, c), a - 1.0) / std::pow(u, a) *
                                  std::pow(c, 1.0 - a) * (1.0 - std::pow(1.0 - u, k)) / k;
            const double closed = igf_past(m, Alpha(a), u, {}, Route::ClosedForm).value;
            CHECK(closed == doctest::Approx(direct).epsilon(1e-12));
            CHECK(igf_past(m, Alpha(a), u, {}, Route::Quadrature).value == doctest::Approx(closed).epsilon(1e-8));
        }
}

TEST_CASE("proportional odds closed forms against quadrature")
{
    const auto po = distortion_to_composed(ProportionalOddsSurvival{0.5});
    for (double a : {0.75, 1.5, 2.0})
        for (double u : {0.2, 0.7})
            CHECK(igf_residual(po, Alpha(a), u, {}, Route::ClosedForm).value ==
                  doctest::Approx(igf_residual(po, Alpha(a), u, {}, Route::Quadrature).value).epsilon(1e-8));
    CHECK(igf(po, Alpha(0.5), {}, Route::ClosedForm).value ==
          doctest::Approx(igf(po, Alpha(0.5), {}, Route::Quadrature).value).epsilon(1e-8));
    CHECK_THROWS_AS(igf_residual(po, Alpha(0.4), 0.3, {}, Route::ClosedForm), DivergentIntegral);
    CHECK(igf_residual(po, Alpha(0.4), 0.3).method == Method::Quadrature);

    for (double theta : {0.25, 0.5, 4.0}) {
        const auto cdf = distortion_to_composed(ProportionalOddsCdf{theta});
        for (double a : {0.5, 0.7, 1.4})
            for (double u : {0.3, 0.8}) {
                CAPTURE(theta);
                CAPTURE(a);
                CHECK(igf_past(cdf, Alpha(a), u, {}, Route::ClosedForm).value ==
                      doctest::Approx(igf_past(cdf, Alpha(a), u, {}, Route::Quadrature).value).epsilon(1e-8));
            }
    }
}

TEST_CASE("reversed PH past form is constant")
{
    const auto m = distortion_to_composed(ReversedProportionalHazards{2.0});
    const double i = igf(m, Alpha(0.7)).value;
    CHECK(i == doctest::Approx(std::pow(2.0, 0.3) / (0.7 + 2.0 * 0.3)));
    for (double u : {0.1, 0.5, 0.9})
        CHECK(igf_past(m, Alpha(0.7), u, {}, Route::Quadrature).value == doctest::Approx(i).epsilon(1e-8));
}

TEST_CASE("K-L divergence")
{
    const double expected = 2.0 - 1.0 - std::log(2.0);
    CHECK(kl_divergence(exp_pair(2.0, 1.0)) == doctest::Approx(expected).epsilon(1e-8));
    CHECK(kl_by_derivative(exp_pair(2.0, 1.0)) == doctest::Approx(expected).epsilon(1e-8));
    CHECK(kl_by_derivative(numeric_exp_pair(2.0, 1.0)) == doctest::Approx(expected).epsilon(1e-6));
    const auto ph = distortion_to_composed(ProportionalHazards{2.0});
    CHECK(kl_divergence(ph) == doctest::Approx(kl_by_derivative(ph)).epsilon(1e-6));
    CHECK(generalized_kl(ph, 1) == doctest::Approx(kl_divergence(ph)).epsilon(1e-12));
    const double oracle_k2 =
        oracle::smooth_simpson([](double p) { return std::pow(std::log(2.0 * (1.0 - p)), 2); }, 0.0, 1.0, 200000);
    CHECK(generalized_kl(ph, 2) == doctest::Approx(oracle_k2).epsilon(1e-7));
    CHECK_THROWS_AS(generalized_kl(ph, 0), ParamError);
}

TEST_CASE("series expansion converges to I*")
{
    const auto ph = distortion_to_composed(ProportionalHazards{2.0});
    CHECK(log_moment(ph, 0) == 1.0);
    CHECK(igf_series(ph, Alpha(0.5), 22) == doctest::Approx(igf(ph, Alpha(0.5)).value).epsilon(1e-6));
    const auto e = exp_pair(2.0, 1.0);
    CHECK(igf_series(e, Alpha(0.9), 8) == doctest::Approx(igf(e, Alpha(0.9)).value).epsilon(1e-6));
    CHECK(igf_series(ph, Alpha(1.0), 3) == 1.0);
}

TEST_CASE("bounds")
{
    const auto m = exp_pair(0.7, 1.3);
    for (double a : {0.5, 0.9, 1.1, 2.0}) {
        const auto b = igf_bounds(m, Alpha(a));
        CHECK(b.lower <= igf(m, Alpha(a)).value);
    }
    // The upper bound integrand carries (1-p)^(1-alpha) <= 1 for alpha < 1,
    // so it falls below I* there.
    CHECK(igf_bounds(m, Alpha(0.5)).upper < igf(m, Alpha(0.5)).value);
    CHECK(igf_bounds(m, Alpha(2.0)).upper >= igf(m, Alpha(2.0)).value);
}

TEST_CASE("divergence panel identities")
{
    const auto m = exp_pair(2.0, 1.0);
    const auto p = divergence_panel(m, {0.25, 0.5, 1.5});
    const double half = igf(m, Alpha(0.5)).value;
    CHECK(p.hellinger == 1.0 - half);
    CHECK(p.bhattacharyya == -std::log(half));
    CHECK(p.renyi.at(0.5) == std::log(half) / -0.5);
    CHECK(p.renyi.at(0.25) == doctest::Approx(std::log(igf(m, Alpha(0.25)).value) / -0.75));
    CHECK_THROWS_AS(divergence_panel(m, {1.0}), ParamError);
}
