#include <doctest.h>

#include <cmath>
#include <vector>

#include "qigf/errors.hpp"
#include "qigf/igf.hpp"
#include "qigf/semiparam.hpp"

using namespace qigf;

namespace {

std::vector<double> grid_05_95()
{
    std::vector<double> g;
    for (int k = 1; k <= 19; ++k) g.push_back(k / 20.0);
    return g;
}

}  // namespace

TEST_CASE("PH distortion matches the G-power survival transform bitwise")
{
    const auto ph = distortion_to_composed(ProportionalHazards{2.0});
    const auto gs = distortion_to_composed(GTransformSurvival{UnitDistribution::power(2.0)});
    for (double p : {0.1, 0.37, 0.8}) {
        CHECK(ph.distortion(p) == gs.distortion(p));
        CHECK(ph.distortion_density(p) == gs.distortion_density(p));
    }
    CHECK(ph.label() == "ph:2");
}

TEST_CASE("PH closed form")
{
    const auto ph = distortion_to_composed(ProportionalHazards{2.0});
    CHECK(igf(ph, Alpha(0.5)).value == doctest::Approx(std::sqrt(2.0) / 1.5).epsilon(1e-14));
    CHECK_THROWS_AS(distortion_to_composed(ProportionalHazards{0.0}), ParamError);
    CHECK_THROWS_AS(distortion_to_composed(ProportionalOddsSurvival{1.0}), ParamError);
}

TEST_CASE("odds G is the PO cdf distortion")
{
    const auto a = distortion_to_composed(GTransformCdf{UnitDistribution::odds(0.5)});
    const auto b = distortion_to_composed(ProportionalOddsCdf{0.5});
    for (double p : {0.2, 0.6}) {
        CHECK(a.distortion(p) == doctest::Approx(b.distortion(p)));
        CHECK(a.distortion_density(p) == doctest::Approx(b.distortion_density(p)));
    }
}

TEST_CASE("tabulated G")
{
    std::vector<double> x, g;
    for (int k = 0; k <= 40; ++k) {
        x.push_back(k / 40.0);
        g.push_back(std::pow(k / 40.0, 2.0));
    }
    const auto t = UnitDistribution::table(x, g);
    CHECK(t.cdf(0.0) == 0.0);
    CHECK(t.cdf(1.0) == 1.0);
    CHECK(t.cdf(0.33) == doctest::Approx(0.33 * 0.33).epsilon(1e-3));
    CHECK(t.density(0.5) == doctest::Approx(1.0).epsilon(1e-2));
    double prev = 0.0;
    for (int k = 1; k <= 400; ++k) {
        const double v = t.cdf(k / 400.0);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK_THROWS_AS(UnitDistribution::table({0.0, 0.5, 1.0}, {0.0, 0.6, 0.5}), ParamError);
    CHECK_THROWS_AS(UnitDistribution::table({0.1, 1.0}, {0.0, 1.0}), ParamError);
}

TEST_CASE("constancy characterizations")
{
    const auto grid = grid_05_95();
    const auto ph = residual_constancy_check(distortion_to_composed(ProportionalHazards{2.0}), Alpha(0.5), grid);
    CHECK(ph.is_constant);
    CHECK(ph.max_dev <= 1e-6);
    const auto rph =
        past_constancy_check(distortion_to_composed(ReversedProportionalHazards{2.0}), Alpha(0.7), grid);
    CHECK(rph.is_constant);
    const auto g = compose(QuantileModel(Govindarajulu{1.0, 1.0}), QuantileModel(ReciprocalExponential{0.7}));
    const auto not_const = residual_constancy_check(g, Alpha(0.3), grid);
    CHECK_FALSE(not_const.is_constant);
    CHECK(not_const.max_dev > 1e-3);
    CHECK_THROWS_AS(residual_constancy_check(g, Alpha(0.3), {0.0, 0.5}), DomainError);
    CHECK_THROWS_AS(residual_constancy_check(g, Alpha(0.3), {}), ParamError);
}

TEST_CASE("monotone transforms")
{
    const auto l = MonotoneTransform::log();
    CHECK(l.inverse(l.forward(3.0)) == doctest::Approx(3.0));
    CHECK_THROWS_AS(l.forward(-1.0), DomainError);
    CHECK_THROWS_AS(MonotoneTransform::affine(-1.0, 0.0), ParamError);
    CHECK_THROWS_AS(MonotoneTransform::power(0.0), ParamError);
    const auto p = MonotoneTransform::power(2.0);
    CHECK(p.forward(3.0) == 9.0);
    CHECK(p.inverse(9.0) == doctest::Approx(3.0));
}

TEST_CASE("transformed compositions")
{
    const QuantileModel e2(Exponential{2.0});
    const QuantileModel e1(Exponential{1.0});
    const auto id = MonotoneTransform::identity();
    // Identity transforms leave the distortion unchanged.
    const auto plain = transformed_composition(e2, e1, id, id);
    const auto ref = compose(e2, e1);
    for (double p : {0.1, 0.5, 0.9}) {
        CHECK(plain.distortion(p) == doctest::Approx(ref.distortion(p)).epsilon(1e-12));
        CHECK(plain.distortion_density(p) == doctest::Approx(ref.distortion_density(p)).epsilon(1e-6));
    }
    // Halving X1 ~ exp(2) gives exp(1), the same law as X2.
    const auto halved = transformed_igf(e2, e1, MonotoneTransform::affine(0.5, 0.0), id, Alpha(0.5));
    CHECK(halved.value == doctest::Approx(1.0).epsilon(1e-6));
    // Matching log transforms cancel.
    const auto logs = transformed_igf(e2, e1, MonotoneTransform::log(), MonotoneTransform::log(), Alpha(0.5));
    CHECK(logs.value == doctest::Approx(igf(ref, Alpha(0.5)).value).epsilon(1e-6));
    CHECK_THROWS_AS(transformed_composition(e2, e1, MonotoneTransform::affine(1.0, -100.0), id),
                    SupportMismatch);
}
