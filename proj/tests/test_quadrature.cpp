#include <doctest.h>

#include <cmath>
#include <limits>

#include "qigf/errors.hpp"
#include "qigf/quadrature.hpp"

using namespace qigf;

TEST_CASE("polynomials integrate exactly")
{
    const auto r = integrate([](double x) { return x * x; }, 0.0, 1.0, {});
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(r.abs_error >= 0.0);
}

TEST_CASE("endpoint singularity converges")
{
    const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-10, 1e-12, 500});
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("oscillating integrand")
{
    const auto r = integrate([](double x) { return std::sin(20.0 * x); }, 0.0, M_PI, {});
    CHECK(r.value == doctest::Approx((1.0 - std::cos(20.0 * M_PI)) / 20.0).epsilon(1e-10));
}

TEST_CASE("non-finite integrand raises")
{
    auto nan = [](double x) { return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; };
    CHECK_THROWS_AS(integrate(nan, 0.0, 1.0, {}), DivergentIntegral);
}

TEST_CASE("nonintegrable singularity raises")
{
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, {1e-12, 1e-14, 50}),
                    DivergentIntegral);
}
