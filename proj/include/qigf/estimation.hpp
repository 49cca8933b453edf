#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qigf/composed_model.hpp"
#include "qigf/igf.hpp"

namespace qigf {

enum class SampleSource { ModelSampled, RawSamplesEmpirical, FileSample };

/// Sorted sample Z(1) < ... < Z(n) in [0, 1] from the distortion Q3, with the
/// convention Z(0) = 0.
class OrderedSample {
public:
    /// Sort, clamp values within 1e-12 of [0, 1], and separate ties with a
    /// deterministic 1e-12 ladder. Throws DomainError for values further out
    /// and TooSmall when fewer than two values are given.
    static OrderedSample from_raw(std::vector<double> raw,
                                  SampleSource source = SampleSource::FileSample,
                                  std::optional<std::uint64_t> seed = std::nullopt);

    std::size_t size() const noexcept { return z_.size(); }
    /// Z(r) for r = 0..n, with Z(0) = 0.
    double order_stat(std::size_t r) const;
    std::span<const double> values() const noexcept { return z_; }
    SampleSource source() const noexcept { return source_; }
    std::optional<std::uint64_t> seed() const noexcept { return seed_; }

private:
    OrderedSample(std::vector<double> z, SampleSource source, std::optional<std::uint64_t> seed)
        : z_(std::move(z)), source_(source), seed_(seed)
    {
    }

    std::vector<double> z_;
    SampleSource source_;
    std::optional<std::uint64_t> seed_;
};

OrderedSample order_sample(std::vector<double> raw);

enum class EstimateKind { IGF, Residual, Past };

struct EstimateReport {
    double alpha = 1.0;
    std::optional<double> u;
    double estimate = 1.0;
    EstimateKind kind = EstimateKind::IGF;
    std::size_t n = 0;
    std::optional<std::uint64_t> seed;
    SampleSource source = SampleSource::FileSample;
};

/// Parzen's piecewise-linear quantile estimate of Q3 at u in [0, 1].
double parzen_Q3(const OrderedSample& sample, double u);

/// Cell slope n (Z(r) - Z(r-1)) for u in ((r-1)/n, r/n], 0 < u <= 1.
double parzen_q3(const OrderedSample& sample, double u);

/// Spacing estimate (1/n) sum [n (Z(j) - Z(j-1))]^(1 - alpha).
EstimateReport estimate_igf(const OrderedSample& sample, Alpha alpha);

/// Plug-in R*_alpha(u): Parzen prefactor times the exact integral of the
/// piecewise-constant q3 estimate over [u, 1], first cell partially.
EstimateReport estimate_residual(const OrderedSample& sample, Alpha alpha, double u);

/// Plug-in J*_alpha(u) over [0, u], last cell partially.
EstimateReport estimate_past(const OrderedSample& sample, Alpha alpha, double u);

/// Plug-in K-L divergence, -(1/n) sum log(n (Z(j) - Z(j-1))).
double estimate_kl(const OrderedSample& sample);

/// K-L, Hellinger, Bhattacharyya and Renyi estimates from one sample; the
/// Hellinger and Bhattacharyya entries share the same I*_{1/2} estimate.
DivergencePanel estimate_divergences(const OrderedSample& sample,
                                     const std::vector<double>& renyi_orders);

/// The uniform stream behind sample_from_Q3: std::mt19937_64 seeded with
/// `seed`, each 64-bit draw k mapped to ((k >> 11) + 0.5) * 2^-53.
std::vector<double> uniform_stream(std::size_t n, std::uint64_t seed);

/// Z_i = Q3(U_i) by inverse transform.
OrderedSample sample_from_Q3(const ComposedModel& model, std::size_t n, std::uint64_t seed);

/// Z_i = max(1, #{x2 <= x1_i}) / (n2 + 1), the empirical cdf of the second
/// sample evaluated at the first.
OrderedSample empirical_Q3_sample(std::span<const double> first, std::span<const double> second);

}  // namespace qigf
