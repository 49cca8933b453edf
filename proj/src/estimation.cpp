#include "qigf/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "qigf/errors.hpp"

namespace qigf {

namespace {

constexpr double kClampSlack = 1e-12;
constexpr double kTieStep = 1e-12;

}  // namespace

OrderedSample OrderedSample::from_raw(std::vector<double> raw, SampleSource source,
                                      std::optional<std::uint64_t> seed)
{
    if (raw.size() < 2) throw TooSmall("a sample needs at least two values");
    for (double& v : raw) {
        if (!(v >= -kClampSlack && v <= 1.0 + kClampSlack)) {
            std::ostringstream os;
            os << "sample value " << v << " outside [0, 1]";
            throw DomainError(os.str());
        }
        v = std::clamp(v, 0.0, 1.0);
    }
    std::sort(raw.begin(), raw.end());

    for (std::size_t i = 1; i < raw.size(); ++i)
        if (raw[i] <= raw[i - 1]) raw[i] = raw[i - 1] + kTieStep;
    // A tie run at the top may have been pushed past 1; walk it back down.
    if (raw.back() > 1.0) {
        raw.back() = 1.0;
        for (std::size_t i = raw.size() - 1; i-- > 0;)
            if (raw[i] >= raw[i + 1]) raw[i] = raw[i + 1] - kTieStep;
    }
    return OrderedSample(std::move(raw), source, seed);
}

double OrderedSample::order_stat(std::size_t r) const
{
    if (r > z_.size()) throw DomainError("order statistic index out of range");
    return r == 0 ? 0.0 : z_[r - 1];
}

OrderedSample order_sample(std::vector<double> raw) { return OrderedSample::from_raw(std::move(raw)); }

namespace {

/// Index r of the cell ((r-1)/n, r/n] holding u > 0.
std::size_t cell_index(std::size_t n, double u)
{
    const double nu = static_cast<double>(n) * u;
    const auto r = static_cast<std::size_t>(std::ceil(nu));
    return std::clamp<std::size_t>(r, 1, n);
}

/// [n (Z(j) - Z(j-1))]^(1 - alpha).
double cell_term(const OrderedSample& s, std::size_t j, double alpha)
{
    const double n = static_cast<double>(s.size());
    const double spacing = s.order_stat(j) - s.order_stat(j - 1);
    if (spacing <= 0.0 && alpha > 1.0) {
        std::ostringstream os;
        os << "zero spacing at order statistic " << j
           << " makes the estimate infinite for alpha > 1; ties should be separated when the sample is ordered";
        throw ZeroSpacing(os.str());
    }
    return std::pow(n * spacing, 1.0 - alpha);
}

/// Sum of cell terms for j in [first, last].
double sum_terms(const OrderedSample& s, std::size_t first, std::size_t last, double alpha)
{
    double sum = 0.0;
    for (std::size_t j = first; j <= last; ++j) sum += cell_term(s, j, alpha);
    return sum;
}

EstimateReport make_report(const OrderedSample& s, double alpha, std::optional<double> u,
                           double estimate, EstimateKind kind)
{
    return {alpha, u, estimate, kind, s.size(), s.seed(), s.source()};
}

}  // namespace

double parzen_Q3(const OrderedSample& sample, double u)
{
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("Parzen quantile needs 0 <= u <= 1");
    if (u == 0.0) return 0.0;
    const std::size_t n = sample.size();
    const std::size_t r = cell_index(n, u);
    const double nu = static_cast<double>(n) * u;
    const double rd = static_cast<double>(r);
    return (rd - nu) * sample.order_stat(r - 1) + (nu - (rd - 1.0)) * sample.order_stat(r);
}

double parzen_q3(const OrderedSample& sample, double u)
{
    if (!(u > 0.0 && u <= 1.0)) throw DomainError("Parzen quantile density needs 0 < u <= 1");
    const std::size_t n = sample.size();
    const std::size_t r = cell_index(n, u);
    return static_cast<double>(n) * (sample.order_stat(r) - sample.order_stat(r - 1));
}

EstimateReport estimate_igf(const OrderedSample& sample, Alpha alpha)
{
    const double a = alpha.value();
    if (alpha.is_one()) return make_report(sample, a, std::nullopt, 1.0, EstimateKind::IGF);
    const double n = static_cast<double>(sample.size());
    const double value = sum_terms(sample, 1, sample.size(), a) / n;
    return make_report(sample, a, std::nullopt, value, EstimateKind::IGF);
}

EstimateReport estimate_residual(const OrderedSample& sample, Alpha alpha, double u)
{
    if (!(u >= 0.0 && u < 1.0)) throw DomainError("residual estimate needs 0 <= u < 1");
    const double a = alpha.value();
    if (u == 0.0) {
        EstimateReport r = estimate_igf(sample, alpha);
        r.kind = EstimateKind::Residual;
        r.u = 0.0;
        return r;
    }
    if (alpha.is_one()) return make_report(sample, a, u, 1.0, EstimateKind::Residual);

    const std::size_t n = sample.size();
    const double nd = static_cast<double>(n);
    const std::size_t r = cell_index(n, u);
    const double partial = (static_cast<double>(r) - nd * u) / nd * cell_term(sample, r, a);
    const double tail = r < n ? sum_terms(sample, r + 1, n, a) : 0.0;
    const double integral = partial + tail / nd;
    const double prefactor = std::pow(1.0 - parzen_Q3(sample, u), a - 1.0) / std::pow(1.0 - u, a);
    return make_report(sample, a, u, prefactor * integral, EstimateKind::Residual);
}

EstimateReport estimate_past(const OrderedSample& sample, Alpha alpha, double u)
{
    if (!(u > 0.0 && u <= 1.0)) throw DomainError("past estimate needs 0 < u <= 1");
    const double a = alpha.value();
    if (u == 1.0) {
        EstimateReport r = estimate_igf(sample, alpha);
        r.kind = EstimateKind::Past;
        r.u = 1.0;
        return r;
    }
    if (alpha.is_one()) return make_report(sample, a, u, 1.0, EstimateKind::Past);

    const std::size_t n = sample.size();
    const double nd = static_cast<double>(n);
    const std::size_t r = cell_index(n, u);
    const double head = r > 1 ? sum_terms(sample, 1, r - 1, a) : 0.0;
    const double partial = (nd * u - static_cast<double>(r - 1)) / nd * cell_term(sample, r, a);
    const double integral = head / nd + partial;
    const double level = parzen_Q3(sample, u);
    if (!(level > 0.0)) throw DomainError("Parzen quantile estimate is zero at u");
    const double prefactor = std::pow(level, a - 1.0) / std::pow(u, a);
    return make_report(sample, a, u, prefactor * integral, EstimateKind::Past);
}

double estimate_kl(const OrderedSample& sample)
{
    const std::size_t n = sample.size();
    const double nd = static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const double spacing = sample.order_stat(j) - sample.order_stat(j - 1);
        if (!(spacing > 0.0)) throw ZeroSpacing("zero spacing makes the K-L estimate infinite");
        sum += std::log(nd * spacing);
    }
    return -sum / nd;
}

DivergencePanel estimate_divergences(const OrderedSample& sample,
                                     const std::vector<double>& renyi_orders)
{
    std::map<double, double> at_orders;
    for (double order : renyi_orders) {
        if (order == 1.0) throw ParamError("Renyi order 1 is reported as the K-L divergence");
        at_orders[order] = estimate_igf(sample, Alpha(order)).estimate;
    }
    const double half = estimate_igf(sample, Alpha(0.5)).estimate;
    return assemble_panel(estimate_kl(sample), half, at_orders);
}

std::vector<double> uniform_stream(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 engine(seed);
    std::vector<double> out(n);
    for (double& u : out) u = (static_cast<double>(engine() >> 11) + 0.5) * 0x1p-53;
    return out;
}

OrderedSample sample_from_Q3(const ComposedModel& model, std::size_t n, std::uint64_t seed)
{
    if (n < 2) throw TooSmall("a sample needs at least two values");
    std::vector<double> z = uniform_stream(n, seed);
    for (double& v : z) v = model.distortion(v);
    return OrderedSample::from_raw(std::move(z), SampleSource::ModelSampled, seed);
}

OrderedSample empirical_Q3_sample(std::span<const double> first, std::span<const double> second)
{
    if (first.size() < 2) throw TooSmall("first sample needs at least two values");
    if (second.empty()) throw TooSmall("second sample is empty");
    std::vector<double> sorted(second.begin(), second.end());
    std::sort(sorted.begin(), sorted.end());
    const double denom = static_cast<double>(sorted.size()) + 1.0;
    std::vector<double> z;
    z.reserve(first.size());
    for (double x : first) {
        const auto count = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
        z.push_back(static_cast<double>(std::max<std::ptrdiff_t>(1, count)) / denom);
    }
    return OrderedSample::from_raw(std::move(z), SampleSource::RawSamplesEmpirical);
}

}  // namespace qigf
