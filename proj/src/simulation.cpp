#include "qigf/simulation.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "qigf/errors.hpp"
#include "qigf/estimation.hpp"
#include "qigf/igf.hpp"
#include "qigf/quadrature.hpp"

namespace qigf {

namespace {

constexpr unsigned kMaxAttempts = 64;

std::vector<std::optional<double>> targets_of(const SimScenario& s)
{
    if (s.target == SimTarget::IGF) return {std::nullopt};
    return {s.u_list.begin(), s.u_list.end()};
}

double estimate_one(const OrderedSample& sample, const SimScenario& s, std::optional<double> u)
{
    const Alpha a(s.alpha);
    switch (s.target) {
    case SimTarget::IGF: return estimate_igf(sample, a).estimate;
    case SimTarget::Residual: return estimate_residual(sample, a, *u).estimate;
    case SimTarget::Past: return estimate_past(sample, a, *u).estimate;
    }
    return 0.0;
}

double printed_truth(const SimScenario& s, std::optional<double> u)
{
    const ComposedModel& m = s.model;
    const auto& marg = m.marginals();
    if (m.closed_form() != ClosedForm::GovindarajuluRecipExp || !marg ||
        !(marg->first == QuantileModel(Govindarajulu{1.0, 1.0})))
        throw ParamError("printed table truth needs govindarajulu:1,1 against recipexp");
    const double lambda = m.shape();
    const double a = s.alpha;
    const double e = 1.0 - a;
    auto g = [lambda, e](double p) {
        const double w = p * (2.0 - p);
        return std::pow(2.0 * lambda * (1.0 - p), e) * std::pow(w, 2.0 * e) *
               std::exp(-lambda * e / w);
    };
    const EvalConfig& cfg = s.truth_cfg;
    const QuadOptions opts{cfg.quad_rel_tol, cfg.quad_abs_tol, cfg.max_subdivisions};
    const double lo = cfg.endpoint_eps;
    const double hi = 1.0 - cfg.endpoint_eps;
    switch (s.target) {
    case SimTarget::IGF: return integrate(g, lo, hi, opts).value;
    case SimTarget::Residual: {
        const double pre = std::pow(1.0 - m.distortion(*u), a - 1.0) / std::pow(1.0 - *u, a);
        return pre * integrate(g, std::max(lo, *u), hi, opts).value;
    }
    case SimTarget::Past: {
        const double pre = std::pow(m.distortion(*u), a - 1.0) / std::pow(*u, a);
        return pre * integrate(g, lo, std::min(hi, *u), opts).value;
    }
    }
    return 0.0;
}

}  // namespace

void SimScenario::validate() const
{
    Alpha{alpha};
    truth_cfg.validate();
    if (reps < 1) throw ParamError("simulation needs reps >= 1");
    if (n_list.empty()) throw ParamError("simulation needs at least one sample size");
    for (std::size_t n : n_list)
        if (n < 2) throw ParamError("simulation sample sizes must be >= 2");
    if (target != SimTarget::IGF && u_list.empty())
        throw ParamError("residual and past targets need a nonempty u list");
    for (double u : u_list)
        if (!(u >= 0.0 && u <= 1.0)) throw DomainError("simulation u values must lie in [0, 1]");
    if (jobs < 1) throw ParamError("jobs must be >= 1");
}

std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t rep, unsigned attempt)
{
    return base_seed + rep + std::uint64_t{attempt} * 0x9E3779B97F4A7C15ULL;
}

double simulation_truth(const SimScenario& s, std::optional<double> u)
{
    if (s.truth_source == TruthSource::PrintedTableIntegrand) return printed_truth(s, u);
    const Alpha a(s.alpha);
    switch (s.target) {
    case SimTarget::IGF: return igf(s.model, a, s.truth_cfg).value;
    case SimTarget::Residual: return igf_residual(s.model, a, *u, s.truth_cfg).value;
    case SimTarget::Past: return igf_past(s.model, a, *u, s.truth_cfg).value;
    }
    return 0.0;
}

SimResult run_simulation(const SimScenario& s)
{
    s.validate();
    const auto targets = targets_of(s);
    const std::size_t t_count = targets.size();
    std::vector<double> truths;
    for (const auto& u : targets) truths.push_back(simulation_truth(s, u));

    SimResult result;
    for (std::size_t n : s.n_list) {
        std::vector<double> est(s.reps * t_count);
        std::vector<unsigned> redraws(s.reps, 0);
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;

        auto worker = [&] {
            for (std::size_t rep = next++; rep < s.reps; rep = next++) {
                try {
                    for (unsigned attempt = 0;; ++attempt) {
                        try {
                            const auto sample =
                                sample_from_Q3(s.model, n, replication_seed(s.base_seed, rep, attempt));
                            for (std::size_t t = 0; t < t_count; ++t)
                                est[rep * t_count + t] = estimate_one(sample, s, targets[t]);
                            break;
                        } catch (const ZeroSpacing&) {
                            if (attempt + 1 >= kMaxAttempts) throw;
                            ++redraws[rep];
                        }
                    }
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = s.reps;
                }
            }
        };

        const unsigned jobs = std::min<std::size_t>(s.jobs, s.reps);
        if (jobs <= 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        }
        if (failure) std::rethrow_exception(failure);

        for (unsigned r : redraws) result.redraws += r;
        for (std::size_t t = 0; t < t_count; ++t) {
            double sum = 0.0;
            double sq = 0.0;
            for (std::size_t rep = 0; rep < s.reps; ++rep) {
                const double v = est[rep * t_count + t];
                sum += v;
                sq += (v - truths[t]) * (v - truths[t]);
            }
            SimRow row;
            row.n = n;
            row.u = targets[t];
            row.truth = truths[t];
            row.mean_estimate = sum / static_cast<double>(s.reps);
            row.bias = row.mean_estimate - row.truth;
            row.mse = sq / static_cast<double>(s.reps);
            result.rows.push_back(row);
        }
    }
    return result;
}

ComposedModel table_model(double lambda)
{
    return compose(QuantileModel(Govindarajulu{1.0, 1.0}), QuantileModel(ReciprocalExponential{lambda}));
}

void write_sim_csv(std::ostream& out, const SimResult& result)
{
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "n,u,truth,mean_estimate,bias,mse\n";
    for (const SimRow& r : result.rows) {
        out << r.n << ',' << (r.u ? num(*r.u) : std::string()) << ',' << num(r.truth) << ','
            << num(r.mean_estimate) << ',' << num(r.bias) << ',' << num(r.mse) << '\n';
    }
}

}  // namespace qigf
