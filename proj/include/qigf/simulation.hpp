#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "qigf/composed_model.hpp"
#include "qigf/eval_config.hpp"

namespace qigf {

enum class SimTarget { IGF, Residual, Past };

/// Where the "true" value each replication is compared against comes from.
/// PrintedTableIntegrand is only defined for Govindarajulu(1, 1) against a
/// reciprocal exponential and uses the integrand the published bias/MSE
/// tables were computed with.
enum class TruthSource { ModelDefinition, PrintedTableIntegrand };

struct SimScenario {
    ComposedModel model = ComposedModel::identity();
    double alpha = 1.0;
    SimTarget target = SimTarget::IGF;
    std::vector<double> u_list;  // ignored for SimTarget::IGF
    std::vector<std::size_t> n_list;
    std::size_t reps = 1;
    std::uint64_t base_seed = 0;
    EvalConfig truth_cfg;
    TruthSource truth_source = TruthSource::ModelDefinition;
    unsigned jobs = 1;

    void validate() const;
};

struct SimRow {
    std::size_t n = 0;
    std::optional<double> u;
    double truth = 0.0;
    double mean_estimate = 0.0;
    double bias = 0.0;
    double mse = 0.0;
};

struct SimResult {
    std::vector<SimRow> rows;
    std::size_t redraws = 0;  // replications re-drawn after a ZeroSpacing error
};

/// Seed used for replication `rep` on its `attempt`-th draw (attempt 0 is
/// base_seed + rep).
std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t rep, unsigned attempt);

/// The true value for one target, per the scenario's truth source.
double simulation_truth(const SimScenario& s, std::optional<double> u);

SimResult run_simulation(const SimScenario& s);

/// Govindarajulu(1, 1) against reciprocal exponential(lambda), the
/// distortion used in the bias/MSE tables.
ComposedModel table_model(double lambda = 0.7);

/// CSV with header n,u,truth,mean_estimate,bias,mse; u is empty for I*.
void write_sim_csv(std::ostream& out, const SimResult& result);

}  // namespace qigf
