#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qigf/errors.hpp"
#include "qigf/igf.hpp"
#include "qigf/semiparam.hpp"
#include "qigf/simulation.hpp"

using namespace qigf;

namespace {

SimScenario table_scenario(SimTarget target, std::vector<double> u)
{
    SimScenario s;
    s.model = table_model(0.7);
    s.alpha = 0.3;
    s.target = target;
    s.u_list = std::move(u);
    s.n_list = {50, 100};
    s.reps = 200;
    s.base_seed = 12;
    return s;
}

bool same(const SimResult& a, const SimResult& b)
{
    if (a.rows.size() != b.rows.size() || a.redraws != b.redraws) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto& x = a.rows[i];
        const auto& y = b.rows[i];
        if (x.n != y.n || x.u != y.u || x.truth != y.truth || x.mean_estimate != y.mean_estimate ||
            x.bias != y.bias || x.mse != y.mse)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("runs are deterministic regardless of thread count")
{
    auto s = table_scenario(SimTarget::Residual, {0.25, 0.75});
    const auto serial = run_simulation(s);
    s.jobs = 4;
    const auto parallel = run_simulation(s);
    CHECK(same(serial, parallel));
    CHECK(same(serial, run_simulation(s)));
    CHECK(serial.rows.size() == 4);
}

TEST_CASE("rows satisfy bias-variance bookkeeping")
{
    const auto r = run_simulation(table_scenario(SimTarget::IGF, {}));
    for (const auto& row : r.rows) {
        CHECK(row.mse >= row.bias * row.bias - 1e-12);
        CHECK(row.bias == row.mean_estimate - row.truth);
        CHECK_FALSE(row.u.has_value());
    }
}

TEST_CASE("truth sources")
{
    auto s = table_scenario(SimTarget::IGF, {});
    CHECK(simulation_truth(s, std::nullopt) == doctest::Approx(igf(s.model, Alpha(0.3)).value));
    s.truth_source = TruthSource::PrintedTableIntegrand;
    CHECK(simulation_truth(s, std::nullopt) == doctest::Approx(0.16904).epsilon(1e-4));
    s.model = compose(QuantileModel(Exponential{2.0}), QuantileModel(Exponential{1.0}));
    CHECK_THROWS_AS(simulation_truth(s, std::nullopt), ParamError);
}

TEST_CASE("alpha one is exact")
{
    SimScenario s;
    s.model = distortion_to_composed(ProportionalHazards{2.0});
    s.alpha = 1.0;
    s.n_list = {10, 100};
    s.reps = 20;
    for (const auto& row : run_simulation(s).rows) {
        CHECK(row.bias == 0.0);
        CHECK(row.mse == 0.0);
    }
}

TEST_CASE("zero spacings are redrawn and counted")
{
    // Distortion flat at 0 below `cut`, so samples can carry a zero first
    // spacing; the density part only feeds the truth and is kept at 1.
    auto clipped = [](double cut) {
        return ComposedModel(ComposedModel::Parts{
            [cut](double p) { return p < cut ? 0.0 : (p - cut) / (1.0 - cut); },
            [](double) { return 1.0; }, std::nullopt, 0.0, std::nullopt, "clipped"});
    };
    SimScenario s;
    s.model = clipped(0.01);
    s.alpha = 2.0;
    s.n_list = {50};
    s.reps = 60;
    s.base_seed = 3;
    const auto r = run_simulation(s);
    CHECK(r.redraws > 0);
    CHECK(std::isfinite(r.rows[0].mean_estimate));
    s.jobs = 3;
    CHECK(same(r, run_simulation(s)));

    s.model = clipped(0.5);
    CHECK_THROWS_AS(run_simulation(s), ZeroSpacing);
}

TEST_CASE("scenario validation")
{
    SimScenario s;
    s.n_list = {1};
    CHECK_THROWS_AS(run_simulation(s), ParamError);
    s.n_list = {10};
    s.reps = 0;
    CHECK_THROWS_AS(run_simulation(s), ParamError);
    s.reps = 1;
    s.target = SimTarget::Residual;
    CHECK_THROWS_AS(run_simulation(s), ParamError);
    s.alpha = -1.0;
    CHECK_THROWS_AS(run_simulation(s), ParamError);
}

TEST_CASE("seeds")
{
    CHECK(replication_seed(100, 5, 0) == 105u);
    CHECK(replication_seed(100, 5, 1) != 105u);
}

TEST_CASE("csv schema")
{
    SimResult r;
    r.rows.push_back({50, std::nullopt, 1.0, 1.5, 0.5, 0.3});
    r.rows.push_back({50, 0.25, 1.0, 1.5, 0.5, 0.3});
    std::ostringstream os;
    write_sim_csv(os, r);
    CHECK(os.str() == "n,u,truth,mean_estimate,bias,mse\n50,,1,1.5,0.5,0.29999999999999999\n"
                      "50,0.25,1,1.5,0.5,0.29999999999999999\n");
}
