// qigf: evaluate, estimate and simulate quantile-based relative information
// generating functions.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qigf/errors.hpp"
#include "qigf/estimation.hpp"
#include "qigf/igf.hpp"
#include "qigf/reports.hpp"
#include "qigf/simulation.hpp"

using namespace qigf;

namespace {

constexpr int kUsage = 2;
constexpr int kNumeric = 3;
constexpr int kIo = 4;

struct usage_failure {
    std::string kind;
    std::string message;
};

struct Common {
    std::string format = "csv";
    std::string out;
    EvalConfig cfg;
    std::uint64_t seed = 1;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out, "Write results here instead of stdout");
    sub->add_option("--rel-tol", c.cfg.quad_rel_tol, "Quadrature relative tolerance");
    sub->add_option("--abs-tol", c.cfg.quad_abs_tol, "Quadrature absolute tolerance");
    sub->add_option("--eps", c.cfg.endpoint_eps, "Endpoint clip for integrals on (0,1)");
    sub->add_option("--max-subdivisions", c.cfg.max_subdivisions, "Quadrature subdivision budget");
}

ComposedModel pair_arg(const std::string& spec, const EvalConfig& cfg)
{
    try {
        return parse_pair(spec, cfg);
    } catch (const Error& e) {
        throw usage_failure{std::string(to_string(e.kind())), e.what()};
    }
}

std::optional<ComposedModel> optional_pair(const std::string& spec, const EvalConfig& cfg)
{
    if (spec.empty()) return std::nullopt;
    return pair_arg(spec, cfg);
}

void emit(const Common& c, const Table& t)
{
    const OutputFormat f = parse_format(c.format);
    if (c.out.empty()) {
        write_table(std::cout, t, f);
        return;
    }
    std::ofstream out(c.out);
    if (!out) throw io_error("cannot write " + c.out);
    write_table(out, t, f);
    if (!out) throw io_error("error writing " + c.out);
}

/// A single value prints bare in CSV mode; anything else prints as a table.
void emit_values(const Common& c, const Table& t)
{
    if (t.rows.size() == 1 && c.format == "csv") {
        const std::string v = format_number(std::get<double>(t.rows[0].back()));
        if (c.out.empty()) {
            std::cout << v << '\n';
        } else {
            std::ofstream out(c.out);
            if (!(out << v << '\n')) throw io_error("cannot write " + c.out);
        }
        return;
    }
    emit(c, t);
}

Route route_arg(const std::string& name)
{
    if (name == "auto") return Route::Auto;
    if (name == "closed") return Route::ClosedForm;
    return Route::Quadrature;
}

std::uint64_t env_seed()
{
    const char* s = std::getenv("QIGF_SEED");
    if (!s || !*s) return 1;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used != std::string(s).size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw usage_failure{"Usage", std::string("QIGF_SEED is not an unsigned integer: ") + s};
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quantile-based relative information generating functions"};
    app.require_subcommand(1);
    app.get_formatter()->column_width(36);

    Common c;
    std::string pair;
    std::vector<double> alphas;
    std::vector<double> us;
    std::string route = "auto";
    std::vector<double> orders{0.25, 0.5, 0.75};

    // eval / residual / past
    auto* eval = app.add_subcommand("eval", "I*_alpha of a composed model");
    auto* residual = app.add_subcommand("residual", "Residual form R*_alpha(u)");
    auto* past = app.add_subcommand("past", "Past form J*_alpha(u)");
    for (auto* sub : {eval, residual, past}) {
        add_common(sub, c);
        sub->add_option("--pair", pair, "Model spec, e.g. exp:2,1 or govindarajulu:1,1/recipexp:0.7")->required();
        sub->add_option("--alpha", alphas, "Order(s) alpha")->required()->delimiter(',');
        sub->add_option("--route", route, "auto, closed or quad")->check(CLI::IsMember({"auto", "closed", "quad"}));
    }
    for (auto* sub : {residual, past}) sub->add_option("--u", us, "Probability level(s)")->required()->delimiter(',');

    auto* divergences = app.add_subcommand("divergences", "K-L, Hellinger, Bhattacharyya and Renyi measures");
    add_common(divergences, c);
    divergences->add_option("--pair", pair, "Model spec")->required();
    divergences->add_option("--orders", orders, "Renyi orders")->delimiter(',');

    std::string input;
    std::string against;
    std::string kind = "igf";
    bool want_divergences = false;
    auto* estimate = app.add_subcommand("estimate", "Nonparametric estimates from a sample file");
    add_common(estimate, c);
    estimate->add_option("--input", input, "Sample file of Z values (or raw lifetimes with --against)")
        ->required();
    estimate->add_option("--against", against, "Second raw sample; estimates from the empirical Q3");
    estimate->add_option("--kind", kind, "igf, residual or past")->check(CLI::IsMember({"igf", "residual", "past"}));
    estimate->add_option("--alpha", alphas, "Order(s) alpha")->delimiter(',');
    estimate->add_option("--u", us, "Probability level(s) for residual/past")->delimiter(',');
    estimate->add_flag("--divergences", want_divergences, "Report the divergence panel instead");
    estimate->add_option("--orders", orders, "Renyi orders for --divergences")->delimiter(',');

    std::size_t n = 10000;
    std::optional<std::uint64_t> seed_flag;
    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", seed_flag, "Random seed (default: QIGF_SEED or 1)");
    };

    std::vector<std::size_t> n_list{50, 100, 250, 500};
    std::size_t reps = 1000;
    unsigned jobs = 1;
    std::string target = "igf";
    std::string truth = "model";
    bool table_scenario = false;
    double lambda = 0.7;
    double sim_alpha = 0.3;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo bias and MSE of the estimators");
    add_common(simulate, c);
    add_seed(simulate);
    simulate->add_option("--pair", pair, "Model spec");
    simulate->add_flag("--table-scenario", table_scenario,
                       "Use govindarajulu:1,1/recipexp:LAMBDA, the bias/MSE table scenario");
    simulate->add_option("--lambda", lambda, "Reciprocal exponential lambda for --table-scenario");
    simulate->add_option("--alpha", sim_alpha, "Order alpha");
    simulate->add_option("--target", target, "igf, residual or past")->check(CLI::IsMember({"igf", "residual", "past"}));
    simulate->add_option("--u", us, "Probability level(s)")->delimiter(',');
    simulate->add_option("--n", n_list, "Sample sizes")->delimiter(',');
    simulate->add_option("--reps", reps, "Replications per sample size");
    simulate->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    simulate->add_option("--truth", truth, "model, or printed (table scenario only)")
        ->check(CLI::IsMember({"model", "printed"}));

    int figure_id = 1;
    auto* figure = app.add_subcommand("figure", "Data series for figures 1-8");
    add_common(figure, c);
    add_seed(figure);
    figure->add_option("--id", figure_id, "Figure number")->required()->check(CLI::Range(1, 8));
    figure->add_option("--n", n, "Sample size for figures 5-8");

    std::string model_1mg;
    std::string figures_dir;
    auto* prostate = app.add_subcommand("prostate", "Prostate cancer analysis: divergence table and figure data");
    add_common(prostate, c);
    add_seed(prostate);
    prostate->add_option("--n", n, "Sample size");
    prostate->add_option("--orders", orders, "Renyi orders")->delimiter(',');
    prostate->add_option("--model-1mg", model_1mg, "Placebo vs 1 mg model spec; adds that column");
    prostate->add_option("--figures-dir", figures_dir, "Also write figure5..8 data here");

    auto* sample = app.add_subcommand("sample", "Draw a seeded sample Z = Q3(U) and write it");
    add_common(sample, c);
    add_seed(sample);
    sample->add_option("--pair", pair, "Model spec")->required();
    sample->add_option("--n", n, "Sample size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        c.cfg.validate();
        const std::uint64_t seed = seed_flag ? *seed_flag : env_seed();

        if (eval->parsed() || residual->parsed() || past->parsed()) {
            const ComposedModel m = pair_arg(pair, c.cfg);
            const Route r = route_arg(route);
            Table t{{"alpha", "value"}, {}};
            if (eval->parsed()) {
                for (double a : alphas) t.add({a, igf(m, Alpha(a), c.cfg, r).value});
            } else {
                t.columns = {"alpha", "u", "value"};
                for (double a : alphas)
                    for (double u : us) {
                        const double v = residual->parsed() ? igf_residual(m, Alpha(a), u, c.cfg, r).value
                                                            : igf_past(m, Alpha(a), u, c.cfg, r).value;
                        t.add({a, u, v});
                    }
            }
            emit_values(c, t);
        } else if (divergences->parsed()) {
            const DivergencePanel p = divergence_panel(pair_arg(pair, c.cfg), orders, c.cfg);
            Table t{{"measure", "value"}, {}};
            t.add({"K-L divergence", p.kl});
            t.add({"Hellinger distance", p.hellinger});
            t.add({"Bhattacharyya distance", p.bhattacharyya});
            for (const auto& [order, v] : p.renyi) t.add({"Renyi order " + format_number(order), v});
            emit(c, t);
        } else if (estimate->parsed()) {
            const std::vector<double> raw = read_sample_file(input);
            const OrderedSample s = against.empty()
                                        ? OrderedSample::from_raw(raw)
                                        : empirical_Q3_sample(raw, read_sample_file(against));
            if (want_divergences) {
                const DivergencePanel p = estimate_divergences(s, orders);
                Table t{{"measure", "value"}, {}};
                t.add({"K-L divergence", p.kl});
                t.add({"Hellinger distance", p.hellinger});
                t.add({"Bhattacharyya distance", p.bhattacharyya});
                for (const auto& [order, v] : p.renyi) t.add({"Renyi order " + format_number(order), v});
                emit(c, t);
            } else {
                if (alphas.empty()) throw usage_failure{"Usage", "estimate needs --alpha or --divergences"};
                if (kind != "igf" && us.empty()) throw usage_failure{"Usage", "--kind " + kind + " needs --u"};
                Table t{{"alpha", "value"}, {}};
                if (kind == "igf") {
                    for (double a : alphas) t.add({a, estimate_igf(s, Alpha(a)).estimate});
                } else {
                    t.columns = {"alpha", "u", "value"};
                    for (double a : alphas)
                        for (double u : us)
                            t.add({a, u,
                                   kind == "residual" ? estimate_residual(s, Alpha(a), u).estimate
                                                      : estimate_past(s, Alpha(a), u).estimate});
                }
                emit_values(c, t);
            }
        } else if (simulate->parsed()) {
            if (table_scenario == !pair.empty())
                throw usage_failure{"Usage", "simulate needs exactly one of --pair and --table-scenario"};
            SimScenario sc;
            sc.model = table_scenario ? table_model(lambda) : pair_arg(pair, c.cfg);
            sc.alpha = sim_alpha;
            sc.target = target == "igf" ? SimTarget::IGF
                        : target == "residual" ? SimTarget::Residual
                                               : SimTarget::Past;
            sc.u_list = us;
            sc.n_list = n_list;
            sc.reps = reps;
            sc.base_seed = seed;
            sc.truth_cfg = c.cfg;
            sc.truth_source = truth == "printed" ? TruthSource::PrintedTableIntegrand : TruthSource::ModelDefinition;
            sc.jobs = jobs;
            const SimResult res = run_simulation(sc);
            Table t{{"n", "u", "truth", "mean_estimate", "bias", "mse"}, {}};
            for (const SimRow& row : res.rows)
                t.add({static_cast<double>(row.n), row.u ? Cell{*row.u} : Cell{}, row.truth,
                       row.mean_estimate, row.bias, row.mse});
            emit(c, t);
            if (res.redraws) std::cerr << "redraws: " << res.redraws << '\n';
        } else if (figure->parsed()) {
            emit(c, figure_data(figure_id, FigureOptions{n, seed, c.cfg}));
        } else if (prostate->parsed()) {
            ProstateOptions po;
            po.n = n;
            po.seed = seed;
            po.renyi_orders = orders;
            po.model_1mg = optional_pair(model_1mg, c.cfg);
            po.cfg = c.cfg;
            emit(c, divergence_table(po));
            if (!figures_dir.empty()) {
                const OutputFormat f = parse_format(c.format);
                for (int id = 5; id <= 8; ++id) {
                    const std::string path = figures_dir + "/figure" + std::to_string(id) +
                                             (f == OutputFormat::Csv ? ".csv" : ".json");
                    std::ofstream out(path);
                    if (!out) throw io_error("cannot write " + path);
                    write_table(out, figure_data(id, FigureOptions{n, seed, c.cfg}), f);
                }
            }
        } else if (sample->parsed()) {
            const OrderedSample s = sample_from_Q3(pair_arg(pair, c.cfg), n, seed);
            const std::vector<double> values(s.values().begin(), s.values().end());
            std::ostringstream note;
            note << "Z = Q3(U), pair " << pair << ", n " << n << ", seed " << seed;
            if (c.out.empty()) {
                std::cout << "# " << note.str() << '\n';
                for (double v : values) std::cout << format_number(v) << '\n';
            } else {
                write_sample_file(c.out, values, note.str());
            }
        }
    } catch (const usage_failure& e) {
        std::cerr << "error: " << e.kind << ": " << e.message << '\n';
        return kUsage;
    } catch (const spec_error& e) {
        std::cerr << "error: Usage: " << e.what() << '\n';
        return kUsage;
    } catch (const io_error& e) {
        std::cerr << "error: IO: " << e.what() << '\n';
        return kIo;
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return kNumeric;
    }
    return 0;
}
