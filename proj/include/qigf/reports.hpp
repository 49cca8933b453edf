#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qigf/composed_model.hpp"
#include "qigf/eval_config.hpp"
#include "qigf/quantile_models.hpp"

namespace qigf {

/// Malformed model spec or other command-line input.
class spec_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Unreadable or unwritable file.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// `family:p1,p2,...`. Families and parameter order:
///   exp:mean  pareto1:gamma  pareto2:beta  power:scale,shape
///   powerpareto:c,lambda1,lambda2  govindarajulu:sigma,beta  lhq:a,b
///   recipexp:lambda
QuantileModel parse_model(std::string_view spec);

/// A composed model: `identity`, a distortion (`ph:theta`, `po:r`,
/// `pocdf:theta`, `rph:c1`), an explicit pair `A/B`, or a same-family pair
/// with both parameter lists run together (`exp:2,1`).
ComposedModel parse_pair(std::string_view spec, const EvalConfig& cfg = {});

/// Comma-separated reals, e.g. "0.25,0.5,0.75".
std::vector<double> parse_list(std::string_view text);

/// Inclusive grid lo:step:hi.
std::vector<double> parse_grid(std::string_view text);

/// One value per line; blank lines and lines starting with '#' are skipped.
std::vector<double> read_sample_file(const std::filesystem::path& path);

/// Writes values with 17 significant digits so they read back bitwise.
void write_sample_file(const std::filesystem::path& path, const std::vector<double>& values,
                       std::string_view comment = {});

using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(std::string_view name);
std::string format_number(double v);
void write_table(std::ostream& out, const Table& table, OutputFormat format);

struct FigureOptions {
    std::size_t n = 10000;    // sample size for the data figures (5-8)
    std::uint64_t seed = 1;
    EvalConfig cfg;
};

/// Data behind figures 1-8, columns series,x,y.
///   1  I* versus alpha, power-Pareto against power
///   2  R*(u) versus u for several alpha, linear hazard quantile against exponential
///   3  J*_0.5(u) versus u for several lambda, Govindarajulu against reciprocal exponential
///   4  J*_0.7(u) versus u for several theta, proportional odds (cdf form)
///   5  Q3 estimate and fitted Q3 for the prostate data model
///   6  I* estimate and fitted I* versus alpha
///   7  R* estimate versus u for alpha 0.25, 0.5, 0.75
///   8  J* estimate versus u for alpha 0.25, 0.5, 0.75
Table figure_data(int id, const FigureOptions& opts = {});

struct FigureOneConfig {
    double beta1, beta2, c, lambda1, lambda2;
};
const std::vector<FigureOneConfig>& figure_one_configs();
std::vector<double> figure_one_alphas();
ComposedModel figure_one_model(const FigureOneConfig& config, const EvalConfig& cfg = {});

/// Placebo (Govindarajulu 69.26, 1.04) against 5 mg DES (power 74.13, 1/0.17).
ComposedModel prostate_model(const EvalConfig& cfg = {});

struct ProstateOptions {
    std::size_t n = 10000;
    std::uint64_t seed = 1;
    std::vector<double> renyi_orders{0.25, 0.5, 0.75};
    std::optional<ComposedModel> model_1mg;
    EvalConfig cfg;
};

/// Estimated divergence panel: rows K-L, Hellinger, Bhattacharyya and one
/// Renyi row per order; the 1 mg column only when its model is given.
Table divergence_table(const ProstateOptions& opts);

}  // namespace qigf
