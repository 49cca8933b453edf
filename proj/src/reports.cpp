#include "qigf/reports.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "qigf/errors.hpp"
#include "qigf/estimation.hpp"
#include "qigf/igf.hpp"
#include "qigf/semiparam.hpp"
#include "qigf/simulation.hpp"

namespace qigf {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

double require_double(std::string_view s, std::string_view context)
{
    if (auto v = to_double(s)) return *v;
    throw spec_error(std::string(context) + ": '" + std::string(s) + "' is not a number");
}

std::size_t arity(std::string_view family)
{
    static const std::map<std::string_view, std::size_t> table{
        {"exp", 1},         {"pareto1", 1}, {"pareto2", 1}, {"power", 2},
        {"powerpareto", 3}, {"govindarajulu", 2}, {"lhq", 2}, {"recipexp", 1},
    };
    const auto it = table.find(family);
    if (it == table.end())
        throw spec_error("unknown model family '" + std::string(family) +
                         "' (expected exp, pareto1, pareto2, power, powerpareto, govindarajulu, lhq, recipexp)");
    return it->second;
}

QuantileModel build(std::string_view family, const std::vector<double>& p)
{
    if (family == "exp") return QuantileModel(Exponential{p[0]});
    if (family == "pareto1") return QuantileModel(ParetoI{p[0]});
    if (family == "pareto2") return QuantileModel(ParetoII{p[0]});
    if (family == "power") return QuantileModel(Power{p[0], p[1]});
    if (family == "powerpareto") return QuantileModel(PowerPareto{p[0], p[1], p[2]});
    if (family == "govindarajulu") return QuantileModel(Govindarajulu{p[0], p[1]});
    if (family == "lhq") return QuantileModel(LinearHazardQuantile{p[0], p[1]});
    return QuantileModel(ReciprocalExponential{p[0]});
}

std::pair<std::string_view, std::vector<double>> split_spec(std::string_view spec)
{
    spec = trim(spec);
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw spec_error("model spec '" + std::string(spec) + "' needs the form family:params");
    return {trim(spec.substr(0, colon)), parse_list(spec.substr(colon + 1))};
}

}  // namespace

std::vector<double> parse_list(std::string_view text)
{
    std::vector<double> out;
    text = trim(text);
    if (text.empty()) throw spec_error("empty number list");
    while (true) {
        const auto comma = text.find(',');
        out.push_back(require_double(text.substr(0, comma), "number list"));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<double> parse_grid(std::string_view text)
{
    std::vector<double> parts;
    std::string_view rest = trim(text);
    while (true) {
        const auto colon = rest.find(':');
        parts.push_back(require_double(rest.substr(0, colon), "grid"));
        if (colon == std::string_view::npos) break;
        rest.remove_prefix(colon + 1);
    }
    if (parts.size() != 3) throw spec_error("grid must be lo:step:hi");
    const double lo = parts[0], step = parts[1], hi = parts[2];
    if (!(step > 0.0) || !(hi >= lo)) throw spec_error("grid needs step > 0 and hi >= lo");
    std::vector<double> out;
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t k = 0; k <= count; ++k) out.push_back(lo + static_cast<double>(k) * step);
    return out;
}

QuantileModel parse_model(std::string_view spec)
{
    auto [family, params] = split_spec(spec);
    if (family == "exponential") family = "exp";
    const std::size_t k = arity(family);
    if (params.size() != k) {
        std::ostringstream os;
        os << family << " takes " << k << " parameter(s), got " << params.size();
        throw spec_error(os.str());
    }
    return build(family, params);
}

ComposedModel parse_pair(std::string_view spec, const EvalConfig& cfg)
{
    spec = trim(spec);
    if (spec == "identity") return ComposedModel::identity();
    if (const auto slash = spec.find('/'); slash != std::string_view::npos)
        return compose(parse_model(spec.substr(0, slash)), parse_model(spec.substr(slash + 1)), cfg);

    auto [family, params] = split_spec(spec);
    if (family == "ph" || family == "po" || family == "pocdf" || family == "rph") {
        if (params.size() != 1) throw spec_error(std::string(family) + " takes one parameter");
        const double v = params[0];
        if (family == "ph") return distortion_to_composed(ProportionalHazards{v});
        if (family == "po") return distortion_to_composed(ProportionalOddsSurvival{v});
        if (family == "pocdf") return distortion_to_composed(ProportionalOddsCdf{v});
        return distortion_to_composed(ReversedProportionalHazards{v});
    }
    if (family == "exponential") family = "exp";
    const std::size_t k = arity(family);
    if (params.size() != 2 * k) {
        std::ostringstream os;
        os << "same-family pair " << family << " takes " << 2 * k << " parameters, got "
           << params.size() << " (use A/B for an explicit pair)";
        throw spec_error(os.str());
    }
    const std::vector<double> first(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(k));
    const std::vector<double> second(params.begin() + static_cast<std::ptrdiff_t>(k), params.end());
    return compose(build(family, first), build(family, second), cfg);
}

std::vector<double> read_sample_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw io_error("cannot open sample file " + path.string());
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        const auto v = to_double(s);
        if (!v) {
            std::ostringstream os;
            os << path.string() << ":" << line_no << ": '" << s << "' is not a number";
            throw spec_error(os.str());
        }
        values.push_back(*v);
    }
    if (in.bad()) throw io_error("error reading " + path.string());
    return values;
}

void write_sample_file(const std::filesystem::path& path, const std::vector<double>& values,
                       std::string_view comment)
{
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path.string());
    if (!comment.empty()) out << "# " << comment << '\n';
    for (double v : values) out << format_number(v) << '\n';
    if (!out) throw io_error("error writing " + path.string());
}

void Table::add(std::vector<Cell> row)
{
    if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
    rows.push_back(std::move(row));
}

OutputFormat parse_format(std::string_view name)
{
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw spec_error("format must be csv or json");
}

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_table(std::ostream& out, const Table& table, OutputFormat format)
{
    if (format == OutputFormat::Csv) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out << ',';
                if (auto d = std::get_if<double>(&row[i])) out << format_number(*d);
                else if (auto s = std::get_if<std::string>(&row[i])) out << *s;
            }
            out << '\n';
        }
        return;
    }
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            auto& slot = obj[table.columns[i]];
            if (auto d = std::get_if<double>(&row[i])) slot = *d;
            else if (auto s = std::get_if<std::string>(&row[i])) slot = *s;
            else slot = nullptr;
        }
        rows.push_back(std::move(obj));
    }
    out << rows.dump(2) << '\n';
}

const std::vector<FigureOneConfig>& figure_one_configs()
{
    static const std::vector<FigureOneConfig> configs{
        {2.0, 1.0, 1.0, 1.0, 1.0},
        {3.0, 1.0, 1.0, 0.5, 1.5},
        {4.0, 1.5, 2.0, 1.0, 1.0},
        {2.0, 1.0, 1.0, 1.5, 0.5},
    };
    return configs;
}

std::vector<double> figure_one_alphas()
{
    std::vector<double> out;
    for (int k = 1; k <= 20; ++k) out.push_back(k / 10.0);
    return out;
}

ComposedModel figure_one_model(const FigureOneConfig& c, const EvalConfig& cfg)
{
    return compose(QuantileModel(PowerPareto{c.c, c.lambda1, c.lambda2}),
                   QuantileModel(Power{c.beta1, c.beta2}), cfg);
}

ComposedModel prostate_model(const EvalConfig& cfg)
{
    return compose(QuantileModel(Govindarajulu{69.26, 1.04}), QuantileModel(Power{74.13, 1.0 / 0.17}),
                   cfg);
}

namespace {

std::string label(std::string_view name, double v)
{
    std::ostringstream os;
    os << name << '=' << v;
    return os.str();
}

/// u = k/20 for k in [first, last].
std::vector<double> u_grid(int first, int last)
{
    std::vector<double> out;
    for (int k = first; k <= last; ++k) out.push_back(k / 20.0);
    return out;
}

Table series_table() { return Table{{"series", "x", "y"}, {}}; }

}  // namespace

Table figure_data(int id, const FigureOptions& opts)
{
    const EvalConfig& cfg = opts.cfg;
    Table t = series_table();
    switch (id) {
    case 1:
        for (const auto& c : figure_one_configs()) {
            std::ostringstream name;
            name << "beta1=" << c.beta1 << ";beta2=" << c.beta2 << ";c=" << c.c
                 << ";lambda1=" << c.lambda1 << ";lambda2=" << c.lambda2;
            const ComposedModel m = figure_one_model(c, cfg);
            for (double a : figure_one_alphas()) t.add({name.str(), a, igf(m, Alpha(a), cfg).value});
        }
        return t;
    case 2: {
        const ComposedModel m = compose(QuantileModel(LinearHazardQuantile{0.1, 0.2}),
                                        QuantileModel(Exponential{1.0 / 0.6}), cfg);
        for (double a : {0.3, 0.5, 0.7, 1.5, 2.0})
            for (double u : u_grid(1, 19))
                t.add({label("alpha", a), u, igf_residual(m, Alpha(a), u, cfg).value});
        return t;
    }
    case 3:
        for (double lambda : {0.5, 1.0, 2.0}) {
            const ComposedModel m = table_model(lambda);
            for (double u : u_grid(1, 20))
                t.add({label("lambda", lambda), u, igf_past(m, Alpha(0.5), u, cfg).value});
        }
        return t;
    case 4:
        for (double theta : {0.25, 0.5, 2.0, 4.0}) {
            const ComposedModel m = distortion_to_composed(ProportionalOddsCdf{theta});
            for (double u : u_grid(1, 20))
                t.add({label("theta", theta), u, igf_past(m, Alpha(0.7), u, cfg).value});
        }
        return t;
    case 5:
    case 6:
    case 7:
    case 8: break;
    default: throw spec_error("figure id must be 1-8");
    }

    const ComposedModel m = prostate_model(cfg);
    const OrderedSample s = sample_from_Q3(m, opts.n, opts.seed);
    if (id == 5) {
        for (double u : u_grid(0, 20)) t.add({"PE", u, m.distortion(u)});
        for (double u : u_grid(0, 20)) t.add({"NPE", u, parzen_Q3(s, u)});
    } else if (id == 6) {
        for (double a : figure_one_alphas()) t.add({"PE", a, igf(m, Alpha(a), cfg).value});
        for (double a : figure_one_alphas()) t.add({"NPE", a, estimate_igf(s, Alpha(a)).estimate});
    } else if (id == 7) {
        for (double a : {0.25, 0.5, 0.75})
            for (double u : u_grid(0, 19))
                t.add({label("alpha", a), u, estimate_residual(s, Alpha(a), u).estimate});
    } else {
        for (double a : {0.25, 0.5, 0.75})
            for (double u : u_grid(1, 20))
                t.add({label("alpha", a), u, estimate_past(s, Alpha(a), u).estimate});
    }
    return t;
}

Table divergence_table(const ProstateOptions& opts)
{
    std::vector<DivergencePanel> panels;
    Table t{{"measure", "placebo_vs_5mg"}, {}};
    panels.push_back(
        estimate_divergences(sample_from_Q3(prostate_model(opts.cfg), opts.n, opts.seed), opts.renyi_orders));
    if (opts.model_1mg) {
        t.columns.push_back("placebo_vs_1mg");
        panels.push_back(
            estimate_divergences(sample_from_Q3(*opts.model_1mg, opts.n, opts.seed), opts.renyi_orders));
    }
    auto row = [&](std::string name, auto get) {
        std::vector<Cell> r{std::move(name)};
        for (const auto& p : panels) r.emplace_back(get(p));
        t.add(std::move(r));
    };
    row("K-L divergence", [](const DivergencePanel& p) { return p.kl; });
    row("Hellinger distance", [](const DivergencePanel& p) { return p.hellinger; });
    row("Bhattacharyya distance", [](const DivergencePanel& p) { return p.bhattacharyya; });
    for (double order : opts.renyi_orders) {
        std::ostringstream name;
        name << "Renyi order " << order;
        row(name.str(), [order](const DivergencePanel& p) { return p.renyi.at(order); });
    }
    return t;
}

}  // namespace qigf
