#include "pcpdc/app/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pcpdc/app/io.hpp"

namespace pcpdc::app {

using nlohmann::json;

namespace {

// Field access with dotted-path diagnostics.
class Section {
public:
    Section(const json& root, std::string path) : path_(std::move(path))
    {
        if (!root.contains(path_))
            throw ConfigError("missing required field '" + path_ + "'");
        node_ = &root.at(path_);
        if (!node_->is_object())
            throw ConfigError("field '" + path_ + "' must be an object");
    }

    void allow_only(std::initializer_list<const char*> keys) const
    {
        const std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [key, _] : node_->items())
            if (!allowed.contains(key))
                throw ConfigError("unknown field '" + path_ + "." + key + "'");
    }

    bool has(const std::string& key) const { return node_->contains(key); }

    double number(const std::string& key) const
    {
        const json& v = require(key);
        if (!v.is_number())
            throw ConfigError("field '" + name(key) + "' must be a number");
        return v.get<double>();
    }

    double number_or(const std::string& key, double fallback) const
    {
        return has(key) ? number(key) : fallback;
    }

    std::size_t count(const std::string& key) const
    {
        const json& v = require(key);
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw ConfigError("field '" + name(key) + "' must be a non-negative integer");
        return v.get<std::size_t>();
    }

    std::string text(const std::string& key) const
    {
        const json& v = require(key);
        if (!v.is_string())
            throw ConfigError("field '" + name(key) + "' must be a string");
        return v.get<std::string>();
    }

    const json& require(const std::string& key) const
    {
        if (!node_->contains(key))
            throw ConfigError("missing required field '" + name(key) + "'");
        return node_->at(key);
    }

    std::string name(const std::string& key) const { return path_ + "." + key; }

private:
    std::string path_;
    const json* node_ = nullptr;
};

GridSpec parse_grid(const json& root, const char* key)
{
    Section s(root, key);
    s.allow_only({"n", "half_width"});
    GridSpec g{s.count("n"), s.number("half_width")};
    if (g.n < 2)
        throw ConfigError("field '" + s.name("n") + "' must be >= 2");
    if (!(g.half_width > 0.0))
        throw ConfigError("field '" + s.name("half_width") + "' must be positive");
    return g;
}

// Re-throws library domain errors as config errors naming the section.
template <typename F>
void check_domain(const std::string& section, F&& f)
{
    try {
        f();
    } catch (const DomainError& e) {
        throw ConfigError("section '" + section + "': " + e.what());
    }
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < std::min(byte, text.size()); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace

GsmParams SourceSpec::gsm_params() const
{
    if (gsm)
        return *gsm;
    return GsmParams{lambda.value_or(1.0), 1.0, amplitude};
}

double SourceSpec::coherence_ratio() const
{
    return gsm ? gsm->coherence_ratio() : lambda.value_or(1.0);
}

json default_config_json()
{
    return json::parse(R"({
  "grid": { "n": 128, "half_width": 6.0 },
  "k_grid": { "n": 129, "half_width": 6.0 },
  "source": { "sigma_s": 1.0, "sigma_c": 1.0, "amplitude": 1.0 },
  "pump": { "alpha0": 1.0, "lambda": 0.5, "kappa_scale": 1.0, "delta_t": 1.0, "alpha_mapping": "linear" },
  "phase_matching": { "form": "sinc", "length_scale": 1.0, "carrier": 0.0 },
  "analysis": { "m_e": 0.5, "n_modes": 10, "series_order": 20 },
  "output": { "directory": "out", "formats": ["csv", "json"] },
  "figure1": { "lambdas": [1.0, 0.5, 1e-6] },
  "figure2": { "step": 0.001 }
})");
}

json load_config_text(const std::string& text, const std::string& origin)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": syntax error: " + e.what());
    }
}

json load_config_file(const std::filesystem::path& path)
{
    std::string text;
    try {
        text = io::read_file(path);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return load_config_text(text, path.string());
}

void apply_override(json& config, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override '" + assignment + "' is not of the form key.path=value");
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;
    }

    json* node = &config;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty())
            throw ConfigError("override path '" + path + "' has an empty component");
        if (!node->is_object())
            throw ConfigError("override path '" + path + "' descends into a non-object");
        if (dot == std::string::npos) {
            // null removes the key, so one source form can replace the other
            if (value.is_null())
                node->erase(key);
            else
                (*node)[key] = std::move(value);
            return;
        }
        node = &(*node)[key];
        if (node->is_null())
            *node = json::object();
        start = dot + 1;
    }
}

RunConfig parse_config(const json& root)
{
    if (!root.is_object())
        throw ConfigError("config root must be an object");
    static const std::set<std::string> sections = {"grid", "k_grid", "source", "pump", "phase_matching",
                                                   "analysis", "output", "figure1", "figure2"};
    for (const auto& [key, _] : root.items())
        if (!sections.contains(key))
            throw ConfigError("unknown field '" + key + "'");

    RunConfig cfg;
    cfg.grid = parse_grid(root, "grid");
    cfg.k_grid = parse_grid(root, "k_grid");

    {
        Section s(root, "source");
        s.allow_only({"sigma_s", "sigma_c", "lambda", "amplitude"});
        const bool widths = s.has("sigma_s") || s.has("sigma_c");
        const bool direct = s.has("lambda");
        if (widths == direct)
            throw ConfigError("section 'source' needs exactly one of {sigma_s, sigma_c} or lambda");
        cfg.source.amplitude = s.number_or("amplitude", 1.0);
        if (widths) {
            cfg.source.gsm = GsmParams{s.number("sigma_s"), s.number("sigma_c"), cfg.source.amplitude};
        } else {
            const double l = s.number("lambda");
            if (!(l > 0.0 && l <= 1.0))
                throw ConfigError("field 'source.lambda' must lie in (0, 1]");
            cfg.source.lambda = l;
        }
        check_domain("source", [&] { cfg.source.gsm_params().validate(); });
    }

    {
        Section s(root, "pump");
        s.allow_only({"alpha0", "lambda", "kappa_scale", "delta_t", "alpha_mapping"});
        cfg.pump.alpha0 = s.number("alpha0");
        cfg.pump.lambda = s.number("lambda");
        cfg.pump.kappa_scale = s.number("kappa_scale");
        cfg.pump.delta_t = s.number("delta_t");
        if (s.has("alpha_mapping")) {
            const std::string m = s.text("alpha_mapping");
            if (m == "linear")
                cfg.pump.mapping = AlphaMapping::linear;
            else if (m == "quadratic")
                cfg.pump.mapping = AlphaMapping::quadratic;
            else
                throw ConfigError("field 'pump.alpha_mapping' must be 'linear' or 'quadratic'");
        }
        check_domain("pump", [&] { cfg.pump.validate(); });
    }

    {
        Section s(root, "phase_matching");
        s.allow_only({"form", "length_scale", "carrier"});
        const std::string form = s.text("form");
        if (form == "sinc")
            cfg.phase_matching.form = EnvelopeForm::sinc;
        else if (form == "gaussian")
            cfg.phase_matching.form = EnvelopeForm::gaussian;
        else
            throw ConfigError("field 'phase_matching.form' must be 'sinc' or 'gaussian'");
        cfg.phase_matching.length_scale = s.number("length_scale");
        cfg.phase_matching.carrier = s.number_or("carrier", 0.0);
        check_domain("phase_matching", [&] { cfg.phase_matching.validate(); });
    }

    {
        Section s(root, "analysis");
        s.allow_only({"m_e", "n_modes", "series_order"});
        cfg.analysis.m_e = s.number("m_e");
        cfg.analysis.n_modes = s.count("n_modes");
        cfg.analysis.series_order = s.count("series_order");
        if (!(cfg.analysis.m_e >= 0.0 && cfg.analysis.m_e <= 1.0))
            throw ConfigError("field 'analysis.m_e' must lie in [0, 1]");
        if (cfg.analysis.n_modes < 1 || cfg.analysis.n_modes > cfg.grid.n)
            throw ConfigError("field 'analysis.n_modes' must lie in [1, grid.n]");
        if (cfg.analysis.series_order < 1)
            throw ConfigError("field 'analysis.series_order' must be >= 1");
    }

    {
        Section s(root, "output");
        s.allow_only({"directory", "formats"});
        cfg.output.directory = s.text("directory");
        if (s.has("formats")) {
            const json& f = s.require("formats");
            if (!f.is_array())
                throw ConfigError("field 'output.formats' must be an array");
            cfg.output.csv = cfg.output.json = false;
            for (const auto& item : f) {
                if (item == "csv")
                    cfg.output.csv = true;
                else if (item == "json")
                    cfg.output.json = true;
                else
                    throw ConfigError("field 'output.formats' accepts only \"csv\" and \"json\"");
            }
        }
    }

    cfg.figure1_lambdas = {1.0, 0.5, 1e-6};
    if (root.contains("figure1")) {
        Section s(root, "figure1");
        s.allow_only({"lambdas"});
        const json& l = s.require("lambdas");
        if (!l.is_array() || l.empty())
            throw ConfigError("field 'figure1.lambdas' must be a non-empty array");
        cfg.figure1_lambdas.clear();
        for (const auto& v : l) {
            if (!v.is_number() || !(v.get<double>() >= 0.0 && v.get<double>() <= 1.0))
                throw ConfigError("field 'figure1.lambdas' entries must be numbers in [0, 1]");
            cfg.figure1_lambdas.push_back(v.get<double>());
        }
    }

    if (root.contains("figure2")) {
        Section s(root, "figure2");
        s.allow_only({"step"});
        cfg.figure2_step = s.number("step");
        if (!(cfg.figure2_step > 0.0 && cfg.figure2_step <= 1.0))
            throw ConfigError("field 'figure2.step' must lie in (0, 1]");
    }
    return cfg;
}

} // namespace pcpdc::app
