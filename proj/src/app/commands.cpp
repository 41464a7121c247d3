#include "pcpdc/app/commands.hpp"

#include <cmath>

#include "pcpdc/app/io.hpp"
#include "pcpdc/csd.hpp"
#include "pcpdc/entangle.hpp"
#include "pcpdc/grid.hpp"
#include "pcpdc/modal.hpp"
#include "pcpdc/opamp.hpp"
#include "pcpdc/tpa.hpp"

namespace pcpdc::app {

namespace {

class OutputWriter {
public:
    explicit OutputWriter(const OutputSpec& spec) : spec_(spec) {}

    void csv(const std::string& name, const std::string& content)
    {
        if (spec_.csv)
            write(name, content);
    }

    void json(const std::string& name, const nlohmann::ordered_json& content)
    {
        if (spec_.json)
            write(name, io::dump(content));
    }

    Written done() { return std::move(written_); }

private:
    void write(const std::string& name, const std::string& content)
    {
        const auto path = spec_.directory / name;
        io::write_file_atomic(path, content);
        written_.push_back(path);
    }

    const OutputSpec& spec_;
    Written written_;
};

SampledGrid make_grid(const GridSpec& g) { return make_uniform_grid(g.n, g.half_width); }

std::string mu_eff_series_csv(std::size_t n_max)
{
    std::string out = "lambda,mu_eff_factorial,mu_eff_double_factorial\n";
    for (int k = 0; k <= 100; ++k) {
        const double l = k / 100.0;
        out += io::format_double(l) + ',' +
               io::format_double(mu_eff_from_series(l, n_max, SeriesDenominator::factorial)) + ',' +
               io::format_double(mu_eff_from_series(l, n_max, SeriesDenominator::double_factorial)) + '\n';
    }
    return out;
}

} // namespace

Written cmd_modes(const RunConfig& cfg)
{
    const SampledGrid grid = make_grid(cfg.grid);
    const CsdKernel kernel = gsm_csd(cfg.source.gsm_params(), grid);
    const ModalDecomposition decomp = coherent_mode_decomposition(kernel);

    OutputWriter out(cfg.output);
    out.csv("grid.csv", io::grid_csv(grid));
    out.csv("csd.csv", io::kernel_csv(kernel));
    out.csv("modes.csv", io::modes_csv(decomp, cfg.analysis.n_modes));
    out.csv("mu_eff_series.csv", mu_eff_series_csv(cfg.analysis.series_order));
    out.json("eigenvalues.json", io::eigen_summary_json(decomp, kernel));
    return out.done();
}

Written cmd_figure1(const RunConfig& cfg)
{
    const SampledGrid kappa = make_grid(cfg.k_grid);
    const Figure1Table table = figure1_curves(kappa.points(), cfg.figure1_lambdas, cfg.pump);
    OutputWriter out(cfg.output);
    out.csv("figure1.csv", io::figure1_csv(table));
    return out.done();
}

Written cmd_figure2(const RunConfig& cfg)
{
    std::vector<double> m_grid;
    const auto steps = static_cast<std::size_t>(std::floor(1.0 / cfg.figure2_step + 1e-9));
    for (std::size_t k = 0; k <= steps; ++k)
        m_grid.push_back(std::min(1.0, static_cast<double>(k) * cfg.figure2_step));
    if (m_grid.back() < 1.0)
        m_grid.push_back(1.0);

    OutputWriter out(cfg.output);
    out.csv("figure2.csv", io::figure2_csv(figure2_table(m_grid)));
    return out.done();
}

Written cmd_tpa(const RunConfig& cfg)
{
    const SampledGrid grid = make_grid(cfg.grid);
    const SampledGrid k_grid = make_grid(cfg.k_grid);
    const CsdKernel gamma1 = one_photon_amplitude(grid, k_grid, cfg.pump, cfg.phase_matching);
    require_genuine(gamma1);

    const double m_e = cfg.analysis.m_e;
    const TpaKernel siegert = siegert_tpa(gamma1);
    const TpaKernel weighted = tpa_with_entanglement(gamma1, m_e);
    const SchmidtData siegert_schmidt = schmidt_decompose(siegert);
    const SchmidtData weighted_schmidt = schmidt_decompose(weighted);
    const EntanglementReport report = make_entanglement_report(gamma1, m_e);
    const EntanglementFit fit = fit_m_e(siegert, gamma1);

    OutputWriter out(cfg.output);
    out.csv("grid.csv", io::grid_csv(grid));
    out.csv("gamma1.csv", io::kernel_csv(gamma1));
    out.csv("tpa_siegert.csv", io::tpa_csv(siegert));
    out.csv("tpa_entangled.csv", io::tpa_csv(weighted));
    out.json("schmidt_siegert.json", io::schmidt_json(siegert_schmidt, siegert.provenance()));
    out.json("schmidt_entangled.json", io::schmidt_json(weighted_schmidt, weighted.provenance()));
    out.json("report.json", io::report_json(report, fit));
    return out.done();
}

bool cmd_check(const std::filesystem::path& kernel_csv, const std::optional<std::filesystem::path>& grid_csv,
               std::ostream& out)
{
    std::optional<SampledGrid> grid;
    if (grid_csv)
        grid = io::parse_grid_csv(io::read_file(*grid_csv));
    const CsdKernel kernel = io::parse_kernel_csv(io::read_file(kernel_csv), grid);
    const GenuinenessReport report = check_genuine(kernel);
    out << io::dump(io::genuineness_json(report));
    return report.passes;
}

void cmd_classify(double m_e, std::ostream& out)
{
    nlohmann::ordered_json j;
    j["m_e"] = m_e;
    j["regime"] = to_string(classify_statistics(m_e));
    j["bounds"] = {{"golden", golden_bound()}, {"sub_poisson", sub_poisson_threshold()}};
    out << io::dump(j);
}

} // namespace pcpdc::app
