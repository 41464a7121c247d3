// pcpdc: command-line front end for the partially coherent SPDC toolkit.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcpdc/app/commands.hpp"
#include "pcpdc/app/config.hpp"
#include "pcpdc/parallel.hpp"
#include "pcpdc/types.hpp"

using namespace pcpdc;

namespace {

app::RunConfig resolve_config(const std::string& config_path, const std::vector<std::string>& overrides)
{
    nlohmann::json raw = config_path.empty() ? app::default_config_json() : app::load_config_file(config_path);
    for (const auto& o : overrides)
        app::apply_override(raw, o);
    return app::parse_config(raw);
}

void report_written(const app::Written& files)
{
    for (const auto& f : files)
        std::cout << f.string() << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App cli{"Partially coherent SPDC toolkit: coherent modes, two-photon amplitudes, entanglement bounds"};
    cli.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    cli.add_option("-c,--config", config_path, "JSON run configuration (defaults built in)");
    cli.add_option("--set", overrides, "Override a config key, e.g. --set pump.lambda=0.5")->take_all();

    auto* modes = cli.add_subcommand("modes", "Coherent-mode decomposition of the GSM source");
    auto* figure1 = cli.add_subcommand("figure1", "CSD-operator expectation curves against kappa");
    auto* figure2 = cli.add_subcommand("figure2", "Entanglement prefactors and statistics regimes over m_e");
    auto* tpa = cli.add_subcommand("tpa", "One-photon amplitude, two-photon amplitudes and Schmidt data");

    auto* check = cli.add_subcommand("check", "Genuineness check of a kernel CSV");
    std::string kernel_path;
    std::string grid_path;
    check->add_option("kernel", kernel_path, "Kernel CSV (i,j,r_i,r_j,re_w,im_w)")->required();
    check->add_option("--grid", grid_path, "Grid CSV (point,weight); trapezoid weights otherwise");

    auto* classify = cli.add_subcommand("classify", "Photon statistics regime for an entanglement value");
    double m_e = 0.0;
    classify->add_option("--m-e", m_e, "Entanglement measure in [0, 1]")->required();

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e);
        return code == 0 ? app::kSuccess : app::kConfigFailure;
    }

    apply_thread_env();

    try {
        if (*check) {
            std::optional<std::filesystem::path> grid;
            if (!grid_path.empty())
                grid = grid_path;
            return app::cmd_check(kernel_path, grid, std::cout) ? app::kSuccess : app::kRuntimeFailure;
        }
        if (*classify) {
            try {
                app::cmd_classify(m_e, std::cout);
            } catch (const DomainError& e) {
                std::cerr << "classify: " << e.what() << '\n';
                return app::kConfigFailure;
            }
            return app::kSuccess;
        }

        const app::RunConfig cfg = resolve_config(config_path, overrides);
        if (*modes)
            report_written(app::cmd_modes(cfg));
        else if (*figure1)
            report_written(app::cmd_figure1(cfg));
        else if (*figure2)
            report_written(app::cmd_figure2(cfg));
        else if (*tpa)
            report_written(app::cmd_tpa(cfg));
        return app::kSuccess;
    } catch (const app::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return app::kConfigFailure;
    } catch (const NotGenuineError& e) {
        std::cerr << "genuineness failure: " << e.what() << '\n';
        return app::kRuntimeFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return app::kRuntimeFailure;
    }
}
