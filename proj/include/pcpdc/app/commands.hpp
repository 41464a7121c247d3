#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "pcpdc/app/config.hpp"

namespace pcpdc::app {

/// Exit statuses shared by every command.
enum ExitCode : int { kSuccess = 0, kRuntimeFailure = 1, kConfigFailure = 2 };

/// Each command returns the files it wrote, in write order.
using Written = std::vector<std::filesystem::path>;

/// GSM kernel -> coherent modes: grid.csv, csd.csv, modes.csv,
/// mu_eff_series.csv, eigenvalues.json.
Written cmd_modes(const RunConfig& cfg);

/// figure1.csv over the k_grid nodes.
Written cmd_figure1(const RunConfig& cfg);

/// figure2.csv over a uniform m_e grid.
Written cmd_figure2(const RunConfig& cfg);

/// One-photon amplitude -> Siegert and entanglement-weighted TPAs with their
/// Schmidt data and the entanglement report.
Written cmd_tpa(const RunConfig& cfg);

/// Genuineness of an imported kernel; prints the report as JSON. Returns
/// whether the kernel passes.
bool cmd_check(const std::filesystem::path& kernel_csv, const std::optional<std::filesystem::path>& grid_csv,
               std::ostream& out);

/// Prints {m_e, regime, bounds} as JSON.
void cmd_classify(double m_e, std::ostream& out);

} // namespace pcpdc::app
