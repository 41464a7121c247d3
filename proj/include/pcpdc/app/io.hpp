#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pcpdc/csd.hpp"
#include "pcpdc/entangle.hpp"
#include "pcpdc/grid.hpp"
#include "pcpdc/modal.hpp"
#include "pcpdc/opamp.hpp"
#include "pcpdc/tpa.hpp"

namespace pcpdc::io {

/// Malformed input file (CSV layout, unparsable number, inconsistent size).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 17 significant digits, so the value round-trips exactly.
std::string format_double(double v);
double parse_double(std::string_view text);

/// Writes to <path>.tmp and renames over <path>.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// point,weight
std::string grid_csv(const SampledGrid& grid);
SampledGrid parse_grid_csv(std::string_view text);

// i,j,r_i,r_j,re_w,im_w
std::string kernel_csv(const CsdKernel& kernel);
/// Rebuilds a kernel. Without an explicit grid, trapezoid weights are
/// derived from the r_i column.
CsdKernel parse_kernel_csv(std::string_view text, const std::optional<SampledGrid>& grid = std::nullopt);

// i,j,r_i,r_j,gamma2
std::string tpa_csv(const TpaKernel& kernel);
RealMatrix parse_tpa_csv(std::string_view text);

// n,eigenvalue,r,re_phi,im_phi (long format, first n_modes modes)
std::string modes_csv(const ModalDecomposition& decomp, std::size_t n_modes);

// kappa,sinc,val_lambda_<lambda>...
std::string figure1_csv(const Figure1Table& table);

// m_e,sqrt_m,sqrt_1_minus_m2,regime
std::string figure2_csv(const std::vector<Figure2Row>& rows);

nlohmann::ordered_json eigen_summary_json(const ModalDecomposition& decomp, const CsdKernel& kernel);
nlohmann::ordered_json schmidt_json(const SchmidtData& data, const std::optional<TpaProvenance>& provenance);
nlohmann::ordered_json report_json(const EntanglementReport& report,
                                   const std::optional<EntanglementFit>& fit = std::nullopt);
nlohmann::ordered_json genuineness_json(const GenuinenessReport& report);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

} // namespace pcpdc::io
