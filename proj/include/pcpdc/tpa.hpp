#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcpdc/csd.hpp"
#include "pcpdc/grid.hpp"
#include "pcpdc/types.hpp"

namespace pcpdc {

/// Where a TPA built with an explicit entanglement weight came from.
struct TpaProvenance {
    double m_e = 0.0;
    std::string source_id; ///< kernel_fingerprint() of the one-photon amplitude
};

/// Two-photon amplitude Gamma2(r_i, r_j): real, non-negative, symmetric.
class TpaKernel {
public:
    /// Throws InvariantError when the matrix has a negative or non-finite
    /// entry or is not symmetric within kSymmetryTolerance.
    TpaKernel(RealMatrix matrix, SampledGrid grid, std::optional<TpaProvenance> provenance = std::nullopt);

    const RealMatrix& matrix() const noexcept { return matrix_; }
    const SampledGrid& grid() const noexcept { return grid_; }
    const std::optional<TpaProvenance>& provenance() const noexcept { return provenance_; }
    std::size_t size() const noexcept { return grid_.size(); }

    static constexpr double kSymmetryTolerance = 1e-12;

private:
    RealMatrix matrix_;
    SampledGrid grid_;
    std::optional<TpaProvenance> provenance_;
};

struct SchmidtData {
    std::vector<double> singular_values; ///< descending
    RealMatrix left_modes;               ///< columns orthonormal under the grid inner product
    RealMatrix right_modes;
    double schmidt_number = 1.0;         ///< (sum s^2)^2 / sum s^4; 1 for an all-zero kernel
};

/// |Gamma1(r1, r2)|^2
RealMatrix entangled_component(const CsdKernel& gamma1);

/// Gamma1(r1, r1) Gamma1(r2, r2). Throws InvariantError when the diagonal
/// is negative or carries an imaginary part.
RealMatrix factorized_component(const CsdKernel& gamma1);

/// Gamma1(r1,r1) Gamma1(r2,r2) + |Gamma1(r1,r2)|^2 for a genuine Gamma1.
TpaKernel siegert_tpa(const CsdKernel& gamma1);

/// sqrt(m_e) entangled + sqrt(1 - m_e^2) factorized, m_e in [0, 1].
TpaKernel tpa_with_entanglement(const CsdKernel& gamma1, double m_e);

/// SVD of sqrt(w) K sqrt(w); modes are divided back by sqrt(w).
SchmidtData schmidt_decompose(const RealMatrix& kernel, const SampledGrid& grid);
SchmidtData schmidt_decompose(const TpaKernel& kernel);

/// (sum s^2)^2 / sum s^4
double schmidt_number(const std::vector<double>& singular_values);

} // namespace pcpdc
