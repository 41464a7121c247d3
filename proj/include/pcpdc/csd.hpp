#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcpdc/grid.hpp"
#include "pcpdc/types.hpp"

namespace pcpdc {

/// Cross-spectral density W(r_i, r_j) sampled on a grid.
///
/// The kernel is a plain value: construction only checks that the matrix is
/// square and matches the grid. Admissibility (Hermitian, non-negative
/// definite) is a separate question answered by check_genuine().
class CsdKernel {
public:
    CsdKernel(ComplexMatrix matrix, SampledGrid grid);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const SampledGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return grid_.size(); }
    Complex operator()(std::size_t i, std::size_t j) const
    {
        return matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    /// sqrt(w_i) W_ij sqrt(w_j); its spectrum is the Nystrom spectrum.
    ComplexMatrix symmetrized() const;

    /// sum_i W_ii w_i
    double quadrature_trace() const;
    /// sum_ij |W_ij|^2 w_i w_j
    double quadrature_frobenius_sq() const;

private:
    ComplexMatrix matrix_;
    SampledGrid grid_;
};

/// Stable content hash (FNV-1a over the grid and matrix bytes), hex encoded.
std::string kernel_fingerprint(const CsdKernel& kernel);

/// Gaussian Schell-model source.
struct GsmParams {
    double sigma_s = 1.0;   ///< source width
    double sigma_c = 1.0;   ///< coherence length
    double amplitude = 1.0; ///< peak spectral density W(0, 0)

    /// Throws DomainError unless every field is positive and finite.
    void validate() const;

    /// Raw width/coherence ratio sigma_s / sigma_c.
    double coherence_ratio() const { return sigma_s / sigma_c; }
    /// Ratio clamped into [0, 1]; see ratio_in_unit_interval().
    double coherence_ratio_clamped() const;
    bool ratio_in_unit_interval() const;
};

/// Discrete weight-function form: W = sum_a p_a conj(H_a(r1)) H_a(r2).
struct WeightRepresentation {
    std::vector<double> weights;
    std::vector<ComplexVector> response_kernels;
};

struct GenuinenessReport {
    double hermitian_defect = 0.0;      ///< max |W_ij - conj(W_ji)|
    double min_eigenvalue_ratio = 0.0;  ///< lambda_min / lambda_max of the symmetrized matrix
    double frobenius_norm = 0.0;        ///< quadrature Hilbert-Schmidt norm
    bool passes = false;
};

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;

/// W(r1, r2) = A exp(-(r1^2 + r2^2) / (4 s^2)) exp(-(r1 - r2)^2 / (2 c^2))
CsdKernel gsm_csd(const GsmParams& params, const SampledGrid& grid);

/// Assembles W from a weight representation. Non-negative weights make the
/// result genuine by construction; a negative p_a is rejected with its index.
CsdKernel genuine_csd_from_weight(const WeightRepresentation& rep, const SampledGrid& grid);

/// Admissibility report. Never throws.
///
/// min_eigenvalue_ratio is lambda_min divided by the spectral radius, which
/// reduces to lambda_min / lambda_max for any kernel with a positive top
/// eigenvalue and stays negative for a negative-definite input. A zero
/// kernel reports 0.
GenuinenessReport check_genuine(const CsdKernel& kernel);

/// Thrown when an operation requires a genuine kernel and gets one that
/// fails check_genuine(); carries the report.
class NotGenuineError : public std::runtime_error {
public:
    explicit NotGenuineError(GenuinenessReport report);
    const GenuinenessReport& report() const noexcept { return report_; }

private:
    GenuinenessReport report_;
};

/// check_genuine() or throw NotGenuineError.
GenuinenessReport require_genuine(const CsdKernel& kernel);

} // namespace pcpdc
