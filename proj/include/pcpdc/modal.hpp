#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pcpdc/csd.hpp"
#include "pcpdc/grid.hpp"
#include "pcpdc/types.hpp"

namespace pcpdc {

/// Coherent modes of a CSD kernel.
///
/// Column n of modes() holds phi_n sampled on the grid. The convention is
/// W(r1, r2) = sum_n Lambda_n conj(phi_n(r1)) phi_n(r2), so that
/// sum_i w_i phi_n(r_i) W(r_i, r_j) = Lambda_n phi_n(r_j).
struct ModalDecomposition {
    std::vector<double> eigenvalues; ///< descending; all n of them, tiny negatives included
    ComplexMatrix modes;             ///< n x n, orthonormal columns under the grid inner product
    SampledGrid grid;

    std::size_t count() const noexcept { return eigenvalues.size(); }
    ComplexVector mode(std::size_t n) const { return modes.col(static_cast<Eigen::Index>(n)); }

    /// Eigenvalues with everything below kReportFloor * Lambda_max dropped.
    std::vector<double> reported_eigenvalues() const;
};

/// Relative floor under which eigenvalues are treated as discretization noise.
inline constexpr double kReportFloor = 1e-12;

/// Nystrom solution of the Fredholm eigenproblem. Requires a genuine kernel
/// (throws NotGenuineError with the report otherwise).
ModalDecomposition coherent_mode_decomposition(const CsdKernel& kernel);

/// sum_{n < n_modes} Lambda_n conj(phi_n(r1)) phi_n(r2)
CsdKernel mercer_reconstruct(const ModalDecomposition& decomp, std::size_t n_modes);

/// sum_{l=0}^{m} (-1)^l lambda^{2l} / l!, lambda in [0, 1].
double eigenvalue_partial_sum(std::size_t m, double lambda);

/// Partial sums Lambda_0..Lambda_max_order of the eigenvalue power series.
struct EigenvalueSeries {
    double lambda = 0.0;
    std::size_t max_order = 0;
    std::vector<double> partial_sums;
};

EigenvalueSeries make_eigenvalue_series(double lambda, std::size_t max_order);

/// Mercer-type sum in which mode m is weighted by the partial sum of order
/// min(m, order) instead of its eigenvalue. With order >= count() this is
/// the coupled double sum exactly as written; smaller orders cap the inner
/// sum for every mode beyond it.
CsdKernel series_weighted_kernel(const ModalDecomposition& modes, double lambda, std::size_t order);

/// sum Lambda^2 / (sum Lambda)^2; throws DomainError on a sequence without a
/// positive entry or with a negative one.
double effective_degree_of_coherence(std::span<const double> eigenvalues);

/// Which denominator the effective-coherence series uses.
enum class SeriesDenominator {
    factorial,        ///< l!, the eigenvalue series as written
    double_factorial, ///< (2l)!, the alternative printed form
};

/// effective_degree_of_coherence over the partial sums n = 0..n_max-1.
double mu_eff_from_series(double lambda, std::size_t n_max,
                          SeriesDenominator denominator = SeriesDenominator::factorial);

} // namespace pcpdc
