#include "pcpdc/tpa.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pcpdc {

TpaKernel::TpaKernel(RealMatrix matrix, SampledGrid grid, std::optional<TpaProvenance> provenance)
    : matrix_(std::move(matrix)), grid_(std::move(grid)), provenance_(std::move(provenance))
{
    if (matrix_.rows() != matrix_.cols() || static_cast<std::size_t>(matrix_.rows()) != grid_.size())
        throw DomainError("TPA matrix must be square and match the grid");
    const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
        for (Eigen::Index j = 0; j < matrix_.cols(); ++j) {
            const double v = matrix_(i, j);
            if (!std::isfinite(v) || v < 0.0)
                throw InvariantError("TPA entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                     ") is negative or not finite");
            if (std::abs(v - matrix_(j, i)) > kSymmetryTolerance * scale)
                throw InvariantError("TPA matrix is not symmetric");
        }
    }
}

RealMatrix entangled_component(const CsdKernel& gamma1)
{
    return gamma1.matrix().cwiseAbs2();
}

RealMatrix factorized_component(const CsdKernel& gamma1)
{
    const ComplexVector diag = gamma1.matrix().diagonal();
    const double scale = diag.size() > 0 ? diag.cwiseAbs().maxCoeff() : 0.0;
    const double tol = 1e-12 * std::max(scale, 1e-300);
    RealVector d(diag.size());
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        if (std::abs(diag(i).imag()) > tol)
            throw InvariantError("factorized_component: diagonal entry " + std::to_string(i) + " is complex");
        if (diag(i).real() < -tol)
            throw InvariantError("factorized_component: diagonal entry " + std::to_string(i) + " is negative");
        d(i) = std::max(0.0, diag(i).real());
    }
    return d * d.transpose();
}

TpaKernel siegert_tpa(const CsdKernel& gamma1)
{
    require_genuine(gamma1);
    RealMatrix g2 = factorized_component(gamma1) + entangled_component(gamma1);
    return TpaKernel(std::move(g2), gamma1.grid());
}

TpaKernel tpa_with_entanglement(const CsdKernel& gamma1, double m_e)
{
    if (!(m_e >= 0.0 && m_e <= 1.0))
        throw DomainError("tpa_with_entanglement: m_e must lie in [0, 1]");
    const double ce = std::sqrt(m_e);
    const double cf = std::sqrt(1.0 - m_e * m_e);
    RealMatrix g2 = ce * entangled_component(gamma1) + cf * factorized_component(gamma1);
    return TpaKernel(std::move(g2), gamma1.grid(), TpaProvenance{m_e, kernel_fingerprint(gamma1)});
}

double schmidt_number(const std::vector<double>& singular_values)
{
    double s2 = 0.0, s4 = 0.0;
    for (double s : singular_values) {
        s2 += s * s;
        s4 += s * s * s * s;
    }
    return s4 > 0.0 ? s2 * s2 / s4 : 1.0;
}

SchmidtData schmidt_decompose(const RealMatrix& kernel, const SampledGrid& grid)
{
    if (kernel.rows() != kernel.cols() || static_cast<std::size_t>(kernel.rows()) != grid.size())
        throw DomainError("schmidt_decompose: kernel must be square and match the grid");
    const RealVector s = grid.sqrt_weights();
    const RealMatrix b = s.asDiagonal() * kernel * s.asDiagonal();
    Eigen::BDCSVD<RealMatrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);

    SchmidtData out;
    const RealVector& sv = svd.singularValues();
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    const RealVector inv = s.cwiseInverse();
    out.left_modes = inv.asDiagonal() * svd.matrixU();
    out.right_modes = inv.asDiagonal() * svd.matrixV();
    out.schmidt_number = schmidt_number(out.singular_values);
    return out;
}

SchmidtData schmidt_decompose(const TpaKernel& kernel)
{
    return schmidt_decompose(kernel.matrix(), kernel.grid());
}

} // namespace pcpdc
