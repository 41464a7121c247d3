#include "pcpdc/csd.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "pcpdc/parallel.hpp"

namespace pcpdc {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::string format_report(const GenuinenessReport& r)
{
    std::ostringstream os;
    os.precision(6);
    os << "kernel is not a genuine CSD (hermitian_defect=" << r.hermitian_defect
       << ", min_eigenvalue_ratio=" << r.min_eigenvalue_ratio
       << ", frobenius_norm=" << r.frobenius_norm << ")";
    return os.str();
}

} // namespace

CsdKernel::CsdKernel(ComplexMatrix matrix, SampledGrid grid)
    : matrix_(std::move(matrix)), grid_(std::move(grid))
{
    if (matrix_.rows() != matrix_.cols())
        throw DomainError("CSD matrix must be square");
    if (static_cast<std::size_t>(matrix_.rows()) != grid_.size())
        throw DomainError("CSD matrix size does not match grid");
}

ComplexMatrix CsdKernel::symmetrized() const
{
    const RealVector s = grid_.sqrt_weights();
    return s.asDiagonal() * matrix_ * s.asDiagonal();
}

double CsdKernel::quadrature_trace() const
{
    double t = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        t += matrix_(idx(i), idx(i)).real() * grid_.weight(i);
    return t;
}

double CsdKernel::quadrature_frobenius_sq() const
{
    double f = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            f += std::norm(matrix_(idx(i), idx(j))) * grid_.weight(i) * grid_.weight(j);
    return f;
}

std::string kernel_fingerprint(const CsdKernel& kernel)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const void* data, std::size_t bytes) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t k = 0; k < bytes; ++k) {
            h ^= p[k];
            h *= 0x100000001b3ULL;
        }
    };
    mix(kernel.grid().points().data(), kernel.size() * sizeof(double));
    mix(kernel.grid().weights().data(), kernel.size() * sizeof(double));
    mix(kernel.matrix().data(), kernel.size() * kernel.size() * sizeof(Complex));

    static constexpr char hex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

void GsmParams::validate() const
{
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(sigma_s))
        throw DomainError("GSM sigma_s must be positive");
    if (!positive(sigma_c))
        throw DomainError("GSM sigma_c must be positive");
    if (!positive(amplitude))
        throw DomainError("GSM amplitude must be positive");
}

double GsmParams::coherence_ratio_clamped() const
{
    return std::clamp(coherence_ratio(), 0.0, 1.0);
}

bool GsmParams::ratio_in_unit_interval() const
{
    const double r = coherence_ratio();
    return r >= 0.0 && r <= 1.0;
}

CsdKernel gsm_csd(const GsmParams& params, const SampledGrid& grid)
{
    params.validate();
    const std::size_t n = grid.size();
    const double a = 1.0 / (4.0 * params.sigma_s * params.sigma_s);
    const double b = 1.0 / (2.0 * params.sigma_c * params.sigma_c);

    ComplexMatrix w(idx(n), idx(n));
    parallel_for(n, [&](std::size_t i) {
        const double r1 = grid.point(i);
        for (std::size_t j = 0; j < n; ++j) {
            const double r2 = grid.point(j);
            const double d = r1 - r2;
            w(idx(i), idx(j)) = params.amplitude * std::exp(-a * (r1 * r1 + r2 * r2)) * std::exp(-b * d * d);
        }
    });
    return CsdKernel(std::move(w), grid);
}

CsdKernel genuine_csd_from_weight(const WeightRepresentation& rep, const SampledGrid& grid)
{
    if (rep.weights.size() != rep.response_kernels.size())
        throw DomainError("weight representation: weights and response kernels differ in count");
    for (std::size_t a = 0; a < rep.weights.size(); ++a) {
        if (!(rep.weights[a] >= 0.0))
            throw DomainError("weight representation: p[" + std::to_string(a) + "] is negative");
        if (static_cast<std::size_t>(rep.response_kernels[a].size()) != grid.size())
            throw DomainError("weight representation: response kernel " + std::to_string(a) +
                              " does not match grid length");
    }

    const std::size_t n = grid.size();
    ComplexMatrix w = ComplexMatrix::Zero(idx(n), idx(n));
    for (std::size_t a = 0; a < rep.weights.size(); ++a) {
        const ComplexVector& h = rep.response_kernels[a];
        w.noalias() += rep.weights[a] * (h.conjugate() * h.transpose());
    }
    return CsdKernel(std::move(w), grid);
}

GenuinenessReport check_genuine(const CsdKernel& kernel)
{
    GenuinenessReport report;
    const ComplexMatrix& w = kernel.matrix();
    const std::size_t n = kernel.size();

    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex v = w(idx(i), idx(j));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                finite = false;
            report.hermitian_defect =
                std::max(report.hermitian_defect, std::abs(v - std::conj(w(idx(j), idx(i)))));
        }
    }
    report.frobenius_norm = std::sqrt(kernel.quadrature_frobenius_sq());
    if (!finite) {
        report.hermitian_defect = std::numeric_limits<double>::infinity();
        report.min_eigenvalue_ratio = -std::numeric_limits<double>::infinity();
        report.passes = false;
        return report;
    }

    const ComplexMatrix b = kernel.symmetrized();
    const ComplexMatrix herm = 0.5 * (b + b.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
    const RealVector& ev = solver.eigenvalues();
    const double lo = ev.minCoeff();
    const double radius = std::max(std::abs(lo), std::abs(ev.maxCoeff()));
    report.min_eigenvalue_ratio = radius > 0.0 ? lo / radius : 0.0;

    report.passes = report.hermitian_defect < kHermitianTolerance &&
                    report.min_eigenvalue_ratio >= -kPsdTolerance;
    return report;
}

NotGenuineError::NotGenuineError(GenuinenessReport report)
    : std::runtime_error(format_report(report)), report_(report)
{
}

GenuinenessReport require_genuine(const CsdKernel& kernel)
{
    GenuinenessReport report = check_genuine(kernel);
    if (!report.passes)
        throw NotGenuineError(report);
    return report;
}

} // namespace pcpdc
