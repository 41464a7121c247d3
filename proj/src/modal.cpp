#include "pcpdc/modal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace pcpdc {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void require_unit_lambda(double lambda, const char* where)
{
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw DomainError(std::string(where) + ": lambda must lie in [0, 1]");
}

// sum_{l=0}^{m} (-1)^l lambda^{2l} / denom(l), terms built recursively.
// Neumaier-compensated: the plain running sum loses ~10 ulp to cancellation.
double alternating_partial_sum(std::size_t m, double lambda, SeriesDenominator denominator)
{
    const double x = lambda * lambda;
    double term = 1.0;
    double sum = 1.0;
    double carry = 0.0;
    for (std::size_t l = 1; l <= m; ++l) {
        const double dl = static_cast<double>(l);
        if (denominator == SeriesDenominator::factorial)
            term *= -x / dl;
        else
            term *= -x / ((2.0 * dl - 1.0) * (2.0 * dl));
        const double t = sum + term;
        carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + carry;
}

} // namespace

std::vector<double> ModalDecomposition::reported_eigenvalues() const
{
    std::vector<double> out;
    if (eigenvalues.empty())
        return out;
    const double floor = kReportFloor * eigenvalues.front();
    for (double v : eigenvalues)
        if (v >= floor && v > 0.0)
            out.push_back(v);
    return out;
}

ModalDecomposition coherent_mode_decomposition(const CsdKernel& kernel)
{
    require_genuine(kernel);

    const ComplexMatrix b = kernel.symmetrized();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (b + b.adjoint()));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("coherent_mode_decomposition: eigen-solver did not converge");

    const std::size_t n = kernel.size();
    const RealVector s = kernel.grid().sqrt_weights();
    ModalDecomposition out{std::vector<double>(n), ComplexMatrix(idx(n), idx(n)), kernel.grid()};

    // Eigen returns ascending order
    for (std::size_t k = 0; k < n; ++k) {
        const Eigen::Index src = idx(n - 1 - k);
        out.eigenvalues[k] = solver.eigenvalues()(src);
        ComplexVector u = solver.eigenvectors().col(src);
        // fix the global phase: largest component real positive
        Eigen::Index peak = 0;
        u.cwiseAbs().maxCoeff(&peak);
        u *= std::abs(u(peak)) / u(peak);
        out.modes.col(idx(k)) = u.conjugate().cwiseQuotient(s.cast<Complex>());
    }
    return out;
}

CsdKernel mercer_reconstruct(const ModalDecomposition& decomp, std::size_t n_modes)
{
    if (n_modes == 0 || n_modes > decomp.count())
        throw DomainError("mercer_reconstruct: n_modes must lie in [1, " +
                          std::to_string(decomp.count()) + "]");
    const std::size_t n = decomp.grid.size();
    ComplexMatrix w = ComplexMatrix::Zero(idx(n), idx(n));
    for (std::size_t m = 0; m < n_modes; ++m) {
        const ComplexVector phi = decomp.modes.col(idx(m));
        w.noalias() += decomp.eigenvalues[m] * (phi.conjugate() * phi.transpose());
    }
    return CsdKernel(std::move(w), decomp.grid);
}

double eigenvalue_partial_sum(std::size_t m, double lambda)
{
    require_unit_lambda(lambda, "eigenvalue_partial_sum");
    return alternating_partial_sum(m, lambda, SeriesDenominator::factorial);
}

EigenvalueSeries make_eigenvalue_series(double lambda, std::size_t max_order)
{
    require_unit_lambda(lambda, "make_eigenvalue_series");
    EigenvalueSeries series{lambda, max_order, {}};
    series.partial_sums.reserve(max_order + 1);
    for (std::size_t m = 0; m <= max_order; ++m)
        series.partial_sums.push_back(alternating_partial_sum(m, lambda, SeriesDenominator::factorial));
    return series;
}

CsdKernel series_weighted_kernel(const ModalDecomposition& modes, double lambda, std::size_t order)
{
    require_unit_lambda(lambda, "series_weighted_kernel");
    const std::size_t n = modes.grid.size();
    ComplexMatrix w = ComplexMatrix::Zero(idx(n), idx(n));
    for (std::size_t m = 0; m < modes.count(); ++m) {
        const double weight = alternating_partial_sum(std::min(m, order), lambda, SeriesDenominator::factorial);
        if (weight == 0.0)
            continue;
        const ComplexVector phi = modes.modes.col(idx(m));
        w.noalias() += weight * (phi.conjugate() * phi.transpose());
    }
    return CsdKernel(std::move(w), modes.grid);
}

double effective_degree_of_coherence(std::span<const double> eigenvalues)
{
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double v : eigenvalues) {
        if (v < 0.0)
            throw DomainError("effective_degree_of_coherence: negative eigenvalue");
        sum += v;
        sum_sq += v * v;
    }
    if (!(sum > 0.0))
        throw DomainError("effective_degree_of_coherence: no positive eigenvalue");
    return sum_sq / (sum * sum);
}

double mu_eff_from_series(double lambda, std::size_t n_max, SeriesDenominator denominator)
{
    require_unit_lambda(lambda, "mu_eff_from_series");
    if (n_max < 1)
        throw DomainError("mu_eff_from_series: n_max must be >= 1");
    std::vector<double> sums(n_max);
    for (std::size_t n = 0; n < n_max; ++n)
        sums[n] = alternating_partial_sum(n, lambda, denominator);
    return effective_degree_of_coherence(sums);
}

} // namespace pcpdc
