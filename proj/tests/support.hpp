#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing in
// here calls the code path it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pcpdc/csd.hpp"
#include "pcpdc/grid.hpp"

namespace pcpdc::test {

/// Random genuine kernel: sum_a p_a conj(H_a) H_a^T with p_a >= 0 and
/// complex Gaussian H_a, fixed seed.
inline WeightRepresentation random_representation(std::uint32_t seed, std::size_t n, std::size_t terms)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> p(0.0, 1.0);
    std::normal_distribution<double> g(0.0, 1.0);
    WeightRepresentation rep;
    for (std::size_t a = 0; a < terms; ++a) {
        rep.weights.push_back(p(rng));
        ComplexVector h(static_cast<Eigen::Index>(n));
        for (auto& v : h)
            v = Complex(g(rng), g(rng));
        rep.response_kernels.push_back(std::move(h));
    }
    return rep;
}

inline CsdKernel random_genuine_kernel(std::uint32_t seed, std::size_t n = 24, std::size_t terms = 6)
{
    const SampledGrid grid = make_uniform_grid(n, 3.0);
    return genuine_csd_from_weight(random_representation(seed, n, terms), grid);
}

/// Spectrum of sqrt(w) W sqrt(w) from the general (non-Hermitian) complex
/// Schur solver, real parts sorted descending.
inline std::vector<double> general_solver_spectrum(const CsdKernel& kernel)
{
    const RealVector s = kernel.grid().sqrt_weights();
    const ComplexMatrix b = s.asDiagonal() * kernel.matrix() * s.asDiagonal();
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(b, false);
    std::vector<double> ev;
    for (const auto& v : solver.eigenvalues())
        ev.push_back(v.real());
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

/// Closed-form geometric ratio of the Gaussian Schell-model spectrum.
inline double gsm_spectrum_ratio(double sigma_s, double sigma_c)
{
    const double a = 1.0 / (4.0 * sigma_s * sigma_s);
    const double b = 1.0 / (2.0 * sigma_c * sigma_c);
    const double c = std::sqrt(a * a + 2.0 * a * b);
    return b / (a + b + c);
}

inline double relative_frobenius(const ComplexMatrix& a, const ComplexMatrix& b)
{
    return (a - b).norm() / b.norm();
}

} // namespace pcpdc::test
