#include "pcpdc/grid.hpp"

#include <cmath>
#include <string>

namespace pcpdc {

SampledGrid::SampledGrid(std::vector<double> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)), half_width_(0.0)
{
    if (points_.size() < 2)
        throw DomainError("grid needs at least two points, got " + std::to_string(points_.size()));
    if (points_.size() != weights_.size())
        throw DomainError("grid points and weights differ in length");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i]))
            throw DomainError("grid point " + std::to_string(i) + " is not finite");
        if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
            throw DomainError("grid weight " + std::to_string(i) + " is not positive");
        if (i > 0 && !(points_[i] > points_[i - 1]))
            throw DomainError("grid points not strictly increasing at index " + std::to_string(i));
    }
    half_width_ = 0.5 * (points_.back() - points_.front());
}

RealVector SampledGrid::sqrt_weights() const
{
    RealVector s(static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i)
        s(static_cast<Eigen::Index>(i)) = std::sqrt(weights_[i]);
    return s;
}

SampledGrid make_uniform_grid(std::size_t n, double half_width)
{
    if (n < 2)
        throw DomainError("make_uniform_grid: n must be >= 2");
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw DomainError("make_uniform_grid: half_width must be positive");

    const double h = 2.0 * half_width / static_cast<double>(n - 1);
    std::vector<double> points(n), weights(n, h);
    for (std::size_t i = 0; i < n; ++i)
        points[i] = -half_width + h * static_cast<double>(i);
    // pin the right end and the centre exactly
    points.back() = half_width;
    if (n % 2 == 1)
        points[n / 2] = 0.0;
    weights.front() = weights.back() = 0.5 * h;
    return SampledGrid(std::move(points), std::move(weights));
}

SampledGrid make_trapezoid_grid(std::vector<double> points)
{
    if (points.size() < 2)
        throw DomainError("make_trapezoid_grid: need at least two points");
    const std::size_t n = points.size();
    std::vector<double> weights(n);
    weights[0] = 0.5 * (points[1] - points[0]);
    weights[n - 1] = 0.5 * (points[n - 1] - points[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i)
        weights[i] = 0.5 * (points[i + 1] - points[i - 1]);
    return SampledGrid(std::move(points), std::move(weights));
}

Complex inner_product(std::span<const Complex> f, std::span<const Complex> g,
                      const SampledGrid& grid)
{
    if (f.size() != grid.size() || g.size() != grid.size())
        throw DomainError("inner_product: sequence length does not match grid");
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < f.size(); ++i)
        acc += std::conj(f[i]) * g[i] * grid.weight(i);
    return acc;
}

Complex inner_product(const ComplexVector& f, const ComplexVector& g, const SampledGrid& grid)
{
    return inner_product(std::span<const Complex>(f.data(), static_cast<std::size_t>(f.size())),
                         std::span<const Complex>(g.data(), static_cast<std::size_t>(g.size())),
                         grid);
}

} // namespace pcpdc
