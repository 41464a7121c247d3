#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pcpdc/types.hpp"

namespace pcpdc {

/// Quadrature discretization of a one-dimensional transverse coordinate.
///
/// All coordinates are dimensionless. Points are strictly increasing and
/// every weight is positive, so integrals reduce to sum_i f(x_i) w_i.
class SampledGrid {
public:
    /// Validates and adopts an arbitrary rule. Throws DomainError when the
    /// points are not strictly increasing, a weight is not positive, the
    /// lengths differ, or fewer than two nodes are given.
    SampledGrid(std::vector<double> points, std::vector<double> weights);

    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<double>& points() const noexcept { return points_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double point(std::size_t i) const { return points_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }

    /// Half of the covered interval, (x_last - x_first) / 2.
    double half_width() const noexcept { return half_width_; }

    /// Elementwise sqrt of the weights; used for Nystrom symmetrization.
    RealVector sqrt_weights() const;

    bool operator==(const SampledGrid&) const = default;

private:
    std::vector<double> points_;
    std::vector<double> weights_;
    double half_width_;
};

/// n equally spaced points on [-half_width, half_width] with composite
/// trapezoid weights.
SampledGrid make_uniform_grid(std::size_t n, double half_width);

/// Composite trapezoid weights for arbitrary strictly increasing nodes.
SampledGrid make_trapezoid_grid(std::vector<double> points);

/// sum_i conj(f_i) g_i w_i
Complex inner_product(std::span<const Complex> f, std::span<const Complex> g,
                      const SampledGrid& grid);
Complex inner_product(const ComplexVector& f, const ComplexVector& g,
                      const SampledGrid& grid);

} // namespace pcpdc
