#include "pcpdc/opamp.hpp"

#include <cmath>
#include <sstream>

#include "pcpdc/parallel.hpp"

namespace pcpdc {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

} // namespace

void PumpModeParams::validate() const
{
    if (!(alpha0 >= 0.0) || !std::isfinite(alpha0))
        throw DomainError("pump alpha0 must be non-negative");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw DomainError("pump lambda must lie in [0, 1]");
    if (!positive(kappa_scale))
        throw DomainError("pump kappa_scale must be positive");
    if (!positive(delta_t))
        throw DomainError("pump delta_t must be positive");
}

double PumpModeParams::alpha(double kappa) const
{
    const double x = kappa / kappa_scale;
    switch (mapping) {
    case AlphaMapping::quadratic:
        return alpha0 * x * x;
    case AlphaMapping::linear:
    default:
        return alpha0 * std::abs(x);
    }
}

void PhaseMatchingModel::validate() const
{
    if (!positive(length_scale))
        throw DomainError("phase matching length_scale must be positive");
    if (!std::isfinite(carrier))
        throw DomainError("phase matching carrier must be finite");
}

double PhaseMatchingModel::envelope(double kappa) const
{
    const double half = 0.5 * (kappa - carrier) * length_scale;
    if (form == EnvelopeForm::gaussian)
        return std::exp(-kGaussianSincMatch * half * half);
    return half == 0.0 ? 1.0 : std::sin(half) / half;
}

double csd_operator_expectation(double alpha, double lambda)
{
    if (!(alpha >= 0.0))
        throw DomainError("csd_operator_expectation: alpha must be non-negative");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw DomainError("csd_operator_expectation: lambda must lie in [0, 1]");
    if (alpha == 0.0)
        return 1.0;
    if (lambda == 0.0)
        return 0.0;
    const double log_lambda = std::log(lambda);
    const double a2 = alpha * alpha;
    return std::exp(-(a2 + a2 * a2) * log_lambda * log_lambda);
}

double sinc_phase_matching(double kappa, double delta_t)
{
    if (!positive(delta_t))
        throw DomainError("sinc_phase_matching: delta_t must be positive");
    const double x = 0.5 * kappa * delta_t;
    return x == 0.0 ? 1.0 : std::sin(x) / x;
}

Figure1Table figure1_curves(std::span<const double> kappa_grid, std::span<const double> lambdas,
                            const PumpModeParams& pump)
{
    std::ostringstream bad;
    for (double l : lambdas)
        if (!(l >= 0.0 && l <= 1.0))
            bad << (bad.tellp() > 0 ? ", " : "") << l;
    if (bad.tellp() > 0)
        throw DomainError("figure1_curves: lambda values outside [0, 1]: " + bad.str());

    PumpModeParams checked = pump;
    checked.lambda = 1.0; // per-curve lambdas are validated above
    checked.validate();

    Figure1Table table;
    table.kappa.assign(kappa_grid.begin(), kappa_grid.end());
    table.lambdas.assign(lambdas.begin(), lambdas.end());
    table.sinc.reserve(kappa_grid.size());
    for (double k : kappa_grid)
        table.sinc.push_back(sinc_phase_matching(k, pump.delta_t));
    for (double l : lambdas) {
        std::vector<double> curve;
        curve.reserve(kappa_grid.size());
        for (double k : kappa_grid)
            curve.push_back(csd_operator_expectation(pump.alpha(k), l));
        table.curves.push_back(std::move(curve));
    }
    return table;
}

CsdKernel one_photon_amplitude(const SampledGrid& grid, const SampledGrid& k_grid,
                               const PumpModeParams& pump, const PhaseMatchingModel& pm)
{
    return one_photon_amplitude(grid, k_grid.points(), k_grid.weights(), pump, pm);
}

CsdKernel one_photon_amplitude(const SampledGrid& grid, std::span<const double> kappas,
                               std::span<const double> k_weights, const PumpModeParams& pump,
                               const PhaseMatchingModel& pm)
{
    pump.validate();
    pm.validate();
    if (kappas.empty() || kappas.size() != k_weights.size())
        throw DomainError("one_photon_amplitude: wavevector nodes and weights must be non-empty and equal in length");
    for (double w : k_weights)
        if (!positive(w))
            throw DomainError("one_photon_amplitude: wavevector weights must be positive");

    const std::size_t n = grid.size();
    const std::size_t nk = kappas.size();

    // Rows of F: amplitude(k) * exp(i kappa_k r_j), amplitude^2 = w_k E_k |env_k|^2.
    ComplexMatrix f(idx(nk), idx(n));
    for (std::size_t k = 0; k < nk; ++k) {
        const double kappa = kappas[k];
        const double weight = k_weights[k] * csd_operator_expectation(pump.alpha(kappa), pump.lambda);
        const double env = pm.envelope(kappa);
        const double amp = std::sqrt(weight) * std::abs(env);
        for (std::size_t j = 0; j < n; ++j) {
            const double phase = kappa * grid.point(j);
            f(idx(k), idx(j)) = amp * Complex(std::cos(phase), std::sin(phase));
        }
    }

    // Gamma_ij = sum_k conj(f_ki) f_kj, summed in a fixed k order per entry.
    ComplexMatrix gamma(idx(n), idx(n));
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < nk; ++k)
                acc += std::conj(f(idx(k), idx(i))) * f(idx(k), idx(j));
            gamma(idx(i), idx(j)) = acc;
        }
    });
    return CsdKernel(std::move(gamma), grid);
}

std::string to_string(AlphaMapping m)
{
    return m == AlphaMapping::quadratic ? "quadratic" : "linear";
}

std::string to_string(EnvelopeForm f)
{
    return f == EnvelopeForm::gaussian ? "gaussian" : "sinc";
}

} // namespace pcpdc
