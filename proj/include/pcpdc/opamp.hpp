#pragma once

#include <span>
#include <string>
#include <vector>

#include "pcpdc/csd.hpp"
#include "pcpdc/grid.hpp"

namespace pcpdc {

/// How the coherent amplitude alpha depends on the wavevector mismatch.
enum class AlphaMapping {
    linear,    ///< alpha0 |kappa| / kappa_scale
    quadratic, ///< alpha0 (kappa / kappa_scale)^2
};

struct PumpModeParams {
    double alpha0 = 1.0;      ///< coherent amplitude scale, >= 0
    double lambda = 0.5;      ///< coherence parameter in [0, 1]
    double kappa_scale = 1.0; ///< detuning normalization, > 0
    double delta_t = 1.0;     ///< interaction time, > 0
    AlphaMapping mapping = AlphaMapping::linear;

    void validate() const;
    double alpha(double kappa) const;
};

enum class EnvelopeForm { sinc, gaussian };

struct PhaseMatchingModel {
    EnvelopeForm form = EnvelopeForm::sinc;
    double length_scale = 1.0; ///< interaction length proxy, > 0
    double carrier = 0.0;      ///< mean wavevector offset

    void validate() const;

    /// sinc: sin(x/2)/(x/2); gaussian: exp(-g (x/2)^2) with g chosen so the
    /// two envelopes share their half-maximum width; x = (kappa - carrier) L.
    double envelope(double kappa) const;
};

/// Coefficient matching exp(-g u^2) to sin(u)/u at half maximum.
inline constexpr double kGaussianSincMatch = 0.193;

/// exp(-(alpha^2 + alpha^4) ln(lambda)^2). lambda = 0 is taken as the limit
/// (0 for alpha > 0, 1 at alpha = 0). Throws DomainError for negative alpha
/// or lambda outside [0, 1].
double csd_operator_expectation(double alpha, double lambda);

/// sin(kappa dt / 2) / (kappa dt / 2), equal to 1 at kappa = 0.
double sinc_phase_matching(double kappa, double delta_t);

struct Figure1Table {
    std::vector<double> kappa;
    std::vector<double> sinc;
    std::vector<double> lambdas;
    std::vector<std::vector<double>> curves; ///< curves[l][k] for lambdas[l], kappa[k]
};

/// Operator expectation against kappa for each lambda, plus the sinc
/// reference column.
Figure1Table figure1_curves(std::span<const double> kappa_grid, std::span<const double> lambdas,
                            const PumpModeParams& pump);

/// Gamma1(r1, r2) = sum_k w_k E(alpha(kappa_k), lambda) conj(F(kappa_k, r1)) F(kappa_k, r2)
/// with F(kappa, r) = envelope(kappa) exp(i kappa r).
CsdKernel one_photon_amplitude(const SampledGrid& grid, const SampledGrid& k_grid,
                               const PumpModeParams& pump, const PhaseMatchingModel& pm);

/// Same sum over an explicit wavevector quadrature; any node count >= 1.
CsdKernel one_photon_amplitude(const SampledGrid& grid, std::span<const double> kappas,
                               std::span<const double> k_weights, const PumpModeParams& pump,
                               const PhaseMatchingModel& pm);

std::string to_string(AlphaMapping m);
std::string to_string(EnvelopeForm f);

} // namespace pcpdc
