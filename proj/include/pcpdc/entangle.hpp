#pragma once

#include <span>
#include <string>
#include <vector>

#include "pcpdc/csd.hpp"
#include "pcpdc/tpa.hpp"

namespace pcpdc {

/// (sqrt(5) - 1) / 2 = 1 / phi: the largest real m_e for which
/// sqrt(m_e) <= sqrt(1 - m_e^2).
double golden_bound();

/// sqrt(3) / 2: entanglement above which the statistics turn sub-Poisson.
double sub_poisson_threshold();

enum class StatisticsRegime { super_poisson, transition_zone, sub_poisson };

std::string to_string(StatisticsRegime r);

/// Closed on the left of each threshold: m_e == 1/phi is still
/// super_poisson, m_e == sqrt(3)/2 is still transition_zone.
StatisticsRegime classify_statistics(double m_e);

struct CauchySchwarzSlack {
    RealMatrix slack;       ///< sqrt(1-m^2) G(r1,r1) G(r2,r2) - sqrt(m) |G(r1,r2)|^2
    double min_slack = 0.0;
};

CauchySchwarzSlack cauchy_schwarz_slack(const CsdKernel& gamma1, double m_e);

struct DoubleInequalityReport {
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> lower_holds;
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> upper_holds;
    bool all_lower = true;
    bool all_upper = true;
};

inline constexpr double kInequalityTolerance = 1e-12;

/// 2 sqrt(m) |G1(r1,r2)|^2 <= G2(r1,r2) <= 2 sqrt(1-m^2) G1(r1,r1) G1(r2,r2)
/// pointwise, each side compared with a 1e-12 tolerance scaled by the
/// magnitude of the compared values (floor 1).
DoubleInequalityReport double_inequality_check(const TpaKernel& gamma2, const CsdKernel& gamma1, double m_e);

struct EntanglementFit {
    double m_e = 0.0;
    double residual = 0.0; ///< Frobenius norm of G2 - sqrt(m) Ge - sqrt(1-m^2) Gf
};

/// Bounded least-squares estimate of m_e: a coarse scan brackets the
/// minimum, golden-section search refines it to 1e-10 in m_e.
EntanglementFit fit_m_e(const TpaKernel& gamma2, const CsdKernel& gamma1);

struct EntanglementBounds {
    double golden = 0.0;
    double sub_poisson = 0.0;
};

struct EntanglementReport {
    double m_e = 0.0;
    double cs_min_slack = 0.0;
    bool cs_violated = false;
    StatisticsRegime regime = StatisticsRegime::super_poisson;
    EntanglementBounds bounds;
};

EntanglementReport make_entanglement_report(const CsdKernel& gamma1, double m_e);

struct Figure2Row {
    double m_e = 0.0;
    double sqrt_m = 0.0;
    double sqrt_1_minus_m2 = 0.0;
    StatisticsRegime regime = StatisticsRegime::super_poisson;
};

std::vector<Figure2Row> figure2_table(std::span<const double> m_e_grid);

} // namespace pcpdc
