#include "pcpdc/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pcpdc {

namespace {

void require_unit_m(double m_e, const char* where)
{
    if (!(m_e >= 0.0 && m_e <= 1.0))
        throw DomainError(std::string(where) + ": m_e must lie in [0, 1]");
}

void require_same_grid(const TpaKernel& gamma2, const CsdKernel& gamma1, const char* where)
{
    if (!(gamma2.grid() == gamma1.grid()))
        throw DomainError(std::string(where) + ": kernels are sampled on different grids");
}

bool leq(double a, double b)
{
    return a <= b + kInequalityTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

double golden_bound() { return (std::sqrt(5.0) - 1.0) / 2.0; }

double sub_poisson_threshold() { return std::sqrt(3.0) / 2.0; }

std::string to_string(StatisticsRegime r)
{
    switch (r) {
    case StatisticsRegime::transition_zone:
        return "transition_zone";
    case StatisticsRegime::sub_poisson:
        return "sub_poisson";
    case StatisticsRegime::super_poisson:
    default:
        return "super_poisson";
    }
}

StatisticsRegime classify_statistics(double m_e)
{
    require_unit_m(m_e, "classify_statistics");
    if (m_e <= golden_bound())
        return StatisticsRegime::super_poisson;
    if (m_e <= sub_poisson_threshold())
        return StatisticsRegime::transition_zone;
    return StatisticsRegime::sub_poisson;
}

CauchySchwarzSlack cauchy_schwarz_slack(const CsdKernel& gamma1, double m_e)
{
    require_unit_m(m_e, "cauchy_schwarz_slack");
    const RealMatrix lhs = std::sqrt(m_e) * entangled_component(gamma1);
    const RealMatrix rhs = std::sqrt(1.0 - m_e * m_e) * factorized_component(gamma1);
    CauchySchwarzSlack out{rhs - lhs, 0.0};
    out.min_slack = out.slack.minCoeff();
    return out;
}

DoubleInequalityReport double_inequality_check(const TpaKernel& gamma2, const CsdKernel& gamma1, double m_e)
{
    require_unit_m(m_e, "double_inequality_check");
    require_same_grid(gamma2, gamma1, "double_inequality_check");

    const RealMatrix lower = 2.0 * std::sqrt(m_e) * entangled_component(gamma1);
    const RealMatrix upper = 2.0 * std::sqrt(1.0 - m_e * m_e) * factorized_component(gamma1);
    const RealMatrix& g2 = gamma2.matrix();

    const Eigen::Index n = g2.rows();
    DoubleInequalityReport report;
    report.lower_holds.resize(n, n);
    report.upper_holds.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            report.lower_holds(i, j) = leq(lower(i, j), g2(i, j));
            report.upper_holds(i, j) = leq(g2(i, j), upper(i, j));
        }
    }
    report.all_lower = report.lower_holds.all();
    report.all_upper = report.upper_holds.all();
    return report;
}

EntanglementFit fit_m_e(const TpaKernel& gamma2, const CsdKernel& gamma1)
{
    require_same_grid(gamma2, gamma1, "fit_m_e");
    require_genuine(gamma1);

    const RealMatrix ge = entangled_component(gamma1);
    const RealMatrix gf = factorized_component(gamma1);
    const RealMatrix& g2 = gamma2.matrix();
    auto residual = [&](double m) {
        return (g2 - std::sqrt(m) * ge - std::sqrt(1.0 - m * m) * gf).norm();
    };

    // bracket the global minimum on a coarse scan first
    constexpr int kScan = 200;
    int best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= kScan; ++k) {
        const double v = residual(static_cast<double>(k) / kScan);
        if (v < best_value) {
            best_value = v;
            best = k;
        }
    }
    double lo = static_cast<double>(std::max(best - 1, 0)) / kScan;
    double hi = static_cast<double>(std::min(best + 1, kScan)) / kScan;

    const double inv_phi = golden_bound();
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = residual(x1);
    double f2 = residual(x2);
    while (hi - lo > 1e-10) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = residual(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = residual(x2);
        }
    }

    EntanglementFit fit{0.5 * (lo + hi), 0.0};
    fit.residual = residual(fit.m_e);
    // the interval endpoints are admissible too
    for (double edge : {0.0, 1.0}) {
        const double v = residual(edge);
        if (v < fit.residual) {
            fit.m_e = edge;
            fit.residual = v;
        }
    }
    return fit;
}

EntanglementReport make_entanglement_report(const CsdKernel& gamma1, double m_e)
{
    EntanglementReport report;
    report.m_e = m_e;
    report.cs_min_slack = cauchy_schwarz_slack(gamma1, m_e).min_slack;
    report.cs_violated = report.cs_min_slack < 0.0;
    report.regime = classify_statistics(m_e);
    report.bounds = {golden_bound(), sub_poisson_threshold()};
    return report;
}

std::vector<Figure2Row> figure2_table(std::span<const double> m_e_grid)
{
    std::vector<Figure2Row> rows;
    rows.reserve(m_e_grid.size());
    for (double m : m_e_grid) {
        require_unit_m(m, "figure2_table");
        rows.push_back({m, std::sqrt(m), std::sqrt(1.0 - m * m), classify_statistics(m)});
    }
    return rows;
}

} // namespace pcpdc
