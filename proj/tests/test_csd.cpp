#include <doctest.h>

#include <cmath>

#include "pcpdc/csd.hpp"
#include "support.hpp"

using namespace pcpdc;

namespace {

std::size_t index_of(const SampledGrid& g, double x)
{
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.point(i) == x)
            return i;
    FAIL("point not on grid");
    return 0;
}

} // namespace

TEST_CASE("gsm_csd: reference values")
{
    const auto grid = make_uniform_grid(9, 2.0); // contains -1, 0, 1
    const auto w = gsm_csd({1.0, 1.0, 1.0}, grid);
    const std::size_t i0 = index_of(grid, 0.0), ip = index_of(grid, 1.0), im = index_of(grid, -1.0);

    CHECK(w(i0, i0) == Complex(1.0, 0.0));
    const double oracle = std::exp(-0.5) * std::exp(-2.0);
    CHECK(w(ip, im).real() == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(w(ip, im).real() == doctest::Approx(0.082085).epsilon(1e-5));

    const auto scaled = gsm_csd({1.0, 1.0, 3.5}, grid);
    CHECK(scaled(i0, i0).real() == 3.5);
}

TEST_CASE("gsm_csd: coherent limit factorizes")
{
    const auto grid = make_uniform_grid(21, 3.0);
    const auto w = gsm_csd({1.0, 1e6, 1.0}, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double lhs = std::norm(w(i, j));
            const double rhs = (w(i, i) * w(j, j)).real();
            CHECK(std::abs(lhs - rhs) <= 1e-9 * rhs);
        }
}

TEST_CASE("gsm_csd: diagonal is the intensity profile and the kernel is genuine")
{
    const GsmParams p{0.8, 0.5, 2.0};
    const auto grid = make_uniform_grid(64, 4.0);
    const auto w = gsm_csd(p, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.point(i);
        const double expected = p.amplitude * std::exp(-r * r / (2.0 * p.sigma_s * p.sigma_s));
        CHECK(w(i, i).real() == doctest::Approx(expected).epsilon(1e-13));
        CHECK(w(i, i).real() > 0.0);
    }
    const auto report = check_genuine(w);
    CHECK(report.passes);
    CHECK(report.hermitian_defect == 0.0);
}

TEST_CASE("gsm params validation and coherence ratio")
{
    CHECK_THROWS_AS(gsm_csd({0.0, 1.0, 1.0}, make_uniform_grid(4, 1.0)), DomainError);
    CHECK_THROWS_AS(GsmParams({1.0, -1.0, 1.0}).validate(), DomainError);
    CHECK_THROWS_AS(GsmParams({1.0, 1.0, 0.0}).validate(), DomainError);

    const GsmParams wide{2.0, 1.0, 1.0};
    CHECK(wide.coherence_ratio() == 2.0);
    CHECK(wide.coherence_ratio_clamped() == 1.0);
    CHECK_FALSE(wide.ratio_in_unit_interval());
    const GsmParams narrow{0.25, 1.0, 1.0};
    CHECK(narrow.ratio_in_unit_interval());
    CHECK(narrow.coherence_ratio_clamped() == 0.25);
}

TEST_CASE("genuine_csd_from_weight: rank one and orthonormal pairs")
{
    const auto grid = make_uniform_grid(8, 1.0);
    WeightRepresentation single{{1.0}, {ComplexVector::Ones(8)}};
    const auto w = genuine_csd_from_weight(single, grid);
    CHECK((w.matrix() - ComplexMatrix::Ones(8, 8)).norm() == 0.0);

    // two functions orthonormal under the grid inner product: scaled
    // indicator vectors on disjoint supports
    ComplexVector h1 = ComplexVector::Zero(8), h2 = ComplexVector::Zero(8);
    h1(2) = 1.0 / std::sqrt(grid.weight(2));
    h2(5) = Complex(0.0, 1.0) / std::sqrt(grid.weight(5));
    CHECK(std::abs(inner_product(h1, h1, grid) - 1.0) < 1e-15);
    CHECK(std::abs(inner_product(h1, h2, grid)) < 1e-15);

    const auto two = genuine_csd_from_weight({{1.0, 1.0}, {h1, h2}}, grid);
    const auto ev = test::general_solver_spectrum(two);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t k = 2; k < ev.size(); ++k)
        CHECK(std::abs(ev[k]) < 1e-12);
}

TEST_CASE("genuine_csd_from_weight: errors")
{
    const auto grid = make_uniform_grid(4, 1.0);
    WeightRepresentation rep{{1.0, -0.5}, {ComplexVector::Ones(4), ComplexVector::Ones(4)}};
    try {
        genuine_csd_from_weight(rep, grid);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("p[1]") != std::string::npos);
    }
    WeightRepresentation short_h{{1.0}, {ComplexVector::Ones(3)}};
    CHECK_THROWS_AS(genuine_csd_from_weight(short_h, grid), DomainError);
}

TEST_CASE("genuine_csd_from_weight: random non-negative weights are PSD (eigen oracle)")
{
    for (std::uint32_t seed = 1; seed <= 25; ++seed) {
        const auto k = test::random_genuine_kernel(seed, 20, 1 + seed % 7);
        const auto ev = test::general_solver_spectrum(k);
        CHECK(ev.back() >= -1e-10 * ev.front());
        const auto report = check_genuine(k);
        CHECK(report.passes);
        CHECK(report.min_eigenvalue_ratio >= -1e-10);
    }
}

TEST_CASE("check_genuine: broken symmetry and negative eigenvalue")
{
    const auto grid = make_uniform_grid(2, 1.0);
    ComplexMatrix asym(2, 2);
    asym << 1.0, 1.0, 0.0, 1.0;
    const auto r1 = check_genuine(CsdKernel(asym, grid));
    CHECK_FALSE(r1.passes);
    CHECK(r1.hermitian_defect == 1.0);

    ComplexMatrix indefinite(2, 2);
    indefinite << 1.0, 0.0, 0.0, -1.0;
    const auto r2 = check_genuine(CsdKernel(indefinite, grid));
    CHECK_FALSE(r2.passes);
    CHECK(r2.min_eigenvalue_ratio == doctest::Approx(-1.0));

    ComplexMatrix negative(2, 2);
    negative << -1.0, 0.0, 0.0, -2.0;
    CHECK_FALSE(check_genuine(CsdKernel(negative, grid)).passes);

    const auto zero = check_genuine(CsdKernel(ComplexMatrix::Zero(2, 2), grid));
    CHECK(zero.passes);
    CHECK(zero.min_eigenvalue_ratio == 0.0);

    ComplexMatrix nan = ComplexMatrix::Ones(2, 2);
    nan(0, 1) = std::nan("");
    CHECK_FALSE(check_genuine(CsdKernel(nan, grid)).passes);

    CHECK_THROWS_AS(require_genuine(CsdKernel(indefinite, grid)), NotGenuineError);
    CHECK_THROWS_AS(CsdKernel(ComplexMatrix::Zero(3, 3), grid), DomainError);
}

TEST_CASE("genuine kernels satisfy the pointwise degree-of-coherence bound")
{
    for (std::uint32_t seed = 100; seed < 110; ++seed) {
        const auto k = test::random_genuine_kernel(seed, 16, 3);
        for (std::size_t i = 0; i < k.size(); ++i)
            for (std::size_t j = 0; j < k.size(); ++j) {
                const double rhs = (k(i, i) * k(j, j)).real();
                CHECK(std::norm(k(i, j)) <= rhs * (1.0 + 1e-12));
            }
    }
    const auto g = gsm_csd({1.0, 0.3, 1.0}, make_uniform_grid(40, 4.0));
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            CHECK(std::norm(g(i, j)) <= (g(i, i) * g(j, j)).real() * (1.0 + 1e-12));
}

TEST_CASE("kernel fingerprint is content based")
{
    const auto a = test::random_genuine_kernel(1);
    const auto b = test::random_genuine_kernel(1);
    const auto c = test::random_genuine_kernel(2);
    CHECK(kernel_fingerprint(a) == kernel_fingerprint(b));
    CHECK(kernel_fingerprint(a) != kernel_fingerprint(c));
    CHECK(kernel_fingerprint(a).size() == 16);
}
