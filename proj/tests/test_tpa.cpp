#include <doctest.h>

#include <cmath>
#include <random>

#include "pcpdc/entangle.hpp"
#include "pcpdc/tpa.hpp"
#include "support.hpp"

using namespace pcpdc;

namespace {

CsdKernel rank_one_kernel(std::uint32_t seed, std::size_t n)
{
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    ComplexVector f(static_cast<Eigen::Index>(n));
    for (auto& v : f)
        v = {g(rng), g(rng)};
    return CsdKernel(f.conjugate() * f.transpose(), make_uniform_grid(n, 2.0));
}

} // namespace

TEST_CASE("Siegert TPA: bunching diagonal and coherent factorization")
{
    const auto g = gsm_csd({1.0, 0.6, 1.0}, make_uniform_grid(30, 3.0));
    const auto t = siegert_tpa(g);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(std::abs(t.matrix()(i, i) - 2.0 * std::pow(g(i, i).real(), 2)) <= 1e-12);

    const auto r1 = rank_one_kernel(4, 12);
    const auto tr = siegert_tpa(r1);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j) {
            const double expected = 2.0 * r1(i, i).real() * r1(j, j).real();
            CHECK(std::abs(tr.matrix()(i, j) - expected) <= 1e-12 * expected);
        }
}

TEST_CASE("Siegert TPA: GSM reference point")
{
    const auto grid = make_uniform_grid(9, 2.0);
    const auto g = gsm_csd({1.0, 1.0, 1.0}, grid);
    const auto t = siegert_tpa(g);
    // indices of r = 1 and r = -1
    const std::size_t ip = 6, im = 2;
    REQUIRE(grid.point(ip) == 1.0);
    REQUIRE(grid.point(im) == -1.0);
    const double intensity = std::exp(-0.5);
    const double cross = std::exp(-0.5) * std::exp(-2.0);
    CHECK(t.matrix()(ip, im) == doctest::Approx(intensity * intensity + cross * cross).epsilon(1e-14));
}

TEST_CASE("Siegert TPA rejects non-genuine input")
{
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    CHECK_THROWS_AS(siegert_tpa(CsdKernel(m, make_uniform_grid(2, 1.0))), NotGenuineError);
}

TEST_CASE("entangled and factorized components")
{
    const auto grid = make_uniform_grid(3, 1.0);
    ComplexMatrix real_kernel(3, 3);
    real_kernel << 2.0, 0.5, 0.25, 0.5, 1.0, 0.5, 0.25, 0.5, 3.0;
    const auto e = entangled_component(CsdKernel(real_kernel, grid));
    CHECK((e - real_kernel.real().cwiseAbs2()).norm() == 0.0);

    ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
    diag.diagonal() << 1.0, 2.0, 3.0;
    const auto ed = entangled_component(CsdKernel(diag, grid));
    CHECK(ed(0, 1) == 0.0);
    CHECK(ed(2, 2) == 9.0);

    const auto two = make_uniform_grid(2, 1.0);
    ComplexMatrix d12(2, 2);
    d12 << 1.0, 0.0, 0.0, 2.0;
    const RealMatrix f = factorized_component(CsdKernel(d12, two));
    RealMatrix expected(2, 2);
    expected << 1.0, 2.0, 2.0, 4.0;
    CHECK(f == expected);
    CHECK(schmidt_decompose(f, two).schmidt_number == doctest::Approx(1.0).epsilon(1e-10));
    // rank one: the entries sum to the squared diagonal sum, the trace is sum d_i^2
    CHECK(f.sum() == 9.0);
    CHECK(f.trace() == 5.0);

    ComplexMatrix neg = d12;
    neg(0, 0) = -1.0;
    CHECK_THROWS_AS(factorized_component(CsdKernel(neg, two)), InvariantError);
    ComplexMatrix cplx = d12;
    cplx(1, 1) = Complex(2.0, 0.5);
    CHECK_THROWS_AS(factorized_component(CsdKernel(cplx, two)), InvariantError);
}

TEST_CASE("Siegert TPA splits into entangled plus factorized")
{
    for (std::uint32_t seed = 1; seed <= 10; ++seed) {
        const auto g = test::random_genuine_kernel(seed, 18, 4);
        const RealMatrix diff = siegert_tpa(g).matrix() - entangled_component(g) - factorized_component(g);
        CHECK(diff.cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("entanglement-weighted TPA")
{
    const auto g = gsm_csd({1.0, 0.5, 1.0}, make_uniform_grid(40, 4.0));
    const auto t0 = tpa_with_entanglement(g, 0.0);
    CHECK((t0.matrix() - factorized_component(g)).norm() == 0.0);
    CHECK(schmidt_decompose(t0).schmidt_number == doctest::Approx(1.0).epsilon(1e-10));
    REQUIRE(t0.provenance().has_value());
    CHECK(t0.provenance()->m_e == 0.0);
    CHECK(t0.provenance()->source_id == kernel_fingerprint(g));

    const auto t1 = tpa_with_entanglement(g, 1.0);
    CHECK((t1.matrix() - entangled_component(g)).norm() == 0.0);

    const double m = golden_bound();
    CHECK(std::abs(std::sqrt(m) - std::sqrt(1.0 - m * m)) <= 1e-12);

    CHECK_THROWS_AS(tpa_with_entanglement(g, -0.01), DomainError);
    CHECK_THROWS_AS(tpa_with_entanglement(g, 1.01), DomainError);
}

TEST_CASE("TPA kernel invariants")
{
    const auto grid = make_uniform_grid(2, 1.0);
    RealMatrix neg(2, 2);
    neg << 1.0, -0.5, -0.5, 1.0;
    CHECK_THROWS_AS(TpaKernel(neg, grid), InvariantError);
    RealMatrix asym(2, 2);
    asym << 1.0, 0.5, 0.25, 1.0;
    CHECK_THROWS_AS(TpaKernel(asym, grid), InvariantError);
}

TEST_CASE("Schmidt decomposition")
{
    const auto grid = make_uniform_grid(24, 3.0);
    RealVector f(24), h(24);
    for (Eigen::Index i = 0; i < 24; ++i) {
        const double x = grid.point(static_cast<std::size_t>(i));
        f(i) = std::exp(-x * x);
        h(i) = 1.0 + 0.3 * x * x;
    }
    const RealMatrix product = f * h.transpose();
    const auto sp = schmidt_decompose(product, grid);
    CHECK(std::abs(sp.schmidt_number - 1.0) <= 1e-10);
    CHECK(sp.singular_values[1] <= 1e-12 * sp.singular_values[0]);

    // two equal terms on orthogonal (disjoint-support) functions
    RealVector a = RealVector::Zero(24), b = RealVector::Zero(24);
    a(3) = 1.0 / std::sqrt(grid.weight(3));
    b(17) = 1.0 / std::sqrt(grid.weight(17));
    const RealMatrix pair = a * b.transpose() + b * a.transpose();
    CHECK(std::abs(schmidt_decompose(pair, grid).schmidt_number - 2.0) <= 1e-9);

    const auto g = gsm_csd({1.0, 0.4, 1.0}, grid);
    const auto t = siegert_tpa(g);
    const auto s = schmidt_decompose(t);
    RealMatrix rebuilt = RealMatrix::Zero(24, 24);
    for (std::size_t n = 0; n < s.singular_values.size(); ++n) {
        const auto k = static_cast<Eigen::Index>(n);
        rebuilt += s.singular_values[n] * s.left_modes.col(k) * s.right_modes.col(k).transpose();
    }
    CHECK((rebuilt - t.matrix()).norm() / t.matrix().norm() < 1e-10);

    // modes orthonormal under the quadrature inner product
    const RealVector w = Eigen::Map<const RealVector>(grid.weights().data(), 24);
    const RealMatrix gram = s.left_modes.transpose() * w.asDiagonal() * s.left_modes;
    CHECK((gram - RealMatrix::Identity(24, 24)).cwiseAbs().maxCoeff() < 1e-10);
    for (std::size_t n = 1; n < s.singular_values.size(); ++n)
        CHECK(s.singular_values[n] <= s.singular_values[n - 1]);

    CHECK(schmidt_number({}) == 1.0);
    CHECK(schmidt_number({1.0, 1.0, 1.0}) == doctest::Approx(3.0));
}

TEST_CASE("Schmidt number grows with the entanglement weight")
{
    const auto g = gsm_csd({1.0, 0.5, 1.0}, make_uniform_grid(64, 5.0));
    double previous = 0.0;
    for (int k = 0; k <= 20; ++k) {
        const double m = k / 20.0;
        const double kn = schmidt_decompose(tpa_with_entanglement(g, m)).schmidt_number;
        CHECK(kn >= previous - 1e-12);
        CHECK(std::isfinite(kn));
        previous = kn;
    }
    CHECK(previous > 1.0);
}
