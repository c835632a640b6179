#include <doctest.h>

#include <cmath>

#include "blochgauge/quadrature.hpp"

using namespace blochgauge;

namespace {

// Brute-force oracle: mean of g over 2^16 equispaced angles, long double
// accumulation. Independent of the CircleGrid implementation.
double circle_mean_oracle(const std::function<double(double)>& g) {
    const std::size_t n = 1u << 16;
    long double acc = 0.0L;
    for (std::size_t k = 0; k < n; ++k)
        acc += static_cast<long double>(g(2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n)));
    return static_cast<double>(acc / static_cast<long double>(n));
}

} // namespace

TEST_CASE("grid nodes are roots of unity and weights sum to one") {
    CircleGrid g(64);
    for (std::size_t k = 0; k < 64; ++k) {
        cplx w = g.nodes()[k];
        CHECK(std::abs(std::abs(w) - 1.0) <= 1e-15);
        cplx pw = 1.0;
        for (int i = 0; i < 64; ++i)
            pw *= w;
        CHECK(std::abs(pw - 1.0) <= 1e-12);
    }
    CHECK_THROWS_AS(CircleGrid(100), config_error);
    CHECK_THROWS_AS(CircleGrid(32), config_error);
}

TEST_CASE("integrate: constants, root-of-unity sums, exp(cos)") {
    CircleGrid g(256);
    CHECK(std::abs(integrate(g, [](cplx) { return cplx(1.0); }) - 1.0) <= 1e-15);
    CHECK(std::abs(integrate(g, [](cplx z) { return z; })) <= 1e-15);

    double oracle = circle_mean_oracle([](double th) { return std::exp(std::cos(th)); });
    cplx v = integrate(g, [](cplx z) { return std::exp(z.real()); });
    CHECK(std::abs(v.imag()) <= 1e-15);
    CHECK(std::abs(v.real() - oracle) <= 1e-12);
    CHECK(std::abs(v.real() - 1.2660658777520084) <= 1e-12); // I_0(1)
}

TEST_CASE("integrate names the offending node") {
    CircleGrid g(64);
    CHECK_THROWS_WITH_AS(
        integrate(g, [](cplx z) { return std::abs(z - 1.0) < 1e-14 ? cplx(HUGE_VAL) : cplx(0.0); }),
        doctest::Contains("node 0"), numerical_error);
}

TEST_CASE("poisson of the constant-density measure") {
    // psi == e so log psi == 1 and P nu == 1 everywhere
    BoundaryData bd = BoundaryData::from_callable([](cplx) { return std::exp(1.0); });
    CircleGrid g(512);
    for (cplx z : {cplx(0.0), cplx(0.3, 0.4), cplx(-0.7, 0.1), cplx(0.0, 0.85)})
        CHECK(std::abs(poisson(bd, g, z) - 1.0) <= 1e-10);
}

TEST_CASE("poisson atom sums are closed form") {
    const double sigma = 0.8;
    BoundaryData bd = BoundaryData::atoms_only({Atom{1.0, sigma}});
    CircleGrid g(256);
    CHECK(poisson(bd, g, 0.0) == doctest::Approx(-sigma).epsilon(1e-14));
    for (double r : {0.1, 0.5, 0.9})
        CHECK(poisson(bd, g, cplx(r)) ==
              doctest::Approx(-sigma * (1.0 + r) / (1.0 - r)).epsilon(1e-13));
}

TEST_CASE("poisson rejects points too close to an atom") {
    BoundaryData bd = BoundaryData::atoms_only({Atom{1.0, 1.0}});
    CircleGrid g(256);
    CHECK_THROWS_AS(poisson(bd, g, cplx(1.0 - 1e-10, 0.0)), numerical_error);
}

TEST_CASE("herglotz derivative factor") {
    CircleGrid g(256);

    BoundaryData trivial = BoundaryData::atoms_only({});
    CHECK(std::abs(herglotz_derivative_factor(trivial, g, cplx(0.2, 0.1))) <= 1e-15);

    const double sigma = 0.6;
    BoundaryData atom = BoundaryData::atoms_only({Atom{1.0, sigma}});
    CHECK(std::abs(herglotz_derivative_factor(atom, g, 0.0) - cplx(-2.0 * sigma)) <= 1e-14);

    // psi = exp(cos theta): U(0) = int 2 zeta cos(theta) dm = 1
    BoundaryData expcos =
        BoundaryData::from_callable([](cplx z) { return std::exp(z.real()); });
    CHECK(std::abs(herglotz_derivative_factor(expcos, g, 0.0) - cplx(1.0)) <= 1e-12);
}

TEST_CASE("doubling the grid barely moves poisson for smooth densities") {
    BoundaryData bd = BoundaryData::from_callable([](cplx z) { return std::exp(z.real()); });
    CircleGrid g256(256), g512(512);
    for (double r : {0.0, 0.3, 0.6, 0.9})
        for (int j = 0; j < 8; ++j) {
            cplx z = std::polar(r, 2.0 * M_PI * j / 8.0 + 0.1);
            CHECK(std::abs(poisson(bd, g256, z) - poisson(bd, g512, z)) <= 1e-10);
        }
}

TEST_CASE("nonpositive measures have nonpositive poisson integrals") {
    // psi <= 1 and an atom: nu <= 0, so P nu <= 0 and |U| <= -2 P nu / (1-|z|^2)
    BoundaryData bd = BoundaryData::from_callable(
        [](cplx z) { return std::exp(z.real() - 1.0); }, {Atom{cplx(0.0, 1.0), 0.4}});
    CircleGrid g(512);
    for (double r : {0.0, 0.25, 0.5, 0.75, 0.9})
        for (int j = 0; j < 16; ++j) {
            cplx z = std::polar(r, 2.0 * M_PI * j / 16.0 + 0.05);
            double p = poisson(bd, g, z);
            CHECK(p <= 1e-12);
            double u = std::abs(herglotz_derivative_factor(bd, g, z));
            CHECK(u <= -2.0 * p / (1.0 - std::norm(z)) + 1e-9);
        }
}

TEST_CASE("near-boundary escalation keeps kernel resolution") {
    BoundaryData bd = BoundaryData::from_callable([](cplx z) { return std::exp(z.real()); });
    CHECK(effective_node_count(bd, 256, cplx(0.0)) == 256);
    CHECK(effective_node_count(bd, 256, cplx(0.9, 0.0)) == 1024);
    CHECK(effective_node_count(bd, 1024, cplx(0.999, 0.0)) == 65536);
    // sampled densities are pinned to their own grid
    BoundaryData sampled = BoundaryData::from_samples(std::vector<double>(128, 1.0));
    CHECK(effective_node_count(sampled, 1024, cplx(0.999, 0.0)) == 128);
}
