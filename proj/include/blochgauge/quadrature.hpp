#pragma once

#include <functional>

#include "blochgauge/boundary.hpp"

namespace blochgauge {

/// Uniform grid of the N-th roots of unity with weights 1/N: the trapezoid
/// rule for the normalized arclength measure m, spectrally accurate for
/// smooth periodic integrands.
struct CircleGrid {
    explicit CircleGrid(std::size_t node_count); // power of two >= 64

    std::size_t node_count;
    const cvec& nodes() const { return nodes_; }

private:
    cvec nodes_;
};

// (1/N) sum integrand(zeta_k); throws naming the node on a non-finite value.
cplx integrate(const CircleGrid& grid, const std::function<cplx(cplx)>& integrand);

// Node count after near-boundary escalation: the Poisson kernel at z has
// angular width ~ d_z, so N doubles until 10 * (2 pi / N) <= d_z, capped at
// 2^16. Sampled densities are pinned to their own grid.
std::size_t effective_node_count(const BoundaryData& bd, std::size_t requested, cplx z);

// P nu(z) = int (1-|z|^2)/|zeta-z|^2 dnu: Poisson integral of log psi by
// quadrature minus the exact atom sum. Atom contributions are always closed
// form; they are singular with respect to m and a quadrature would miss them.
double poisson(const BoundaryData& bd, const CircleGrid& grid, cplx z);

// U(z) = int 2 zeta/(zeta-z)^2 dnu, the factor in the derivative identity
// g' = g * U for Herglotz-type functions.
cplx herglotz_derivative_factor(const BoundaryData& bd, const CircleGrid& grid, cplx z);

// int (zeta+z)/(zeta-z) dnu; exp of this is the represented function.
cplx herglotz_integral(const BoundaryData& bd, const CircleGrid& grid, cplx z);

// Shared read-only grids by node count (powers of two up to 2^16).
const CircleGrid& shared_grid(std::size_t node_count);

} // namespace blochgauge
