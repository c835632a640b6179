#include "blochgauge/quadrature.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>

namespace blochgauge {

namespace {

constexpr std::size_t kMinNodes = 64;
constexpr std::size_t kMaxNodes = 65536; // 2^16

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

} // namespace

CircleGrid::CircleGrid(std::size_t n) : node_count(n) {
    if (!is_power_of_two(n) || n < kMinNodes)
        throw config_error("circle grid node count must be a power of two >= 64");
    nodes_.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        nodes_[k] = std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n));
}

const CircleGrid& shared_grid(std::size_t node_count) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<CircleGrid>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(node_count);
    if (it == cache.end())
        it = cache.emplace(node_count, std::make_unique<CircleGrid>(node_count)).first;
    return *it->second;
}

cplx integrate(const CircleGrid& grid, const std::function<cplx(cplx)>& integrand) {
    const cvec& nodes = grid.nodes();
    cplx sum = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        cplx v = integrand(nodes[k]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw numerical_error("non-finite integrand at node " + std::to_string(k) +
                                  " (zeta = " + format_complex(nodes[k]) + ")");
        sum += v;
    }
    return sum / static_cast<double>(nodes.size());
}

std::size_t effective_node_count(const BoundaryData& bd, std::size_t requested, cplx z) {
    if (bd.sampled())
        return bd.samples.size();
    std::size_t n = std::max(requested, kMinNodes);
    const double dz = 1.0 - std::abs(z);
    // keep >= 10 nodes across the kernel width
    while (n < kMaxNodes && 10.0 * (2.0 * M_PI / static_cast<double>(n)) > dz)
        n *= 2;
    return n;
}

namespace {

void check_atom_distance(const BoundaryData& bd, cplx z) {
    for (const Atom& a : bd.atoms)
        if (std::abs(z - a.location) < 1e-9)
            throw numerical_error("evaluation point " + format_complex(z) +
                                  " is within 1e-9 of the atom at " +
                                  format_complex(a.location));
}

} // namespace

double poisson(const BoundaryData& bd, const CircleGrid& grid, cplx z) {
    if (!(std::abs(z) < 1.0))
        throw numerical_error("poisson evaluation outside the disk: " + format_complex(z));
    check_atom_distance(bd, z);

    const double one_minus = 1.0 - std::norm(z);
    double acc = 0.0;
    if (!bd.unit_density) {
        const std::size_t n = effective_node_count(bd, grid.node_count, z);
        const auto table = detail::log_table(bd, n);
        const cvec& nodes = shared_grid(n).nodes();
        // real arithmetic throughout: the Poisson kernel sheds no imaginary
        // residue to begin with
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (table->dropped[k])
                continue;
            sum += table->log_psi[k] * one_minus / std::norm(nodes[k] - z);
        }
        acc = sum / static_cast<double>(n);
    }
    for (const Atom& a : bd.atoms)
        acc -= a.mass * one_minus / std::norm(a.location - z);
    return acc;
}

cplx herglotz_derivative_factor(const BoundaryData& bd, const CircleGrid& grid, cplx z) {
    if (!(std::abs(z) < 1.0))
        throw numerical_error("derivative factor outside the disk: " + format_complex(z));
    check_atom_distance(bd, z);

    cplx acc = 0.0;
    if (!bd.unit_density) {
        const std::size_t n = effective_node_count(bd, grid.node_count, z);
        const auto table = detail::log_table(bd, n);
        const cvec& nodes = shared_grid(n).nodes();
        cplx sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (table->dropped[k])
                continue;
            cplx d = nodes[k] - z;
            sum += table->log_psi[k] * 2.0 * nodes[k] / (d * d);
        }
        acc = sum / static_cast<double>(n);
    }
    for (const Atom& a : bd.atoms) {
        cplx d = a.location - z;
        acc -= a.mass * 2.0 * a.location / (d * d);
    }
    return acc;
}

cplx herglotz_integral(const BoundaryData& bd, const CircleGrid& grid, cplx z) {
    if (!(std::abs(z) < 1.0))
        throw numerical_error("herglotz integral outside the disk: " + format_complex(z));
    check_atom_distance(bd, z);

    cplx acc = 0.0;
    if (!bd.unit_density) {
        const std::size_t n = effective_node_count(bd, grid.node_count, z);
        const auto table = detail::log_table(bd, n);
        const cvec& nodes = shared_grid(n).nodes();
        cplx sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (table->dropped[k])
                continue;
            sum += table->log_psi[k] * (nodes[k] + z) / (nodes[k] - z);
        }
        acc = sum / static_cast<double>(n);
    }
    for (const Atom& a : bd.atoms)
        acc -= a.mass * (a.location + z) / (a.location - z);
    return acc;
}

} // namespace blochgauge
