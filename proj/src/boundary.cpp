#include "blochgauge/boundary.hpp"
#include "blochgauge/quadrature.hpp"

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <utility>

namespace blochgauge {

namespace detail {

struct LogDensityCache {
    std::mutex mutex;
    std::map<std::size_t, std::shared_ptr<const LogTable>> tables;
};

} // namespace detail

namespace {

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

void validate_atoms(const std::vector<Atom>& atoms) {
    for (const Atom& a : atoms) {
        if (std::abs(std::abs(a.location) - 1.0) > 1e-14)
            throw config_error("atom location off the unit circle: " +
                               format_complex(a.location));
        if (!(a.mass > 0.0) || !std::isfinite(a.mass))
            throw config_error("atom mass must be strictly positive");
    }
}

} // namespace

BoundaryData BoundaryData::from_callable(std::function<double(cplx)> psi,
                                         std::vector<Atom> atoms) {
    validate_atoms(atoms);
    if (!psi)
        throw config_error("boundary density callable is empty");
    // probe a coarse grid for negative or non-finite values
    bool any_positive = false;
    for (int k = 0; k < 64; ++k) {
        double th = 2.0 * M_PI * k / 64.0;
        double v = psi(std::polar(1.0, th));
        if (!std::isfinite(v) || v < 0.0)
            throw config_error("boundary density must be finite and >= 0");
        if (v > 0.0)
            any_positive = true;
    }
    if (!any_positive)
        throw config_error("boundary density vanishes identically");
    BoundaryData bd;
    bd.density = std::move(psi);
    bd.atoms = std::move(atoms);
    bd.log_cache = std::make_shared<detail::LogDensityCache>();
    return bd;
}

BoundaryData BoundaryData::from_samples(std::vector<double> samples,
                                        std::vector<Atom> atoms) {
    validate_atoms(atoms);
    const std::size_t m = samples.size();
    if (!is_power_of_two(m) || m < 64)
        throw config_error("density sample count must be a power of two >= 64");
    std::size_t zeros = 0;
    for (double v : samples) {
        if (!std::isfinite(v) || v < 0.0)
            throw config_error("density samples must be finite and >= 0");
        if (v == 0.0)
            ++zeros;
    }
    if (zeros == m)
        throw config_error("boundary density vanishes identically");
    if (zeros > m / 64)
        throw config_error("too many zero density samples; log psi must be integrable");
    BoundaryData bd;
    bd.samples = std::move(samples);
    bd.atoms = std::move(atoms);
    bd.log_cache = std::make_shared<detail::LogDensityCache>();
    return bd;
}

BoundaryData BoundaryData::atoms_only(std::vector<Atom> atoms) {
    validate_atoms(atoms);
    BoundaryData bd;
    bd.density = [](cplx) { return 1.0; };
    bd.unit_density = true;
    bd.atoms = std::move(atoms);
    bd.log_cache = std::make_shared<detail::LogDensityCache>();
    return bd;
}

namespace detail {

std::shared_ptr<const LogTable> log_table(const BoundaryData& bd, std::size_t n) {
    std::lock_guard<std::mutex> lock(bd.log_cache->mutex);
    auto it = bd.log_cache->tables.find(n);
    if (it != bd.log_cache->tables.end())
        return it->second;

    auto table = std::make_shared<LogTable>();
    table->log_psi.resize(n, 0.0);
    table->dropped.resize(n, 0);
    const CircleGrid& grid = shared_grid(n);
    for (std::size_t k = 0; k < n; ++k) {
        double psi = bd.sampled() ? bd.samples[k] : bd.density(grid.nodes()[k]);
        if (!std::isfinite(psi) || psi < 0.0)
            throw numerical_error("density not finite and >= 0 at node " + std::to_string(k));
        if (psi == 0.0)
            table->dropped[k] = 1;
        else
            table->log_psi[k] = std::log(std::max(psi, 1e-300));
    }
    bd.log_cache->tables.emplace(n, table);
    return table;
}

} // namespace detail

} // namespace blochgauge
