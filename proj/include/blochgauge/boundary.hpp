#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "blochgauge/common.hpp"

namespace blochgauge {

/// One point mass of the singular part mu_s.
struct Atom {
    cplx location; // |location| = 1 (to 1e-14)
    double mass;   // > 0
};

namespace detail {

struct LogTable {
    std::vector<double> log_psi; // 0 where dropped
    std::vector<char> dropped;   // psi == 0 exactly at this node
};

struct LogDensityCache; // defined in boundary.cpp (holds a mutex)

} // namespace detail

/// The boundary measure nu = log(psi) dm - mu_s on the unit circle. The
/// density psi >= 0 is either a smooth callable or 2^k equispaced samples
/// (sample j taken at angle 2 pi j / M); mu_s is purely atomic.
///
/// Samples that are exactly zero carry no quadrature mass: log psi is
/// required to be integrable, so {psi = 0} has measure zero and a zero
/// landing on a node must not inject log(floor)/N into the integrals.
/// Positive values below 1e-300 are floored before taking the log.
struct BoundaryData {
    std::function<double(cplx)> density; // set iff callable form
    std::vector<double> samples;         // set iff sampled form
    std::vector<Atom> atoms;
    bool unit_density = false; // psi == 1, so the log-density part is exactly 0

    static BoundaryData from_callable(std::function<double(cplx)> psi,
                                      std::vector<Atom> atoms = {});
    static BoundaryData from_samples(std::vector<double> samples,
                                     std::vector<Atom> atoms = {});
    static BoundaryData atoms_only(std::vector<Atom> atoms);

    bool sampled() const { return !samples.empty(); }

    // log-density tables per node count, shared across copies
    std::shared_ptr<detail::LogDensityCache> log_cache;
};

namespace detail {
// Lazily computed table of log psi at the N-th roots of unity.
std::shared_ptr<const LogTable> log_table(const BoundaryData& bd, std::size_t node_count);
} // namespace detail

} // namespace blochgauge
