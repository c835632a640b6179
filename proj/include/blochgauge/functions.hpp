#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "blochgauge/boundary.hpp"
#include "blochgauge/geometry.hpp"

namespace blochgauge {

struct HoloFunction;
using HoloPtr = std::shared_ptr<const HoloFunction>;

/// Multivariate monomial coeff * z^exponents.
struct SeriesTerm {
    std::vector<int> exponents;
    cplx coeff;
};

// Truncated power series: dense coefficients in one variable (degree <=
// 4096), sparse terms otherwise (total degree <= 64).
struct PowerSeriesRep {
    cvec coeffs;
    std::vector<SeriesTerm> terms;
};

// F(z) = exp(int (zeta+z)/(zeta-z) dnu) on the disk; zero-free by
// construction. Outer functions have no atoms, singular inner functions have
// psi == 1.
struct HerglotzRep {
    BoundaryData boundary;
    std::size_t nodes = 1024;
};

struct ProductRep {
    std::vector<HoloPtr> factors;
};

// One-variable slice G(w) = f(w * conj(direction)), |direction| = 1.
struct SliceRep {
    HoloPtr parent;
    cvec direction;
};

// Pullback h(z) = profile(<z, direction>) of a one-variable profile along a
// unit direction; zero-free whenever the profile is.
struct DirectionalRep {
    HoloPtr profile;
    cvec direction;
};

// g(w) = parent(center + scale * w) / divisor, the sub-ball rescaling.
struct RescaledRep {
    HoloPtr parent;
    cvec center;
    double scale = 1.0;
    double divisor = 1.0;
};

/// A holomorphic function on the unit ball of C^n. `zeros` is the declared
/// zero set Z_f: an empty list asserts zero-freeness (authoritative for
/// Herglotz-type functions, which are exponentials), nullopt means unknown.
struct HoloFunction {
    std::size_t n = 1;
    std::variant<PowerSeriesRep, HerglotzRep, ProductRep, SliceRep, DirectionalRep,
                 RescaledRep>
        rep;
    std::optional<std::vector<cvec>> zeros;
};

cplx eval(const HoloFunction& f, const BallPoint& z);
cvec gradient(const HoloFunction& f, const BallPoint& z);

// n == 1 conveniences (also used by the argument-principle oracle).
cplx eval1(const HoloFunction& f, cplx z);
cplx derivative1(const HoloFunction& f, cplx z);

HoloFunction make_power_series(cvec coeffs,
                               std::optional<std::vector<cvec>> zeros = std::nullopt);
HoloFunction make_power_series_nd(std::size_t n, std::vector<SeriesTerm> terms,
                                  std::optional<std::vector<cvec>> zeros = std::nullopt);
HoloFunction make_constant(std::size_t n, cplx c);
HoloFunction make_outer(BoundaryData bd, std::size_t nodes = 1024);
HoloFunction make_singular_inner(std::vector<Atom> atoms);
HoloFunction make_herglotz(BoundaryData bd, std::size_t nodes = 1024);
HoloFunction make_product(std::vector<HoloFunction> factors);
// Product of affine factors <z - p_i, u_i> vanishing at the listed points.
HoloFunction make_zero_poly(std::size_t n, std::vector<cvec> zeros);
HoloFunction make_directional(HoloFunction profile, cvec direction);
HoloFunction slice(const HoloFunction& f, const cvec& direction);

bool zero_free_declared(const HoloFunction& f);

struct HpNorm {
    double value;        // (int psi^p dm)^{1/p}; max over nodes for p = inf
    bool log_integrable; // int |log psi| dm finite at quadrature resolution
};
HpNorm hp_norm(const BoundaryData& bd, double p, std::size_t nodes = 1024);

} // namespace blochgauge
