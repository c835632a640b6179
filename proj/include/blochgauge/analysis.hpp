#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "blochgauge/functions.hpp"
#include "blochgauge/weights.hpp"

namespace blochgauge {

/// Deterministic low-discrepancy points on the unit sphere of C^n (Halton
/// sequence, gaussian map, normalize). `seed` applies a Cranley-Patterson
/// rotation; identical arguments give identical points.
std::vector<cvec> sphere_points(std::size_t count, std::size_t n, std::uint64_t seed,
                                std::uint64_t stream = 0);

/// Radial-dyadic evaluation grid: |z| = 1 - 2^-k for k = 1..K, with J
/// directions (equispaced angles for n = 1, low-discrepancy sphere points
/// otherwise).
struct SampleGrid {
    std::size_t n = 1;
    int radial_levels = 10;    // K
    int direction_count = 64;  // J
    std::uint64_t seed = 0;

    std::vector<cvec> directions() const;
    static double dz(int k) { return std::ldexp(1.0, -k); } // exactly 2^-k
    BallPoint point(int k, const cvec& direction) const;
};

// Zeros of f inside |w - center| < radius counted by the argument principle
// (winding number of f over the contour). Retries one slightly shrunk
// contour if |f| dips below 1e-12 on the nodes or the integral refuses to
// settle near an integer, then gives up.
int winding_number(const HoloFunction& f, cplx center, double radius);

struct EStatus {
    bool inside = false;
    bool verified = true; // false: no zero information in n > 1, assumed off E
};

// Membership in E_f = {z : B_z meets Z_f}. Declared zeros win; otherwise the
// n = 1 argument-principle oracle runs on the open-ball contour.
EStatus e_membership(const HoloFunction& f, const BallPoint& z);
bool in_E(const HoloFunction& f, const BallPoint& z);

// Extrema of |f| over B_z, evaluated on the boundary sphere of the closed
// ball: |f| is continuous and satisfies the maximum principle (and the
// minimum principle when zero-free), so the boundary extrema coincide with
// the open-ball suprema. This is the single discretization decision
// everything downstream leans on.
double sup_modulus(const HoloFunction& f, const BallPoint& z, int boundary_samples);
double inf_modulus(const HoloFunction& f, const BallPoint& z, int boundary_samples);

double condition_i(const HoloFunction& f, const Weight& w, const BallPoint& z);
double condition_ii(const HoloFunction& f, const Weight& w, const BallPoint& z,
                    int boundary_samples);
double condition_iii(const HoloFunction& f, const Weight& w, const BallPoint& z,
                     int boundary_samples);
double condition_iv(const HoloFunction& f, const Weight& w, const BallPoint& z,
                    int boundary_samples);

struct ConditionValues {
    double lhs_i = 0.0, lhs_ii = 0.0, lhs_iii = 0.0, lhs_iv = 0.0;
    double sup = 0.0, inf = 0.0, center_abs = 0.0, grad_norm = 0.0;
    EStatus e;
};
ConditionValues conditions(const HoloFunction& f, const Weight& w, const BallPoint& z,
                           int boundary_samples);

// RHS - LHS of the refined Schwarz-Pick inequality for a zero-free self-map:
//   2/(1-|z|^2) |g(z)| log(1/|g(z)|) - |grad g(z)|  >=  0.
double schwarz_pick_margin(const HoloFunction& g, const BallPoint& z);

// g_z(w) = f(z + (d_z/2) w) / M_f(z); satisfies
// (d_z/2) |grad f(z)| = M_f(z) |grad g_z(0)|.
HoloFunction rescale_to_subball(const HoloFunction& f, const BallPoint& z,
                                int boundary_samples);

// exp(P nu(z)) * [max over boundary of B_z of P nu - P nu(z)] / omega(d_z);
// the boundary max equals the sup over B_z because P nu is harmonic.
double poisson_oscillation(const BoundaryData& bd, const Weight& w, cplx z,
                           std::size_t nodes, int boundary_samples);

// Q_k = max over directions of the un-normalized Poisson oscillation at
// d_z = 2^-k; Q_k -> 0 characterizes membership in the little Bloch space
// (within H^inf). Directions evaluate in parallel with a deterministic
// max-reduction.
std::vector<double> little_bloch_scan(const BoundaryData& bd, int levels,
                                      int directions = 64, std::size_t nodes = 1024,
                                      int boundary_samples = 64, unsigned workers = 1);

struct CriteriaRow {
    int k = 0;
    int j = 0;
    double dz = 0.0;
    bool in_e = false;
    std::array<double, 4> lhs{};
};

struct CriteriaReport {
    std::vector<CriteriaRow> rows;
    std::array<double, 4> empirical_constants{};
    std::array<std::vector<double>, 4> row_maxima; // indexed by k-1
    std::array<std::string, 4> trends;
    std::string verdict; // bounded / growing / inconclusive
    bool zero_info_verified = true;
};

CriteriaReport run_criteria(const HoloFunction& f, const Weight& w, const SampleGrid& grid,
                            int boundary_samples, unsigned workers);

// growing: three consecutive k-to-k+1 ratios above 1.2; bounded: the
// geometric mean of the tail ratios stays at or below 1.05; anything else is
// inconclusive.
std::string trend_verdict(const std::vector<double>& row_maxima);

} // namespace blochgauge
