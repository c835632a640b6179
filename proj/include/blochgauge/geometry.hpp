#pragma once

#include "blochgauge/common.hpp"

namespace blochgauge {

/// A point of the open unit ball of C^n together with its boundary distance
/// d_z = 1 - |z|.
struct BallPoint {
    cvec coords;
    double norm = 0.0;
    double dz = 1.0;

    explicit BallPoint(cvec c);
    static BallPoint disk(cplx z); // n = 1 convenience
    std::size_t dim() const { return coords.size(); }
};

/// The euclidean ball B_z with center z and radius d_z / 2. The closed ball
/// of this radius stays inside the unit ball since |z| + d_z/2 < 1.
struct SubBall {
    BallPoint center;
    double radius;
};

SubBall sub_ball(const BallPoint& z);

// Open-ball membership, strict inequality.
bool contains(const SubBall& b, const cvec& w);
bool contains(const SubBall& b, const BallPoint& w);

/// The Moebius automorphism phi_a of the ball interchanging a and 0,
///   phi_a(z) = (a - P_a z - (1-|a|^2)^{1/2} Q_a z) / (1 - <z,a>),
/// with the projection P_a onto span{a} and Q_a = I - P_a materialized as
/// explicit matrices (n is small, clarity wins over laziness).
struct Automorphism {
    BallPoint base;
    cmat proj_p;
    cmat proj_q;

    explicit Automorphism(BallPoint a); // rejects a = 0

    BallPoint apply(const BallPoint& z) const;

    // phi_a'(a) = -(1-|a|^2)^{-1} P_a - (1-|a|^2)^{-1/2} Q_a.
    // Gradients are row vectors: grad(g o phi)(x) = grad g(phi(x)) * J with
    // J[i][j] = d phi_i / d z_j, and ||phi_a'(a)|| <= (1-|a|^2)^{-1}.
    cmat jacobian_at_base() const;
};

BallPoint apply_automorphism(const BallPoint& a, const BallPoint& z);
cmat jacobian_at_base(const BallPoint& a);

} // namespace blochgauge
