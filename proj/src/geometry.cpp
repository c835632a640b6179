#include "blochgauge/geometry.hpp"

#include <cmath>
#include <utility>

namespace blochgauge {

BallPoint::BallPoint(cvec c) : coords(std::move(c)) {
    if (coords.empty())
        throw numerical_error("BallPoint needs at least one coordinate");
    norm = euclidean_norm(coords);
    if (!(norm < 1.0))
        throw numerical_error("point outside the unit ball: " + format_point(coords));
    dz = 1.0 - norm;
}

BallPoint BallPoint::disk(cplx z) {
    return BallPoint(cvec{z});
}

SubBall sub_ball(const BallPoint& z) {
    return SubBall{z, z.dz / 2.0};
}

bool contains(const SubBall& b, const cvec& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        s += std::norm(w[i] - b.center.coords[i]);
    return std::sqrt(s) < b.radius;
}

bool contains(const SubBall& b, const BallPoint& w) {
    return contains(b, w.coords);
}

Automorphism::Automorphism(BallPoint a) : base(std::move(a)) {
    if (base.norm == 0.0)
        throw numerical_error("automorphism base a = 0 is degenerate");
    const std::size_t n = base.dim();
    const double a2 = base.norm * base.norm;
    proj_p.assign(n, cvec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            proj_p[i][j] = base.coords[i] * std::conj(base.coords[j]) / a2;
    proj_q = identity_matrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            proj_q[i][j] -= proj_p[i][j];
}

BallPoint Automorphism::apply(const BallPoint& z) const {
    const std::size_t n = base.dim();
    const double s = std::sqrt(1.0 - base.norm * base.norm);
    const cplx za = inner(z.coords, base.coords);
    const cplx den = 1.0 - za;
    const cvec pz = mat_apply(proj_p, z.coords);
    cvec num(n);
    for (std::size_t i = 0; i < n; ++i)
        num[i] = (base.coords[i] - pz[i] - s * (z.coords[i] - pz[i])) / den;
    return BallPoint(std::move(num));
}

cmat Automorphism::jacobian_at_base() const {
    const std::size_t n = base.dim();
    const double one_minus = 1.0 - base.norm * base.norm;
    const double cp = -1.0 / one_minus;
    const double cq = -1.0 / std::sqrt(one_minus);
    cmat j(n, cvec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            j[i][k] = cp * proj_p[i][k] + cq * proj_q[i][k];
    return j;
}

BallPoint apply_automorphism(const BallPoint& a, const BallPoint& z) {
    return Automorphism(a).apply(z);
}

cmat jacobian_at_base(const BallPoint& a) {
    return Automorphism(a).jacobian_at_base();
}

} // namespace blochgauge
