#include "blochgauge/common.hpp"

#include <cmath>
#include <cstdio>

namespace blochgauge {

cplx inner(const cvec& u, const cvec& v) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        s += u[i] * std::conj(v[i]);
    return s;
}

double euclidean_norm(const cvec& u) {
    double s = 0.0;
    for (const cplx& c : u)
        s += std::norm(c);
    return std::sqrt(s);
}

cmat identity_matrix(std::size_t n) {
    cmat m(n, cvec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1.0;
    return m;
}

cvec mat_apply(const cmat& a, const cvec& z) {
    cvec out(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < z.size(); ++j)
            out[i] += a[i][j] * z[j];
    return out;
}

double operator_norm(const cmat& a) {
    const std::size_t n = a.size();
    if (n == 0)
        return 0.0;
    if (n == 1)
        return std::abs(a[0][0]);

    // b = A^H A, hermitian positive semidefinite
    cmat b(n, cvec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += std::conj(a[k][i]) * a[k][j];
            b[i][j] = s;
        }

    // Two fixed start vectors guard against a start orthogonal to the top
    // eigenspace.
    double best = 0.0;
    for (int start = 0; start < 2; ++start) {
        cvec v(n);
        for (std::size_t i = 0; i < n; ++i) {
            double t = static_cast<double>(i + 1);
            v[i] = start == 0 ? cplx(1.0 / t, 0.0)
                              : cplx(std::cos(1.7 * t), std::sin(0.9 * t + 0.3));
        }
        double lambda = 0.0;
        for (int it = 0; it < 400; ++it) {
            cvec w = mat_apply(b, v);
            double wn = euclidean_norm(w);
            if (wn == 0.0) {
                lambda = 0.0;
                break;
            }
            lambda = std::real(inner(w, v)) / (euclidean_norm(v) * euclidean_norm(v));
            for (std::size_t i = 0; i < n; ++i)
                v[i] = w[i] / wn;
        }
        best = std::max(best, std::sqrt(std::max(lambda, 0.0)));
    }
    return best;
}

std::string format_complex(cplx z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.9g%+.9gi", z.real(), z.imag());
    return buf;
}

std::string format_point(const cvec& z) {
    std::string s = "(";
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (i)
            s += ", ";
        s += format_complex(z[i]);
    }
    s += ")";
    return s;
}

} // namespace blochgauge
