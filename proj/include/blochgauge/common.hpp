#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace blochgauge {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using cmat = std::vector<cvec>;

// Bad user input: config files, CLI arguments, malformed function specs.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failure at run time: kernel singularities, inconsistent extrema,
// contour breakdown. Messages name the offending point.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Hermitian inner product <u,v> = sum u_i conj(v_i), linear in the first slot.
cplx inner(const cvec& u, const cvec& v);

double euclidean_norm(const cvec& u);

cmat identity_matrix(std::size_t n);
cvec mat_apply(const cmat& a, const cvec& z);

// Spectral norm via power iteration on A^H A; deterministic start vectors.
double operator_norm(const cmat& a);

std::string format_complex(cplx z);
std::string format_point(const cvec& z);

} // namespace blochgauge
