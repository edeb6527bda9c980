#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

#include "opalab/poly2.hpp"

namespace opalab {

// A determinantal presentation alpha * det(I - C * diag(z,..,z,w,..,w)),
// with the first `nz` diagonal slots carrying z and the remaining `nw`
// carrying w.
struct DetRep {
    std::complex<double> alpha{1.0, 0.0};
    Eigen::MatrixXcd c;
    int nz = 0;
    int nw = 0;
};

// Expands the determinant into a polynomial by principal-minor
// enumeration: the subset S contributes
// (-1)^|S| det(C[S,S]) z^|S cap Z| w^|S cap W|. Coefficients below 1e-12
// of the largest are trimmed and the survivors converted exactly from
// binary floats to rationals. Throws std::invalid_argument when the split
// does not match the matrix or the dimension exceeds 20.
BiPoly expand(const DetRep& rep);

// Numeric evaluation of alpha * det(I - C diag(...)) at a point; the
// oracle the expansion is tested against.
std::complex<double> det_rep_value(const DetRep& rep, std::complex<double> z,
                                   std::complex<double> w);

// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& c);

// Deterministic-in-seed random complex matrix rescaled so its operator
// norm equals norm_cap. Throws std::invalid_argument unless
// 0 < norm_cap < 1.
Eigen::MatrixXcd sample_strict_contraction(int n, std::uint64_t seed,
                                           double norm_cap);

// Pads the representation with `extra` zero rows and columns (assigned to
// the z block); the expanded polynomial is unchanged.
DetRep augment(const DetRep& rep, int extra);

}  // namespace opalab
