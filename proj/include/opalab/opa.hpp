#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "opalab/linalg.hpp"
#include "opalab/poly2.hpp"

namespace opalab {

// The linear system recovering the coefficients of the degree-n optimal
// approximant of 1/f: row j is the projection equation
//   sum_k a_k <chi_k f, chi_j f> = <1, chi_j f>,
// so gram(j,k) = <chi_k f, chi_j f>. The matrix is Hermitian positive
// definite for f not identically zero; for real-coefficient f it matches
// the (<chi_j f, chi_k f>) layout entry for entry.
struct OptimalSystem {
    std::int64_t degree = 0;
    GRMatrix gram;
    GRVector rhs;  // (conj(f(0)), 0, ..., 0)
};

enum class OpaBasis {
    ChiPrefix,  // chi_0..chi_n, the two-variable degree-lex prefix
    ZPowers,    // 1, z, ..., z^n, the one-variable specialization
};

struct OpaResult {
    BiPoly poly;
    std::int64_t degree = 0;
    Rational error_sq;  // ||poly * f - 1||^2, exact
    OpaBasis basis = OpaBasis::ChiPrefix;
};

// Exact Gram assembly; entries computed for j <= k and conjugate-filled.
// Throws std::domain_error when f is identically zero.
OptimalSystem build_optimal_system(const BiPoly& f, std::int64_t n);

// Exact solve of the optimal system (Gaussian elimination, first nonzero
// pivot). Throws std::domain_error when f is identically zero.
OpaResult solve_opa(const BiPoly& f, std::int64_t n);

// One-variable specialization over the basis 1, z, ..., z^n.
// Throws std::invalid_argument if f depends on w.
OpaResult solve_opa_univariate(const BiPoly& f, std::int64_t n);

// max_j |<1 - poly*f, basis_j f>|^2 over the result's basis, exact;
// zero for any result actually produced from (f, n).
// Throws std::invalid_argument when the result's support exceeds its
// stated degree.
Rational orthogonality_residual(const BiPoly& f, const OpaResult& result);

struct DetCriterion {
    Rational det_gram;               // det G, positive real
    GaussianRational det_gram_alpha; // det of G with first column swapped
                                     // for (<k_alpha, chi_j f>)_j
};

// Exact determinant pair for a Gaussian-rational point alpha in the open
// bidisk. Satisfies, exactly,
//   p_n[f](alpha) * f(alpha) * det_gram = conj(f(0)) * conj(det_gram_alpha).
// Throws std::domain_error when f == 0 or alpha is not inside the open
// bidisk.
DetCriterion det_criterion(const BiPoly& f, std::int64_t n,
                           const std::pair<GaussianRational,
                                           GaussianRational>& alpha);

struct DetCriterionFloat {
    double det_gram = 0.0;
    std::complex<double> det_gram_alpha;
};

// Float path for arbitrary alpha in the open bidisk (identity holds to
// ~1e-9 relative).
DetCriterionFloat det_criterion_float(const BiPoly& f, std::int64_t n,
                                      std::complex<double> alpha_z,
                                      std::complex<double> alpha_w);

// The constant c with p_n[f] = c * p_n[g], if one exists; empty otherwise.
// Throws std::domain_error when either function vanishes at the origin.
std::optional<GaussianRational> check_const_equiv(const BiPoly& f,
                                                  const BiPoly& g,
                                                  std::int64_t n);

struct P0Product {
    BiPoly product_p0;        // p_0 of g*h
    BiPoly factored_p0;       // p_0 of g times p_0 of h
    Rational product_norm_sq; // ||gh||^2
    Rational factor_norm_sq;  // ||g||^2 * ||h||^2
};

// For g in z alone and h in w alone, both nonzero at the origin, the two
// degree-0 approximants agree and the norms multiply; both sides are
// returned for checking. Throws std::invalid_argument if the variables
// are not separated, std::domain_error on origin vanishing.
P0Product p0_product_check(const BiPoly& g, const BiPoly& h);

struct OneVariableFactorRoots {
    std::vector<std::complex<double>> z_roots;  // alpha with (z - alpha) | p
    std::vector<std::complex<double>> w_roots;  // beta with (w - beta) | p
};

// Exact gcd of the coefficient polynomials in the other variable isolates
// every one-variable factor; its roots are found numerically.
// Throws std::domain_error for the zero polynomial.
OneVariableFactorRoots one_variable_factor_roots(const BiPoly& p);

}  // namespace opalab
