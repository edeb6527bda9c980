#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "opalab/rational.hpp"

namespace opalab {

// Monomial exponents: z^a * w^b.
struct ExponentPair {
    std::int64_t a = 0;  // power of z
    std::int64_t b = 0;  // power of w

    std::int64_t total_degree() const { return a + b; }

    friend bool operator==(const ExponentPair& x, const ExponentPair& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const ExponentPair& x, const ExponentPair& y) {
        return !(x == y);
    }
};

// Degree-lexicographic order of monomials: increasing total degree,
// ties broken z before w. This is the enumeration
//   1, z, w, z^2, zw, w^2, z^3, ...
struct ChiOrder {
    bool operator()(const ExponentPair& x, const ExponentPair& y) const {
        if (x.total_degree() != y.total_degree())
            return x.total_degree() < y.total_degree();
        return x.b < y.b;
    }
};

// Position of z^a w^b in the degree-lexicographic enumeration:
// (a+b)(a+b+1)/2 + b.
std::int64_t chi_index(const ExponentPair& e);

// Inverse of chi_index.
ExponentPair chi_exponents(std::int64_t index);

// Sparse bivariate polynomial with exact Gaussian-rational coefficients.
// Canonical form: zero coefficients are never stored, so equality of the
// term maps is equality of polynomials.
class BiPoly {
  public:
    using TermMap = std::map<ExponentPair, GaussianRational, ChiOrder>;

    BiPoly() = default;

    static BiPoly constant(const GaussianRational& c);
    static BiPoly monomial(const ExponentPair& e,
                           const GaussianRational& c = GaussianRational(1));
    // The monomial chi_index in the degree-lexicographic enumeration.
    static BiPoly chi(std::int64_t index);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GaussianRational coeff(const ExponentPair& e) const;
    void set_coeff(const ExponentPair& e, const GaussianRational& c);

    // Componentwise max exponent over the stored support.
    // Throws std::domain_error for the zero polynomial.
    ExponentPair bidegree() const;

    bool depends_on_z() const;
    bool depends_on_w() const;

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator-() const;
    BiPoly operator*(const BiPoly& o) const;
    BiPoly operator*(const GaussianRational& c) const;

    friend bool operator==(const BiPoly& x, const BiPoly& y) {
        return x.terms_ == y.terms_;
    }
    friend bool operator!=(const BiPoly& x, const BiPoly& y) {
        return !(x == y);
    }

    // z^a w^b * p; an isometry for the coefficient norm.
    BiPoly shifted(const ExponentPair& e) const;

    // Exact evaluation at a Gaussian-rational point, Horner in both
    // variables.
    GaussianRational evaluate(const GaussianRational& z0,
                              const GaussianRational& w0) const;

    GaussianRational at_origin() const { return coeff({0, 0}); }

    // Sum of squared coefficient moduli; zero iff the polynomial is zero.
    Rational norm_sq() const;

    // Coefficient reversal with conjugation: output coefficient at (a,b)
    // is conj(input coefficient at (n-a, m-b)) for bidegree (n,m).
    // Throws std::domain_error for the zero polynomial.
    BiPoly reflected() const;

    // Coefficients of p grouped by powers of `w` (index = w power), each
    // entry a polynomial in z alone; and the symmetric grouping.
    std::vector<BiPoly> coefficients_in_w() const;
    std::vector<BiPoly> coefficients_in_z() const;

    std::string to_string() const;

  private:
    TermMap terms_;
};

// Coefficientwise Hardy-space pairing: sum over shared exponents of
// c_f * conj(c_g). Exact.
GaussianRational inner_product(const BiPoly& f, const BiPoly& g);

}  // namespace opalab
