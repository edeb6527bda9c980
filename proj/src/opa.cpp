#include "opalab/opa.hpp"

#include <Eigen/Dense>

#include <stdexcept>

#include "opalab/zeros.hpp"

namespace opalab {

namespace {

std::vector<BiPoly> basis_monomials(OpaBasis basis, std::int64_t n) {
    std::vector<BiPoly> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (std::int64_t j = 0; j <= n; ++j) {
        if (basis == OpaBasis::ChiPrefix) {
            out.push_back(BiPoly::chi(j));
        } else {
            out.push_back(BiPoly::monomial({j, 0}));
        }
    }
    return out;
}

std::vector<BiPoly> shifted_family(const BiPoly& f, OpaBasis basis,
                                   std::int64_t n) {
    std::vector<BiPoly> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (std::int64_t j = 0; j <= n; ++j) {
        ExponentPair e = basis == OpaBasis::ChiPrefix ? chi_exponents(j)
                                                      : ExponentPair{j, 0};
        out.push_back(f.shifted(e));
    }
    return out;
}

OptimalSystem build_system(const BiPoly& f, OpaBasis basis, std::int64_t n) {
    if (f.is_zero()) {
        throw std::domain_error("optimal system of the zero function");
    }
    if (n < 0) {
        throw std::invalid_argument("optimal system degree must be >= 0");
    }
    auto shifts = shifted_family(f, basis, n);
    const auto size = static_cast<std::size_t>(n) + 1;
    OptimalSystem sys;
    sys.degree = n;
    sys.gram.assign(size, GRVector(size));
    for (std::size_t j = 0; j < size; ++j) {
        for (std::size_t k = j; k < size; ++k) {
            GaussianRational e = inner_product(shifts[k], shifts[j]);
            sys.gram[j][k] = e;
            sys.gram[k][j] = e.conj();
        }
    }
    sys.rhs.assign(size, GaussianRational());
    sys.rhs[0] = f.at_origin().conj();
    return sys;
}

OpaResult solve_with_basis(const BiPoly& f, OpaBasis basis, std::int64_t n) {
    OptimalSystem sys = build_system(f, basis, n);
    GRVector a = solve_linear(sys.gram, sys.rhs);
    auto monomials = basis_monomials(basis, n);
    BiPoly p;
    for (std::size_t j = 0; j < a.size(); ++j) {
        p = p + monomials[j] * a[j];
    }
    OpaResult result;
    result.poly = p;
    result.degree = n;
    result.basis = basis;
    BiPoly residual = p * f - BiPoly::constant(GaussianRational(1));
    result.error_sq = residual.norm_sq();
    return result;
}

// Dense univariate polynomial over exact scalars, ascending coefficients.
using UniPoly = std::vector<GaussianRational>;

void trim(UniPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UniPoly remainder(UniPoly num, const UniPoly& den) {
    while (num.size() >= den.size()) {
        GaussianRational q = num.back() / den.back();
        std::size_t offset = num.size() - den.size();
        for (std::size_t i = 0; i < den.size(); ++i) {
            num[offset + i] -= q * den[i];
        }
        num.pop_back();
        trim(num);
        if (num.empty()) break;
    }
    return num;
}

UniPoly gcd_monic(UniPoly a, UniPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UniPoly r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        GaussianRational lead = a.back();
        for (auto& c : a) c = c / lead;
    }
    return a;
}

// Reads a polynomial in one variable out of a BiPoly that uses only that
// variable (index 0 = z, 1 = w).
UniPoly as_unipoly(const BiPoly& p, int var) {
    UniPoly out;
    for (const auto& [e, c] : p.terms()) {
        std::int64_t k = var == 0 ? e.a : e.b;
        if (static_cast<std::size_t>(k) >= out.size()) {
            out.resize(static_cast<std::size_t>(k) + 1);
        }
        out[static_cast<std::size_t>(k)] = c;
    }
    return out;
}

std::vector<std::complex<double>> roots_of(const UniPoly& p) {
    std::vector<std::complex<double>> coeffs;
    coeffs.reserve(p.size());
    for (const auto& c : p) coeffs.push_back(c.to_complex());
    return univariate_roots(coeffs);
}

}  // namespace

OptimalSystem build_optimal_system(const BiPoly& f, std::int64_t n) {
    return build_system(f, OpaBasis::ChiPrefix, n);
}

OpaResult solve_opa(const BiPoly& f, std::int64_t n) {
    return solve_with_basis(f, OpaBasis::ChiPrefix, n);
}

OpaResult solve_opa_univariate(const BiPoly& f, std::int64_t n) {
    if (f.depends_on_w()) {
        throw std::invalid_argument(
            "solve_opa_univariate: input depends on w");
    }
    return solve_with_basis(f, OpaBasis::ZPowers, n);
}

Rational orthogonality_residual(const BiPoly& f, const OpaResult& result) {
    // The stated degree must actually bound the support.
    for (const auto& [e, c] : result.poly.terms()) {
        std::int64_t j = result.basis == OpaBasis::ChiPrefix ? chi_index(e)
                                                             : e.a;
        bool in_basis = result.basis == OpaBasis::ChiPrefix || e.b == 0;
        if (j > result.degree || !in_basis) {
            throw std::invalid_argument(
                "orthogonality_residual: result support exceeds degree");
        }
    }
    BiPoly r = BiPoly::constant(GaussianRational(1)) - result.poly * f;
    auto shifts = shifted_family(f, result.basis, result.degree);
    Rational worst(0);
    for (const auto& s : shifts) {
        Rational v = inner_product(r, s).norm_sq();
        if (v > worst) worst = v;
    }
    return worst;
}

DetCriterion det_criterion(const BiPoly& f, std::int64_t n,
                           const std::pair<GaussianRational,
                                           GaussianRational>& alpha) {
    if (f.is_zero()) {
        throw std::domain_error("det_criterion of the zero function");
    }
    if (alpha.first.norm_sq() >= 1 || alpha.second.norm_sq() >= 1) {
        throw std::domain_error(
            "det_criterion: point is outside the open bidisk");
    }
    OptimalSystem sys = build_system(f, OpaBasis::ChiPrefix, n);
    GaussianRational det_g = determinant(sys.gram);
    if (!det_g.is_real()) {
        throw std::logic_error("Gram determinant must be real");
    }
    GRMatrix swapped = sys.gram;
    for (std::int64_t j = 0; j <= n; ++j) {
        BiPoly shifted = f.shifted(chi_exponents(j));
        // <k_alpha, chi_j f> = conj((chi_j f)(alpha))
        swapped[static_cast<std::size_t>(j)][0] =
            shifted.evaluate(alpha.first, alpha.second).conj();
    }
    DetCriterion out;
    out.det_gram = det_g.re;
    out.det_gram_alpha = determinant(swapped);
    return out;
}

DetCriterionFloat det_criterion_float(const BiPoly& f, std::int64_t n,
                                      std::complex<double> alpha_z,
                                      std::complex<double> alpha_w) {
    if (f.is_zero()) {
        throw std::domain_error("det_criterion of the zero function");
    }
    if (std::abs(alpha_z) >= 1.0 || std::abs(alpha_w) >= 1.0) {
        throw std::domain_error(
            "det_criterion: point is outside the open bidisk");
    }
    OptimalSystem sys = build_system(f, OpaBasis::ChiPrefix, n);
    const auto size = static_cast<Eigen::Index>(n) + 1;
    Eigen::MatrixXcd g(size, size);
    for (Eigen::Index j = 0; j < size; ++j) {
        for (Eigen::Index k = 0; k < size; ++k) {
            g(j, k) = sys.gram[static_cast<std::size_t>(j)]
                              [static_cast<std::size_t>(k)].to_complex();
        }
    }
    Eigen::MatrixXcd g0 = g;
    for (Eigen::Index j = 0; j < size; ++j) {
        BiPoly shifted = f.shifted(chi_exponents(j));
        std::complex<double> value = 0.0;
        for (const auto& [e, c] : shifted.terms()) {
            value += c.to_complex() *
                     std::pow(alpha_z, static_cast<double>(e.a)) *
                     std::pow(alpha_w, static_cast<double>(e.b));
        }
        g0(j, 0) = std::conj(value);
    }
    DetCriterionFloat out;
    out.det_gram = g.determinant().real();
    out.det_gram_alpha = g0.determinant();
    return out;
}

std::optional<GaussianRational> check_const_equiv(const BiPoly& f,
                                                  const BiPoly& g,
                                                  std::int64_t n) {
    if (f.is_zero() || f.at_origin().is_zero() || g.is_zero() ||
        g.at_origin().is_zero()) {
        throw std::domain_error("check_const_equiv: vanishing at the origin");
    }
    BiPoly pf = solve_opa(f, n).poly;
    BiPoly pg = solve_opa(g, n).poly;
    GaussianRational c;
    bool have_c = false;
    for (std::int64_t j = 0; j <= n && !have_c; ++j) {
        ExponentPair e = chi_exponents(j);
        GaussianRational cf = pf.coeff(e);
        GaussianRational cg = pg.coeff(e);
        if (cf.is_zero() && cg.is_zero()) continue;
        if (cf.is_zero() || cg.is_zero()) return std::nullopt;
        c = cf / cg;
        have_c = true;
    }
    if (!have_c) return std::nullopt;  // both identically zero cannot happen
    if (pf != pg * c) return std::nullopt;
    return c;
}

P0Product p0_product_check(const BiPoly& g, const BiPoly& h) {
    if (g.depends_on_w() || h.depends_on_z()) {
        throw std::invalid_argument(
            "p0_product_check: factors must use separate variables");
    }
    if (g.is_zero() || g.at_origin().is_zero() || h.is_zero() ||
        h.at_origin().is_zero()) {
        throw std::domain_error("p0_product_check: vanishing at the origin");
    }
    P0Product out;
    BiPoly product = g * h;
    out.product_p0 = solve_opa(product, 0).poly;
    out.factored_p0 = solve_opa(g, 0).poly * solve_opa(h, 0).poly;
    out.product_norm_sq = product.norm_sq();
    out.factor_norm_sq = g.norm_sq() * h.norm_sq();
    return out;
}

OneVariableFactorRoots one_variable_factor_roots(const BiPoly& p) {
    if (p.is_zero()) {
        throw std::domain_error("one_variable_factor_roots of zero");
    }
    OneVariableFactorRoots out;
    for (int var = 0; var < 2; ++var) {
        auto rows = var == 0 ? p.coefficients_in_w() : p.coefficients_in_z();
        UniPoly g;
        for (const auto& row : rows) {
            if (row.is_zero()) continue;
            g = gcd_monic(g, as_unipoly(row, var));
            if (g.size() == 1) break;  // constant gcd, nothing divides
        }
        if (g.size() >= 2) {
            auto roots = roots_of(g);
            (var == 0 ? out.z_roots : out.w_roots) = std::move(roots);
        }
    }
    return out;
}

}  // namespace opalab
