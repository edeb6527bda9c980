#include "opalab/poly2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace opalab {

std::int64_t chi_index(const ExponentPair& e) {
    if (e.a < 0 || e.b < 0) {
        throw std::domain_error("chi_index: negative exponent");
    }
    std::int64_t t = e.a + e.b;
    return t * (t + 1) / 2 + e.b;
}

ExponentPair chi_exponents(std::int64_t index) {
    if (index < 0) {
        throw std::domain_error("chi_exponents: negative index");
    }
    // Largest t with t(t+1)/2 <= index.
    std::int64_t t = static_cast<std::int64_t>(
        (std::sqrt(8.0 * static_cast<double>(index) + 1.0) - 1.0) / 2.0);
    while (t * (t + 1) / 2 > index) --t;
    while ((t + 1) * (t + 2) / 2 <= index) ++t;
    std::int64_t b = index - t * (t + 1) / 2;
    return {t - b, b};
}

BiPoly BiPoly::constant(const GaussianRational& c) {
    BiPoly p;
    p.set_coeff({0, 0}, c);
    return p;
}

BiPoly BiPoly::monomial(const ExponentPair& e, const GaussianRational& c) {
    BiPoly p;
    p.set_coeff(e, c);
    return p;
}

BiPoly BiPoly::chi(std::int64_t index) {
    return monomial(chi_exponents(index));
}

GaussianRational BiPoly::coeff(const ExponentPair& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? GaussianRational() : it->second;
}

void BiPoly::set_coeff(const ExponentPair& e, const GaussianRational& c) {
    if (e.a < 0 || e.b < 0) {
        throw std::domain_error("BiPoly: negative exponent");
    }
    if (c.is_zero()) {
        terms_.erase(e);
    } else {
        terms_[e] = c;
    }
}

ExponentPair BiPoly::bidegree() const {
    if (terms_.empty()) {
        throw std::domain_error("bidegree of the zero polynomial");
    }
    ExponentPair d{0, 0};
    for (const auto& [e, c] : terms_) {
        d.a = std::max(d.a, e.a);
        d.b = std::max(d.b, e.b);
    }
    return d;
}

bool BiPoly::depends_on_z() const {
    for (const auto& [e, c] : terms_)
        if (e.a > 0) return true;
    return false;
}

bool BiPoly::depends_on_w() const {
    for (const auto& [e, c] : terms_)
        if (e.b > 0) return true;
    return false;
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
    BiPoly out = *this;
    for (const auto& [e, c] : o.terms_) {
        out.set_coeff(e, out.coeff(e) + c);
    }
    return out;
}

BiPoly BiPoly::operator-(const BiPoly& o) const {
    BiPoly out = *this;
    for (const auto& [e, c] : o.terms_) {
        out.set_coeff(e, out.coeff(e) - c);
    }
    return out;
}

BiPoly BiPoly::operator-() const {
    BiPoly out;
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
    BiPoly out;
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            ExponentPair e{e1.a + e2.a, e1.b + e2.b};
            out.set_coeff(e, out.coeff(e) + c1 * c2);
        }
    }
    return out;
}

BiPoly BiPoly::operator*(const GaussianRational& c) const {
    BiPoly out;
    if (c.is_zero()) return out;
    for (const auto& [e, coef] : terms_) out.terms_[e] = coef * c;
    return out;
}

BiPoly BiPoly::shifted(const ExponentPair& s) const {
    BiPoly out;
    for (const auto& [e, c] : terms_) {
        out.terms_[{e.a + s.a, e.b + s.b}] = c;
    }
    return out;
}

GaussianRational BiPoly::evaluate(const GaussianRational& z0,
                                  const GaussianRational& w0) const {
    if (terms_.empty()) return GaussianRational();
    // Horner in w over rows, Horner in z inside each row.
    auto rows = coefficients_in_w();
    GaussianRational acc;
    for (auto k = static_cast<std::int64_t>(rows.size()) - 1; k >= 0; --k) {
        const auto& row = rows[static_cast<std::size_t>(k)];
        GaussianRational row_val;
        if (!row.is_zero()) {
            for (std::int64_t a = row.bidegree().a; a >= 0; --a) {
                row_val = row_val * z0 + row.coeff({a, 0});
            }
        }
        acc = acc * w0 + row_val;
    }
    return acc;
}

Rational BiPoly::norm_sq() const {
    Rational total(0);
    for (const auto& [e, c] : terms_) total += c.norm_sq();
    return total;
}

BiPoly BiPoly::reflected() const {
    ExponentPair d = bidegree();  // throws on zero
    BiPoly out;
    for (const auto& [e, c] : terms_) {
        out.terms_[{d.a - e.a, d.b - e.b}] = c.conj();
    }
    return out;
}

std::vector<BiPoly> BiPoly::coefficients_in_w() const {
    std::int64_t m = terms_.empty() ? 0 : bidegree().b;
    std::vector<BiPoly> rows(static_cast<std::size_t>(m) + 1);
    for (const auto& [e, c] : terms_) {
        rows[static_cast<std::size_t>(e.b)].set_coeff({e.a, 0}, c);
    }
    return rows;
}

std::vector<BiPoly> BiPoly::coefficients_in_z() const {
    std::int64_t n = terms_.empty() ? 0 : bidegree().a;
    std::vector<BiPoly> rows(static_cast<std::size_t>(n) + 1);
    for (const auto& [e, c] : terms_) {
        rows[static_cast<std::size_t>(e.a)].set_coeff({0, e.b}, c);
    }
    return rows;
}

std::string BiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << gaussian_to_string(c) << ")";
        if (e.a > 0) out << "*z^" << e.a;
        if (e.b > 0) out << "*w^" << e.b;
    }
    return out.str();
}

GaussianRational inner_product(const BiPoly& f, const BiPoly& g) {
    const BiPoly* small = &f;
    const BiPoly* large = &g;
    bool swapped = false;
    if (f.terms().size() > g.terms().size()) {
        std::swap(small, large);
        swapped = true;
    }
    GaussianRational total;
    for (const auto& [e, c] : small->terms()) {
        auto it = large->terms().find(e);
        if (it == large->terms().end()) continue;
        total += swapped ? it->second * c.conj() : c * it->second.conj();
    }
    return total;
}

}  // namespace opalab
