#include "opalab/innerness.hpp"

#include <algorithm>
#include <stdexcept>

namespace opalab {

std::int64_t pound(std::int64_t k, std::int64_t n) {
    if (k < 0 || n < 0) {
        throw std::domain_error("pound: negative argument");
    }
    ExponentPair e = chi_exponents(k);
    return chi_index({e.a * n, e.b * n});
}

bool is_weakly_inner(const BiPoly& f, ExponentPair* failing_shift) {
    if (f.is_zero()) {
        throw std::domain_error("is_weakly_inner of the zero function");
    }
    ExponentPair d = f.bidegree();
    // Walk shifts in chi order so the reported failure is the first one.
    for (std::int64_t t = 1; t <= d.a + d.b; ++t) {
        for (std::int64_t b = std::max<std::int64_t>(0, t - d.a);
             b <= std::min(t, d.b); ++b) {
            ExponentPair shift{t - b, b};
            if (!inner_product(f, f.shifted(shift)).is_zero()) {
                if (failing_shift) *failing_shift = shift;
                return false;
            }
        }
    }
    return true;
}

bool is_inner(const BiPoly& f) {
    if (f.terms().size() != 1) return false;
    return f.terms().begin()->second.norm_sq() == 1;
}

bool constant_opa_check(const BiPoly& f, std::int64_t n_max) {
    if (f.is_zero() || f.at_origin().is_zero()) {
        throw std::domain_error("constant_opa_check: vanishing at the origin");
    }
    BiPoly p0 = solve_opa(f, 0).poly;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        if (solve_opa(f, n).poly != p0) return false;
    }
    return true;
}

std::int64_t bidegree_complete_index(const BiPoly& f) {
    return chi_index(f.bidegree());
}

BiPoly compose_with_chi(const BiPoly& h, std::int64_t k) {
    if (h.depends_on_w()) {
        throw std::invalid_argument("compose_with_chi: h must use z alone");
    }
    ExponentPair base = chi_exponents(k);
    BiPoly f;
    for (const auto& [e, c] : h.terms()) {
        f.set_coeff({e.a * base.a, e.a * base.b}, f.coeff({e.a * base.a,
                                                           e.a * base.b}) + c);
    }
    return f;
}

PlateauReport plateau_check(const BiPoly& h, std::int64_t k,
                            std::int64_t j_max, std::int64_t degree_cap) {
    if (h.depends_on_w()) {
        throw std::invalid_argument("plateau_check: h must use z alone");
    }
    if (h.is_zero() || h.at_origin().is_zero()) {
        throw std::domain_error("plateau_check: vanishing at the origin");
    }
    BiPoly f = compose_with_chi(h, k);
    PlateauReport report;
    report.ok = true;
    for (std::int64_t j = 0; j <= j_max; ++j) {
        PlateauInterval seg;
        seg.j = j;
        seg.first = pound(k, j);
        seg.last = pound(k, j + 1) - 1;
        if (degree_cap >= 0) seg.last = std::min(seg.last, degree_cap);
        if (seg.last < seg.first) continue;  // chi_0 composes to a point
        seg.value = solve_opa(f, seg.first).poly;
        for (std::int64_t n = seg.first + 1; n <= seg.last; ++n) {
            if (solve_opa(f, n).poly != seg.value) {
                report.ok = false;
            }
        }
        bool capped = degree_cap >= 0 && seg.last == degree_cap;
        report.segments.push_back(std::move(seg));
        if (capped) break;
    }
    return report;
}

}  // namespace opalab
