#include "opalab/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace opalab {

namespace {

void check_square(const GRMatrix& a) {
    for (const auto& row : a) {
        if (row.size() != a.size()) {
            throw std::invalid_argument("matrix is not square");
        }
    }
}

}  // namespace

GRVector solve_linear(GRMatrix a, GRVector rhs) {
    check_square(a);
    const std::size_t n = a.size();
    if (rhs.size() != n) {
        throw std::invalid_argument("rhs size does not match matrix");
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) ++pivot;
        if (pivot == n) {
            throw std::domain_error("solve_linear: singular matrix");
        }
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            std::swap(rhs[pivot], rhs[col]);
        }
        const GaussianRational& pv = a[col][col];
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            GaussianRational factor = a[r][col] / pv;
            for (std::size_t c = col; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
            }
            rhs[r] -= factor * rhs[col];
        }
    }
    GRVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / a[i][i];
    return x;
}

GaussianRational determinant(GRMatrix a) {
    check_square(a);
    const std::size_t n = a.size();
    if (n == 0) return GaussianRational(1);
    bool negate = false;
    GaussianRational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return GaussianRational();
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            negate = !negate;
        }
        const GaussianRational& pv = a[col][col];
        det *= pv;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            GaussianRational factor = a[r][col] / pv;
            for (std::size_t c = col; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
            }
        }
    }
    return negate ? -det : det;
}

}  // namespace opalab
