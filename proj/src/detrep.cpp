#include "opalab/detrep.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace opalab {

namespace {

// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("cannot rationalize a non-finite value");
    }
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

std::complex<double> principal_minor_det(const Eigen::MatrixXcd& c,
                                         const std::vector<int>& idx) {
    const auto k = static_cast<Eigen::Index>(idx.size());
    if (k == 0) return 1.0;
    Eigen::MatrixXcd minor(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
        for (Eigen::Index col = 0; col < k; ++col) {
            minor(r, col) = c(idx[static_cast<std::size_t>(r)],
                              idx[static_cast<std::size_t>(col)]);
        }
    }
    if (k == 1) return minor(0, 0);
    if (k == 2) return minor(0, 0) * minor(1, 1) - minor(0, 1) * minor(1, 0);
    return minor.determinant();
}

// SplitMix64; fixed stream so samples do not depend on the standard
// library's distribution internals.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [-1, 1)
    double symmetric() {
        return 2.0 * (static_cast<double>(next() >> 11) * 0x1.0p-53) - 1.0;
    }
};

}  // namespace

BiPoly expand(const DetRep& rep) {
    const int n = static_cast<int>(rep.c.rows());
    if (rep.c.cols() != rep.c.rows()) {
        throw std::invalid_argument("expand: matrix must be square");
    }
    if (rep.nz < 0 || rep.nw < 0 || rep.nz + rep.nw != n) {
        throw std::invalid_argument("expand: split does not match matrix");
    }
    if (n > 20) {
        throw std::invalid_argument("expand: dimension above 20");
    }

    std::vector<std::vector<std::complex<double>>> coeffs(
        static_cast<std::size_t>(rep.nz) + 1,
        std::vector<std::complex<double>>(static_cast<std::size_t>(rep.nw) + 1,
                                          0.0));
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(n));
    const std::uint32_t subsets = 1u << n;
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        idx.clear();
        int z_count = 0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                idx.push_back(i);
                if (i < rep.nz) ++z_count;
            }
        }
        const int size = static_cast<int>(idx.size());
        double sign = (size % 2 == 0) ? 1.0 : -1.0;
        coeffs[static_cast<std::size_t>(z_count)]
              [static_cast<std::size_t>(size - z_count)] +=
            sign * principal_minor_det(rep.c, idx);
    }

    double sup = 0.0;
    for (const auto& row : coeffs) {
        for (const auto& c : row) sup = std::max(sup, std::abs(rep.alpha * c));
    }
    const double floor = 1e-12 * std::max(sup, 1.0);

    BiPoly out;
    for (std::size_t a = 0; a < coeffs.size(); ++a) {
        for (std::size_t b = 0; b < coeffs[a].size(); ++b) {
            std::complex<double> c = rep.alpha * coeffs[a][b];
            if (std::abs(c) < floor) continue;
            out.set_coeff({static_cast<std::int64_t>(a),
                           static_cast<std::int64_t>(b)},
                          GaussianRational(rational_from_double(c.real()),
                                           rational_from_double(c.imag())));
        }
    }
    return out;
}

std::complex<double> det_rep_value(const DetRep& rep, std::complex<double> z,
                                   std::complex<double> w) {
    const auto n = rep.c.rows();
    Eigen::VectorXcd diag(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        diag(i) = i < rep.nz ? z : w;
    }
    Eigen::MatrixXcd m =
        Eigen::MatrixXcd::Identity(n, n) - rep.c * diag.asDiagonal();
    return rep.alpha * m.determinant();
}

double operator_norm(const Eigen::MatrixXcd& c) {
    if (c.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c);
    return svd.singularValues()(0);
}

Eigen::MatrixXcd sample_strict_contraction(int n, std::uint64_t seed,
                                           double norm_cap) {
    if (!(norm_cap > 0.0 && norm_cap < 1.0)) {
        throw std::invalid_argument(
            "sample_strict_contraction: cap must lie in (0, 1)");
    }
    if (n <= 0) {
        throw std::invalid_argument(
            "sample_strict_contraction: dimension must be positive");
    }
    SplitMix64 rng(seed);
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            double re = rng.symmetric();
            double im = rng.symmetric();
            m(r, c) = std::complex<double>(re, im);
        }
    }
    double norm = operator_norm(m);
    if (norm == 0.0) {
        m.setIdentity();
        norm = 1.0;
    }
    return m * (norm_cap / norm);
}

DetRep augment(const DetRep& rep, int extra) {
    if (extra < 0) {
        throw std::invalid_argument("augment: negative padding");
    }
    const int n = static_cast<int>(rep.c.rows());
    DetRep out;
    out.alpha = rep.alpha;
    out.nz = rep.nz + extra;
    out.nw = rep.nw;
    out.c = Eigen::MatrixXcd::Zero(n + extra, n + extra);
    auto remap = [&](int i) { return i < rep.nz ? i : i + extra; };
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            out.c(remap(r), remap(c)) = rep.c(r, c);
        }
    }
    return out;
}

}  // namespace opalab
