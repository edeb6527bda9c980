#include "opalab/zeros.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace opalab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTrimRel = 1e-12;   // leading-coefficient trim, relative
constexpr double kZeroSliceRel = 1e-11;  // slice treated as identically zero

using Complex = std::complex<double>;
using CoeffVec = std::vector<Complex>;

Complex eval_poly(const CoeffVec& c, Complex x) {
    Complex acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Complex eval_poly_derivative(const CoeffVec& c, Complex x) {
    Complex acc = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) {
        acc = acc * x + static_cast<double>(k) * c[k];
    }
    return acc;
}

void newton_polish(const CoeffVec& c, Complex& root, int iters = 3) {
    for (int i = 0; i < iters; ++i) {
        Complex d = eval_poly_derivative(c, root);
        if (std::abs(d) < 1e-300) break;
        Complex step = eval_poly(c, root) / d;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        root -= step;
    }
}

std::vector<Complex> roots_quadratic(Complex c2, Complex c1, Complex c0) {
    Complex disc = c1 * c1 - 4.0 * c2 * c0;
    Complex sq = std::sqrt(disc);
    if ((std::conj(c1) * sq).real() < 0.0) sq = -sq;
    Complex q = -0.5 * (c1 + sq);
    if (std::abs(q) == 0.0) {
        // c1 + sq == 0 forces c0 == 0
        return {Complex(0.0), -c1 / c2};
    }
    return {q / c2, c0 / q};
}

// Roots of a trimmed, degree >= 1 polynomial.
std::vector<Complex> roots_trimmed(const CoeffVec& c) {
    const std::size_t degree = c.size() - 1;
    std::vector<Complex> roots;
    if (degree == 1) {
        roots = {-c[0] / c[1]};
    } else if (degree == 2) {
        roots = roots_quadratic(c[2], c[1], c[0]);
    } else {
        Eigen::MatrixXcd companion =
            Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(degree),
                                   static_cast<Eigen::Index>(degree));
        for (std::size_t k = 0; k + 1 < degree; ++k) {
            companion(static_cast<Eigen::Index>(k) + 1,
                      static_cast<Eigen::Index>(k)) = 1.0;
        }
        for (std::size_t k = 0; k < degree; ++k) {
            companion(static_cast<Eigen::Index>(k),
                      static_cast<Eigen::Index>(degree) - 1) =
                -c[k] / c[degree];
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("eigenvalue iteration failed");
        }
        roots.reserve(degree);
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
            roots.push_back(solver.eigenvalues()(i));
        }
    }
    for (auto& r : roots) newton_polish(c, r);
    return roots;
}

CoeffVec trim_leading(const CoeffVec& c) {
    double sup = 0.0;
    for (const auto& x : c) sup = std::max(sup, std::abs(x));
    CoeffVec out = c;
    while (!out.empty() && std::abs(out.back()) < kTrimRel * sup) {
        out.pop_back();
    }
    return out;
}

// Float image of an exact polynomial, cast once on entry, with the slice
// tables used by the classifier.
struct FloatCast {
    std::int64_t nz = 0, nw = 0;  // bidegree, from the exact support
    double sup = 0.0;             // max |coefficient|
    double one_norm = 0.0;        // sum |coefficient|
    double lipschitz = 0.0;       // sum |c| * (a + b), sup-metric bound
    // wrows[k][a]: coefficient of z^a w^k; zrows[a][k] the transpose.
    std::vector<CoeffVec> wrows;
    std::vector<CoeffVec> zrows;

    explicit FloatCast(const BiPoly& p) {
        ExponentPair d = p.bidegree();
        nz = d.a;
        nw = d.b;
        wrows.assign(static_cast<std::size_t>(nw) + 1,
                     CoeffVec(static_cast<std::size_t>(nz) + 1, 0.0));
        zrows.assign(static_cast<std::size_t>(nz) + 1,
                     CoeffVec(static_cast<std::size_t>(nw) + 1, 0.0));
        for (const auto& [e, coef] : p.terms()) {
            Complex c = coef.to_complex();
            wrows[static_cast<std::size_t>(e.b)]
                 [static_cast<std::size_t>(e.a)] = c;
            zrows[static_cast<std::size_t>(e.a)]
                 [static_cast<std::size_t>(e.b)] = c;
            sup = std::max(sup, std::abs(c));
            one_norm += std::abs(c);
            lipschitz += std::abs(c) * static_cast<double>(e.a + e.b);
        }
    }

    Complex eval(Complex z, Complex w) const {
        Complex acc = 0.0;
        for (std::size_t k = wrows.size(); k-- > 0;) {
            acc = acc * w + eval_poly(wrows[k], z);
        }
        return acc;
    }

    // Coefficients in the other variable along the slice through x0.
    CoeffVec slice(const std::vector<CoeffVec>& rows, Complex x0) const {
        CoeffVec out(rows.size());
        for (std::size_t k = 0; k < rows.size(); ++k) {
            out[k] = eval_poly(rows[k], x0);
        }
        return out;
    }
};

enum class SliceKind { IdenticallyZero, NonzeroConstant, Positive };

struct SliceRoots {
    SliceKind kind = SliceKind::Positive;
    double min_modulus = kInf;
    std::vector<Complex> roots;
};

SliceRoots analyze_slice(const CoeffVec& coeffs, double poly_scale) {
    SliceRoots out;
    double sup = 0.0;
    for (const auto& c : coeffs) sup = std::max(sup, std::abs(c));
    if (sup < kZeroSliceRel * poly_scale) {
        out.kind = SliceKind::IdenticallyZero;
        out.min_modulus = -kInf;
        return out;
    }
    CoeffVec trimmed = coeffs;
    while (trimmed.size() > 1 && std::abs(trimmed.back()) < kTrimRel * sup) {
        trimmed.pop_back();
    }
    if (trimmed.size() == 1) {
        out.kind = SliceKind::NonzeroConstant;
        return out;
    }
    out.roots = roots_trimmed(trimmed);
    for (const auto& r : out.roots) {
        out.min_modulus = std::min(out.min_modulus, std::abs(r));
    }
    return out;
}

struct BestBoundary {
    double min_modulus = kInf;
    Complex slice_point;   // z0 on the circle
    Complex offending_root;
    bool zero_slice = false;
    Complex zero_slice_point;
};

double torus_min_at(const FloatCast& fp, double angle, BestBoundary& best) {
    Complex z0 = std::polar(1.0, angle);
    SliceRoots sr = analyze_slice(fp.slice(fp.wrows, z0), fp.sup);
    if (sr.kind == SliceKind::IdenticallyZero) {
        if (!best.zero_slice) {
            best.zero_slice = true;
            best.zero_slice_point = z0;
        }
        return -kInf;
    }
    if (sr.kind == SliceKind::NonzeroConstant) return kInf;
    if (sr.min_modulus < best.min_modulus) {
        best.min_modulus = sr.min_modulus;
        best.slice_point = z0;
        for (const auto& r : sr.roots) {
            if (std::abs(r) == sr.min_modulus) best.offending_root = r;
        }
    }
    return sr.min_modulus;
}

}  // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::ZeroInOpenBidisk: return "ZeroInOpenBidisk";
        case Verdict::StableNotStrong: return "StableNotStrong";
        case Verdict::StronglyStable: return "StronglyStable";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

std::optional<Verdict> verdict_from_name(const std::string& name) {
    if (name == "ZeroInOpenBidisk") return Verdict::ZeroInOpenBidisk;
    if (name == "StableNotStrong") return Verdict::StableNotStrong;
    if (name == "StronglyStable") return Verdict::StronglyStable;
    if (name == "Inconclusive") return Verdict::Inconclusive;
    return std::nullopt;
}

std::vector<Complex> univariate_roots(const CoeffVec& coefficients) {
    CoeffVec trimmed = trim_leading(coefficients);
    if (trimmed.size() <= 1) {
        throw std::domain_error("univariate_roots: constant polynomial");
    }
    return roots_trimmed(trimmed);
}

double min_root_modulus_on_torus(const BiPoly& p, double z_angle) {
    if (p.is_zero()) {
        throw std::domain_error("min_root_modulus_on_torus of zero");
    }
    FloatCast fp(p);
    SliceRoots sr =
        analyze_slice(fp.slice(fp.wrows, std::polar(1.0, z_angle)), fp.sup);
    if (sr.kind == SliceKind::IdenticallyZero) return -kInf;
    if (sr.kind == SliceKind::NonzeroConstant) {
        throw std::domain_error(
            "min_root_modulus_on_torus: slice is constant in w");
    }
    return sr.min_modulus;
}

namespace {

// One-variable verdict for polynomials that only use z (var == 0) or only
// w (var == 1).
StabilityReport classify_one_variable(const FloatCast& fp, int var,
                                      const ClassifyConfig& config) {
    const auto& coeffs = var == 0 ? fp.wrows[0] : fp.zrows[0];
    StabilityReport rep;
    rep.probes = config.torus_samples;
    rep.tolerance = config.tolerance;
    auto roots = univariate_roots(coeffs);
    double min_mod = kInf;
    Complex worst = 0.0;
    for (const auto& r : roots) {
        if (std::abs(r) < min_mod) {
            min_mod = std::abs(r);
            worst = r;
        }
    }
    rep.margin = min_mod - 1.0;
    Witness witness;
    witness.z = var == 0 ? worst : Complex(0.0);
    witness.w = var == 0 ? Complex(0.0) : worst;
    witness.abs_p = std::abs(fp.eval(witness.z, witness.w));
    if (min_mod < 1.0 - config.tolerance) {
        rep.verdict = Verdict::ZeroInOpenBidisk;
        rep.witness = witness;
    } else if (min_mod <= 1.0 + config.tolerance) {
        rep.verdict = Verdict::StableNotStrong;
        rep.witness = witness;
    } else {
        rep.verdict = Verdict::StronglyStable;
    }
    return rep;
}

// Search a polar grid of slice anchors for a root of the slice that lies
// inside the open disk. dir == 0 slices in w (anchors in z), dir == 1 the
// reverse.
std::optional<Witness> interior_grid_search(const FloatCast& fp, int dir,
                                            const ClassifyConfig& config) {
    const auto& rows = dir == 0 ? fp.wrows : fp.zrows;
    const double tol = config.tolerance;
    const int grid = std::max(2, config.disk_grid);
    for (int i = 0; i < grid; ++i) {
        double radius = static_cast<double>(i) / grid;
        int angles = i == 0 ? 1 : grid;
        for (int j = 0; j < angles; ++j) {
            Complex s0 = std::polar(
                radius, 2.0 * std::numbers::pi * j / angles);
            CoeffVec coeffs = fp.slice(rows, s0);
            SliceRoots sr = analyze_slice(coeffs, fp.sup);
            if (sr.kind == SliceKind::IdenticallyZero) {
                Witness w;
                w.z = dir == 0 ? s0 : Complex(0.0);
                w.w = dir == 0 ? Complex(0.0) : s0;
                w.abs_p = std::abs(fp.eval(w.z, w.w));
                return w;
            }
            if (sr.kind == SliceKind::NonzeroConstant) continue;
            for (Complex r : sr.roots) {
                if (std::abs(r) >= 1.0 - tol) continue;
                newton_polish(coeffs, r, 4);
                if (std::abs(r) >= 1.0 - tol) continue;
                Witness w;
                w.z = dir == 0 ? s0 : r;
                w.w = dir == 0 ? r : s0;
                w.abs_p = std::abs(fp.eval(w.z, w.w));
                if (w.abs_p < config.tolerance * std::max(fp.sup, 1e-300)) {
                    return w;
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace

StabilityReport classify_bidisk(const BiPoly& p,
                                const ClassifyConfig& config) {
    if (p.is_zero()) {
        throw std::domain_error("classify_bidisk of the zero polynomial");
    }
    StabilityReport rep;
    rep.probes = config.torus_samples;
    rep.tolerance = config.tolerance;

    ExponentPair d = p.bidegree();
    if (d.a == 0 && d.b == 0) {
        rep.verdict = Verdict::StronglyStable;  // nonzero constant
        rep.margin = kInf;
        return rep;
    }

    FloatCast fp(p);

    // An exact zero at the origin settles membership outright.
    if (p.at_origin().is_zero()) {
        rep.verdict = Verdict::ZeroInOpenBidisk;
        rep.witness = Witness{0.0, 0.0, 0.0};
        rep.margin = -1.0;
        return rep;
    }

    if (d.b == 0) return classify_one_variable(fp, 0, config);
    if (d.a == 0) return classify_one_variable(fp, 1, config);

    // Open-bidisk zero search over both slice directions.
    for (int dir = 0; dir < 2; ++dir) {
        if (auto w = interior_grid_search(fp, dir, config)) {
            rep.verdict = Verdict::ZeroInOpenBidisk;
            rep.witness = *w;
            rep.margin =
                std::max(std::abs(w->z), std::abs(w->w)) - 1.0;
            return rep;
        }
    }

    // Condition (i): the fixed slice p(z, 0).
    double margin1 = kInf;
    {
        SliceRoots sr = analyze_slice(fp.wrows[0], fp.sup);
        // p(z,0) identically zero would put a zero at the origin; that
        // case returned above, so the slice is a genuine polynomial or a
        // nonzero constant here.
        if (sr.kind == SliceKind::Positive) {
            margin1 = sr.min_modulus - 1.0;
        }
    }

    // Condition (ii): w-roots along the unit circle in z.
    BestBoundary best;
    const int samples = std::max(8, config.torus_samples);
    std::vector<double> mins(static_cast<std::size_t>(samples));
    double min2 = kInf;
    for (int i = 0; i < samples; ++i) {
        double angle = 2.0 * std::numbers::pi * i / samples;
        mins[static_cast<std::size_t>(i)] = torus_min_at(fp, angle, best);
        min2 = std::min(min2, mins[static_cast<std::size_t>(i)]);
    }
    // Refine each local minimum of the sampled curve by ternary search.
    for (int i = 0; i < samples && std::isfinite(min2); ++i) {
        double here = mins[static_cast<std::size_t>(i)];
        double prev = mins[static_cast<std::size_t>((i + samples - 1) %
                                                    samples)];
        double next = mins[static_cast<std::size_t>((i + 1) % samples)];
        if (here > prev || here > next) continue;
        double lo = 2.0 * std::numbers::pi * (i - 1) / samples;
        double hi = 2.0 * std::numbers::pi * (i + 1) / samples;
        for (int it = 0; it < config.refine_iters; ++it) {
            double m1 = lo + (hi - lo) / 3.0;
            double m2 = hi - (hi - lo) / 3.0;
            double f1 = torus_min_at(fp, m1, best);
            double f2 = torus_min_at(fp, m2, best);
            if (f1 < f2) {
                hi = m2;
                min2 = std::min(min2, f1);
            } else {
                lo = m1;
                min2 = std::min(min2, f2);
            }
        }
    }

    rep.margin = best.zero_slice ? -kInf : min2 - 1.0;
    const double tol = config.tolerance;

    if (best.zero_slice) {
        // A whole boundary slice vanishes; with no interior witness this
        // is a zero on the distinguished boundary.
        Witness w;
        w.z = best.zero_slice_point;
        w.w = 0.0;
        w.abs_p = std::abs(fp.eval(w.z, w.w));
        rep.verdict = Verdict::StableNotStrong;
        rep.witness = w;
        return rep;
    }

    double overall = std::min(margin1, min2 - 1.0);
    if (overall > tol) {
        rep.verdict = Verdict::StronglyStable;
        return rep;
    }
    Witness w;
    w.z = best.slice_point;
    w.w = best.offending_root;
    w.abs_p = std::abs(fp.eval(w.z, w.w));
    if (margin1 < min2 - 1.0) {
        // the offending root came from the fixed slice p(z, 0)
        SliceRoots sr = analyze_slice(fp.wrows[0], fp.sup);
        for (const auto& r : sr.roots) {
            if (std::abs(r) - 1.0 == margin1) {
                w.z = r;
                w.w = 0.0;
                w.abs_p = std::abs(fp.eval(w.z, w.w));
            }
        }
    }
    if (overall >= -tol) {
        rep.verdict = Verdict::StableNotStrong;
        rep.witness = w;
    } else {
        // A slice root clearly inside the disk without a confirmed
        // interior witness: conflicting evidence, report honestly.
        rep.verdict = Verdict::Inconclusive;
        rep.witness = w;
    }
    return rep;
}

}  // namespace opalab
