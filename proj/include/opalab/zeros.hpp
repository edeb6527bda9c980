#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "opalab/poly2.hpp"

namespace opalab {

enum class Verdict {
    ZeroInOpenBidisk,
    StableNotStrong,
    StronglyStable,
    Inconclusive,
};

std::string verdict_name(Verdict v);
std::optional<Verdict> verdict_from_name(const std::string& name);

struct Witness {
    std::complex<double> z;
    std::complex<double> w;
    double abs_p = 0.0;  // |p(z, w)|
};

struct StabilityReport {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<Witness> witness;
    // Smallest slice-root modulus minus one over the probed torus slices
    // (or over the single variable in the degenerate one-variable cases);
    // +inf for nonzero constants, -inf when a probed slice vanished
    // identically.
    double margin = 0.0;
    int probes = 0;
    double tolerance = 0.0;
};

struct ClassifyConfig {
    int torus_samples = 2048;
    int disk_grid = 128;
    double tolerance = 1e-7;
    int refine_iters = 40;
};

// Roots of a univariate polynomial, ascending coefficients. Leading
// coefficients below 1e-12 relative are trimmed first; roots come from
// companion-matrix eigenvalues plus a Newton polish.
// Throws std::domain_error if the trimmed polynomial is constant.
std::vector<std::complex<double>> univariate_roots(
    const std::vector<std::complex<double>>& coefficients);

// Minimum modulus of the w-roots of the slice p(e^{i*angle}, w).
// Returns -inf when the slice vanishes identically; throws
// std::domain_error when the slice is a nonzero constant in w.
double min_root_modulus_on_torus(const BiPoly& p, double z_angle);

// Zero-location verdict relative to the open/closed bidisk.
//
// Strong stability is decided by the two-condition slice decomposition:
// p(z, 0) must be root-free in the closed disk, and for a family of
// points z0 on the unit circle every w-root of p(z0, .) must stay
// outside the closed disk (with local refinement of the torus minima).
// Open-bidisk zeros are searched on polar grids in each variable and the
// winning candidate is polished by Newton steps before it is accepted.
// Throws std::domain_error for the zero polynomial.
StabilityReport classify_bidisk(const BiPoly& p,
                                const ClassifyConfig& config = {});

}  // namespace opalab
