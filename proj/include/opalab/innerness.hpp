#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "opalab/opa.hpp"
#include "opalab/poly2.hpp"

namespace opalab {

// Index of (chi_k)^n in the degree-lexicographic enumeration.
std::int64_t pound(std::int64_t k, std::int64_t n);

// Exact autocorrelation test: <f, z^a w^b f> = 0 for every nonzero shift
// inside the bidegree box. Shifts beyond the box vanish automatically, so
// this finite check decides the condition for polynomials. When the test
// fails and `failing_shift` is non-null, it receives the first offending
// shift in chi order.
bool is_weakly_inner(const BiPoly& f, ExponentPair* failing_shift = nullptr);

// Exact test for |f| = 1 a.e. on the torus; among polynomials only the
// unimodular-constant multiples of monomials qualify.
bool is_inner(const BiPoly& f);

// True iff p_n[f] stays equal to p_0[f] for every n <= n_max.
// Throws std::domain_error when f vanishes at the origin.
bool constant_opa_check(const BiPoly& f, std::int64_t n_max);

// Smallest degree bound that makes constant_opa_check conclusive for the
// weakly-inner equivalence: the chi index of the bidegree corner.
std::int64_t bidegree_complete_index(const BiPoly& f);

struct PlateauInterval {
    std::int64_t j = 0;
    std::int64_t first = 0;  // pound(k, j)
    std::int64_t last = 0;   // min(pound(k, j+1) - 1, cap)
    BiPoly value;            // the common approximant on [first, last]
};

struct PlateauReport {
    bool ok = false;
    std::vector<PlateauInterval> segments;
};

// Substitutes u = chi_k into the one-variable polynomial h (given in z).
BiPoly compose_with_chi(const BiPoly& h, std::int64_t k);

// With f = h(chi_k), checks exactly that the approximants are constant on
// every index run [pound(k,j), pound(k,j+1)-1] for j <= j_max. A
// nonnegative degree_cap truncates the final run (useful to bound work).
// Throws std::domain_error when h vanishes at the origin and
// std::invalid_argument when h depends on w.
PlateauReport plateau_check(const BiPoly& h, std::int64_t k,
                            std::int64_t j_max, std::int64_t degree_cap = -1);

}  // namespace opalab
