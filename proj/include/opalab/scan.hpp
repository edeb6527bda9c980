#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opalab/json_io.hpp"
#include "opalab/poly2.hpp"
#include "opalab/zeros.hpp"

namespace opalab {

struct ScanConfig {
    std::int64_t n_max = 5;
    int coeff_height = 8;  // bound on drawn numerators and denominators
    // Lighter classifier budget than the desk default; the harness pushes
    // thousands of classifications per run.
    ClassifyConfig classify{256, 32, 1e-7, 24};
    int threads = 0;  // 0: OPA_LAB_THREADS, else hardware concurrency
};

struct OpaScanEntry {
    std::int64_t n = 0;
    Verdict opa_class = Verdict::Inconclusive;
    double margin = 0.0;
    std::vector<double> factor_root_moduli;  // both variables, ascending
};

// Exact corroboration of one flagged approximant.
struct RecheckEntry {
    std::int64_t n = -1;
    Verdict flagged_class = Verdict::Inconclusive;
    bool confirmed = false;
    bool downgraded = false;
    bool vieta_certificate = false;  // exact slice-product certificate held
    GaussianRational point_z;        // exact evaluation point
    GaussianRational point_w;
    std::string abs_sq_at_point;     // |p(point)|^2 as "p/q"
    double bound = 0.0;              // acceptance bound on |p(point)|
};

struct RecheckReport {
    bool all_confirmed = false;
    bool any_downgraded = false;
    std::vector<RecheckEntry> entries;
};

struct ScanRecord {
    std::string family;
    std::uint64_t seed = 0;
    std::int64_t index = 0;
    BiPoly f;
    Verdict f_class = Verdict::Inconclusive;
    double f_margin = 0.0;
    std::vector<OpaScanEntry> opa_results;
    bool strong_violation = false;
    bool weak_violation_candidate = false;
    std::optional<RecheckReport> recheck;
    std::int64_t rejected_draws = 0;  // f(0) == 0 draws discarded
};

// Families: dense<N><M> (single digits, e.g. "dense11"), "separated",
// "hound" (reflected-factor pairs at consecutive indices), "detrep"
// (perturbed expansions of strict contractions).
bool is_known_family(const std::string& family);

// Deterministic candidate draw; depends only on (family, seed, index).
// Throws std::invalid_argument for an unknown family.
BiPoly draw_candidate(const std::string& family, std::uint64_t seed,
                      std::int64_t index, int coeff_height,
                      std::int64_t* rejected_draws = nullptr);

// Approximants, classifications, flags and (for flagged records) the
// exact recheck, for one candidate of the family.
ScanRecord scan_record(const std::string& family, std::uint64_t seed,
                       std::int64_t index, const ScanConfig& config);

// As above but for an externally supplied candidate.
ScanRecord scan_record_for(BiPoly f, const std::string& family,
                           std::uint64_t seed, std::int64_t index,
                           const ScanConfig& config);

// Computes records first_index .. first_index+count-1 (parallel inside)
// and emits them in index order.
void run_scan(const std::string& family, std::int64_t count,
              std::uint64_t seed, const ScanConfig& config,
              const std::function<void(const ScanRecord&)>& emit,
              std::int64_t first_index = 0);

Json scan_record_to_json(const ScanRecord& record);
ScanRecord scan_record_from_json(const Json& doc);

struct FamilySummary {
    std::string family;
    std::int64_t count = 0;
    std::map<std::string, std::int64_t> f_verdicts;
    std::map<std::string, std::int64_t> opa_verdicts;
    std::int64_t strong_violations = 0;
    std::int64_t weak_candidates = 0;
    std::int64_t rechecked = 0;
    std::int64_t confirmed = 0;
    std::int64_t downgraded = 0;
    std::int64_t rejected_draws = 0;
    std::int64_t pairs = 0;           // hound pairs seen in full
    std::int64_t pairs_agreeing = 0;  // pairs with matching flags
};

struct ScanSummary {
    std::vector<FamilySummary> families;
};

ScanSummary summarize(const std::vector<ScanRecord>& records);
Json summary_to_json(const ScanSummary& summary);
std::string summary_table(const ScanSummary& summary);

// family,seed,index,kind,n,margin rows; kind is "f" or "opa".
std::string margins_csv(const std::vector<ScanRecord>& records);

}  // namespace opalab
