#include "opalab/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "opalab/detrep.hpp"
#include "opalab/opa.hpp"

namespace opalab {

namespace {

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

SplitMix64 record_rng(std::uint64_t seed, std::int64_t index,
                      std::uint64_t salt) {
    SplitMix64 mixer(seed);
    std::uint64_t base = mixer.next();
    return SplitMix64(base ^
                      (0x9e3779b97f4a7c15ULL *
                       (static_cast<std::uint64_t>(index) + 1)) ^
                      salt);
}

Rational draw_rational(SplitMix64& rng, int height, bool allow_zero = true) {
    std::int64_t num = rng.uniform(-height, height);
    if (!allow_zero) {
        while (num == 0) num = rng.uniform(-height, height);
    }
    std::int64_t den = rng.uniform(1, height);
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

BiPoly draw_dense(SplitMix64& rng, std::int64_t deg_z, std::int64_t deg_w,
                  int height) {
    BiPoly f;
    for (std::int64_t a = 0; a <= deg_z; ++a) {
        for (std::int64_t b = 0; b <= deg_w; ++b) {
            f.set_coeff({a, b}, GaussianRational(draw_rational(rng, height)));
        }
    }
    return f;
}

BiPoly draw_univariate(SplitMix64& rng, int var, std::int64_t degree,
                       int height) {
    BiPoly f;
    for (std::int64_t k = 0; k <= degree; ++k) {
        ExponentPair e = var == 0 ? ExponentPair{k, 0} : ExponentPair{0, k};
        bool constant_term = k == 0;
        Rational c = draw_rational(rng, height, !constant_term);
        f.set_coeff(e, GaussianRational(c));
    }
    return f;
}

// Dyadic rounding with 2^bits denominator; exact once rounded.
Rational dyadic_round(double x, int bits) {
    double scaled = std::ldexp(x, bits);
    if (!std::isfinite(scaled) || std::abs(scaled) > 9e15) {
        throw std::domain_error("dyadic_round: value out of range");
    }
    Rational r(static_cast<long>(std::llround(scaled)),
               static_cast<unsigned long>(1) << bits);
    r.canonicalize();
    return r;
}

bool parse_dense_family(const std::string& family, std::int64_t* deg_z,
                        std::int64_t* deg_w) {
    if (family.size() != 7 || family.rfind("dense", 0) != 0) return false;
    char a = family[5];
    char b = family[6];
    if (a < '1' || a > '9' || b < '1' || b > '9') return false;
    *deg_z = a - '0';
    *deg_w = b - '0';
    return true;
}

}  // namespace

bool is_known_family(const std::string& family) {
    std::int64_t dz, dw;
    return family == "separated" || family == "hound" || family == "detrep" ||
           parse_dense_family(family, &dz, &dw);
}

BiPoly draw_candidate(const std::string& family, std::uint64_t seed,
                      std::int64_t index, int coeff_height,
                      std::int64_t* rejected_draws) {
    std::int64_t rejected = 0;
    BiPoly f;
    std::int64_t deg_z = 0, deg_w = 0;
    if (parse_dense_family(family, &deg_z, &deg_w)) {
        SplitMix64 rng = record_rng(seed, index, 0xd53ce11aULL);
        for (;;) {
            f = draw_dense(rng, deg_z, deg_w, coeff_height);
            if (!f.at_origin().is_zero()) break;
            ++rejected;
        }
    } else if (family == "separated") {
        SplitMix64 rng = record_rng(seed, index, 0x5e9a2a7eULL);
        std::int64_t dg = rng.uniform(1, 3);
        std::int64_t dh = rng.uniform(1, 3);
        BiPoly g = draw_univariate(rng, 0, dg, coeff_height);
        BiPoly h = draw_univariate(rng, 1, dh, coeff_height);
        f = g * h;
    } else if (family == "hound") {
        // Members of a pair share the draw; even index gets q * ft, odd
        // gets reflect(q) * ft.
        std::int64_t pair = index / 2;
        SplitMix64 rng = record_rng(seed, pair, 0x40c0ffeeULL);
        BiPoly q;
        for (;;) {
            q = draw_dense(rng, 1, 1, coeff_height);
            if (!q.at_origin().is_zero() &&
                !q.coeff({1, 1}).is_zero()) {
                break;
            }
            ++rejected;
        }
        BiPoly ft;
        for (;;) {
            ft = draw_dense(rng, 1, 1, coeff_height);
            if (!ft.at_origin().is_zero()) break;
            ++rejected;
        }
        f = (index % 2 == 0) ? q * ft : q.reflected() * ft;
    } else if (family == "detrep") {
        SplitMix64 rng = record_rng(seed, index, 0xde7a11edULL);
        for (;;) {
            int dim = static_cast<int>(rng.uniform(2, 4));
            int nz = static_cast<int>(rng.uniform(1, dim - 1));
            DetRep rep;
            rep.alpha = 1.0;
            rep.nz = nz;
            rep.nw = dim - nz;
            rep.c = sample_strict_contraction(dim, rng.next(), 0.9);
            BiPoly expanded = expand(rep);
            // Dyadic snapshot of the float expansion plus a small exact
            // rational perturbation.
            BiPoly candidate;
            for (const auto& [e, c] : expanded.terms()) {
                Rational re = dyadic_round(to_double(c.re), 20);
                Rational im = dyadic_round(to_double(c.im), 20);
                candidate.set_coeff(e, GaussianRational(re, im));
            }
            Rational step(1L, 256L);
            for (const auto& [e, c] : candidate.terms()) {
                GaussianRational bump(draw_rational(rng, coeff_height) * step,
                                      draw_rational(rng, coeff_height) * step);
                candidate.set_coeff(e, c + bump);
            }
            if (!candidate.is_zero() && !candidate.at_origin().is_zero()) {
                f = candidate;
                break;
            }
            ++rejected;
        }
    } else {
        throw std::invalid_argument("unknown scan family: " + family);
    }
    if (rejected_draws) *rejected_draws = rejected;
    return f;
}

namespace {

std::vector<double> factor_moduli(const BiPoly& p) {
    OneVariableFactorRoots roots = one_variable_factor_roots(p);
    std::vector<double> moduli;
    moduli.reserve(roots.z_roots.size() + roots.w_roots.size());
    for (const auto& r : roots.z_roots) moduli.push_back(std::abs(r));
    for (const auto& r : roots.w_roots) moduli.push_back(std::abs(r));
    std::sort(moduli.begin(), moduli.end());
    return moduli;
}

// Rounds into the closed unit disk: dyadic snap, then a pull toward the
// origin that guarantees |x|^2 < 1 exactly.
GaussianRational snap_into_disk(std::complex<double> x, int bits,
                                bool strict_interior) {
    GaussianRational g(dyadic_round(x.real(), bits),
                       dyadic_round(x.imag(), bits));
    Rational limit(1);
    if (g.norm_sq() >= limit || strict_interior) {
        // scale by 1 - 2^-12 until strictly inside
        Rational shrink = Rational(4095, 4096);
        int guard = 0;
        while (g.norm_sq() >= limit && guard++ < 64) {
            g.re *= shrink;
            g.im *= shrink;
        }
    }
    return g;
}

struct FloatBounds {
    double sup = 0.0;
    double lipschitz = 0.0;  // sum |c| (a+b): sup-metric bound on grad
};

FloatBounds float_bounds(const BiPoly& p) {
    FloatBounds out;
    for (const auto& [e, c] : p.terms()) {
        double mag = std::abs(c.to_complex());
        out.sup = std::max(out.sup, mag);
        out.lipschitz += mag * static_cast<double>(e.a + e.b);
    }
    return out;
}

RecheckEntry recheck_entry(const BiPoly& opa_poly, const OpaScanEntry& entry,
                           const StabilityReport& report,
                           const ScanConfig& config) {
    RecheckEntry out;
    out.n = entry.n;
    out.flagged_class = entry.opa_class;
    if (!report.witness) {
        out.downgraded = true;
        return out;
    }
    const Witness& wit = *report.witness;
    const bool interior = entry.opa_class == Verdict::ZeroInOpenBidisk;
    const int bits = 24;
    GaussianRational pz = snap_into_disk(wit.z, bits, interior);
    GaussianRational pw = snap_into_disk(wit.w, bits, interior);
    out.point_z = pz;
    out.point_w = pw;

    FloatBounds bounds = float_bounds(opa_poly);
    double moved = std::abs(pz.to_complex() - wit.z) +
                   std::abs(pw.to_complex() - wit.w);
    out.bound = 2.0 * (wit.abs_p + bounds.lipschitz * moved) +
                1e-12 * std::max(bounds.sup, 1.0);

    GaussianRational value = opa_poly.evaluate(pz, pw);
    Rational abs_sq = value.norm_sq();
    out.abs_sq_at_point = rational_to_string(abs_sq);
    bool eval_ok = to_double(abs_sq) <= out.bound * out.bound;

    if (interior) {
        // Exact slice certificate: at z = pz the product of the w-root
        // moduli is |b0 / btop|; strictly below one forces a w-root in
        // the open disk.
        BiPoly slice;
        for (const auto& [e, c] : opa_poly.terms()) {
            GaussianRational zpow(1);
            for (std::int64_t i = 0; i < e.a; ++i) zpow *= pz;
            slice.set_coeff({0, e.b}, slice.coeff({0, e.b}) + c * zpow);
        }
        if (!slice.is_zero() && slice.depends_on_w() &&
            pz.norm_sq() < Rational(1)) {
            ExponentPair top{0, slice.bidegree().b};
            Rational b0 = slice.coeff({0, 0}).norm_sq();
            Rational btop = slice.coeff(top).norm_sq();
            out.vieta_certificate = !btop.get_num().fits_slong_p() ? false
                                   : b0 < btop;
            // fits check irrelevant to the math; comparison is exact
            out.vieta_certificate = b0 < btop;
        }
    }
    out.confirmed = eval_ok || out.vieta_certificate;
    out.downgraded = !out.confirmed;
    return out;
}

}  // namespace

ScanRecord scan_record_for(BiPoly f, const std::string& family,
                           std::uint64_t seed, std::int64_t index,
                           const ScanConfig& config) {
    ScanRecord rec;
    rec.family = family;
    rec.seed = seed;
    rec.index = index;
    rec.f = std::move(f);

    StabilityReport f_report = classify_bidisk(rec.f, config.classify);
    rec.f_class = f_report.verdict;
    rec.f_margin = f_report.margin;

    std::vector<BiPoly> opa_polys;
    std::vector<StabilityReport> opa_reports;
    for (std::int64_t n = 0; n <= config.n_max; ++n) {
        OpaResult result = solve_opa(rec.f, n);
        StabilityReport report = classify_bidisk(result.poly, config.classify);
        OpaScanEntry entry;
        entry.n = n;
        entry.opa_class = report.verdict;
        entry.margin = report.margin;
        entry.factor_root_moduli = factor_moduli(result.poly);
        rec.opa_results.push_back(std::move(entry));
        opa_polys.push_back(std::move(result.poly));
        opa_reports.push_back(std::move(report));
    }

    auto offending = [](Verdict v) {
        return v == Verdict::ZeroInOpenBidisk || v == Verdict::StableNotStrong;
    };
    bool any_offender = false;
    for (const auto& e : rec.opa_results) {
        if (offending(e.opa_class)) any_offender = true;
    }

    if (any_offender) {
        RecheckReport recheck;
        recheck.all_confirmed = true;
        for (std::size_t i = 0; i < rec.opa_results.size(); ++i) {
            auto& entry = rec.opa_results[i];
            if (!offending(entry.opa_class)) continue;
            RecheckEntry checked = recheck_entry(
                opa_polys[i], entry, opa_reports[i], config);
            if (checked.downgraded) {
                recheck.all_confirmed = false;
                recheck.any_downgraded = true;
                entry.opa_class = Verdict::Inconclusive;
            }
            recheck.entries.push_back(std::move(checked));
        }
        rec.recheck = std::move(recheck);
    }

    for (const auto& e : rec.opa_results) {
        if (offending(e.opa_class)) rec.strong_violation = true;
        if (rec.f_class == Verdict::StronglyStable &&
            e.opa_class == Verdict::ZeroInOpenBidisk) {
            rec.weak_violation_candidate = true;
        }
    }
    return rec;
}

ScanRecord scan_record(const std::string& family, std::uint64_t seed,
                       std::int64_t index, const ScanConfig& config) {
    std::int64_t rejected = 0;
    BiPoly f = draw_candidate(family, seed, index, config.coeff_height,
                              &rejected);
    ScanRecord rec = scan_record_for(std::move(f), family, seed, index,
                                     config);
    rec.rejected_draws = rejected;
    return rec;
}

void run_scan(const std::string& family, std::int64_t count,
              std::uint64_t seed, const ScanConfig& config,
              const std::function<void(const ScanRecord&)>& emit,
              std::int64_t first_index) {
    if (!is_known_family(family)) {
        throw std::invalid_argument("unknown scan family: " + family);
    }
    if (count <= 0) return;

    int threads = config.threads;
    if (threads <= 0) {
        if (const char* env = std::getenv("OPA_LAB_THREADS")) {
            threads = std::atoi(env);
        }
    }
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
    }
    threads = std::max(1, std::min<int>(threads, 64));

    std::vector<ScanRecord> records(static_cast<std::size_t>(count));
    if (threads == 1) {
        for (std::int64_t i = 0; i < count; ++i) {
            records[static_cast<std::size_t>(i)] =
                scan_record(family, seed, first_index + i, config);
        }
    } else {
        std::atomic<std::int64_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::int64_t i = next.fetch_add(1);
                if (i >= count) break;
                records[static_cast<std::size_t>(i)] =
                    scan_record(family, seed, first_index + i, config);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& rec : records) emit(rec);
}

Json scan_record_to_json(const ScanRecord& record) {
    Json doc;
    doc["family"] = record.family;
    doc["seed"] = record.seed;
    doc["index"] = record.index;
    doc["f"] = poly_to_json(record.f);
    doc["f_class"] = verdict_name(record.f_class);
    doc["f_margin"] = std::isfinite(record.f_margin)
                          ? Json(record.f_margin)
                          : Json(nullptr);
    Json entries = Json::array();
    for (const auto& e : record.opa_results) {
        Json entry;
        entry["n"] = e.n;
        entry["opa_class"] = verdict_name(e.opa_class);
        entry["margin"] =
            std::isfinite(e.margin) ? Json(e.margin) : Json(nullptr);
        entry["factor_root_moduli"] = e.factor_root_moduli;
        entries.push_back(std::move(entry));
    }
    doc["opa_results"] = std::move(entries);
    doc["flags"] = Json{{"strong_violation", record.strong_violation},
                        {"weak_violation_candidate",
                         record.weak_violation_candidate}};
    if (record.recheck) {
        Json rc;
        rc["all_confirmed"] = record.recheck->all_confirmed;
        rc["any_downgraded"] = record.recheck->any_downgraded;
        Json list = Json::array();
        for (const auto& e : record.recheck->entries) {
            Json item;
            item["n"] = e.n;
            item["flagged_class"] = verdict_name(e.flagged_class);
            item["confirmed"] = e.confirmed;
            item["downgraded"] = e.downgraded;
            item["vieta_certificate"] = e.vieta_certificate;
            item["point"] = Json{{"z_re", rational_to_string(e.point_z.re)},
                                 {"z_im", rational_to_string(e.point_z.im)},
                                 {"w_re", rational_to_string(e.point_w.re)},
                                 {"w_im", rational_to_string(e.point_w.im)}};
            item["abs_sq_at_point"] = e.abs_sq_at_point;
            item["bound"] = e.bound;
            list.push_back(std::move(item));
        }
        rc["entries"] = std::move(list);
        doc["recheck"] = std::move(rc);
    } else {
        doc["recheck"] = nullptr;
    }
    doc["rejected_draws"] = record.rejected_draws;
    return doc;
}

ScanRecord scan_record_from_json(const Json& doc) {
    ScanRecord rec;
    try {
        rec.family = doc.at("family").get<std::string>();
        rec.seed = doc.at("seed").get<std::uint64_t>();
        rec.index = doc.at("index").get<std::int64_t>();
        rec.f = poly_from_json(doc.at("f"));
        auto fv = verdict_from_name(doc.at("f_class").get<std::string>());
        if (!fv) throw JsonFormatError("bad f_class");
        rec.f_class = *fv;
        rec.f_margin = doc.at("f_margin").is_null()
                           ? -std::numeric_limits<double>::infinity()
                           : doc.at("f_margin").get<double>();
        for (const auto& item : doc.at("opa_results")) {
            OpaScanEntry e;
            e.n = item.at("n").get<std::int64_t>();
            auto v =
                verdict_from_name(item.at("opa_class").get<std::string>());
            if (!v) throw JsonFormatError("bad opa_class");
            e.opa_class = *v;
            e.margin = item.at("margin").is_null()
                           ? -std::numeric_limits<double>::infinity()
                           : item.at("margin").get<double>();
            e.factor_root_moduli =
                item.at("factor_root_moduli").get<std::vector<double>>();
            rec.opa_results.push_back(std::move(e));
        }
        rec.strong_violation =
            doc.at("flags").at("strong_violation").get<bool>();
        rec.weak_violation_candidate =
            doc.at("flags").at("weak_violation_candidate").get<bool>();
        if (!doc.at("recheck").is_null()) {
            const Json& rc = doc.at("recheck");
            RecheckReport report;
            report.all_confirmed = rc.at("all_confirmed").get<bool>();
            report.any_downgraded = rc.at("any_downgraded").get<bool>();
            for (const auto& item : rc.at("entries")) {
                RecheckEntry e;
                e.n = item.at("n").get<std::int64_t>();
                auto v = verdict_from_name(
                    item.at("flagged_class").get<std::string>());
                if (!v) throw JsonFormatError("bad flagged_class");
                e.flagged_class = *v;
                e.confirmed = item.at("confirmed").get<bool>();
                e.downgraded = item.at("downgraded").get<bool>();
                e.vieta_certificate =
                    item.at("vieta_certificate").get<bool>();
                const Json& pt = item.at("point");
                e.point_z = GaussianRational(
                    rational_from_string(pt.at("z_re").get<std::string>()),
                    rational_from_string(pt.at("z_im").get<std::string>()));
                e.point_w = GaussianRational(
                    rational_from_string(pt.at("w_re").get<std::string>()),
                    rational_from_string(pt.at("w_im").get<std::string>()));
                e.abs_sq_at_point =
                    item.at("abs_sq_at_point").get<std::string>();
                e.bound = item.at("bound").get<double>();
                report.entries.push_back(std::move(e));
            }
            rec.recheck = std::move(report);
        }
        rec.rejected_draws = doc.at("rejected_draws").get<std::int64_t>();
    } catch (const Json::exception& e) {
        throw JsonFormatError(std::string("bad scan record: ") + e.what());
    }
    return rec;
}

ScanSummary summarize(const std::vector<ScanRecord>& records) {
    std::map<std::string, FamilySummary> by_family;
    std::map<std::string, std::map<std::int64_t, const ScanRecord*>> houndish;
    for (const auto& rec : records) {
        FamilySummary& fam = by_family[rec.family];
        fam.family = rec.family;
        fam.count += 1;
        fam.f_verdicts[verdict_name(rec.f_class)] += 1;
        for (const auto& e : rec.opa_results) {
            fam.opa_verdicts[verdict_name(e.opa_class)] += 1;
        }
        if (rec.strong_violation) fam.strong_violations += 1;
        if (rec.weak_violation_candidate) fam.weak_candidates += 1;
        if (rec.recheck) {
            fam.rechecked += 1;
            if (rec.recheck->all_confirmed) fam.confirmed += 1;
            if (rec.recheck->any_downgraded) fam.downgraded += 1;
        }
        fam.rejected_draws += rec.rejected_draws;
        if (rec.family == "hound") {
            houndish[rec.family][rec.index] = &rec;
        }
    }
    for (auto& [family, members] : houndish) {
        FamilySummary& fam = by_family[family];
        for (const auto& [index, rec] : members) {
            if (index % 2 != 0) continue;
            auto partner = members.find(index + 1);
            if (partner == members.end()) continue;
            fam.pairs += 1;
            if (rec->strong_violation == partner->second->strong_violation &&
                rec->weak_violation_candidate ==
                    partner->second->weak_violation_candidate) {
                fam.pairs_agreeing += 1;
            }
        }
    }
    ScanSummary out;
    for (auto& [name, fam] : by_family) out.families.push_back(fam);
    return out;
}

Json summary_to_json(const ScanSummary& summary) {
    Json families = Json::array();
    for (const auto& fam : summary.families) {
        Json f;
        f["family"] = fam.family;
        f["count"] = fam.count;
        f["f_verdicts"] = fam.f_verdicts;
        f["opa_verdicts"] = fam.opa_verdicts;
        f["strong_violations"] = fam.strong_violations;
        f["weak_violation_candidates"] = fam.weak_candidates;
        f["rechecked"] = fam.rechecked;
        f["confirmed"] = fam.confirmed;
        f["downgraded"] = fam.downgraded;
        f["rejected_draws"] = fam.rejected_draws;
        if (fam.family == "hound") {
            f["pairs"] = fam.pairs;
            f["pairs_agreeing"] = fam.pairs_agreeing;
        }
        families.push_back(std::move(f));
    }
    Json doc;
    doc["families"] = std::move(families);
    return doc;
}

std::string summary_table(const ScanSummary& summary) {
    std::ostringstream out;
    out << "family      count  strong  weak  rechecked  confirmed  downgraded"
        << "  rejected\n";
    for (const auto& fam : summary.families) {
        char line[160];
        std::snprintf(line, sizeof(line),
                      "%-10s %6lld %7lld %5lld %10lld %10lld %11lld %9lld\n",
                      fam.family.c_str(),
                      static_cast<long long>(fam.count),
                      static_cast<long long>(fam.strong_violations),
                      static_cast<long long>(fam.weak_candidates),
                      static_cast<long long>(fam.rechecked),
                      static_cast<long long>(fam.confirmed),
                      static_cast<long long>(fam.downgraded),
                      static_cast<long long>(fam.rejected_draws));
        out << line;
        out << "  f verdicts:  ";
        for (const auto& [name, n] : fam.f_verdicts) {
            out << name << "=" << n << " ";
        }
        out << "\n  opa verdicts: ";
        for (const auto& [name, n] : fam.opa_verdicts) {
            out << name << "=" << n << " ";
        }
        out << "\n";
        if (fam.family == "hound") {
            out << "  pair agreement: " << fam.pairs_agreeing << "/"
                << fam.pairs << "\n";
        }
    }
    return out.str();
}

std::string margins_csv(const std::vector<ScanRecord>& records) {
    std::ostringstream out;
    out << "family,seed,index,kind,n,margin\n";
    auto write_margin = [&out](double m) {
        if (std::isfinite(m)) {
            out << m;
        }  // empty cell for infinities
    };
    for (const auto& rec : records) {
        out << rec.family << "," << rec.seed << "," << rec.index << ",f,,";
        write_margin(rec.f_margin);
        out << "\n";
        for (const auto& e : rec.opa_results) {
            out << rec.family << "," << rec.seed << "," << rec.index
                << ",opa," << e.n << ",";
            write_margin(e.margin);
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace opalab
