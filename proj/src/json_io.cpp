#include "opalab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace opalab {

namespace {

std::int64_t require_exponent(const Json& v, const char* key) {
    if (!v.contains(key) || !v[key].is_number_integer()) {
        throw JsonFormatError(std::string("term needs integer \"") + key +
                              "\"");
    }
    auto x = v[key].get<std::int64_t>();
    if (x < 0) {
        throw JsonFormatError(std::string("exponent \"") + key +
                              "\" must be nonnegative");
    }
    return x;
}

Rational require_rational(const Json& v, const char* key) {
    if (!v.contains(key) || !v[key].is_string()) {
        throw JsonFormatError(std::string("term needs \"") + key +
                              "\" as a \"p/q\" string");
    }
    try {
        return rational_from_string(v[key].get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw JsonFormatError(e.what());
    }
}

Json float_or_null(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

}  // namespace

Json poly_to_json(const BiPoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {  // map iterates in chi order
        Json term;
        term["a"] = e.a;
        term["b"] = e.b;
        term["re"] = rational_to_string(c.re);
        term["im"] = rational_to_string(c.im);
        terms.push_back(std::move(term));
    }
    Json doc;
    doc["terms"] = std::move(terms);
    return doc;
}

BiPoly poly_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("terms") ||
        !doc["terms"].is_array()) {
        throw JsonFormatError("polynomial document needs a \"terms\" array");
    }
    BiPoly p;
    for (const auto& term : doc["terms"]) {
        if (!term.is_object()) {
            throw JsonFormatError("polynomial term must be an object");
        }
        ExponentPair e{require_exponent(term, "a"), require_exponent(term, "b")};
        GaussianRational c(require_rational(term, "re"),
                           require_rational(term, "im"));
        if (!p.coeff(e).is_zero()) {
            throw JsonFormatError("duplicate exponent pair in terms");
        }
        p.set_coeff(e, c);
    }
    return p;
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
    Json entries = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
    }
    Json doc;
    doc["n"] = m.rows();
    doc["entries"] = std::move(entries);
    return doc;
}

Eigen::MatrixXcd matrix_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("n") ||
        !doc["n"].is_number_integer() || !doc.contains("entries") ||
        !doc["entries"].is_array()) {
        throw JsonFormatError(
            "matrix document needs \"n\" and an \"entries\" array");
    }
    auto n = doc["n"].get<Eigen::Index>();
    if (n < 0 || doc["entries"].size() != static_cast<std::size_t>(n * n)) {
        throw JsonFormatError("matrix entry count must be n*n");
    }
    Eigen::MatrixXcd m(n, n);
    std::size_t i = 0;
    for (const auto& cell : doc["entries"]) {
        if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
            !cell[1].is_number()) {
            throw JsonFormatError("matrix entry must be [re, im]");
        }
        m(static_cast<Eigen::Index>(i) / n, static_cast<Eigen::Index>(i) % n) =
            std::complex<double>(cell[0].get<double>(), cell[1].get<double>());
        ++i;
    }
    return m;
}

Json stability_report_to_json(const StabilityReport& report) {
    Json doc;
    doc["verdict"] = verdict_name(report.verdict);
    doc["margin"] = float_or_null(report.margin);
    doc["probes"] = report.probes;
    doc["tolerance"] = report.tolerance;
    if (report.witness) {
        Json w;
        w["z"] = Json::array(
            {report.witness->z.real(), report.witness->z.imag()});
        w["w"] = Json::array(
            {report.witness->w.real(), report.witness->w.imag()});
        w["abs_p"] = float_or_null(report.witness->abs_p);
        doc["witness"] = std::move(w);
    } else {
        doc["witness"] = nullptr;
    }
    return doc;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw JsonFormatError("cannot open file: " + path);
    }
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    out << body;
}

Json parse_json_text(const std::string& text) {
    Json doc = Json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        throw JsonFormatError("malformed JSON input");
    }
    return doc;
}

}  // namespace opalab
