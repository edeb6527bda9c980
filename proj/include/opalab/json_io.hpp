#pragma once

#include <json.hpp>

#include <Eigen/Dense>

#include <string>

#include "opalab/poly2.hpp"
#include "opalab/zeros.hpp"

namespace opalab {

using Json = nlohmann::ordered_json;

// Raised for malformed input documents (maps to the usage exit code).
struct JsonFormatError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Canonical polynomial document:
//   {"terms":[{"a":0,"b":0,"re":"1/1","im":"0/1"}, ...]}
// terms sorted by degree-lexicographic order, rationals as "p/q" strings.
// Round-trips exactly.
Json poly_to_json(const BiPoly& p);
BiPoly poly_from_json(const Json& doc);

// Square complex matrix, row-major [re, im] pairs:
//   {"n":2,"entries":[[0.5,0.0], ...]}
Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& doc);

Json stability_report_to_json(const StabilityReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& body);
Json parse_json_text(const std::string& text);

}  // namespace opalab
