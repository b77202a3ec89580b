#pragma once

// JSON encodings shared by the CLI and its tests.
//
// State:  {"matrix": 4x4 of [re, im]}  or
//         {"pauli": {"alpha": [3], "beta": [3], "R": [[3] x 3]}}
// Filter: {"side": "A"|"B", "mu": x, "a": x, "m": [3]}  or
//         {"side": "A"|"B", "matrix": 2x2 of [re, im]}
//
// Parse failures throw Error(ParseError); a well-formed but unphysical state
// throws InvalidState / NotPositive from the qstate constructors.

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "entconc/concentrate.hpp"
#include "entconc/oracle.hpp"

namespace entconc::report {

using json = nlohmann::json;

json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const json& j, int rows, int cols);

json state_to_json(const DensityMatrix& rho);
json pauli_to_json(const PauliForm& p);
DensityMatrix state_from_json(const json& j);
// Parses text; malformed JSON is a ParseError.
json parse_text(std::string_view text);

struct SideFilter {
    Side side = Side::Alice;
    Matrix2c matrix = Matrix2c::Identity();
};
json filter_to_json(Side side, const Matrix2c& m);
SideFilter filter_from_json(const json& j);

json invariants_to_json(const LocalInvariants& c);
json vector_to_json(const Eigen::VectorXd& v);
json filter_params_to_json(const FilterParams& p);
json search_report_to_json(const SearchReport& r);
json concentration_to_json(const ConcentrationResult& r);

// FNV-1a 64-bit digest of the raw input bytes, as "fnv1a64:<16 hex digits>".
std::string digest(std::string_view bytes);

}  // namespace entconc::report
