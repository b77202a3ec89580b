#include "entconc/report.hpp"

#include <cstdio>

namespace entconc::report {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

double number(const json& j, const std::string& where) {
    if (!j.is_number()) parse_error(where + ": expected a number");
    return j.get<double>();
}

Vector3 vec3(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) parse_error(where + ": expected an array of 3 numbers");
    return Vector3(number(j[0], where), number(j[1], where), number(j[2], where));
}

Side side_from_json(const json& j) {
    if (!j.is_string()) parse_error("filter: \"side\" must be \"A\" or \"B\"");
    const auto s = j.get<std::string>();
    if (s == "A") return Side::Alice;
    if (s == "B") return Side::Bob;
    parse_error("filter: \"side\" must be \"A\" or \"B\", got \"" + s + "\"");
}

}  // namespace

json matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j, int rows, int cols) {
    const std::string shape = std::to_string(rows) + "x" + std::to_string(cols);
    if (!j.is_array() || j.size() != static_cast<std::size_t>(rows)) parse_error("matrix: expected " + shape);
    Eigen::MatrixXcd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(cols)) parse_error("matrix: expected " + shape);
        for (int c = 0; c < cols; ++c) {
            const json& e = row[static_cast<std::size_t>(c)];
            if (!e.is_array() || e.size() != 2) parse_error("matrix: entries must be [re, im] pairs");
            m(r, c) = cplx(number(e[0], "matrix"), number(e[1], "matrix"));
        }
    }
    return m;
}

json state_to_json(const DensityMatrix& rho) { return {{"matrix", matrix_to_json(rho.matrix())}}; }

json pauli_to_json(const PauliForm& p) {
    json r = json::array();
    for (int i = 0; i < 3; ++i) r.push_back({p.R(i, 0), p.R(i, 1), p.R(i, 2)});
    return {{"alpha", vector_to_json(p.alpha)}, {"beta", vector_to_json(p.beta)}, {"R", r}};
}

DensityMatrix state_from_json(const json& j) {
    if (!j.is_object()) parse_error("state: expected a JSON object");
    const bool has_matrix = j.contains("matrix");
    const bool has_pauli = j.contains("pauli");
    if (has_matrix == has_pauli) parse_error("state: exactly one of \"matrix\" or \"pauli\" is required");
    if (has_matrix) return DensityMatrix::from_matrix(matrix_from_json(j["matrix"], 4, 4));

    const json& p = j["pauli"];
    if (!p.is_object() || !p.contains("alpha") || !p.contains("beta") || !p.contains("R"))
        parse_error("pauli: requires \"alpha\", \"beta\" and \"R\"");
    PauliForm form;
    form.alpha = vec3(p["alpha"], "pauli.alpha");
    form.beta = vec3(p["beta"], "pauli.beta");
    const json& r = p["R"];
    if (!r.is_array() || r.size() != 3) parse_error("pauli.R: expected 3x3 numbers");
    for (std::size_t i = 0; i < 3; ++i) form.R.row(static_cast<int>(i)) = vec3(r[i], "pauli.R").transpose();
    return from_pauli(form);
}

json parse_text(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        parse_error(e.what());
    }
}

json filter_to_json(Side side, const Matrix2c& m) {
    return {{"side", side == Side::Alice ? "A" : "B"}, {"matrix", matrix_to_json(m)}};
}

SideFilter filter_from_json(const json& j) {
    if (!j.is_object() || !j.contains("side")) parse_error("filter: expected an object with \"side\"");
    SideFilter out;
    out.side = side_from_json(j["side"]);
    if (j.contains("matrix")) {
        out.matrix = matrix_from_json(j["matrix"], 2, 2);
        return out;
    }
    if (!j.contains("mu") || !j.contains("a") || !j.contains("m"))
        parse_error("filter: requires either \"matrix\" or \"mu\", \"a\", \"m\"");
    const LocalFilter f(number(j["mu"], "filter.mu"), number(j["a"], "filter.a"), vec3(j["m"], "filter.m"));
    out.matrix = filter_matrix(f);
    return out;
}

json invariants_to_json(const LocalInvariants& c) { return json::array({c.c2, c.c3, c.c4}); }

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json filter_params_to_json(const FilterParams& p) {
    return {{"a", p.a}, {"m", vector_to_json(p.m)}, {"b", p.b}, {"n", vector_to_json(p.n)}};
}

json search_report_to_json(const SearchReport& r) {
    json violations = json::array();
    for (const Violation& v : r.violations) {
        violations.push_back({{"trial", v.trial},
                              {"filters", {filter_to_json(Side::Alice, v.filter_a), filter_to_json(Side::Bob, v.filter_b)}},
                              {"measured", v.measured},
                              {"predicted", v.predicted},
                              {"discrepancy", v.discrepancy}});
    }
    return {{"best_eof", r.best_eof},
            {"best_filters", filter_params_to_json(r.best_filters)},
            {"samples", r.samples},
            {"violations", violations}};
}

json concentration_to_json(const ConcentrationResult& r) {
    return {{"filters", {filter_to_json(Side::Alice, r.filter_a), filter_to_json(Side::Bob, r.filter_b)}},
            {"output", state_to_json(r.output)},
            {"probability", r.probability},
            {"eof_in", r.eof_in},
            {"eof_max", r.eof_max},
            {"iterations", r.iterations},
            {"residual", r.residual}};
}

std::string digest(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

}  // namespace entconc::report
