#pragma once
// `solve` subcommand: read a symmetric matrix c from JSON and report x(c).
// Accepted inputs: a row-major array of rows, or {"matrix": [[...], ...]}.

#include <cmath>
#include <cstdio>
#include <string>

#include "hedgeopt/errors.hpp"
#include "hedgeopt/gamma_equation.hpp"
#include "hedgeopt/symmat.hpp"
#include "json.hpp"

namespace hedgeopt {

inline SymMatrix matrix_from_json(const nlohmann::json& doc) {
    const nlohmann::json* rows = &doc;
    if (doc.is_object()) {
        if (!doc.contains("matrix")) throw DomainError("input: expected field 'matrix'");
        for (const auto& item : doc.items())
            if (item.key() != "matrix") throw DomainError("input: unknown key '" + item.key() + "'");
        rows = &doc.at("matrix");
    }
    if (!rows->is_array() || rows->empty()) throw DomainError("input: 'matrix' must be a non-empty array of rows");
    const int n = static_cast<int>(rows->size());
    if (n > kMaxDim) throw DomainError("input: dimension " + std::to_string(n) + " exceeds 8");
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = (*rows)[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw DomainError("input: row " + std::to_string(i) + " must be an array of " + std::to_string(n) + " numbers");
        for (int j = 0; j < n; ++j) {
            const auto& v = row[static_cast<std::size_t>(j)];
            if (!v.is_number())
                throw DomainError("input: entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not a number");
            m(i, j) = v.get<double>();
            if (!std::isfinite(m(i, j)))
                throw DomainError("input: entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not finite");
        }
    }
    return SymMatrix(m);
}

inline SymMatrix matrix_from_json_text(const std::string& text, const std::string& source = "input") {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(source + ": " + e.what());
    }
    try {
        return matrix_from_json(doc);
    } catch (const DomainError& e) {
        throw DomainError(source + ": " + e.what());
    }
}

inline std::string format_solution(const GammaSolution& sol) {
    const auto num = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "% .17g", x);
        return std::string(buf);
    };
    std::string out = "X =\n";
    for (int i = 0; i < sol.x.dim(); ++i) {
        out += "  [";
        for (int j = 0; j < sol.x.dim(); ++j) out += (j ? ", " : "") + num(sol.x(i, j));
        out += "]\n";
    }
    out += "trace root y = " + num(sol.trace_y) + "\n";
    out += "residual     = " + num(sol.residual) + "\n";
    const Spectrum sp = eigh_sym(sol.x);
    out += "eigenvalues(X) =";
    for (double l : sp.eigenvalues) out += " " + num(l);
    out += "\n";
    return out;
}

inline nlohmann::json solution_json(const GammaSolution& sol) {
    nlohmann::json j;
    for (int i = 0; i < sol.x.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < sol.x.dim(); ++k) row.push_back(sol.x(i, k));
        j["x"].push_back(row);
    }
    j["trace_y"] = sol.trace_y;
    j["residual"] = sol.residual;
    const Spectrum sp = eigh_sym(sol.x);
    j["eigenvalues"] = std::vector<double>(sp.eigenvalues.begin(), sp.eigenvalues.end());
    return j;
}

}  // namespace hedgeopt
