#pragma once
// Result files. rows.csv is the canonical artifact: a header plus one line per
// successful path, 17 significant digits, LF line endings. Failed paths and
// matched-N protocol warnings go to errors.csv; summary.json holds aggregate
// statistics that can be recomputed from rows.csv alone.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hedgeopt/errors.hpp"
#include "hedgeopt/experiment.hpp"
#include "json.hpp"

namespace hedgeopt {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// path_id, n_dates, {qv, beta, z_terminal} per strategy, then the five path diagnostics.
inline std::vector<std::string> csv_columns(const std::vector<Strategy>& strategies) {
    std::vector<std::string> cols{"path_id", "n_dates"};
    for (Strategy s : strategies) {
        const std::string n(strategy_name(s));
        cols.push_back("qv_" + n);
        cols.push_back("beta_" + n);
        cols.push_back("z_terminal_" + n);
    }
    for (const char* c : {"lower_bound", "eps2n", "target_integral", "max_dtau", "max_increment_ratio"}) cols.emplace_back(c);
    return cols;
}

inline std::string render_csv(const std::vector<ExperimentRow>& rows, const std::vector<Strategy>& strategies) {
    std::string out;
    const auto cols = csv_columns(strategies);
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    out += '\n';
    for (const auto& r : rows) {
        out += std::to_string(r.path_id) + ',' + std::to_string(r.n_dates);
        for (Strategy s : strategies) {
            const auto& o = r.outcome(s);
            out += ',' + format_double(o.qv) + ',' + format_double(o.beta) + ',' + format_double(o.z_terminal);
        }
        for (double x : {r.lower_bound, r.eps2n, r.target_integral, r.max_dtau, r.max_increment_ratio})
            out += ',' + format_double(x);
        out += '\n';
    }
    return out;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

inline void write_csv(const std::vector<ExperimentRow>& rows, const std::vector<Strategy>& strategies,
                      const std::filesystem::path& path) {
    if (rows.empty()) throw DomainError("write_csv: no rows to write to '" + path.string() + "'");
    write_text_file(path, render_csv(rows, strategies));
}

namespace detail {

inline std::string csv_quote(const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

}  // namespace detail

inline std::string render_errors_csv(const ExperimentResult& res) {
    std::string out = "path_id,kind,message\n";
    std::vector<const ExperimentRow*> all;
    for (const auto& r : res.rows)
        if (!r.warning.empty()) all.push_back(&r);
    for (const auto& r : res.failures) all.push_back(&r);
    std::sort(all.begin(), all.end(), [](auto* a, auto* b) { return a->path_id < b->path_id; });
    for (const auto* r : all) {
        const bool failed = !r->error.empty();
        out += std::to_string(r->path_id) + (failed ? ",error," : ",protocol_warning,") +
               detail::csv_quote(failed ? r->error : r->warning) + '\n';
    }
    return out;
}

inline nlohmann::json summary_json(const ExperimentResult& res) {
    using nlohmann::json;
    const auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
    json j;
    j["n_paths"] = res.config.n_paths;
    j["n_rows"] = res.summary.n_rows;
    j["n_failed"] = res.summary.n_failed;
    j["n_flagged"] = res.summary.n_flagged;
    j["run_failed"] = res.failed();
    j["frac_uniform_ge_stochastic"] = num(res.summary.frac_uniform_ge_stochastic);
    j["frac_fractional_ge_stochastic"] = num(res.summary.frac_fractional_ge_stochastic);
    for (Strategy s : res.config.ordered_strategies()) {
        const StatSummary& b = res.summary.beta[static_cast<std::size_t>(s)];
        j["beta"][std::string(strategy_name(s))] = {{"count", b.count}, {"mean", num(b.mean)},   {"median", num(b.median)},
                                                    {"q05", num(b.q05)},  {"q25", num(b.q25)},   {"q75", num(b.q75)},
                                                    {"q95", num(b.q95)}};
    }
    return j;
}

/// Writes rows.csv, errors.csv and summary.json into `dir`.
inline void write_experiment(const ExperimentResult& res, const std::filesystem::path& dir) {
    write_csv(res.rows, res.config.ordered_strategies(), dir / "rows.csv");
    write_text_file(dir / "errors.csv", render_errors_csv(res));
    write_text_file(dir / "summary.json", summary_json(res).dump(2) + "\n");
}

/// Numeric CSV as written by render_csv.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    [[nodiscard]] std::size_t column_index(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return i;
        throw DomainError("unknown field '" + name + "'");
    }
    [[nodiscard]] std::vector<double> column(const std::string& name) const {
        const std::size_t i = column_index(name);
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(r[i]);
        return out;
    }
};

inline CsvTable parse_csv(const std::string& text, const std::string& source = "csv") {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    const auto split = [](const std::string& l) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream ls(l);
        while (std::getline(ls, cell, ',')) out.push_back(cell);
        if (!l.empty() && l.back() == ',') out.emplace_back();
        return out;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto cells = split(line);
        if (t.columns.empty()) {
            t.columns = std::move(cells);
            continue;
        }
        if (cells.size() != t.columns.size())
            throw DomainError(source + ":" + std::to_string(line_no) + ": expected " + std::to_string(t.columns.size()) +
                              " fields, found " + std::to_string(cells.size()));
        std::vector<double> row;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            char* end = nullptr;
            const double v = std::strtod(cells[i].c_str(), &end);
            if (cells[i].empty() || end != cells[i].c_str() + cells[i].size())
                throw DomainError(source + ":" + std::to_string(line_no) + ": field '" + t.columns[i] +
                                  "' is not a number: '" + cells[i] + "'");
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    if (t.columns.empty()) throw DomainError(source + ": missing header");
    return t;
}

inline CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), path.string());
}

}  // namespace hedgeopt
