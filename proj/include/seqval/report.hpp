#pragma once

// Tabular experiment reports with text, JSON and CSV renderings. Every
// rendering is a pure function of the report, so equal inputs give
// byte-identical output.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "board.hpp"
#include "valuation.hpp"

namespace seqval {

enum class OutputFormat { Text, Json, Csv };

inline OutputFormat parse_format(const std::string& s) {
    if (s == "text") return OutputFormat::Text;
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    throw std::invalid_argument("unknown format '" + s + "'");
}

/// Four decimals, used for every printed value.
inline std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

inline double round4(double v) { return std::round(v * 1e4) / 1e4; }

struct ExperimentReport {
    std::string id;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::ordered_json>> rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    std::vector<std::string> notes;
    /// Free-form body (board diagrams, value tables) for the text rendering.
    std::string body;
};

namespace detail {

inline std::string cell_text(const nlohmann::ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return fixed4(v.get<double>());
    return v.dump();
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace detail

inline std::string to_csv(const ExperimentReport& r) {
    std::ostringstream out;
    for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << detail::csv_escape(r.columns[i]);
    out << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << detail::csv_escape(detail::cell_text(row[i]));
        out << '\n';
    }
    return out.str();
}

inline std::string to_json_text(const ExperimentReport& r) {
    nlohmann::ordered_json j;
    j["experiment"] = r.id;
    j["config"] = r.config;
    j["notes"] = r.notes;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) obj[r.columns[i]] = row[i];
        rows.push_back(std::move(obj));
    }
    j["rows"] = std::move(rows);
    j["summary"] = r.summary;
    return j.dump(2) + "\n";
}

inline std::string to_text(const ExperimentReport& r, std::size_t max_rows = 200) {
    std::ostringstream out;
    out << "experiment: " << r.id << '\n';
    out << "config: " << r.config.dump() << '\n';
    for (const auto& n : r.notes) out << "note: " << n << '\n';
    if (!r.body.empty()) out << '\n' << r.body << '\n';
    if (!r.rows.empty()) {
        std::vector<std::size_t> width(r.columns.size());
        for (std::size_t i = 0; i < r.columns.size(); ++i) width[i] = r.columns[i].size();
        const std::size_t shown = std::min(max_rows, r.rows.size());
        for (std::size_t k = 0; k < shown; ++k) {
            for (std::size_t i = 0; i < r.rows[k].size() && i < width.size(); ++i) {
                width[i] = std::max(width[i], detail::cell_text(r.rows[k][i]).size());
            }
        }
        auto line = [&](auto cell) {
            for (std::size_t i = 0; i < width.size(); ++i) {
                const std::string s = cell(i);
                out << (i ? "  " : "") << std::string(width[i] - std::min(width[i], s.size()), ' ') << s;
            }
            out << '\n';
        };
        line([&](std::size_t i) { return r.columns[i]; });
        for (std::size_t k = 0; k < shown; ++k) {
            line([&](std::size_t i) { return i < r.rows[k].size() ? detail::cell_text(r.rows[k][i]) : std::string(); });
        }
        if (shown < r.rows.size()) out << "... " << (r.rows.size() - shown) << " more rows (use --format csv)\n";
    }
    out << "summary: " << r.summary.dump(2) << '\n';
    return out.str();
}

inline std::string render(const ExperimentReport& r, OutputFormat f) {
    switch (f) {
        case OutputFormat::Json: return to_json_text(r);
        case OutputFormat::Csv: return to_csv(r);
        case OutputFormat::Text: return to_text(r);
    }
    return {};
}

/// Ranking report: rows "rank,field,value" with values at four decimals.
inline std::string ranking_csv(const std::vector<RankedContinuation>& ranking) {
    std::ostringstream out;
    out << "rank,field,value\n";
    for (const auto& r : ranking) out << r.rank << ',' << format_position(r.position) << ',' << fixed4(r.value) << '\n';
    return out.str();
}

inline nlohmann::ordered_json ranking_json(const std::vector<RankedContinuation>& ranking) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : ranking) {
        arr.push_back({{"notation", format_position(r.position)}, {"value", round4(r.value)}, {"rank", r.rank}});
    }
    return arr;
}

}  // namespace seqval
