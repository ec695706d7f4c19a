//
// Copyright 2026 The kiv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace kiv::cli {

using Cell = std::variant<double, std::int64_t, bool, std::string>;
using Field = std::pair<std::string, Cell>;

/// Tabular result of one command. Parameters and summary keep insertion
/// order; callers insert them sorted.
struct Report {
    std::string command;
    std::vector<Field> parameters;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    bool pass = true;
    std::vector<Field> summary;
};

/// 17 significant digits in scientific notation, independent of locale.
inline std::string format_real(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string json_cell(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                return std::isfinite(v) ? format_real(v) : "null";
            else if constexpr (std::is_same_v<T, std::int64_t>)
                return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "true" : "false";
            else
                return nlohmann::json(v).dump();
        },
        c);
}

inline std::string csv_cell(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                return format_real(v);
            else if constexpr (std::is_same_v<T, std::int64_t>)
                return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "true" : "false";
            else if (v.find_first_of(",\"\n") == std::string::npos)
                return v;
            else {
                std::string q = "\"";
                for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                return q + "\"";
            }
        },
        c);
}

inline std::string json_object(const std::vector<Field>& fields)
{
    std::string out = "{";
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ", ";
        out += nlohmann::json(fields[i].first).dump() + ": " + json_cell(fields[i].second);
    }
    return out + "}";
}

}  // namespace detail

inline std::string to_json(const Report& r)
{
    std::string out = "{\n";
    out += "  \"command\": " + nlohmann::json(r.command).dump() + ",\n";
    out += "  \"parameters\": " + detail::json_object(r.parameters) + ",\n";
    out += "  \"rows\": [";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        std::vector<Field> row;
        for (std::size_t j = 0; j < r.columns.size(); ++j) row.emplace_back(r.columns[j], r.rows[i][j]);
        out += (i ? ",\n    " : "\n    ") + detail::json_object(row);
    }
    out += r.rows.empty() ? "],\n" : "\n  ],\n";
    out += std::string("  \"pass\": ") + (r.pass ? "true" : "false");
    if (!r.summary.empty()) out += ",\n  \"summary\": " + detail::json_object(r.summary);
    return out + "\n}\n";
}

/// Header row then one line per row; summary and pass are not part of CSV.
inline std::string to_csv(const Report& r)
{
    std::string out;
    for (std::size_t j = 0; j < r.columns.size(); ++j) out += (j ? "," : "") + r.columns[j];
    out += "\n";
    for (const auto& row : r.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + detail::csv_cell(row[j]);
        out += "\n";
    }
    return out;
}

}  // namespace kiv::cli
