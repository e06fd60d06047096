#pragma once

// JSON and CSV forms of interpretations.
//
//   {"domain": ["bob", "mary"],
//    "concepts": {"Tall": [0.3, 0.9]},
//    "roles": {"hasParent": [[0, 0.9], [0, 0]]},
//    "individuals": {"bob": 0, "mary": "mary"}}
//
// Degrees may be numbers or strings such as "3/5". Individuals map to an
// element index or an element id. The CSV form has one row per element and
// one column per concept name, with an optional leading `id` column.

#include <charconv>
#include <istream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzyt/error.hpp"
#include "fuzzyt/interpretation.hpp"

namespace fuzzyt {

using nlohmann::json;

namespace detail {

inline double json_degree(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            return Threshold::parse(v.get<std::string>()).value();
        } catch (const InputError&) {
        }
    }
    throw InputError("non-numeric degree in " + where);
}

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(field));
            field.clear();
        } else {
            field += c;
        }
    }
    out.push_back(trim(field));
    return out;
}

inline double parse_csv_number(const std::string& cell, std::size_t row, const std::string& column) {
    double v = 0.0;
    const char* end = cell.data() + cell.size();
    auto res = std::from_chars(cell.data(), end, v);
    if (cell.empty() || res.ec != std::errc{} || res.ptr != end) {
        throw InputError("row " + std::to_string(row) + ", column '" + column + "': '" + cell +
                         "' is not a number");
    }
    return v;
}

}  // namespace detail

/// A numeric table: column names and row-major values, with optional row ids.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::string> ids;
    std::vector<std::vector<double>> rows;
};

/// Reads a header line and numeric rows. A first column named `id` supplies row ids;
/// otherwise rows are named `<prefix>0`, `<prefix>1`, ...
inline CsvTable read_csv(std::istream& in, const std::string& prefix = "s") {
    CsvTable table;
    std::string line;
    bool header = false;
    bool has_id = false;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty() || detail::trim(line)[0] == '#') continue;
        auto cells = detail::split_csv_line(line);
        if (!header) {
            header = true;
            has_id = !cells.empty() && cells[0] == "id";
            table.columns.assign(cells.begin() + (has_id ? 1 : 0), cells.end());
            if (table.columns.empty()) throw InputError("CSV header has no value columns");
            for (const auto& c : table.columns) {
                if (c.empty()) throw InputError("CSV header has an empty column name");
            }
            continue;
        }
        ++row;
        const std::size_t expected = table.columns.size() + (has_id ? 1 : 0);
        if (cells.size() != expected) {
            throw InputError("CSV row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                             " fields, expected " + std::to_string(expected));
        }
        table.ids.push_back(has_id ? cells[0] : prefix + std::to_string(row - 1));
        std::vector<double> values;
        values.reserve(table.columns.size());
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            values.push_back(detail::parse_csv_number(cells[c + (has_id ? 1 : 0)], row, table.columns[c]));
        }
        table.rows.push_back(std::move(values));
    }
    if (!header) throw InputError("CSV input is empty");
    return table;
}

inline CsvTable read_csv_string(const std::string& text, const std::string& prefix = "s") {
    std::istringstream in(text);
    return read_csv(in, prefix);
}

template <class Algebra>
BasicInterpretation<Algebra> interpretation_from_json(const json& j, Algebra algebra) {
    if (!j.is_object() || !j.contains("domain") || !j["domain"].is_array()) {
        throw InputError("interpretation JSON needs a \"domain\" array");
    }
    std::vector<std::string> domain;
    for (const auto& e : j["domain"]) {
        domain.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    }
    BasicInterpretation<Algebra> I(std::move(algebra), std::move(domain));
    const std::size_t n = I.size();
    if (j.contains("concepts")) {
        for (const auto& [name, vals] : j["concepts"].items()) {
            if (!vals.is_array()) throw InputError("concept '" + name + "' must be an array");
            std::vector<double> degrees;
            for (const auto& v : vals) degrees.push_back(detail::json_degree(v, "concept '" + name + "'"));
            I.set_concept_degrees(name, degrees);
        }
    }
    if (j.contains("roles")) {
        for (const auto& [name, rows] : j["roles"].items()) {
            if (!rows.is_array() || rows.size() != n) {
                throw InputError("role '" + name + "' must be a " + std::to_string(n) + "x" +
                                 std::to_string(n) + " matrix");
            }
            std::vector<typename Algebra::value_type> matrix;
            for (const auto& r : rows) {
                if (!r.is_array() || r.size() != n) {
                    throw InputError("role '" + name + "' must be a " + std::to_string(n) + "x" +
                                     std::to_string(n) + " matrix");
                }
                for (const auto& v : r) {
                    matrix.push_back(I.algebra().from_double(detail::json_degree(v, "role '" + name + "'")));
                }
            }
            I.set_role(name, std::move(matrix));
        }
    }
    if (j.contains("individuals")) {
        for (const auto& [name, target] : j["individuals"].items()) {
            if (target.is_number_integer()) {
                const auto idx = target.template get<long long>();
                if (idx < 0) throw InputError("individual '" + name + "' has a negative index");
                I.set_individual(name, static_cast<std::size_t>(idx));
            } else if (target.is_string()) {
                I.set_individual(name, I.element_index(target.template get<std::string>()));
            } else {
                throw InputError("individual '" + name + "' must map to an index or element id");
            }
        }
    }
    return I;
}

template <class Algebra>
json to_json(const BasicInterpretation<Algebra>& I) {
    json j;
    j["domain"] = I.domain();
    j["concepts"] = json::object();
    for (const auto& [name, vals] : I.concepts()) {
        json arr = json::array();
        for (auto v : vals) arr.push_back(I.algebra().to_double(v));
        j["concepts"][name] = std::move(arr);
    }
    j["roles"] = json::object();
    for (const auto& [name, vals] : I.roles()) {
        json rows = json::array();
        for (std::size_t x = 0; x < I.size(); ++x) {
            json row = json::array();
            for (std::size_t y = 0; y < I.size(); ++y) row.push_back(I.algebra().to_double(vals[x * I.size() + y]));
            rows.push_back(std::move(row));
        }
        j["roles"][name] = std::move(rows);
    }
    j["individuals"] = json::object();
    for (const auto& [name, idx] : I.individuals()) j["individuals"][name] = idx;
    if constexpr (Algebra::is_graded()) j["grade"] = I.algebra().n();
    return j;
}

template <class Algebra>
BasicInterpretation<Algebra> interpretation_from_csv(const CsvTable& table, Algebra algebra) {
    BasicInterpretation<Algebra> I(std::move(algebra), table.ids);
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        std::vector<double> col;
        col.reserve(table.rows.size());
        for (const auto& r : table.rows) col.push_back(r[c]);
        I.set_concept_degrees(table.columns[c], col);
    }
    return I;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos && trim(s) == s) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace detail

template <class Algebra>
std::string interpretation_to_csv(const BasicInterpretation<Algebra>& I) {
    if (!I.roles().empty()) throw InputError("the CSV form cannot hold role values");
    std::ostringstream out;
    out.precision(17);
    out << "id";
    for (const auto& [name, vals] : I.concepts()) out << ',' << detail::csv_field(name);
    out << '\n';
    for (std::size_t x = 0; x < I.size(); ++x) {
        out << detail::csv_field(I.element_id(x));
        for (const auto& [name, vals] : I.concepts()) out << ',' << I.algebra().to_double(vals[x]);
        out << '\n';
    }
    return out.str();
}

}  // namespace fuzzyt
