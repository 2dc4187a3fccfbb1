#pragma once

// Structured verdicts: a table of rows plus a summary, serializable to JSON and CSV.

#include <string>
#include <vector>

#include <json.hpp>

#include "rational.hpp"
#include "series.hpp"

namespace cgn {

using json = nlohmann::ordered_json;

struct VerdictReport {
    std::string title;
    std::vector<std::string> columns;
    std::vector<json> rows;
    json summary = json::object();
    std::vector<std::string> diagnostics;
    bool passed = true;

    json to_json() const
    {
        json j;
        j["title"] = title;
        j["columns"] = columns;
        j["rows"] = rows;
        j["summary"] = summary;
        j["diagnostics"] = diagnostics;
        j["passed"] = passed;
        return j;
    }

    std::string to_csv() const
    {
        std::string out;
        for (std::size_t i = 0; i < columns.size(); ++i)
            out += (i ? "," : "") + columns[i];
        out += "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < columns.size(); ++i) {
                if (i)
                    out += ",";
                if (r.contains(columns[i]))
                    out += csv_cell(r[columns[i]]);
            }
            out += "\n";
        }
        return out;
    }

    static std::string csv_cell(const json& v)
    {
        if (v.is_null())
            return "";
        if (v.is_number_float())
            return detail::shortest(v.get<double>());
        if (v.is_string()) {
            std::string s = v.get<std::string>();
            if (s.find_first_of(",\"\n") == std::string::npos)
                return s;
            std::string q = "\"";
            for (char c : s)
                q += c == '"' ? std::string("\"\"") : std::string(1, c);
            return q + "\"";
        }
        return v.dump();
    }
};

/// JSON value of an order: a string for +inf and for non-integers, a number otherwise.
inline json order_json(const Order& o)
{
    if (o.is_finite() && is_integer(o.value()))
        return o.value().numerator();
    return to_string(o);
}

} // namespace cgn
