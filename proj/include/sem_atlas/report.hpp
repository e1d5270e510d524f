#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "enumerate.hpp"
#include "semmap_io.hpp"

namespace sem_atlas {

struct ClassTotals {
    int maps = 0, orientable = 0, non_orientable = 0;
};

inline ClassTotals totals(const std::vector<ClassRow>& rows) {
    ClassTotals t;
    for (const auto& r : rows) {
        t.maps += r.total();
        t.orientable += r.orientable;
        t.non_orientable += r.non_orientable;
    }
    return t;
}

inline std::string render_text(const std::vector<ClassRow>& rows) {
    std::ostringstream out;
    out << "type                n   count  orientable  non_orientable  maps\n";
    for (const auto& r : rows) {
        std::string ty = r.type.power_str();
        ty.resize(std::max<std::size_t>(ty.size(), 18), ' ');
        if (r.status == "infeasible") {
            out << ty << "  -   infeasible: " << r.reason << "\n";
            continue;
        }
        std::string n = std::to_string(r.n);
        n.resize(std::max<std::size_t>(n.size(), 3), ' ');
        out << ty << "  " << n << " " << r.total() << "      " << r.orientable << "           " << r.non_orientable
            << "               ";
        for (std::size_t i = 0; i < r.names.size(); ++i) out << (i ? " " : "") << r.names[i];
        if (r.status == "incomplete") out << (r.names.empty() ? "" : " ") << "[incomplete: " << r.reason << "]";
        out << "\n";
    }
    auto t = totals(rows);
    out << "total " << t.maps << " maps, " << t.orientable << " orientable, " << t.non_orientable
        << " non-orientable\n";
    return out.str();
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace detail

// RFC 4180, CRLF line ends.
inline std::string render_csv(const std::vector<ClassRow>& rows) {
    std::string out = "type,n,status,count,orientable,non_orientable,maps,reason\r\n";
    for (const auto& r : rows) {
        std::string maps;
        for (std::size_t i = 0; i < r.names.size(); ++i) maps += (i ? ";" : "") + r.names[i];
        out += detail::csv_field(r.type.str()) + "," + (r.n ? std::to_string(r.n) : "") + "," + r.status + "," +
               std::to_string(r.total()) + "," + std::to_string(r.orientable) + "," +
               std::to_string(r.non_orientable) + "," + detail::csv_field(maps) + "," + detail::csv_field(r.reason) +
               "\r\n";
    }
    return out;
}

inline nlohmann::ordered_json report_json(const std::vector<ClassRow>& rows) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    auto& arr = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json e;
        e["type"] = r.type.str();
        e["n"] = r.n ? nlohmann::ordered_json(r.n) : nlohmann::ordered_json(nullptr);
        e["status"] = r.status;
        e["count"] = r.total();
        e["orientable"] = r.orientable;
        e["non_orientable"] = r.non_orientable;
        e["maps"] = r.names;
        if (!r.reason.empty()) e["reason"] = r.reason;
        arr.push_back(std::move(e));
    }
    auto t = totals(rows);
    j["total"] = {{"count", t.maps}, {"orientable", t.orientable}, {"non_orientable", t.non_orientable}};
    return j;
}

inline std::string render_json(const std::vector<ClassRow>& rows) { return report_json(rows).dump(2) + "\n"; }

// Every artifact of a classification run: report files plus one semmap
// file per representative, keyed by file name.
inline std::vector<std::pair<std::string, std::string>> classification_artifacts(const std::vector<ClassRow>& rows) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.maps.size(); ++i)
            out.emplace_back(r.names[i] + ".map", serialize(r.maps[i], {r.names[i] + " " + r.type.power_str()}));
    out.emplace_back("table.txt", render_text(rows));
    out.emplace_back("table.csv", render_csv(rows));
    out.emplace_back("table.json", render_json(rows));
    return out;
}

}  // namespace sem_atlas
