#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "polyhedral_map.hpp"

namespace sem_atlas {

// Raised for unreadable files and malformed semmap text. Distinct from
// ValidationError, which concerns the map itself.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& what) : Error("FormatError", what) {}
};

struct RawMap {
    int n = 0;
    std::vector<Face> faces;
    std::vector<std::string> tags;
    std::vector<std::string> comments;
};

inline RawMap parse_semmap(const std::string& text) {
    RawMap raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false, have_n = false;
    auto bad = [&](const std::string& why) {
        return FormatError("line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t s = line.find_first_not_of(" \t");
        if (s == std::string::npos) continue;
        if (line[s] == '#') {
            std::string body = line.substr(s + 1);
            std::size_t b = body.find_first_not_of(' ');
            body = b == std::string::npos ? "" : body.substr(b);
            if (body.rfind("tag:", 0) == 0) {
                std::string t = body.substr(4);
                std::size_t tb = t.find_first_not_of(' ');
                raw.tags.push_back(tb == std::string::npos ? "" : t.substr(tb));
            } else {
                raw.comments.push_back(body);
            }
            continue;
        }
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (!have_header) {
            int ver = 0;
            if (word != "semmap" || !(ls >> ver) || ver != 1) throw bad("expected 'semmap 1'");
            have_header = true;
        } else if (!have_n) {
            long n = -1;
            if (word != "vertices" || !(ls >> n) || n < 0 || n > 1000000) throw bad("expected 'vertices <n>'");
            raw.n = static_cast<int>(n);
            have_n = true;
        } else {
            if (word != "face") throw bad("expected 'face ...'");
            Face f;
            std::string tok;
            while (ls >> tok) {
                std::size_t used = 0;
                long v = -1;
                try {
                    v = std::stol(tok, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != tok.size()) throw bad("bad vertex label '" + tok + "'");
                if (v < -1000000 || v > 1000000) throw bad("vertex label out of range");
                f.push_back(static_cast<int>(v));
            }
            raw.faces.push_back(std::move(f));
        }
    }
    if (!have_header) throw FormatError("missing 'semmap 1' header");
    if (!have_n) throw FormatError("missing 'vertices <n>' line");
    return raw;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline PolyhedralMap map_from_raw(const RawMap& raw) {
    return PolyhedralMap::validate(raw.faces, raw.n, raw.tags);
}

inline PolyhedralMap load_map(const std::string& path) { return map_from_raw(parse_semmap(read_text_file(path))); }

// Canonical serialization: faces in canonical rotation/reflection, sorted.
inline std::string serialize(const PolyhedralMap& m, const std::vector<std::string>& comments = {}) {
    std::string out = "semmap 1\nvertices " + std::to_string(m.n_vertices()) + "\n";
    for (const auto& c : comments) out += "# " + c + "\n";
    for (const auto& t : m.tags()) out += "# tag: " + t + "\n";
    for (const Face& f : m.canonical_faces()) {
        out += "face";
        for (int v : f) out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
    if (!out) throw FormatError("write failed: " + path);
}

}  // namespace sem_atlas
