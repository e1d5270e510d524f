#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyhedral_map.hpp"
#include "semmap_io.hpp"

#ifndef SEM_ATLAS_FIXTURE_DIR
#define SEM_ATLAS_FIXTURE_DIR "fixtures"
#endif

namespace sem_atlas {

class UnknownFixture : public Error {
public:
    explicit UnknownFixture(const std::string& id) : Error("UnknownFixture", "no fixture named " + id) {}
};

struct FixtureEntry {
    std::string id;        // T_1_10__3-3-3-4-4
    std::string name;      // T_{1,10}(3^3,4^2)
    std::string file;
    FaceSeqType type;
    std::string surface;   // torus | klein_bottle
    int n = 0;
    std::string provenance;
    std::string covers;    // base fixture id for double-cover drawings
};

// SEM_ATLAS_FIXTURES overrides the compiled-in location.
inline std::string fixture_dir() {
    if (const char* e = std::getenv("SEM_ATLAS_FIXTURES"); e && *e) return e;
    return SEM_ATLAS_FIXTURE_DIR;
}

inline std::vector<FixtureEntry> fixture_catalog(const std::string& dir = fixture_dir()) {
    auto j = nlohmann::json::parse(read_text_file(dir + "/manifest.json"));
    std::vector<FixtureEntry> out;
    for (const auto& e : j.at("fixtures")) {
        FixtureEntry f;
        f.id = e.at("id");
        f.name = e.value("name", f.id);
        f.file = e.at("file");
        f.type = FaceSeqType::parse(e.at("type").get<std::string>());
        f.surface = e.at("surface");
        f.n = e.at("n");
        f.provenance = e.value("provenance", "");
        f.covers = e.value("covers", "");
        out.push_back(std::move(f));
    }
    return out;
}

inline PolyhedralMap load_fixture(const std::string& id, const std::string& dir = fixture_dir()) {
    for (const auto& f : fixture_catalog(dir))
        if (f.id == id) return load_map(dir + "/" + f.file);
    throw UnknownFixture(id);
}

}  // namespace sem_atlas
