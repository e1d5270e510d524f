// sem_atlas: command-line front end for the sem_atlas library.
// Exit codes: 0 ok, 1 domain failure, 2 usage or IO.

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sem_atlas/sem_atlas.hpp"

namespace fs = std::filesystem;
using namespace sem_atlas;

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;

struct DomainFailure {
    std::string message;
};

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-")
        std::cout << text;
    else
        write_text_file(out_path, text);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::uint64_t budget_default() {
    if (const char* e = std::getenv("SEM_ATLAS_BUDGET"); e && *e) return std::stoull(e);
    return 0;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path) {
    RawMap raw = parse_semmap(read_text_file(path));
    if (auto d = PolyhedralMap::diagnose(raw.faces, raw.n)) {
        std::cout << d->message() << "\n";
        return kDomain;
    }
    PolyhedralMap m = map_from_raw(raw);
    std::cout << "ok " << m.n_vertices() << " vertices, " << m.n_edges() << " edges, " << m.n_faces() << " faces\n";
    return kOk;
}

int cmd_invariants(const std::string& path, bool as_json) {
    PolyhedralMap m = load_map(path);
    const long chi = euler_characteristic(m);
    const bool orient = is_orientable(m);
    const auto type = is_semi_equivelar(m);
    const auto poly = edge_graph_char_poly(m);
    std::optional<int> systole;
    if (chi == 0) systole = homological_systole(m);
    const bool vt = is_vertex_transitive(m);
    std::map<int, int> by_size;
    for (const Face& f : m.faces()) ++by_size[static_cast<int>(f.size())];

    if (as_json) {
        nlohmann::ordered_json j;
        j["version"] = 1;
        j["vertices"] = m.n_vertices();
        j["edges"] = m.n_edges();
        j["faces"] = m.n_faces();
        nlohmann::ordered_json fs_json = nlohmann::ordered_json::object();
        for (auto [k, c] : by_size) fs_json[std::to_string(k)] = c;
        j["faces_by_size"] = fs_json;
        j["euler_characteristic"] = chi;
        j["orientable"] = orient;
        j["surface"] = surface_id(m).str();
        j["type"] = type ? nlohmann::ordered_json(type->str()) : nlohmann::ordered_json(nullptr);
        std::vector<std::string> coeffs;
        for (const auto& c : poly.coeffs) coeffs.push_back(c.str());
        j["char_poly"] = poly.str();
        j["char_poly_coefficients"] = coeffs;
        j["homological_systole"] = systole ? nlohmann::ordered_json(*systole) : nlohmann::ordered_json(nullptr);
        j["vertex_transitive"] = vt;
        std::cout << j.dump(2) << "\n";
        return kOk;
    }
    std::cout << "vertices " << m.n_vertices() << "\n";
    std::cout << "edges " << m.n_edges() << "\n";
    std::cout << "faces " << m.n_faces() << " (";
    bool first = true;
    for (auto [k, c] : by_size) {
        std::cout << (first ? "" : ", ") << k << "-gons " << c;
        first = false;
    }
    std::cout << ")\n";
    std::cout << "euler_characteristic " << chi << "\n";
    std::cout << "orientable " << yes_no(orient) << "\n";
    std::cout << "surface " << surface_id(m).str() << "\n";
    std::cout << "type " << (type ? type->power_str() + " " + type->str() : "not semi-equivelar") << "\n";
    std::cout << "char_poly " << poly.str() << "\n";
    std::cout << "char_poly_coefficients " << poly.coefficient_list() << "\n";
    std::cout << "homological_systole " << (systole ? std::to_string(*systole) : "n/a (chi != 0)") << "\n";
    std::cout << "vertex_transitive " << yes_no(vt) << "\n";
    return kOk;
}

int cmd_iso(const std::string& a_path, const std::string& b_path, const std::string& pin_text) {
    PolyhedralMap a = load_map(a_path), b = load_map(b_path);
    std::optional<std::pair<int, int>> pin;
    if (!pin_text.empty()) {
        auto parts = split(pin_text, ':');
        if (parts.size() != 2) throw CLI::ValidationError("--pin", "expected u:v");
        pin = std::pair<int, int>{std::stoi(parts[0]), std::stoi(parts[1])};
    }
    auto iso = find_isomorphism(a, b, pin);
    if (!iso) {
        std::cout << "not isomorphic\n";
        return kDomain;
    }
    std::cout << "isomorphic\n";
    for (std::size_t v = 0; v < iso->mapping.size(); ++v)
        std::cout << v << " -> " << iso->mapping[v] << "\n";
    return kOk;
}

int cmd_enumerate(const std::string& type_text, int n, const std::string& out_dir, const EnumOptions& opt) {
    FaceSeqType t = FaceSeqType::parse(type_text);
    auto gate = min_vertices_gate(t, n);
    if (gate.empty() || gate.back() != n) {
        std::cout << t.power_str() << " n=" << n << ": 0 maps (gated: ";
        if (auto inf = face_counts(t, n); std::holds_alternative<Infeasible>(inf))
            std::cout << std::get<Infeasible>(inf).reason;
        else
            std::cout << "closed star needs " << closed_star_size(t) << " vertices";
        std::cout << ")\n";
        return kOk;
    }
    auto res = enumerate_sems(t, n, opt);
    if (!out_dir.empty()) fs::create_directories(out_dir);
    int ti = 0, ki = 0, o = 0;
    std::ostringstream lines;
    for (const auto& m : res.maps) {
        bool orient = is_orientable(m);
        o += orient;
        std::string name = map_name(orient, orient ? ++ti : ++ki, n, t);
        lines << "  " << name << " " << surface_id(m).str() << "\n";
        if (!out_dir.empty()) write_text_file(out_dir + "/" + name + ".map", serialize(m, {name + " " + t.power_str()}));
    }
    std::cout << t.power_str() << " n=" << n << ": " << res.maps.size() << " maps (" << o << " orientable, "
              << res.maps.size() - o << " non-orientable), " << res.nodes << " nodes\n"
              << lines.str();
    if (!res.complete) {
        std::cout << "incomplete: node budget exhausted\n";
        return kDomain;
    }
    return kOk;
}

std::vector<TypeScope> parse_scope(const std::string& types, int n_max) {
    if (trim(types) == "all") return table_scope(n_max);
    std::vector<TypeScope> scope;
    for (const auto& part : split(types, ';'))
        if (!trim(part).empty()) scope.push_back({FaceSeqType::parse(trim(part)), n_max});
    if (scope.empty()) throw CLI::ValidationError("--types", "no types given");
    return scope;
}

int cmd_classify(int n_max, const std::string& types, const std::string& out_dir, const std::string& format,
                 const EnumOptions& opt) {
    auto rows = classify_all(parse_scope(types, n_max), opt);
    if (format == "csv")
        std::cout << render_csv(rows);
    else if (format == "json")
        std::cout << render_json(rows);
    else
        std::cout << render_text(rows);
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        for (const auto& [name, text] : classification_artifacts(rows)) write_text_file(out_dir + "/" + name, text);
    }
    for (const auto& r : rows)
        if (r.status == "incomplete") return kDomain;
    return kOk;
}

std::string verify_line(const PolyhedralMap& m) {
    auto t = is_semi_equivelar(m);
    return "verified: " + std::to_string(m.n_vertices()) + " vertices, type " +
           (t ? t->power_str() : std::string("not semi-equivelar")) + ", " + surface_id(m).str();
}

int cmd_construct(const std::string& fam_text, const std::string& surf_text, int n, int shift,
                  const std::string& out, bool verify) {
    auto fam = parse_family(fam_text);
    if (!fam) throw CLI::ValidationError("--family", "expected 3x6, 4x4 or 6x3");
    auto surf = parse_surface(surf_text);
    if (!surf) throw CLI::ValidationError("--surface", "expected torus or klein");
    SeriesParams p{*fam, *surf, n, shift};
    PolyhedralMap m = equivelar_series(p);
    emit(out, serialize(m));
    if (verify) {
        static const std::map<Family, FaceSeqType> want{{Family::Tri, FaceSeqType({3, 3, 3, 3, 3, 3})},
                                                       {Family::Quad, FaceSeqType({4, 4, 4, 4})},
                                                       {Family::Hex, FaceSeqType({6, 6, 6})}};
        auto t = is_semi_equivelar(m);
        bool ok = t && *t == want.at(*fam) && surface_id(m).name == surface_name(*surf);
        std::cerr << verify_line(m) << "\n";
        if (!ok) throw DomainFailure{"construct: output does not have the requested type or surface"};
    }
    return kOk;
}

using Operator = std::function<PolyhedralMap(const PolyhedralMap&)>;

const std::map<std::string, Operator>& operators() {
    static const std::map<std::string, Operator> ops{
        {"dual", sem_atlas::dual},
        {"truncate", sem_atlas::truncate},
        {"subdivide-layer-diagonals", subdivide_layer_diagonals},
        {"layer", subdivide_layer_diagonals},
        {"subdivide-alternate-diagonals", subdivide_alternate_diagonals},
        {"alternate", subdivide_alternate_diagonals},
        {"subdivide-to-3636", subdivide_to_3636},
        {"kagome", subdivide_to_3636},
        {"build-3464-from-312sq", build_3464_from_312sq},
        {"build-3464", build_3464_from_312sq},
        {"subdivide-3464-to-346", subdivide_3464_to_346},
        {"double-cover", [](const PolyhedralMap& m) { return double_cover(m).map; }},
    };
    return ops;
}

int cmd_derive(const std::string& path, const std::string& chain, const std::string& out, bool verify) {
    PolyhedralMap m = load_map(path);
    const long chi0 = euler_characteristic(m);
    for (const auto& raw : split(chain, ',')) {
        std::string name = trim(raw);
        auto it = operators().find(name);
        if (it == operators().end()) throw CLI::ValidationError("--ops", "unknown operator '" + name + "'");
        m = it->second(m);
    }
    emit(out, serialize(m));
    if (verify) {
        std::cerr << verify_line(m) << "\n";
        if (!is_semi_equivelar(m)) throw DomainFailure{"derive: output is not semi-equivelar"};
        if (euler_characteristic(m) != chi0 && chi0 != 0)
            throw DomainFailure{"derive: Euler characteristic changed"};
    }
    return kOk;
}

int cmd_cover(const std::string& path, const std::string& out, const std::string& proj_out,
              const std::string& compare, bool verify) {
    PolyhedralMap base = load_map(path);
    Cover c = double_cover(base);
    emit(out, serialize(c.map));
    if (!proj_out.empty()) {
        std::string text;
        for (std::size_t v = 0; v < c.projection.size(); ++v)
            text += std::to_string(v) + " " + std::to_string(c.projection[v]) + "\n";
        write_text_file(proj_out, text);
    }
    int rc = kOk;
    if (verify) {
        bool ok = verify_covering(c.map, base, c.projection);
        std::cerr << "covering " << (ok ? "verified" : "FAILED") << ": " << c.map.n_vertices() << " -> "
                  << base.n_vertices() << " vertices, cover is " << surface_id(c.map).str() << "\n";
        if (!ok) rc = kDomain;
    }
    if (!compare.empty()) {
        bool iso = find_isomorphism(c.map, load_map(compare)).has_value();
        std::cerr << "isomorphic to " << compare << ": " << yes_no(iso) << "\n";
        if (!iso) rc = kDomain;
    }
    return rc;
}

int cmd_export(const std::string& path, const std::string& format, const std::string& out) {
    PolyhedralMap m = load_map(path);
    if (format == "svg") {
        if (svg_grid(m)) {
            emit(out, to_svg(m));
            return kOk;
        }
        std::cerr << "warning: svg needs an unmodified 4^4 or 3^6 grid map; writing dot instead\n";
    }
    emit(out, to_dot(m, fs::path(path).stem().string()));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polyhedral maps and semi-equivelar maps on the torus and Klein bottle"};
    app.require_subcommand(1);
    std::function<int()> run;

    std::string path, path_b, out, pin, type_text, types = "all", format = "text", family, surface, ops, proj_out,
                                                     compare;
    int n = 0, shift = 3, max_vertices = 0, jobs = 1;
    std::uint64_t budget = budget_default();
    bool as_json = false, verify = false;

    auto* v = app.add_subcommand("validate", "check that a semmap file is a polyhedral map");
    v->add_option("file", path)->required();
    v->callback([&] { run = [&] { return cmd_validate(path); }; });

    auto* inv = app.add_subcommand("invariants", "print combinatorial invariants of a map");
    inv->add_option("file", path)->required();
    inv->add_flag("--json", as_json, "JSON output");
    inv->callback([&] { run = [&] { return cmd_invariants(path, as_json); }; });

    auto* iso = app.add_subcommand("iso", "search for an isomorphism between two maps");
    iso->add_option("a", path)->required();
    iso->add_option("b", path_b)->required();
    iso->add_option("--pin", pin, "force vertex u of a onto vertex v of b (u:v)");
    iso->callback([&] { run = [&] { return cmd_iso(path, path_b, pin); }; });

    auto* en = app.add_subcommand("enumerate", "all SEMs of one type on n vertices");
    en->add_option("--type", type_text, "face-sequence, e.g. 3,3,3,4,4")->required();
    en->add_option("--n", n, "vertex count")->required()->check(CLI::Range(1, 64));
    en->add_option("--out", out, "directory for map files");
    en->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    en->add_option("--budget", budget, "search node cap (0 = unlimited)");
    en->callback([&] { run = [&] { return cmd_enumerate(type_text, n, out, EnumOptions{jobs, budget}); }; });

    auto* cl = app.add_subcommand("classify", "classification table over types and vertex counts");
    cl->add_option("--max-vertices", max_vertices, "largest vertex count")->required()->check(CLI::Range(3, 64));
    cl->add_option("--types", types, "';'-separated types, or 'all'");
    cl->add_option("--out", out, "directory for map files and tables");
    cl->add_option("--format", format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    cl->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    cl->add_option("--budget", budget, "search node cap per cell (0 = unlimited)");
    cl->callback([&] { run = [&] { return cmd_classify(max_vertices, types, out, format, EnumOptions{jobs, budget}); }; });

    auto* co = app.add_subcommand("construct", "equivelar grid map on the torus or Klein bottle");
    co->add_option("--family", family, "3x6, 4x4 or 6x3")->required();
    co->add_option("--surface", surface, "torus or klein")->required();
    co->add_option("--n", n, "series parameter")->required();
    co->add_option("--shift", shift, "torus twist of the top side (default 3)");
    co->add_option("--out", out, "output file (default stdout)");
    co->add_flag("--verify", verify, "re-check type and surface");
    co->callback([&] { run = [&] { return cmd_construct(family, surface, n, shift, out, verify); }; });

    auto* de = app.add_subcommand("derive", "apply a chain of operators to a map");
    de->add_option("file", path)->required();
    de->add_option("--ops", ops, "comma-separated operator chain")->required();
    de->add_option("--out", out, "output file (default stdout)");
    de->add_flag("--verify", verify, "re-check the output");
    de->callback([&] { run = [&] { return cmd_derive(path, ops, out, verify); }; });

    auto* cv = app.add_subcommand("cover", "orientation double cover of a non-orientable map");
    cv->add_option("file", path)->required();
    cv->add_option("--out", out, "output file (default stdout)");
    cv->add_option("--projection", proj_out, "write the projection as 'cover base' lines");
    cv->add_option("--compare", compare, "check the cover against this map");
    cv->add_flag("--verify", verify, "check the covering conditions");
    cv->callback([&] { run = [&] { return cmd_cover(path, out, proj_out, compare, verify); }; });

    auto* ex = app.add_subcommand("export", "DOT graph or SVG grid drawing");
    ex->add_option("file", path)->required();
    ex->add_option("--format", format, "dot or svg")->check(CLI::IsMember({"dot", "svg"}));
    ex->add_option("--out", out, "output file (default stdout)");
    ex->callback([&] {
        if (format == "text") format = "dot";
        run = [&] { return cmd_export(path, format, out); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        return run();
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kDomain;
    } catch (const Error& e) {
        std::cerr << e.code() << ": " << e.what() << "\n";
        return e.code() == "BadType" ? kUsage : kDomain;
    } catch (const DomainFailure& e) {
        std::cerr << e.message << "\n";
        return kDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    }
}
