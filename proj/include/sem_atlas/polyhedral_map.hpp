#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sem_atlas {

using Face = std::vector<int>;

// Base for every domain error raised by the library. code() is the short
// diagnostic name printed by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

enum class Violation {
    BadLabel,
    RepeatedVertexInFace,
    DegenerateFace,
    FaceIntersectionViolation,
    EdgeDegreeViolation,
    LinkNotSingleCycle,
    Disconnected,
};

inline const char* violation_name(Violation v) {
    switch (v) {
    case Violation::BadLabel: return "BadLabel";
    case Violation::RepeatedVertexInFace: return "RepeatedVertexInFace";
    case Violation::DegenerateFace: return "DegenerateFace";
    case Violation::FaceIntersectionViolation: return "FaceIntersectionViolation";
    case Violation::EdgeDegreeViolation: return "EdgeDegreeViolation";
    case Violation::LinkNotSingleCycle: return "LinkNotSingleCycle";
    case Violation::Disconnected: return "Disconnected";
    }
    return "?";
}

struct Diagnostic {
    Violation kind;
    std::string witness;  // e.g. "faces 0,1", "edge 3-7 in 3 faces", "vertex 4"

    std::string message() const { return std::string(violation_name(kind)) + " " + witness; }
};

class ValidationError : public Error {
public:
    explicit ValidationError(Diagnostic d)
        : Error(violation_name(d.kind), d.message()), diag_(std::move(d)) {}
    const Diagnostic& diagnostic() const { return diag_; }

private:
    Diagnostic diag_;
};

// ---------------------------------------------------------------------------
// cyclic sequences

// Least rotation/reflection of a cyclic sequence.
template <class T>
std::vector<T> canonical_cycle(const std::vector<T>& s) {
    std::vector<T> best = s;
    const std::size_t k = s.size();
    std::vector<T> cur(k);
    for (int dir = 0; dir < 2; ++dir) {
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t i = 0; i < k; ++i)
                cur[i] = dir == 0 ? s[(r + i) % k] : s[(r + k - i) % k];
            if (cur < best) best = cur;
        }
    }
    return best;
}

inline Face canonical_face(const Face& f) { return canonical_cycle(f); }

// ---------------------------------------------------------------------------
// FaceSeqType

class FaceSeqType {
public:
    FaceSeqType() = default;
    explicit FaceSeqType(std::vector<int> sizes) {
        if (sizes.size() < 3) throw Error("BadType", "face-sequence needs at least 3 entries");
        for (int p : sizes)
            if (p < 3) throw Error("BadType", "face sizes must be >= 3");
        sizes_ = canonical_cycle(sizes);
    }

    // "3,3,3,4,4" (commas, dashes or spaces; optional parentheses)
    static FaceSeqType parse(const std::string& text) {
        std::vector<int> v;
        std::string tok;
        auto flush = [&] {
            if (tok.empty()) return;
            std::size_t used = 0;
            int x = 0;
            try {
                x = std::stoi(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size()) throw Error("BadType", "cannot parse type '" + text + "'");
            v.push_back(x);
            tok.clear();
        };
        for (char c : text) {
            if (c == ',' || c == '-' || c == ' ' || c == '(' || c == ')')
                flush();
            else
                tok += c;
        }
        flush();
        return FaceSeqType(v);
    }

    const std::vector<int>& sizes() const { return sizes_; }
    std::size_t length() const { return sizes_.size(); }
    int multiplicity(int p) const { return static_cast<int>(std::count(sizes_.begin(), sizes_.end(), p)); }
    std::vector<int> distinct_sizes() const {
        std::vector<int> d = sizes_;
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
        return d;
    }

    // (3,3,3,4,4)
    std::string str() const { return "(" + join(",") + ")"; }
    // 3-3-3-4-4, used in file names
    std::string slug() const { return join("-"); }
    // (3^3,4^2): consecutive runs of the normalized sequence
    std::string power_str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < sizes_.size();) {
            std::size_t j = i;
            while (j < sizes_.size() && sizes_[j] == sizes_[i]) ++j;
            if (i) out += ",";
            out += std::to_string(sizes_[i]);
            if (j - i > 1) out += "^" + std::to_string(j - i);
            i = j;
        }
        return out + ")";
    }

    bool matches(const std::vector<int>& cyclic) const { return canonical_cycle(cyclic) == sizes_; }

    friend bool operator==(const FaceSeqType& a, const FaceSeqType& b) { return a.sizes_ == b.sizes_; }
    friend bool operator<(const FaceSeqType& a, const FaceSeqType& b) { return a.sizes_ < b.sizes_; }

private:
    std::string join(const char* sep) const {
        std::string out;
        for (std::size_t i = 0; i < sizes_.size(); ++i) {
            if (i) out += sep;
            out += std::to_string(sizes_[i]);
        }
        return out;
    }
    std::vector<int> sizes_;
};

// ---------------------------------------------------------------------------
// SurfaceId

struct SurfaceId {
    long euler_characteristic = 0;
    bool orientable = true;
    std::string name;  // sphere | torus | klein_bottle | other

    std::string str() const {
        if (name != "other") return name;
        return "other(chi=" + std::to_string(euler_characteristic) + ", " +
               (orientable ? "orientable" : "non-orientable") + ")";
    }
};

inline SurfaceId make_surface_id(long chi, bool orientable) {
    SurfaceId s{chi, orientable, "other"};
    if (chi == 2 && orientable) s.name = "sphere";
    if (chi == 0) s.name = orientable ? "torus" : "klein_bottle";
    return s;
}

// ---------------------------------------------------------------------------
// PolyhedralMap

class PolyhedralMap {
public:
    PolyhedralMap() = default;

    // Checks every polyhedral 2-manifold condition; throws ValidationError
    // naming the first violated one.
    static PolyhedralMap validate(std::vector<Face> faces, int n, std::vector<std::string> tags = {}) {
        PolyhedralMap m;
        if (auto d = m.build(faces, n)) throw ValidationError(*d);
        // stored in canonical order so derived labelings ignore input order
        for (Face& f : faces) f = canonical_face(f);
        std::sort(faces.begin(), faces.end());
        m = PolyhedralMap();
        m.build(std::move(faces), n);
        m.tags_ = std::move(tags);
        return m;
    }

    static std::optional<Diagnostic> diagnose(std::vector<Face> faces, int n) {
        PolyhedralMap m;
        return m.build(std::move(faces), n);
    }

    int n_vertices() const { return n_; }
    int n_edges() const { return static_cast<int>(edges_.size()); }
    int n_faces() const { return static_cast<int>(faces_.size()); }
    const std::vector<Face>& faces() const { return faces_; }
    const Face& face(int f) const { return faces_[f]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    // Faces around v in fan order, and the neighbour shared by fan[i] and fan[i+1].
    const std::vector<int>& fan(int v) const { return fan_[v]; }
    const std::vector<int>& rotation(int v) const { return rot_[v]; }
    int degree(int v) const { return static_cast<int>(rot_[v].size()); }

    // index of edge {u,v} in edges(), or -1
    int edge_id(int u, int v) const {
        auto it = edge_index_.find(key(u, v));
        return it == edge_index_.end() ? -1 : it->second;
    }
    // the two faces on edge {u,v}
    std::pair<int, int> edge_faces(int e) const { return edge_faces_[e]; }
    // position of v in face f, or -1
    int position(int f, int v) const {
        const Face& fa = faces_[f];
        for (std::size_t i = 0; i < fa.size(); ++i)
            if (fa[i] == v) return static_cast<int>(i);
        return -1;
    }

    const std::vector<std::string>& tags() const { return tags_; }
    void set_tags(std::vector<std::string> t) { tags_ = std::move(t); }

    std::vector<std::vector<int>> adjacency_lists() const {
        std::vector<std::vector<int>> adj(n_);
        for (auto [u, v] : edges_) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        for (auto& a : adj) std::sort(a.begin(), a.end());
        return adj;
    }

    // Faces in canonical rotation/reflection, sorted. Equality of maps
    // with identical labels is equality of this list.
    std::vector<Face> canonical_faces() const {
        std::vector<Face> out;
        out.reserve(faces_.size());
        for (const Face& f : faces_) out.push_back(canonical_face(f));
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const PolyhedralMap& a, const PolyhedralMap& b) {
        return a.n_ == b.n_ && a.canonical_faces() == b.canonical_faces();
    }

private:
    static std::uint64_t key(int u, int v) {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
    }

    std::optional<Diagnostic> build(std::vector<Face> faces, int n) {
        auto fail = [](Violation k, std::string w) { return std::optional<Diagnostic>(Diagnostic{k, std::move(w)}); };
        if (n < 0) return fail(Violation::BadLabel, "vertex count " + std::to_string(n));
        if (n == 0 || faces.empty()) return fail(Violation::Disconnected, "empty map");

        for (std::size_t f = 0; f < faces.size(); ++f) {
            const Face& fa = faces[f];
            for (int v : fa)
                if (v < 0 || v >= n)
                    return fail(Violation::BadLabel, "face " + std::to_string(f) + " label " + std::to_string(v));
            std::vector<int> s = fa;
            std::sort(s.begin(), s.end());
            auto dup = std::adjacent_find(s.begin(), s.end());
            if (dup != s.end())
                return fail(Violation::RepeatedVertexInFace, "face " + std::to_string(f) + " vertex " + std::to_string(*dup));
            if (fa.size() < 3) return fail(Violation::DegenerateFace, "face " + std::to_string(f));
        }

        std::vector<std::vector<int>> vf(n);
        for (std::size_t f = 0; f < faces.size(); ++f)
            for (int v : faces[f]) vf[v].push_back(static_cast<int>(f));
        for (int v = 0; v < n; ++v)
            if (vf[v].empty()) return fail(Violation::Disconnected, "vertex " + std::to_string(v) + " lies in no face");

        // edges, in order of first appearance
        std::map<std::uint64_t, std::vector<int>> edge_faces;
        std::vector<std::uint64_t> order;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            const Face& fa = faces[f];
            for (std::size_t i = 0; i < fa.size(); ++i) {
                auto k = key(fa[i], fa[(i + 1) % fa.size()]);
                auto& lst = edge_faces[k];
                if (lst.empty()) order.push_back(k);
                lst.push_back(static_cast<int>(f));
            }
        }

        // pairwise intersection: empty, a vertex, or an edge of both
        std::vector<int> common(faces.size(), 0);
        for (std::size_t f = 0; f < faces.size(); ++f) {
            std::vector<int> touched;
            for (int v : faces[f])
                for (int g : vf[v])
                    if (static_cast<std::size_t>(g) > f) {
                        if (common[g]++ == 0) touched.push_back(g);
                    }
            std::sort(touched.begin(), touched.end());
            std::optional<Diagnostic> bad;
            for (int g : touched) {
                if (!bad && common[g] >= 2) {
                    bool ok = common[g] == 2;
                    if (ok) {
                        std::vector<int> sh;
                        for (int v : faces[f])
                            if (std::find(faces[g].begin(), faces[g].end(), v) != faces[g].end()) sh.push_back(v);
                        ok = adjacent_in(faces[f], sh[0], sh[1]) && adjacent_in(faces[g], sh[0], sh[1]);
                    }
                    if (!ok)
                        bad = Diagnostic{Violation::FaceIntersectionViolation,
                                         "faces " + std::to_string(f) + "," + std::to_string(g)};
                }
                common[g] = 0;
            }
            if (bad) return bad;
        }

        for (auto k : order) {
            const auto& lst = edge_faces[k];
            if (lst.size() != 2)
                return fail(Violation::EdgeDegreeViolation,
                            "edge " + std::to_string(k >> 32) + "-" + std::to_string(k & 0xffffffffu) + " in " +
                                std::to_string(lst.size()) + " face" + (lst.size() == 1 ? "" : "s"));
        }

        // fans
        std::vector<std::vector<int>> fan(n), rot(n);
        for (int v = 0; v < n; ++v) {
            // each face at v joins its two neighbours of v
            std::map<int, std::vector<std::pair<int, int>>> at;  // neighbour -> (face, other neighbour)
            for (int f : vf[v]) {
                const Face& fa = faces[f];
                int p = static_cast<int>(std::find(fa.begin(), fa.end(), v) - fa.begin());
                int a = fa[(p + fa.size() - 1) % fa.size()], b = fa[(p + 1) % fa.size()];
                at[a].push_back({f, b});
                at[b].push_back({f, a});
            }
            int f0 = vf[v][0];
            const Face& fa0 = faces[f0];
            int p0 = static_cast<int>(std::find(fa0.begin(), fa0.end(), v) - fa0.begin());
            int start = fa0[(p0 + fa0.size() - 1) % fa0.size()];
            int cur_face = f0, nb = fa0[(p0 + 1) % fa0.size()];
            fan[v].push_back(f0);
            rot[v].push_back(start);
            while (nb != start) {
                rot[v].push_back(nb);
                const auto& pr = at[nb];
                int nf = pr[0].first == cur_face ? pr[1].first : pr[0].first;
                int nx = pr[0].first == cur_face ? pr[1].second : pr[0].second;
                fan[v].push_back(nf);
                cur_face = nf;
                nb = nx;
                if (fan[v].size() > vf[v].size()) break;
            }
            if (fan[v].size() != vf[v].size())
                return fail(Violation::LinkNotSingleCycle, "vertex " + std::to_string(v));
        }

        // connectivity over vertices via faces
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const Face& fa : faces)
            for (int v : fa) parent[find(v)] = find(fa[0]);
        for (int v = 1; v < n; ++v)
            if (find(v) != find(0)) return fail(Violation::Disconnected, "vertex " + std::to_string(v));

        n_ = n;
        faces_ = std::move(faces);
        fan_ = std::move(fan);
        rot_ = std::move(rot);
        edges_.clear();
        edge_faces_.clear();
        for (auto k : order) {
            edge_index_[k] = static_cast<int>(edges_.size());
            edges_.push_back({static_cast<int>(k >> 32), static_cast<int>(k & 0xffffffffu)});
            const auto& lst = edge_faces[k];
            edge_faces_.push_back({lst[0], lst[1]});
        }
        return std::nullopt;
    }

    static bool adjacent_in(const Face& f, int a, int b) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            int x = f[i], y = f[(i + 1) % f.size()];
            if ((x == a && y == b) || (x == b && y == a)) return true;
        }
        return false;
    }

    int n_ = 0;
    std::vector<Face> faces_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::pair<int, int>> edge_faces_;
    std::map<std::uint64_t, int> edge_index_;
    std::vector<std::vector<int>> fan_, rot_;
    std::vector<std::string> tags_;
};

// ---------------------------------------------------------------------------
// basic invariants

inline std::vector<int> face_sequence(const PolyhedralMap& m, int v) {
    if (v < 0 || v >= m.n_vertices()) throw Error("BadLabel", "vertex " + std::to_string(v) + " out of range");
    std::vector<int> out;
    for (int f : m.fan(v)) out.push_back(static_cast<int>(m.face(f).size()));
    return out;
}

inline std::optional<FaceSeqType> is_semi_equivelar(const PolyhedralMap& m) {
    auto first = canonical_cycle(face_sequence(m, 0));
    if (first.size() < 3) return std::nullopt;
    for (int v = 1; v < m.n_vertices(); ++v)
        if (canonical_cycle(face_sequence(m, v)) != first) return std::nullopt;
    return FaceSeqType(first);
}

inline long euler_characteristic(const PolyhedralMap& m) {
    return static_cast<long>(m.n_vertices()) - m.n_edges() + m.n_faces();
}

// Orientation propagation over the face adjacency graph. When `orient` is
// given it receives +1/-1 per face (keep / reverse the stored direction).
inline bool is_orientable(const PolyhedralMap& m, std::vector<int>* orient = nullptr) {
    const int F = m.n_faces();
    std::vector<int> o(F, 0);
    // direction of edge (u,v) in face f: +1 if f traverses u->v
    auto dir = [&](int f, int u, int v) {
        const Face& fa = m.face(f);
        int p = m.position(f, u);
        return fa[(p + 1) % fa.size()] == v ? 1 : -1;
    };
    bool ok = true;
    for (int s = 0; s < F; ++s) {
        if (o[s]) continue;
        o[s] = 1;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            const Face& fa = m.face(f);
            for (std::size_t i = 0; i < fa.size(); ++i) {
                int u = fa[i], v = fa[(i + 1) % fa.size()];
                auto [g1, g2] = m.edge_faces(m.edge_id(u, v));
                int g = g1 == f ? g2 : g1;
                // g must traverse u->v opposite to f after orientation
                int want = -o[f] * dir(g, u, v);
                if (!o[g]) {
                    o[g] = want;
                    stack.push_back(g);
                } else if (o[g] != want) {
                    ok = false;
                }
            }
        }
    }
    if (orient) *orient = o;
    return ok;
}

inline SurfaceId surface_id(const PolyhedralMap& m) {
    return make_surface_id(euler_characteristic(m), is_orientable(m));
}

// Relabel vertices: new label of v is perm[v].
inline PolyhedralMap permute(const PolyhedralMap& m, const std::vector<int>& perm) {
    std::vector<Face> faces;
    faces.reserve(m.faces().size());
    for (const Face& f : m.faces()) {
        Face g;
        g.reserve(f.size());
        for (int v : f) g.push_back(perm[v]);
        faces.push_back(std::move(g));
    }
    return PolyhedralMap::validate(std::move(faces), m.n_vertices(), m.tags());
}

inline std::vector<int> face_size_counts(const PolyhedralMap& m) {
    std::vector<int> c;
    for (const Face& f : m.faces()) {
        if (c.size() <= f.size()) c.resize(f.size() + 1, 0);
        ++c[f.size()];
    }
    return c;
}

}  // namespace sem_atlas
