#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polyhedral_map.hpp"

namespace sem_atlas {

// ---------------------------------------------------------------------------
// grid generators

enum class Family { Tri, Quad, Hex };  // 3^6, 4^4, 6^3
enum class Surface { Torus, Klein };

struct SeriesParams {
    Family family = Family::Quad;
    Surface surface = Surface::Torus;
    int n = 0;
    int shift = 3;  // torus only: top line = bottom line moved by `shift` columns
};

inline std::string family_name(Family f) {
    switch (f) {
    case Family::Tri: return "3^6";
    case Family::Quad: return "4^4";
    case Family::Hex: return "6^3";
    }
    return "?";
}

inline std::string surface_name(Surface s) { return s == Surface::Torus ? "torus" : "klein_bottle"; }

// accepts 3^6 / 3x6 / 36 and friends
inline std::optional<Family> parse_family(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '^' || c == 'x' || c == ','; }), s.end());
    if (s == "36" || s == "333333") return Family::Tri;
    if (s == "44" || s == "4444") return Family::Quad;
    if (s == "63" || s == "666") return Family::Hex;
    return std::nullopt;
}

inline std::optional<Surface> parse_surface(const std::string& s) {
    if (s == "torus" || s == "T") return Surface::Torus;
    if (s == "klein" || s == "klein_bottle" || s == "K") return Surface::Klein;
    return std::nullopt;
}

inline std::string grid_tag(const SeriesParams& p) {
    std::string t = "grid " + family_name(p.family) + " " + surface_name(p.surface) + " " + std::to_string(p.n);
    if (p.surface == Surface::Torus && p.family != Family::Hex && p.shift != 3) t += " shift " + std::to_string(p.shift);
    return t;
}

inline std::optional<SeriesParams> parse_grid_tag(const std::string& tag) {
    std::istringstream in(tag);
    std::string word, fam, surf;
    int n = 0;
    if (!(in >> word >> fam >> surf >> n) || word != "grid") return std::nullopt;
    auto f = parse_family(fam);
    auto s = parse_surface(surf);
    if (!f || !s) return std::nullopt;
    SeriesParams p{*f, *s, n};
    std::string kw;
    if (in >> kw) {
        if (kw != "shift" || !(in >> p.shift)) return std::nullopt;
    }
    return p;
}

class ParamOutOfRange : public Error {
public:
    explicit ParamOutOfRange(const std::string& w) : Error("ParamOutOfRange", w) {}
};
class NotGridMap : public Error {
public:
    explicit NotGridMap(const std::string& w) : Error("NotGridMap", w) {}
};
class ParityError : public Error {
public:
    explicit ParityError(const std::string& w) : Error("ParityError", w) {}
};
class NotTaggedTruncation : public Error {
public:
    explicit NotTaggedTruncation(const std::string& w) : Error("NotTaggedTruncation", w) {}
};
class NoConsistentDiagonalization : public Error {
public:
    explicit NoConsistentDiagonalization(const std::string& w) : Error("NoConsistentDiagonalization", w) {}
};
class AlreadyOrientable : public Error {
public:
    AlreadyOrientable() : Error("AlreadyOrientable", "map is orientable; its orientation cover is disconnected") {}
};
class WrongType : public Error {
public:
    explicit WrongType(const std::string& w) : Error("WrongType", w) {}
};

// Vertex label at grid position (c, r) of the fundamental polygon.
// Torus: two rows of squares, the top line is the bottom line moved by
// p.shift columns (3 in the standard drawing).
// Klein: three rows of squares, the right side glued to the left flipped.
inline int grid_point(const SeriesParams& p, int c, int r) {
    const int n = p.n;
    if (p.surface == Surface::Torus) {
        auto E = [&](int j) { return 2 * (((j % n) + n) % n) + 1; };
        auto M = [&](int j) { return 2 * (((j % n) + n) % n); };
        if (r == 0) return E(c);
        if (r == 1) return M(c);
        return E(c - p.shift);
    }
    r %= 3;
    if (c == n) return grid_point(p, 0, (3 - r) % 3);
    static const int off[3] = {0, 2, 1};
    return 3 * c + off[r];
}

inline int grid_rows(const SeriesParams& p) { return p.surface == Surface::Torus ? 2 : 3; }

inline std::vector<std::array<int, 4>> grid_squares(const SeriesParams& p) {
    std::vector<std::array<int, 4>> sq;
    for (int c = 0; c < p.n; ++c)
        for (int r = 0; r < grid_rows(p); ++r)
            sq.push_back({grid_point(p, c, r), grid_point(p, c + 1, r), grid_point(p, c + 1, r + 1),
                          grid_point(p, c, r + 1)});
    return sq;
}

inline PolyhedralMap dual(const PolyhedralMap& m);

inline PolyhedralMap equivelar_series(const SeriesParams& p) {
    const int lo = p.surface == Surface::Torus ? 7 : 3;
    if (p.n < lo)
        throw ParamOutOfRange(family_name(p.family) + " on the " + surface_name(p.surface) + " needs n >= " +
                              std::to_string(lo));
    if (p.surface == Surface::Torus && (p.shift < 0 || p.shift >= p.n))
        throw ParamOutOfRange("shift must lie in [0, n)");
    std::vector<Face> faces;
    int nv = 0;
    if (p.family == Family::Hex && p.surface == Surface::Klein) {
        PolyhedralMap d = dual(equivelar_series(SeriesParams{Family::Tri, Surface::Klein, p.n, 3}));
        d.set_tags({grid_tag(p)});
        return d;
    }
    if (p.family == Family::Hex) {
        const int N = 2 * p.n;
        auto B = [&](int i) { return ((i % N) + N) % N; };
        auto T = [&](int i) { return B(i - 5); };
        for (int k = 0; k < p.n; ++k)
            faces.push_back({B(2 * k), B(2 * k + 1), B(2 * k + 2), T(2 * k + 2), T(2 * k + 1), T(2 * k)});
        nv = N;
    } else {
        for (const auto& s : grid_squares(p)) {
            if (p.family == Family::Quad) {
                faces.push_back({s[0], s[1], s[2], s[3]});
            } else {
                faces.push_back({s[0], s[1], s[2]});
                faces.push_back({s[0], s[2], s[3]});
            }
        }
        nv = p.surface == Surface::Torus ? 2 * p.n : 3 * p.n;
    }
    return PolyhedralMap::validate(std::move(faces), nv, {grid_tag(p)});
}

namespace detail {

inline std::vector<std::string> with_tag(const PolyhedralMap& m, const std::string& op) {
    auto t = m.tags();
    t.push_back("op " + op);
    return t;
}

// The grid parameters of a generator output; the faces must match.
inline SeriesParams require_grid(const PolyhedralMap& m, std::optional<Family> fam) {
    if (m.tags().size() != 1) throw NotGridMap("map carries no single grid tag");
    auto p = parse_grid_tag(m.tags()[0]);
    if (!p) throw NotGridMap("tag '" + m.tags()[0] + "' is not a grid tag");
    if (fam && p->family != *fam) throw NotGridMap("grid family is " + family_name(p->family));
    PolyhedralMap ref;
    try {
        ref = equivelar_series(*p);
    } catch (const Error& e) {
        throw NotGridMap(std::string("grid tag does not regenerate: ") + e.what());
    }
    if (!(ref == m)) throw NotGridMap("faces do not match the tagged grid");
    return *p;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// dual and truncation

inline PolyhedralMap dual(const PolyhedralMap& m) {
    std::vector<Face> faces;
    for (int v = 0; v < m.n_vertices(); ++v) faces.push_back(m.fan(v));
    return PolyhedralMap::validate(std::move(faces), m.n_faces(), detail::with_tag(m, "dual"));
}

inline PolyhedralMap truncate(const PolyhedralMap& m) {
    const int n = m.n_vertices();
    std::vector<int> offset(n + 1, 0);
    for (int v = 0; v < n; ++v) offset[v + 1] = offset[v] + m.degree(v);
    auto t = [&](int v, int w) {
        const auto& r = m.rotation(v);
        return offset[v] + static_cast<int>(std::find(r.begin(), r.end(), w) - r.begin());
    };
    std::vector<Face> faces;
    for (int v = 0; v < n; ++v) {
        Face f;
        for (int w : m.rotation(v)) f.push_back(t(v, w));
        faces.push_back(std::move(f));
    }
    for (const Face& fa : m.faces()) {
        const int k = static_cast<int>(fa.size());
        Face f;
        for (int i = 0; i < k; ++i) {
            int a = fa[i], b = fa[(i + 1) % k];
            f.push_back(t(a, b));
            f.push_back(t(b, a));
        }
        faces.push_back(std::move(f));
    }
    return PolyhedralMap::validate(std::move(faces), offset[n], detail::with_tag(m, "truncate"));
}

// ---------------------------------------------------------------------------
// quad diagonals

// Cuts every quad in `quads` by one diagonal so that each touched vertex
// reads `target`. Quads are ordered by face key and the first solution of
// a depth-first search with propagation is returned, so the choice vector
// is the lexicographically least one.
inline PolyhedralMap split_quads(const PolyhedralMap& m, std::vector<int> quads, const FaceSeqType& target,
                                 const std::string& op) {
    std::sort(quads.begin(), quads.end(),
              [&](int a, int b) { return canonical_face(m.face(a)) < canonical_face(m.face(b)); });
    const int Q = static_cast<int>(quads.size());
    std::vector<Face> key(Q);
    std::map<int, int> qi;
    for (int i = 0; i < Q; ++i) {
        key[i] = canonical_face(m.face(quads[i]));
        if (key[i].size() != 4) throw WrongType("face to split is not a quadrangle");
        qi[quads[i]] = i;
    }
    const int n = m.n_vertices();
    std::vector<std::vector<int>> at(n);  // quads (by index) at each vertex
    for (int i = 0; i < Q; ++i)
        for (int v : key[i]) at[v].push_back(i);

    std::vector<int> val(Q, -1);
    auto through = [&](int i, int v) {
        int pos = static_cast<int>(std::find(key[i].begin(), key[i].end(), v) - key[i].begin());
        return (pos & 1) == val[i];
    };
    auto diag_free = [&](int i, int d) {
        return m.edge_id(key[i][d], key[i][d + 2]) < 0;
    };
    auto vertex_ok = [&](int v) {
        std::vector<int> seq;
        for (int f : m.fan(v)) {
            auto it = qi.find(f);
            if (it == qi.end()) {
                seq.push_back(static_cast<int>(m.face(f).size()));
            } else {
                seq.push_back(3);
                if (through(it->second, v)) seq.push_back(3);
            }
        }
        return target.matches(seq);
    };

    std::vector<int> trail;
    // assign and propagate; false on conflict (assignments stay on trail)
    std::function<bool(int, int)> assign = [&](int i, int d) {
        if (!diag_free(i, d)) return false;
        val[i] = d;
        trail.push_back(i);
        for (int v : key[i]) {
            int open = -1, count = 0;
            for (int j : at[v])
                if (val[j] < 0) {
                    open = j;
                    ++count;
                }
            if (count == 0) {
                if (!vertex_ok(v)) return false;
            } else if (count == 1) {
                int good = -1, goods = 0;
                for (int e = 0; e < 2; ++e) {
                    if (!diag_free(open, e)) continue;
                    val[open] = e;
                    if (vertex_ok(v)) {
                        good = e;
                        ++goods;
                    }
                    val[open] = -1;
                }
                if (goods == 0) return false;
                if (goods == 1 && !assign(open, good)) return false;
            }
        }
        return true;
    };
    auto undo_to = [&](std::size_t mark) {
        while (trail.size() > mark) {
            val[trail.back()] = -1;
            trail.pop_back();
        }
    };
    std::function<bool()> search = [&]() {
        int i = static_cast<int>(std::find(val.begin(), val.end(), -1) - val.begin());
        if (i == Q) {
            for (int v = 0; v < n; ++v)
                if (!at[v].empty() && !vertex_ok(v)) return false;
            return true;
        }
        for (int d = 0; d < 2; ++d) {
            std::size_t mark = trail.size();
            if (assign(i, d) && search()) return true;
            undo_to(mark);
        }
        return false;
    };
    if (!search())
        throw NoConsistentDiagonalization("no choice of diagonals gives type " + target.str());

    std::vector<Face> faces;
    for (int f = 0; f < m.n_faces(); ++f) {
        auto it = qi.find(f);
        if (it == qi.end()) {
            faces.push_back(m.face(f));
            continue;
        }
        const Face& q = key[it->second];
        int d = val[it->second];
        faces.push_back({q[d], q[d + 1], q[d + 2]});
        faces.push_back({q[d], q[d + 2], q[(d + 3) % 4]});
    }
    PolyhedralMap out = PolyhedralMap::validate(std::move(faces), n, detail::with_tag(m, op));
    auto t = is_semi_equivelar(out);
    if (!t || !(*t == target))
        throw NoConsistentDiagonalization("diagonal choice does not give type " + target.str());
    return out;
}

// ---------------------------------------------------------------------------
// subdivision operators on (4^4) grids

inline PolyhedralMap subdivide_layer_diagonals(const PolyhedralMap& m) {
    SeriesParams p = detail::require_grid(m, Family::Quad);
    if (p.surface == Surface::Klein && p.n % 2 != 0)
        throw ParityError("Klein layer subdivision alternates columns and needs n even, got n = " + std::to_string(p.n));
    std::vector<Face> faces;
    for (int c = 0; c < p.n; ++c)
        for (int r = 0; r < grid_rows(p); ++r) {
            int a = grid_point(p, c, r), b = grid_point(p, c + 1, r), cc = grid_point(p, c + 1, r + 1),
                d = grid_point(p, c, r + 1);
            // torus: the top row, cut from (c+1,1) to (c,2); klein: every even column
            if (p.surface == Surface::Torus && r == 1) {
                faces.push_back({a, b, d});
                faces.push_back({b, cc, d});
            } else if (p.surface == Surface::Klein && c % 2 == 0) {
                faces.push_back({a, b, cc});
                faces.push_back({a, cc, d});
            } else {
                faces.push_back({a, b, cc, d});
            }
        }
    return PolyhedralMap::validate(std::move(faces), m.n_vertices(), detail::with_tag(m, "subdivide-layer-diagonals"));
}

// 2-colouring of the square adjacency graph; empty if it is not bipartite.
inline std::vector<int> checkerboard(const PolyhedralMap& m) {
    const int F = m.n_faces();
    std::vector<int> col(F, -1);
    col[0] = 0;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        const Face& fa = m.face(f);
        for (std::size_t i = 0; i < fa.size(); ++i) {
            auto [g1, g2] = m.edge_faces(m.edge_id(fa[i], fa[(i + 1) % fa.size()]));
            int g = g1 == f ? g2 : g1;
            if (col[g] < 0) {
                col[g] = 1 - col[f];
                stack.push_back(g);
            } else if (col[g] == col[f]) {
                return {};
            }
        }
    }
    return col;
}

inline PolyhedralMap subdivide_alternate_diagonals(const PolyhedralMap& m) {
    SeriesParams p = detail::require_grid(m, Family::Quad);
    auto col = checkerboard(m);
    if (col.empty())
        throw ParityError("squares of the " + surface_name(p.surface) + " grid with n = " + std::to_string(p.n) +
                          " admit no checkerboard colouring");
    std::vector<int> cut;
    for (int f = 0; f < m.n_faces(); ++f)
        if (col[f] == 0) cut.push_back(f);
    return split_quads(m, cut, FaceSeqType({3, 3, 4, 3, 4}), "subdivide-alternate-diagonals");
}

// Kagome-style (3,6,3,6) map on the torus grid: six vertices per column.
inline PolyhedralMap subdivide_to_3636(const PolyhedralMap& m) {
    SeriesParams p = detail::require_grid(m, Family::Quad);
    if (p.surface != Surface::Torus)
        throw ParityError("the (3,6,3,6) pattern pairs rows; the Klein grid has 3 rows");
    const int n = p.n, s = 2;
    auto col = [&](int k) { return ((k % n) + n) % n; };
    auto A = [&](int k) { return 6 * col(k) + 0; };
    auto B = [&](int k) { return 6 * col(k) + 1; };
    auto C = [&](int k) { return 6 * col(k) + 2; };
    auto D = [&](int k) { return 6 * col(k) + 3; };
    auto E = [&](int k) { return 6 * col(k) + 4; };
    auto F = [&](int k) { return 6 * col(k) + 5; };
    std::vector<Face> faces;
    for (int k = 0; k < n; ++k) {
        faces.push_back({A(k), D(k), B(k)});
        faces.push_back({B(k), F(k), E(k)});
        faces.push_back({F(k), C(k + 1), E(k + 1)});
        faces.push_back({C(k + 1), D(k - s), A(k + 1 - s)});
        faces.push_back({D(k), A(k + 1), B(k + 1), E(k + 1), F(k), B(k)});
        faces.push_back({E(k), F(k), C(k + 1), D(k - s), A(k - s), C(k)});
    }
    return PolyhedralMap::validate(std::move(faces), 6 * n, detail::with_tag(m, "subdivide-to-3636"));
}

// ---------------------------------------------------------------------------
// (3,12^2) -> (3,4,6,4) -> (3^4,6)

// Each big face of a truncated trivalent map is filled from inside: a quad
// on every triangle edge, a triangle on the far side of each quad, quads
// between consecutive triangles and a central polygon; the two regions on
// either side of an old big-big edge merge into one hexagon.
inline PolyhedralMap expand_truncation(const PolyhedralMap& m) {
    const int n = m.n_vertices();
    std::vector<Face> faces;
    std::map<std::pair<int, int>, int> inner;  // (big face, old vertex) -> new vertex
    int next = n;
    for (int f = 0; f < m.n_faces(); ++f) {
        const Face& fa = m.face(f);
        const int k2 = static_cast<int>(fa.size());
        if (k2 == 3) {
            faces.push_back(fa);
            continue;
        }
        auto tri_edge = [&](int i) {
            auto [g1, g2] = m.edge_faces(m.edge_id(fa[i], fa[(i + 1) % k2]));
            return m.face(g1 == f ? g2 : g1).size() == 3;
        };
        if (k2 % 2 != 0) throw WrongType("big face of odd length");
        int i0 = tri_edge(0) ? 0 : 1;
        const int k = k2 / 2;
        std::vector<int> x(k), y(k), xp(k), yp(k), z(k);
        for (int i = 0; i < k; ++i) {
            x[i] = fa[(i0 + 2 * i) % k2];
            y[i] = fa[(i0 + 2 * i + 1) % k2];
            if (!tri_edge((i0 + 2 * i) % k2) || tri_edge((i0 + 2 * i + 1) % k2))
                throw WrongType("triangle edges do not alternate around a big face");
            xp[i] = next++;
            yp[i] = next++;
            z[i] = next++;
            inner[{f, x[i]}] = xp[i];
            inner[{f, y[i]}] = yp[i];
        }
        for (int i = 0; i < k; ++i) {
            int j = (i + 1) % k;
            faces.push_back({x[i], y[i], yp[i], xp[i]});
            faces.push_back({xp[i], yp[i], z[i]});
            faces.push_back({yp[i], z[i], z[j], xp[j]});
        }
        faces.push_back(z);
    }
    for (int e = 0; e < m.n_edges(); ++e) {
        auto [f, g] = m.edge_faces(e);
        if (m.face(f).size() == 3 || m.face(g).size() == 3) continue;
        auto [u, w] = m.edges()[e];
        faces.push_back({u, inner.at({f, u}), inner.at({f, w}), w, inner.at({g, w}), inner.at({g, u})});
    }
    return PolyhedralMap::validate(std::move(faces), next, detail::with_tag(m, "build-3464"));
}

inline PolyhedralMap build_3464_from_312sq(const PolyhedralMap& m) {
    const auto& tags = m.tags();
    if (tags.size() != 2 || tags[1] != "op truncate")
        throw NotTaggedTruncation("expected tags 'grid 6^3 ...' and 'op truncate'");
    auto p = parse_grid_tag(tags[0]);
    if (!p || p->family != Family::Hex) throw NotTaggedTruncation("base grid is not of type 6^3");
    PolyhedralMap ref;
    try {
        ref = truncate(equivelar_series(*p));
    } catch (const Error& e) {
        throw NotTaggedTruncation(std::string("base grid does not regenerate: ") + e.what());
    }
    if (!(ref == m)) throw NotTaggedTruncation("faces do not match the truncated grid");
    return expand_truncation(m);
}

inline PolyhedralMap subdivide_3464_to_346(const PolyhedralMap& m) {
    auto t = is_semi_equivelar(m);
    if (!t || !(*t == FaceSeqType({3, 4, 6, 4}))) throw WrongType("input is not a (3,4,6,4) map");
    std::vector<int> quads;
    for (int f = 0; f < m.n_faces(); ++f)
        if (m.face(f).size() == 4) quads.push_back(f);
    return split_quads(m, quads, FaceSeqType({3, 3, 3, 3, 6}), "subdivide-3464-to-346");
}

// ---------------------------------------------------------------------------
// double cover

struct Cover {
    PolyhedralMap map;
    std::vector<int> projection;  // cover vertex -> base vertex
};

// Orientation double cover: vertex (v, s) is labelled v + n*s. Sheet 0 at
// v holds the lifts whose direction agrees with the fan order at v.
inline Cover double_cover(const PolyhedralMap& m) {
    if (is_orientable(m)) throw AlreadyOrientable();
    const int n = m.n_vertices();
    auto sigma = [&](int f, int v) {
        const Face& fa = m.face(f);
        const int k = static_cast<int>(fa.size());
        int p = m.position(f, v);
        int prev = fa[(p + k - 1) % k], nxt = fa[(p + 1) % k];
        const auto& fan = m.fan(v);
        const auto& rot = m.rotation(v);
        const int d = static_cast<int>(fan.size());
        for (int i = 0; i < d; ++i)
            if (fan[i] == f) return rot[i] == prev && rot[(i + 1) % d] == nxt ? 1 : -1;
        return 0;
    };
    std::vector<Face> faces;
    for (int f = 0; f < m.n_faces(); ++f)
        for (int eps : {1, -1}) {
            Face g;
            for (int v : m.face(f)) g.push_back(v + (eps * sigma(f, v) == 1 ? 0 : n));
            faces.push_back(std::move(g));
        }
    Cover c{PolyhedralMap::validate(std::move(faces), 2 * n, detail::with_tag(m, "double-cover")), {}};
    for (int v = 0; v < 2 * n; ++v) c.projection.push_back(v % n);
    return c;
}

inline std::vector<int> mod_projection(int cover_n, int base_n) {
    std::vector<int> p(cover_n);
    for (int v = 0; v < cover_n; ++v) p[v] = v % base_n;
    return p;
}

inline bool verify_covering(const PolyhedralMap& cover, const PolyhedralMap& base, const std::vector<int>& proj) {
    const int n = base.n_vertices();
    if (cover.n_vertices() != 2 * n || static_cast<int>(proj.size()) != cover.n_vertices()) return false;
    std::vector<int> hits(n, 0);
    for (int v : proj) {
        if (v < 0 || v >= n) return false;
        ++hits[v];
    }
    for (int h : hits)
        if (h != 2) return false;

    std::map<Face, int> base_face;
    for (int f = 0; f < base.n_faces(); ++f) base_face[canonical_face(base.face(f))] = f;
    std::vector<int> img(cover.n_faces(), -1), preimages(base.n_faces(), 0);
    for (int f = 0; f < cover.n_faces(); ++f) {
        Face g;
        for (int v : cover.face(f)) g.push_back(proj[v]);
        auto it = base_face.find(canonical_face(g));
        if (it == base_face.end()) return false;
        img[f] = it->second;
        ++preimages[it->second];
    }
    for (int c : preimages)
        if (c != 2) return false;

    // closed stars map isomorphically
    for (int u = 0; u < cover.n_vertices(); ++u) {
        int b = proj[u];
        if (cover.degree(u) != base.degree(b)) return false;
        std::vector<int> fs, bs = base.fan(b);
        for (int f : cover.fan(u)) fs.push_back(img[f]);
        std::vector<int> ns, bn = base.rotation(b);
        for (int w : cover.rotation(u)) ns.push_back(proj[w]);
        std::sort(fs.begin(), fs.end());
        std::sort(bs.begin(), bs.end());
        std::sort(ns.begin(), ns.end());
        std::sort(bn.begin(), bn.end());
        if (fs != bs || ns != bn) return false;
    }
    return true;
}

}  // namespace sem_atlas
