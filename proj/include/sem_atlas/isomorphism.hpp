#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "polyhedral_map.hpp"
#include "semmap_io.hpp"

namespace sem_atlas {

// Flag (f, i, s): vertex face[f][i], the edge towards face[f][i+1] (s=0)
// or face[f][i-1] (s=1), and face f. r0 moves the vertex along the edge,
// r1 swaps the edge inside f, r2 crosses the edge into the other face.
class FlagSystem {
public:
    explicit FlagSystem(const PolyhedralMap& m) : m_(&m) {
        const int F = m.n_faces();
        offset_.resize(F + 1, 0);
        for (int f = 0; f < F; ++f) offset_[f + 1] = offset_[f] + 2 * static_cast<int>(m.face(f).size());
        const int N = offset_[F];
        face_.resize(N);
        pos_.resize(N);
        vert_.resize(N);
        for (auto& r : r_) r.resize(N);
        for (int f = 0; f < F; ++f) {
            const Face& fa = m.face(f);
            const int k = static_cast<int>(fa.size());
            for (int i = 0; i < k; ++i)
                for (int s = 0; s < 2; ++s) {
                    int x = id(f, i, s);
                    face_[x] = f;
                    pos_[x] = i;
                    vert_[x] = fa[i];
                    r_[0][x] = s == 0 ? id(f, (i + 1) % k, 1) : id(f, (i + k - 1) % k, 0);
                    r_[1][x] = id(f, i, 1 - s);
                }
        }
        for (int x = 0; x < N; ++x) {
            int f = face_[x], i = pos_[x];
            const Face& fa = m.face(f);
            const int k = static_cast<int>(fa.size());
            int s = (x - offset_[f]) & 1;
            int v = fa[i], w = s == 0 ? fa[(i + 1) % k] : fa[(i + k - 1) % k];
            auto [g1, g2] = m.edge_faces(m.edge_id(v, w));
            int g = g1 == f ? g2 : g1;
            const Face& ga = m.face(g);
            const int kg = static_cast<int>(ga.size());
            int j = m.position(g, v);
            int t = ga[(j + 1) % kg] == w ? 0 : 1;
            r_[2][x] = id(g, j, t);
        }
    }

    int size() const { return static_cast<int>(vert_.size()); }
    int id(int f, int i, int s) const { return offset_[f] + 2 * i + s; }
    int vertex(int x) const { return vert_[x]; }
    int face(int x) const { return face_[x]; }
    int r(int k, int x) const { return r_[k][x]; }
    int first_flag_at(int v) const {
        for (int x = 0; x < size(); ++x)
            if (vert_[x] == v) return x;
        return -1;
    }

private:
    const PolyhedralMap* m_;
    std::vector<int> offset_, face_, pos_, vert_;
    std::array<std::vector<int>, 3> r_;
};

struct Isomorphism {
    std::vector<int> mapping;  // vertex of a -> vertex of b
};

// Checks that mapping carries the faces of a exactly onto the faces of b.
inline bool verify_isomorphism(const PolyhedralMap& a, const PolyhedralMap& b, const std::vector<int>& mapping) {
    if (a.n_vertices() != b.n_vertices() || a.n_faces() != b.n_faces()) return false;
    if (static_cast<int>(mapping.size()) != a.n_vertices()) return false;
    std::vector<char> hit(b.n_vertices(), 0);
    for (int v : mapping) {
        if (v < 0 || v >= b.n_vertices() || hit[v]) return false;
        hit[v] = 1;
    }
    std::vector<Face> img;
    img.reserve(a.faces().size());
    for (const Face& f : a.faces()) {
        Face g;
        for (int v : f) g.push_back(mapping[v]);
        img.push_back(canonical_face(g));
    }
    std::sort(img.begin(), img.end());
    return img == b.canonical_faces();
}

namespace detail {

// Extend x0 -> y0 to a flag isomorphism; returns the vertex map or empty.
inline std::vector<int> extend_flag_map(const FlagSystem& A, const FlagSystem& B, int x0, int y0, int n) {
    std::vector<int> phi(A.size(), -1);
    std::vector<int> queue{x0};
    phi[x0] = y0;
    for (std::size_t q = 0; q < queue.size(); ++q) {
        int x = queue[q];
        for (int k = 0; k < 3; ++k) {
            int xa = A.r(k, x), yb = B.r(k, phi[x]);
            if (phi[xa] < 0) {
                phi[xa] = yb;
                queue.push_back(xa);
            } else if (phi[xa] != yb) {
                return {};
            }
        }
    }
    if (static_cast<int>(queue.size()) != A.size()) return {};
    std::vector<int> vmap(n, -1);
    for (int x = 0; x < A.size(); ++x) {
        int& t = vmap[A.vertex(x)];
        int w = B.vertex(phi[x]);
        if (t < 0)
            t = w;
        else if (t != w)
            return {};
    }
    return vmap;
}

inline std::vector<int> sorted_degrees(const PolyhedralMap& m) {
    std::vector<int> d(m.n_vertices());
    for (int v = 0; v < m.n_vertices(); ++v) d[v] = m.degree(v);
    std::sort(d.begin(), d.end());
    return d;
}

inline std::vector<int> sorted_face_sizes(const PolyhedralMap& m) {
    std::vector<int> d;
    for (const Face& f : m.faces()) d.push_back(static_cast<int>(f.size()));
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace detail

// Backtracking over the image of one fixed flag of a; each choice
// propagates deterministically. Orientation-reversing matches are found
// because both sides of every flag of b are tried.
inline std::optional<Isomorphism> find_isomorphism(const PolyhedralMap& a, const PolyhedralMap& b,
                                                   std::optional<std::pair<int, int>> pin = std::nullopt) {
    if (a.n_vertices() != b.n_vertices() || a.n_edges() != b.n_edges() || a.n_faces() != b.n_faces())
        return std::nullopt;
    if (detail::sorted_degrees(a) != detail::sorted_degrees(b)) return std::nullopt;
    if (detail::sorted_face_sizes(a) != detail::sorted_face_sizes(b)) return std::nullopt;
    FlagSystem A(a), B(b);
    int x0 = 0;
    if (pin) {
        if (pin->first < 0 || pin->first >= a.n_vertices() || pin->second < 0 || pin->second >= b.n_vertices())
            return std::nullopt;
        x0 = A.first_flag_at(pin->first);
    }
    const int deg0 = a.degree(A.vertex(x0));
    const std::size_t fs0 = a.face(A.face(x0)).size();
    for (int y = 0; y < B.size(); ++y) {
        if (pin && B.vertex(y) != pin->second) continue;
        if (b.degree(B.vertex(y)) != deg0 || b.face(B.face(y)).size() != fs0) continue;
        auto vmap = detail::extend_flag_map(A, B, x0, y, a.n_vertices());
        if (vmap.empty()) continue;
        if (verify_isomorphism(a, b, vmap)) return Isomorphism{std::move(vmap)};
    }
    return std::nullopt;
}

struct CanonicalForm {
    std::string bytes;           // canonical semmap text
    std::vector<int> relabeling; // old label -> canonical label
};

// BFS relabeling from every starting flag; the lexicographically least
// face list wins. Vertices are numbered in order of first visit.
inline CanonicalForm canonical_form(const PolyhedralMap& m) {
    FlagSystem A(m);
    const int n = m.n_vertices();
    std::vector<Face> best;
    std::vector<int> best_label;
    std::vector<int> label(n), seen(A.size());
    std::vector<int> queue;
    queue.reserve(A.size());
    std::vector<Face> cur(m.n_faces());
    for (int x0 = 0; x0 < A.size(); ++x0) {
        std::fill(label.begin(), label.end(), -1);
        std::fill(seen.begin(), seen.end(), 0);
        queue.clear();
        queue.push_back(x0);
        seen[x0] = 1;
        int next = 0;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            int x = queue[q];
            if (label[A.vertex(x)] < 0) label[A.vertex(x)] = next++;
            for (int k = 0; k < 3; ++k) {
                int y = A.r(k, x);
                if (!seen[y]) {
                    seen[y] = 1;
                    queue.push_back(y);
                }
            }
        }
        for (int f = 0; f < m.n_faces(); ++f) {
            Face g;
            g.reserve(m.face(f).size());
            for (int v : m.face(f)) g.push_back(label[v]);
            cur[f] = canonical_face(g);
        }
        std::sort(cur.begin(), cur.end());
        if (best.empty() || cur < best) {
            best = cur;
            best_label = label;
        }
    }
    PolyhedralMap relabeled = permute(m, best_label);
    relabeled.set_tags({});
    return CanonicalForm{serialize(relabeled), best_label};
}

inline bool is_vertex_transitive(const PolyhedralMap& m) {
    for (int v = 1; v < m.n_vertices(); ++v)
        if (!find_isomorphism(m, m, std::pair<int, int>{0, v})) return false;
    return true;
}

}  // namespace sem_atlas
