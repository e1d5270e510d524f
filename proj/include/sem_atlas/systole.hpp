#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

#include "polyhedral_map.hpp"

namespace sem_atlas {

class NotFlat : public Error {
public:
    explicit NotFlat(long chi) : Error("NotFlat", "homological systole needs chi = 0, got " + std::to_string(chi)) {}
};

// GF(2) row space with incremental reduction.
class Gf2Span {
public:
    explicit Gf2Span(int bits) : words_((bits + 63) / 64) {}

    using Vec = std::vector<std::uint64_t>;

    Vec zero() const { return Vec(words_, 0); }

    void reduce(Vec& v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            int p = pivots_[i];
            if (v[p >> 6] >> (p & 63) & 1)
                for (int w = 0; w < words_; ++w) v[w] ^= rows_[i][w];
        }
    }

    bool contains(Vec v) const {
        reduce(v);
        for (auto w : v)
            if (w) return false;
        return true;
    }

    bool add(Vec v) {
        reduce(v);
        for (int w = 0; w < words_; ++w)
            if (v[w]) {
                int p = w * 64 + std::countr_zero(v[w]);
                // keep rows fully reduced against the new pivot
                for (auto& r : rows_)
                    if (r[p >> 6] >> (p & 63) & 1)
                        for (int k = 0; k < words_; ++k) r[k] ^= v[k];
                rows_.push_back(std::move(v));
                pivots_.push_back(p);
                return true;
            }
        return false;
    }

    int rank() const { return static_cast<int>(rows_.size()); }

private:
    int words_;
    std::vector<Vec> rows_;
    std::vector<int> pivots_;
};

inline Gf2Span face_boundary_span(const PolyhedralMap& m) {
    Gf2Span span(m.n_edges());
    for (const Face& f : m.faces()) {
        auto v = span.zero();
        for (std::size_t i = 0; i < f.size(); ++i) {
            int e = m.edge_id(f[i], f[(i + 1) % f.size()]);
            v[e >> 6] ^= std::uint64_t(1) << (e & 63);
        }
        span.add(std::move(v));
    }
    return span;
}

// Shortest cycle of the 1-skeleton that is not a GF(2) sum of face
// boundaries. Candidates are the fundamental cycles of BFS trees from
// every root.
inline int homological_systole(const PolyhedralMap& m) {
    long chi = euler_characteristic(m);
    if (chi != 0) throw NotFlat(chi);
    const int n = m.n_vertices();
    const Gf2Span span = face_boundary_span(m);
    const auto adj = m.adjacency_lists();
    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(n), parent_edge(n), parent(n);
    for (int r = 0; r < n; ++r) {
        std::fill(dist.begin(), dist.end(), -1);
        std::vector<int> queue{r};
        dist[r] = 0;
        parent[r] = -1;
        parent_edge[r] = -1;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            int u = queue[q];
            for (int w : adj[u])
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    parent_edge[w] = m.edge_id(u, w);
                    queue.push_back(w);
                }
        }
        for (int e = 0; e < m.n_edges(); ++e) {
            auto [u, v] = m.edges()[e];
            if (parent_edge[u] == e || parent_edge[v] == e) continue;
            if (dist[u] + dist[v] + 1 >= best) continue;
            auto vec = span.zero();
            auto flip = [&](int id) { vec[id >> 6] ^= std::uint64_t(1) << (id & 63); };
            flip(e);
            for (int x = u; parent[x] >= 0; x = parent[x]) flip(parent_edge[x]);
            for (int x = v; parent[x] >= 0; x = parent[x]) flip(parent_edge[x]);
            int w = 0;
            for (auto word : vec) w += std::popcount(word);
            if (w >= best || w == 0) continue;
            if (!span.contains(vec)) best = w;
        }
    }
    return best;
}

}  // namespace sem_atlas
