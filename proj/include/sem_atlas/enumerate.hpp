#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "isomorphism.hpp"
#include "polyhedral_map.hpp"

namespace sem_atlas {

// ---------------------------------------------------------------------------
// face counts and the vertex-count gate

struct FaceCountProfile {
    std::map<int, int> counts;  // face size -> number of faces
    int edges = 0;
};

struct Infeasible {
    std::string reason;
};

inline std::variant<FaceCountProfile, Infeasible> face_counts(const FaceSeqType& t, int n) {
    FaceCountProfile prof;
    for (int p : t.distinct_sizes()) {
        long num = static_cast<long>(n) * t.multiplicity(p);
        if (num % p != 0)
            return Infeasible{"count of " + std::to_string(p) + "-gons is " + std::to_string(num) + "/" +
                              std::to_string(p) + ", not an integer"};
        prof.counts[p] = static_cast<int>(num / p);
    }
    long twice_e = static_cast<long>(n) * static_cast<long>(t.length());
    if (twice_e % 2 != 0) return Infeasible{"edge count " + std::to_string(twice_e) + "/2 is not an integer"};
    prof.edges = static_cast<int>(twice_e / 2);
    return prof;
}

// Faces around vertex 0 with consecutive fresh labels: face i has size
// t[i] and shares the edge (0, x_{i+1}) with face i+1.
inline std::vector<Face> initial_star(const FaceSeqType& t) {
    const auto& s = t.sizes();
    const int L = static_cast<int>(s.size());
    std::vector<Face> faces;
    int next = 1;
    const int first = next;
    int boundary = next++;
    for (int i = 0; i < L; ++i) {
        Face f{0, boundary};
        for (int k = 0; k < s[i] - 3; ++k) f.push_back(next++);
        int nb = i + 1 == L ? first : next++;
        f.push_back(nb);
        faces.push_back(std::move(f));
        boundary = nb;
    }
    return faces;
}

// Vertices in the closed star of one vertex when nothing is identified
// beyond what the layout forces.
inline int closed_star_size(const FaceSeqType& t) {
    int mx = 0;
    for (const Face& f : initial_star(t))
        for (int v : f) mx = std::max(mx, v);
    return mx + 1;
}

inline std::vector<int> min_vertices_gate(const FaceSeqType& t, int n_max) {
    std::vector<int> out;
    const int lo = closed_star_size(t);
    for (int n = lo; n <= n_max; ++n)
        if (std::holds_alternative<FaceCountProfile>(face_counts(t, n))) out.push_back(n);
    return out;
}

inline std::string gate_reason(const FaceSeqType& t, int n_max) {
    const int lo = closed_star_size(t);
    if (lo > n_max)
        return "closed star of a vertex needs " + std::to_string(lo) + " vertices > " + std::to_string(n_max);
    return "no n in [" + std::to_string(lo) + ", " + std::to_string(n_max) + "] with integral face counts";
}

// ---------------------------------------------------------------------------
// search

struct EnumOptions {
    int jobs = 1;
    std::uint64_t node_budget = 0;  // 0 = unlimited
};

struct EnumResult {
    std::vector<PolyhedralMap> maps;  // sorted by canonical form
    std::vector<std::string> canonical;
    std::uint64_t nodes = 0;
    bool complete = true;
};

namespace detail {

class SemSearch {
public:
    static constexpr int kMaxVertices = 64;

    SemSearch(const FaceSeqType& t, int n) : t_(t.sizes()), n_(n), L_(static_cast<int>(t.length())) {
        if (n > kMaxVertices) throw Error("TooLarge", "enumeration supports at most 64 vertices");
        sizes_ = t.distinct_sizes();
        if (sizes_.size() > 7) throw Error("BadType", "too many distinct face sizes");
        sidx_.assign(sizes_.back() + 1, -1);
        for (std::size_t i = 0; i < sizes_.size(); ++i) sidx_[sizes_[i]] = static_cast<int>(i);
        mult_.resize(sizes_.size());
        for (std::size_t i = 0; i < sizes_.size(); ++i) mult_[i] = t.multiplicity(sizes_[i]);
        auto prof = std::get<FaceCountProfile>(face_counts(t, n));
        budget_.resize(sizes_.size());
        for (std::size_t i = 0; i < sizes_.size(); ++i) budget_[i] = prof.counts[sizes_[i]];

        // every contiguous run of the cyclic type, in both directions
        for (int dir = 0; dir < 2; ++dir)
            for (int start = 0; start < L_; ++start) {
                std::vector<int> seq;
                for (int len = 1; len <= L_; ++len) {
                    int pos = dir == 0 ? (start + len - 1) % L_ : ((start - len + 1) % L_ + L_) % L_;
                    seq.push_back(sidx_[t_[pos]]);
                    auto c = encode(seq);
                    if (len < L_) open_codes_.push_back(c);
                    else closed_codes_.push_back(c);
                }
            }
        for (auto* v : {&open_codes_, &closed_codes_}) {
            std::sort(v->begin(), v->end());
            v->erase(std::unique(v->begin(), v->end()), v->end());
        }

        cnt_.assign(n * n, 0);
        inc_.resize(n);
        vcount_.assign(n * sizes_.size(), 0);
        next_label_ = 0;
    }

    // Lays out the star of vertex 0. Returns false if it does not fit.
    bool start() {
        auto faces = initial_star(FaceSeqType(t_));
        int mx = 0;
        for (auto& f : faces)
            for (int v : f) mx = std::max(mx, v);
        if (mx + 1 > n_) return false;
        next_label_ = mx + 1;
        for (auto& f : faces) {
            if (budget_[sidx_[f.size()]] == 0) return false;
            add_face(f);
        }
        for (auto& f : faces)
            for (int v : f)
                if (!fan_ok(v)) return false;
        return true;
    }

    // Candidate faces for the next step, in branch order.
    std::vector<Face> next_moves() {
        std::vector<Face> out;
        collect_ = &out;
        step();
        collect_ = nullptr;
        return out;
    }

    void run_from(const Face& g) {
        int saved = next_label_;
        for (int v : g) next_label_ = std::max(next_label_, v + 1);
        add_face(g);
        step();
        remove_last_face();
        next_label_ = saved;
    }

    void run() { step(); }

    std::vector<std::vector<Face>> solutions;
    std::uint64_t nodes = 0;
    std::atomic<std::uint64_t>* shared_nodes = nullptr;
    std::uint64_t budget = 0;
    std::atomic<bool>* stop = nullptr;

private:
    struct Inc {
        int face, a, b;
    };
    struct Segment {
        int end_a, end_b;           // open-end neighbours (end_a at front of seq)
        std::vector<int> seq;       // size indices from end_a to end_b
        bool closed;
    };

    static std::uint64_t encode(const std::vector<int>& seq) {
        std::uint64_t c = seq.size();
        for (int x : seq) c = (c << 3) | static_cast<std::uint64_t>(x);
        return c;
    }
    static bool has(const std::vector<std::uint64_t>& v, std::uint64_t c) {
        return std::binary_search(v.begin(), v.end(), c);
    }

    void add_face(const Face& g) {
        const int k = static_cast<int>(g.size());
        const int f = static_cast<int>(faces_.size());
        std::uint64_t mask = 0;
        for (int v : g) mask |= std::uint64_t(1) << v;
        faces_.push_back(g);
        fmask_.push_back(mask);
        const int si = sidx_[k];
        --budget_[si];
        for (int i = 0; i < k; ++i) {
            int v = g[i], a = g[(i + k - 1) % k], b = g[(i + 1) % k];
            inc_[v].push_back({f, a, b});
            ++vcount_[v * sizes_.size() + si];
            ++cnt_[v * n_ + b];
            ++cnt_[b * n_ + v];
        }
    }

    void remove_last_face() {
        const Face g = faces_.back();
        const int k = static_cast<int>(g.size());
        const int si = sidx_[k];
        ++budget_[si];
        for (int i = 0; i < k; ++i) {
            int v = g[i], b = g[(i + 1) % k];
            inc_[v].pop_back();
            --vcount_[v * sizes_.size() + si];
            --cnt_[v * n_ + b];
            --cnt_[b * n_ + v];
        }
        faces_.pop_back();
        fmask_.pop_back();
    }

    // Splits the faces at v into maximal runs joined by shared edges.
    bool segments(int v, std::vector<Segment>& out) const {
        out.clear();
        const auto& I = inc_[v];
        const int k = static_cast<int>(I.size());
        // partner[i][0]: incidence sharing I[i].a, partner[i][1]: sharing I[i].b
        int partner[16][2];
        for (int i = 0; i < k; ++i) {
            partner[i][0] = partner[i][1] = -1;
            for (int j = 0; j < k; ++j) {
                if (j == i) continue;
                if (I[j].a == I[i].a || I[j].b == I[i].a) partner[i][0] = j;
                if (I[j].a == I[i].b || I[j].b == I[i].b) partner[i][1] = j;
            }
        }
        bool used[16] = {};
        auto walk = [&](int i0, int from_nb) {
            // from_nb is the neighbour on the open side of I[i0]
            Segment s;
            s.end_a = from_nb;
            s.closed = false;
            int i = i0, enter = from_nb;
            while (true) {
                used[i] = true;
                s.seq.push_back(sidx_[faces_[I[i].face].size()]);
                int exit = I[i].a == enter ? I[i].b : I[i].a;
                int side = I[i].a == exit ? 0 : 1;
                int j = partner[i][side];
                if (j < 0) {
                    s.end_b = exit;
                    break;
                }
                if (used[j]) {
                    s.closed = true;
                    s.end_b = exit;
                    break;
                }
                i = j;
                enter = exit;
            }
            return s;
        };
        for (int i = 0; i < k; ++i) {
            if (used[i]) continue;
            if (partner[i][0] < 0) out.push_back(walk(i, I[i].a));
            else if (partner[i][1] < 0) out.push_back(walk(i, I[i].b));
        }
        for (int i = 0; i < k; ++i)
            if (!used[i]) {
                Segment s = walk(i, I[i].a);
                if (!s.closed) return false;
                out.push_back(std::move(s));
            }
        return true;
    }

    bool fan_ok(int v) {
        const auto& I = inc_[v];
        const int k = static_cast<int>(I.size());
        if (k > L_) return false;
        for (std::size_t s = 0; s < sizes_.size(); ++s)
            if (vcount_[v * sizes_.size() + s] > mult_[s]) return false;
        if (!segments(v, seg_buf_)) return false;
        int total = 0, open = 0;
        for (const auto& s : seg_buf_) {
            if (s.closed) {
                if (seg_buf_.size() != 1 || k != L_) return false;
                return has(closed_codes_, encode(s.seq));
            }
            total += static_cast<int>(s.seq.size());
            ++open;
            if (!has(open_codes_, encode(s.seq))) return false;
        }
        return total + open <= L_;
    }

    bool over_budget() {
        ++nodes;
        if (shared_nodes) {
            auto c = shared_nodes->fetch_add(1, std::memory_order_relaxed) + 1;
            if (budget && c > budget) {
                if (stop) stop->store(true);
                return true;
            }
        } else if (budget && nodes > budget) {
            return true;
        }
        return stop && stop->load(std::memory_order_relaxed);
    }

    void step() {
        if (!collect_ && over_budget()) {
            if (stop) stop->store(true);
            return;
        }
        int v = -1;
        for (int x = 0; x < next_label_; ++x)
            if (static_cast<int>(inc_[x].size()) < L_) {
                v = x;
                break;
            }
        if (v < 0) {
            if (next_label_ != n_) return;
            for (int b : budget_)
                if (b != 0) return;
            if (collect_) return;
            solutions.push_back(faces_);
            return;
        }
        std::vector<Segment> segs;
        segments(v, segs);
        // extend at the open end with the least neighbour
        int a = -1;
        const Segment* sg = nullptr;
        bool front = true;
        for (const auto& s : segs) {
            if (a < 0 || s.end_a < a) {
                a = s.end_a;
                sg = &s;
                front = true;
            }
            if (s.end_b < a) {
                a = s.end_b;
                sg = &s;
                front = false;
            }
        }
        std::vector<int> seq = sg->seq;
        if (!front) std::reverse(seq.begin(), seq.end());
        const int other_end = front ? sg->end_b : sg->end_a;
        const bool v_closes = static_cast<int>(inc_[v].size()) == L_ - 1;

        // a closes too if it has L-1 faces: its last face must reach a'
        int a_forced = -1;
        if (static_cast<int>(inc_[a].size()) == L_ - 1) {
            std::vector<Segment> sa;
            segments(a, sa);
            if (sa.size() != 1 || sa[0].closed) return;
            a_forced = sa[0].end_a == v ? sa[0].end_b : sa[0].end_a;
        }

        for (std::size_t si = 0; si < sizes_.size(); ++si) {
            if (budget_[si] == 0) continue;
            if (vcount_[v * sizes_.size() + si] >= mult_[si]) continue;
            if (vcount_[a * sizes_.size() + si] >= mult_[si]) continue;
            std::vector<int> ext{static_cast<int>(si)};
            ext.insert(ext.end(), seq.begin(), seq.end());
            if (v_closes ? !has(closed_codes_, encode(ext)) : !has(open_codes_, encode(ext))) continue;
            const int p = sizes_[si];
            Face g(p);
            g[0] = a;
            g[1] = v;
            std::uint64_t gmask = (std::uint64_t(1) << a) | (std::uint64_t(1) << v);
            choose(g, 2, gmask, v_closes ? other_end : -1, a_forced);
            if (stop && stop->load(std::memory_order_relaxed)) return;
        }
    }

    bool adjacent_in(int h, int x, int y) const {
        const Face& f = faces_[h];
        const int k = static_cast<int>(f.size());
        for (int i = 0; i < k; ++i) {
            int u = f[i], w = f[(i + 1) % k];
            if ((u == x && w == y) || (u == y && w == x)) return true;
        }
        return false;
    }

    bool vertex_fits(const Face& g, int j, std::uint64_t gmask, int w) const {
        const int p = static_cast<int>(g.size());
        const int prev = g[j - 1];
        if (gmask >> w & 1) return false;
        if (static_cast<int>(inc_[w].size()) >= L_) return false;
        if (vcount_[w * sizes_.size() + sidx_[p]] >= mult_[sidx_[p]]) return false;
        if (cnt_[prev * n_ + w] >= 2) return false;
        const bool last = j == p - 1;
        if (last && cnt_[w * n_ + g[0]] >= 2) return false;
        const std::uint64_t m2 = gmask | (std::uint64_t(1) << w);
        for (const Inc& in : inc_[w]) {
            std::uint64_t common = m2 & fmask_[in.face];
            int c = std::popcount(common);
            if (c >= 3) return false;
            if (c == 2) {
                int y = std::countr_zero(common & ~(std::uint64_t(1) << w));
                bool ok = (y == prev && adjacent_in(in.face, prev, w)) ||
                          (last && y == g[0] && adjacent_in(in.face, g[0], w));
                if (!ok) return false;
            }
        }
        return true;
    }

    void choose(Face& g, int j, std::uint64_t gmask, int forced_first, int forced_last) {
        const int p = static_cast<int>(g.size());
        if (j == p) {
            commit(g);
            return;
        }
        int forced = -1;
        if (j == 2 && forced_first >= 0) forced = forced_first;
        if (j == p - 1 && forced_last >= 0) {
            if (forced >= 0 && forced != forced_last) return;
            forced = forced_last;
        }
        if (forced >= 0) {
            if (forced < next_label_ && vertex_fits(g, j, gmask, forced)) {
                g[j] = forced;
                choose(g, j + 1, gmask | (std::uint64_t(1) << forced), forced_first, forced_last);
            }
            return;
        }
        // a vertex that must close with a later face cannot appear early
        for (int w = 0; w < next_label_; ++w) {
            if (w == forced_last) continue;
            if (!vertex_fits(g, j, gmask, w)) continue;
            g[j] = w;
            choose(g, j + 1, gmask | (std::uint64_t(1) << w), forced_first, forced_last);
            if (stop && stop->load(std::memory_order_relaxed)) return;
        }
        if (next_label_ < n_) {
            int w = next_label_++;
            g[j] = w;
            choose(g, j + 1, gmask | (std::uint64_t(1) << w), forced_first, forced_last);
            --next_label_;
        }
    }

    void commit(const Face& g) {
        add_face(g);
        bool ok = true;
        for (int v : g)
            if (!fan_ok(v)) {
                ok = false;
                break;
            }
        if (ok) {
            if (collect_)
                collect_->push_back(g);
            else
                step();
        }
        remove_last_face();
    }

    std::vector<int> t_;
    int n_, L_;
    std::vector<int> sizes_, sidx_, mult_, budget_;
    std::vector<std::uint64_t> open_codes_, closed_codes_;
    std::vector<Face> faces_;
    std::vector<std::uint64_t> fmask_;
    std::vector<std::vector<Inc>> inc_;
    std::vector<std::uint8_t> cnt_;
    std::vector<int> vcount_;
    int next_label_;
    std::vector<Segment> seg_buf_;
    std::vector<Face>* collect_ = nullptr;
};

}  // namespace detail

// Every SEM of type t on n vertices, one per isomorphism class.
inline EnumResult enumerate_sems(const FaceSeqType& t, int n, const EnumOptions& opt = {}) {
    EnumResult res;
    if (!std::holds_alternative<FaceCountProfile>(face_counts(t, n))) return res;
    detail::SemSearch root(t, n);
    if (!root.start()) return res;

    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stop{false};
    std::vector<Face> moves = root.next_moves();
    std::vector<std::vector<std::vector<Face>>> found(moves.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        detail::SemSearch s = root;
        s.shared_nodes = &nodes;
        s.budget = opt.node_budget;
        s.stop = &stop;
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= moves.size() || stop.load()) break;
            s.solutions.clear();
            s.run_from(moves[i]);
            found[i] = std::move(s.solutions);
        }
    };
    const int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    res.nodes = nodes.load();
    res.complete = !stop.load();

    std::map<std::string, PolyhedralMap> uniq;
    for (auto& part : found)
        for (auto& faces : part) {
            PolyhedralMap m = PolyhedralMap::validate(faces, n);
            auto cf = canonical_form(m);
            if (!uniq.count(cf.bytes)) uniq.emplace(cf.bytes, permute(m, cf.relabeling));
        }
    for (auto& [bytes, m] : uniq) {
        res.canonical.push_back(bytes);
        res.maps.push_back(std::move(m));
    }
    return res;
}

// ---------------------------------------------------------------------------
// classification

// The eight face-sequence types of semi-equivelar maps with chi = 0.
inline std::vector<FaceSeqType> flat_types() {
    return {FaceSeqType({3, 3, 3, 4, 4}), FaceSeqType({3, 3, 4, 3, 4}), FaceSeqType({3, 4, 6, 4}),
            FaceSeqType({4, 8, 8}),       FaceSeqType({3, 3, 3, 3, 6}), FaceSeqType({3, 6, 3, 6}),
            FaceSeqType({3, 12, 12}),     FaceSeqType({4, 6, 12})};
}

struct TypeScope {
    FaceSeqType type;
    int n_max;
};

// Scope of the reference classification table: the two types built from
// three triangles and two quadrangles are listed up to 15 vertices, the
// rest up to n_max.
inline std::vector<TypeScope> table_scope(int n_max) {
    const FaceSeqType a({3, 3, 3, 4, 4}), b({3, 3, 4, 3, 4});
    std::vector<TypeScope> out;
    for (const auto& t : flat_types()) out.push_back({t, t == a || t == b ? std::min(n_max, 15) : n_max});
    return out;
}

struct ClassRow {
    FaceSeqType type;
    int n = 0;                // 0 for a gated type
    std::string status;       // searched | infeasible | incomplete
    std::string reason;
    std::vector<PolyhedralMap> maps;
    std::vector<std::string> names;
    int orientable = 0;
    int non_orientable = 0;
    int total() const { return static_cast<int>(maps.size()); }
};

inline std::string map_name(bool orientable, int index, int n, const FaceSeqType& t) {
    return std::string(orientable ? "T" : "K") + "_" + std::to_string(index) + "_" + std::to_string(n) + "__" + t.slug();
}

inline std::vector<ClassRow> classify_all(const std::vector<TypeScope>& scope, const EnumOptions& opt = {}) {
    std::vector<ClassRow> rows;
    for (const auto& sc : scope) {
        auto ns = min_vertices_gate(sc.type, sc.n_max);
        if (ns.empty()) {
            ClassRow r;
            r.type = sc.type;
            r.status = "infeasible";
            r.reason = gate_reason(sc.type, sc.n_max);
            rows.push_back(std::move(r));
            continue;
        }
        for (int n : ns) {
            ClassRow r;
            r.type = sc.type;
            r.n = n;
            auto res = enumerate_sems(sc.type, n, opt);
            r.status = res.complete ? "searched" : "incomplete";
            if (!res.complete) r.reason = "node budget exhausted after " + std::to_string(res.nodes) + " nodes";
            int ti = 0, ki = 0;
            for (auto& m : res.maps) {
                bool o = is_orientable(m);
                (o ? r.orientable : r.non_orientable)++;
                r.names.push_back(map_name(o, o ? ++ti : ++ki, n, sc.type));
                r.maps.push_back(std::move(m));
            }
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

inline std::vector<ClassRow> classify_all(int n_max, const std::vector<FaceSeqType>& types, const EnumOptions& opt = {}) {
    std::vector<TypeScope> scope;
    for (const auto& t : types) scope.push_back({t, n_max});
    return classify_all(scope, opt);
}

}  // namespace sem_atlas
