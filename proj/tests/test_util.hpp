#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "sem_atlas/sem_atlas.hpp"

namespace sem_atlas::test {

inline PolyhedralMap tetrahedron() {
    return PolyhedralMap::validate({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, 4);
}

// Tetrahedron with face 123 replaced by three triangles around apex 4.
inline PolyhedralMap stellated_tetrahedron() {
    return PolyhedralMap::validate({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 4}, {2, 3, 4}, {1, 3, 4}}, 5);
}

inline std::vector<int> random_perm(int n, std::mt19937& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

inline std::vector<std::string> fifteen_vertex_ids() {
    return {"T_1_10__3-3-3-4-4", "T_1_12__3-3-3-4-4", "T_2_12__3-3-3-4-4", "T_3_12__3-3-3-4-4",
            "T_1_14__3-3-3-4-4", "T_2_14__3-3-3-4-4", "K_1_10__3-3-3-4-4", "K_1_12__3-3-3-4-4",
            "K_2_12__3-3-3-4-4", "K_1_14__3-3-3-4-4", "K_1_12__3-3-4-3-4"};
}

inline std::vector<std::string> large_face_ids() {
    return {"T_1_18__3-4-6-4", "K_1_18__3-4-6-4", "T_1_20__4-8-8", "T_1_18__3-3-3-3-6"};
}

// Faces around vertex i from a 7-entry link in the (3^3,4^2) notation:
// quads [i,l1,l2,l3], [i,l6,l7,l1]; triangles [i,l3,l4], [i,l4,l5], [i,l5,l6].
inline std::vector<Face> link_faces_33344(int i, const std::vector<int>& l) {
    return {{i, l[0], l[1], l[2]}, {i, l[2], l[3]}, {i, l[3], l[4]}, {i, l[4], l[5]}, {i, l[5], l[6], l[0]}};
}

inline bool has_face(const PolyhedralMap& m, const Face& f) {
    auto key = canonical_face(f);
    for (const Face& g : m.faces())
        if (canonical_face(g) == key) return true;
    return false;
}

}  // namespace sem_atlas::test
