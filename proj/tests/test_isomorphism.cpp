#include <gtest/gtest.h>

#include <random>
#include <set>

#include "test_util.hpp"

using namespace sem_atlas;
using namespace sem_atlas::test;

namespace {

std::vector<std::pair<std::string, PolyhedralMap>> small_fixtures(int max_n) {
    std::vector<std::pair<std::string, PolyhedralMap>> out;
    for (const auto& e : fixture_catalog())
        if (e.n <= max_n) out.emplace_back(e.id, load_fixture(e.id));
    return out;
}

}  // namespace

TEST(FindIsomorphism, RandomRelabeling) {
    std::mt19937 rng(11);
    auto m = load_fixture("T_1_10__3-3-3-4-4");
    for (int k = 0; k < 20; ++k) {
        auto perm = random_perm(m.n_vertices(), rng);
        auto p = permute(m, perm);
        auto iso = find_isomorphism(m, p);
        ASSERT_TRUE(iso.has_value());
        EXPECT_TRUE(verify_isomorphism(m, p, iso->mapping));
    }
}

TEST(FindIsomorphism, TorusVersusKlein) {
    EXPECT_FALSE(find_isomorphism(load_fixture("T_1_10__3-3-3-4-4"), load_fixture("K_1_10__3-3-3-4-4")));
}

TEST(FindIsomorphism, HonorsPin) {
    auto m = load_fixture("T_1_10__3-3-3-4-4");
    for (int v = 0; v < m.n_vertices(); ++v) {
        auto iso = find_isomorphism(m, m, std::pair<int, int>{3, v});
        ASSERT_TRUE(iso.has_value());
        EXPECT_EQ(iso->mapping[3], v);
    }
    // vertex 0 has degree 3, vertex 2 has degree 4
    auto s = stellated_tetrahedron();
    EXPECT_FALSE(find_isomorphism(s, s, std::pair<int, int>{0, 2}));
}

namespace {

// Faces around i from a 7-entry link in the (3^2,4,3,4) notation:
// triangles [i,l1,l2], [i,l4,l5], [i,l1,l7]; quads [i,l2,l3,l4], [i,l5,l6,l7].
std::vector<Face> link_faces_33434(int i, const std::vector<int>& l) {
    return {{i, l[0], l[1]}, {i, l[3], l[4]}, {i, l[0], l[6]}, {i, l[1], l[2], l[3]}, {i, l[4], l[5], l[6]}};
}

}  // namespace

TEST(FindIsomorphism, KleinLinksUnderIdentity) {
    auto fx = load_fixture("K_1_12__3-3-4-3-4");
    for (auto [i, l] : std::vector<std::pair<int, std::vector<int>>>{{0, {1, 2, 3, 4, 5, 6, 7}},
                                                                     {2, {8, 3, 4, 0, 1, 6, 9}}})
        for (const Face& f : link_faces_33434(i, l)) EXPECT_TRUE(has_face(fx, f)) << "link of " << i;
}

TEST(FindIsomorphism, KleinLinksUnderRelabeling) {
    auto fx = load_fixture("K_1_12__3-3-4-3-4");
    const std::vector<int> to_v{8, 2, 3, 10, 5, 4, 11, 9, 0, 6, 7, 1};
    for (auto [i, l] : std::vector<std::pair<int, std::vector<int>>>{
             {0, {1, 2, 3, 4, 5, 6, 7}}, {2, {6, 3, 4, 0, 1, 8, 5}}, {5, {4, 0, 7, 6, 2, 1, 8}}})
        for (const Face& f : link_faces_33434(i, l)) {
            Face g;
            for (int v : f) g.push_back(to_v[v]);
            EXPECT_TRUE(has_face(fx, g)) << "link of " << i;
        }
}

TEST(FindIsomorphism, EnumeratedKleinMatchesFixture) {
    auto res = enumerate_sems(FaceSeqType({3, 3, 4, 3, 4}), 12);
    ASSERT_EQ(res.maps.size(), 1u);
    auto fx = load_fixture("K_1_12__3-3-4-3-4");
    auto iso = find_isomorphism(res.maps[0], fx);
    ASSERT_TRUE(iso.has_value());
    EXPECT_TRUE(verify_isomorphism(res.maps[0], fx, iso->mapping));
}

TEST(FindIsomorphism, SymmetricOnFixturePairs) {
    auto fx = small_fixtures(20);
    for (std::size_t i = 0; i < fx.size(); ++i)
        for (std::size_t j = 0; j < fx.size(); ++j) {
            bool ab = find_isomorphism(fx[i].second, fx[j].second).has_value();
            bool ba = find_isomorphism(fx[j].second, fx[i].second).has_value();
            EXPECT_EQ(ab, ba) << fx[i].first << " " << fx[j].first;
            if (i == j) EXPECT_TRUE(ab) << fx[i].first;
        }
}

TEST(CanonicalForm, InvariantUnderRelabeling) {
    std::mt19937 rng(3);
    for (const auto& [id, m] : small_fixtures(20)) {
        auto c = canonical_form(m);
        for (int k = 0; k < 5; ++k)
            EXPECT_EQ(canonical_form(permute(m, random_perm(m.n_vertices(), rng))).bytes, c.bytes) << id;
        EXPECT_EQ(permute(m, c.relabeling), map_from_raw(parse_semmap(c.bytes))) << id;
    }
}

TEST(CanonicalForm, TetrahedronStable) {
    std::mt19937 rng(5);
    auto t = tetrahedron();
    auto c = canonical_form(t).bytes;
    for (int k = 0; k < 100; ++k) EXPECT_EQ(canonical_form(permute(t, random_perm(4, rng))).bytes, c);
}

TEST(CanonicalForm, EqualityMatchesIsomorphism) {
    auto fx = small_fixtures(14);
    ASSERT_EQ(fx.size(), 11u);
    // relabeled copies give positive pairs across distinct labelings
    std::mt19937 rng(9);
    for (std::size_t i = 0; i < 11; ++i)
        fx.emplace_back(fx[i].first + "*", permute(fx[i].second, random_perm(fx[i].second.n_vertices(), rng)));
    for (std::size_t i = 0; i < fx.size(); ++i)
        for (std::size_t j = 0; j < fx.size(); ++j) {
            bool same = canonical_form(fx[i].second).bytes == canonical_form(fx[j].second).bytes;
            bool iso = find_isomorphism(fx[i].second, fx[j].second).has_value();
            EXPECT_EQ(same, iso) << fx[i].first << " " << fx[j].first;
        }
}

TEST(CanonicalForm, FifteenVertexFixturesDistinct) {
    std::set<std::string> forms;
    for (const auto& id : fifteen_vertex_ids()) forms.insert(canonical_form(load_fixture(id)).bytes);
    EXPECT_EQ(forms.size(), 11u);
}
