#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "malformed_corpus.hpp"
#include "test_util.hpp"

using namespace sem_atlas;
using namespace sem_atlas::test;

namespace {

// Independent orientability oracle: try every orientation of every face and
// accept if some assignment traverses each edge once in each direction.
bool brute_orientable(const PolyhedralMap& m) {
    const int F = m.n_faces();
    for (std::uint32_t mask = 0; mask < (1u << (F - 1)); ++mask) {
        std::map<std::pair<int, int>, int> dir;
        bool ok = true;
        for (int f = 0; f < F && ok; ++f) {
            Face fa = m.face(f);
            if (mask >> f & 1) std::reverse(fa.begin(), fa.end());
            for (std::size_t i = 0; i < fa.size() && ok; ++i)
                if (++dir[{fa[i], fa[(i + 1) % fa.size()]}] > 1) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

long brute_chi(const PolyhedralMap& m) {
    std::set<std::pair<int, int>> edges;
    std::set<int> verts;
    for (const Face& f : m.faces())
        for (std::size_t i = 0; i < f.size(); ++i) {
            int a = f[i], b = f[(i + 1) % f.size()];
            edges.insert({std::min(a, b), std::max(a, b)});
            verts.insert(a);
        }
    return static_cast<long>(verts.size()) - static_cast<long>(edges.size()) + m.n_faces();
}

}  // namespace

TEST(Validate, TetrahedronIsAMap) {
    auto m = tetrahedron();
    EXPECT_EQ(m.n_vertices(), 4);
    EXPECT_EQ(m.n_edges(), 6);
    EXPECT_EQ(m.n_faces(), 4);
}

TEST(Validate, PillowFailsIntersection) {
    try {
        PolyhedralMap::validate({{0, 1, 2}, {0, 2, 1}}, 3);
        FAIL() << "pillow accepted";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.diagnostic().kind, Violation::FaceIntersectionViolation);
        EXPECT_EQ(e.diagnostic().message(), "FaceIntersectionViolation faces 0,1");
        EXPECT_EQ(e.code(), "FaceIntersectionViolation");
    }
}

TEST(Validate, T110Counts) {
    auto m = load_fixture("T_1_10__3-3-3-4-4");
    EXPECT_EQ(m.n_vertices(), 10);
    EXPECT_EQ(m.n_edges(), 25);
    EXPECT_EQ(m.n_faces(), 15);
}

TEST(Validate, MalformedCorpus) {
    auto corpus = malformed_corpus();
    ASSERT_EQ(corpus.size(), 20u);
    for (const auto& c : corpus) {
        SCOPED_TRACE(c.name);
        auto d = PolyhedralMap::diagnose(c.faces, c.n);
        ASSERT_TRUE(d.has_value());
        EXPECT_EQ(d->kind, c.expected) << d->message();
        EXPECT_EQ(d->witness.rfind(c.witness, 0), 0u) << d->witness;
        EXPECT_THROW(PolyhedralMap::validate(c.faces, c.n), ValidationError);
    }
}

TEST(Validate, FanIsClosedAndOrdered) {
    auto m = load_fixture("T_1_10__3-3-3-4-4");
    for (int v = 0; v < m.n_vertices(); ++v) {
        const auto& fan = m.fan(v);
        const auto& rot = m.rotation(v);
        ASSERT_EQ(fan.size(), rot.size());
        for (std::size_t i = 0; i < fan.size(); ++i) {
            // fan[i] contains the edges to rot[i] and rot[i+1]
            const Face& f = m.face(fan[i]);
            EXPECT_NE(std::find(f.begin(), f.end(), rot[i]), f.end());
            EXPECT_NE(std::find(f.begin(), f.end(), rot[(i + 1) % rot.size()]), f.end());
        }
    }
}

TEST(FaceSeq, Normalization) {
    FaceSeqType t({4, 3, 3, 3, 4});
    EXPECT_EQ(t.str(), "(3,3,3,4,4)");
    EXPECT_EQ(t.slug(), "3-3-3-4-4");
    EXPECT_EQ(t.power_str(), "(3^3,4^2)");
    EXPECT_EQ(FaceSeqType::parse("(3,4,6,4)").str(), "(3,4,6,4)");
    EXPECT_EQ(FaceSeqType::parse("3-3-4-3-4"), FaceSeqType({4, 3, 4, 3, 3}));
    EXPECT_EQ(FaceSeqType({4, 6, 4, 3}), FaceSeqType({3, 4, 6, 4}));
    // reflections count as the same type
    EXPECT_EQ(FaceSeqType({3, 4, 6, 12}), FaceSeqType({12, 6, 4, 3}));
    EXPECT_THROW(FaceSeqType::parse("3,2,3"), Error);
    EXPECT_THROW(FaceSeqType::parse("3,x"), Error);
    EXPECT_EQ(t.multiplicity(3), 3);
    EXPECT_EQ(t.distinct_sizes(), (std::vector<int>{3, 4}));
}

TEST(FaceSequence, Examples) {
    EXPECT_TRUE(FaceSeqType({3, 3, 3}).matches(face_sequence(tetrahedron(), 0)));
    auto t110 = load_fixture("T_1_10__3-3-3-4-4");
    EXPECT_TRUE(FaceSeqType({4, 3, 3, 3, 4}).matches(face_sequence(t110, 0)));
    auto t118 = load_fixture("T_1_18__3-4-6-4");
    EXPECT_TRUE(FaceSeqType({3, 4, 6, 4}).matches(face_sequence(t118, 1)));
}

TEST(SemiEquivelar, Examples) {
    EXPECT_EQ(is_semi_equivelar(tetrahedron()), FaceSeqType({3, 3, 3}));
    EXPECT_EQ(is_semi_equivelar(load_fixture("K_1_12__3-3-4-3-4")), FaceSeqType({3, 3, 4, 3, 4}));
    EXPECT_FALSE(is_semi_equivelar(stellated_tetrahedron()).has_value());
}

TEST(Euler, Examples) {
    EXPECT_EQ(euler_characteristic(tetrahedron()), 2);
    EXPECT_EQ(euler_characteristic(load_fixture("T_1_10__3-3-3-4-4")), 0);
    auto k118 = load_fixture("K_1_18__3-4-6-4");
    EXPECT_EQ(euler_characteristic(k118), 0);
    EXPECT_EQ(brute_chi(k118), 0);
    for (const auto& e : fixture_catalog()) EXPECT_EQ(euler_characteristic(load_fixture(e.id)), brute_chi(load_fixture(e.id)));
}

TEST(Orientability, Examples) {
    EXPECT_TRUE(is_orientable(tetrahedron()));
    EXPECT_TRUE(is_orientable(load_fixture("T_1_20__4-8-8")));
    EXPECT_FALSE(is_orientable(load_fixture("K_1_10__3-3-3-4-4")));
    EXPECT_FALSE(is_orientable(equivelar_series({Family::Quad, Surface::Klein, 3})));
}

TEST(Orientability, MatchesBruteForce) {
    std::vector<PolyhedralMap> maps{tetrahedron(), stellated_tetrahedron(),
                                    equivelar_series({Family::Quad, Surface::Klein, 3}),
                                    equivelar_series({Family::Quad, Surface::Torus, 7})};
    for (const auto& e : fixture_catalog())
        if (load_fixture(e.id).n_faces() <= 20) maps.push_back(load_fixture(e.id));
    ASSERT_GE(maps.size(), 10u);
    for (const auto& m : maps) EXPECT_EQ(is_orientable(m), brute_orientable(m));
}

TEST(Surface, Examples) {
    EXPECT_EQ(surface_id(load_fixture("T_1_18__3-3-3-3-6")).name, "torus");
    EXPECT_EQ(surface_id(load_fixture("K_2_12__3-3-3-4-4")).name, "klein_bottle");
    EXPECT_EQ(surface_id(tetrahedron()).name, "sphere");
}

TEST(VertexTransitive, Examples) {
    EXPECT_TRUE(is_vertex_transitive(tetrahedron()));
    EXPECT_TRUE(is_vertex_transitive(load_fixture("T_1_10__3-3-3-4-4")));
    EXPECT_FALSE(is_vertex_transitive(stellated_tetrahedron()));
}

TEST(Permute, PreservesInvariants) {
    std::mt19937 rng(7);
    auto m = load_fixture("K_1_14__3-3-3-4-4");
    for (int k = 0; k < 5; ++k) {
        auto p = permute(m, random_perm(m.n_vertices(), rng));
        EXPECT_EQ(euler_characteristic(p), 0);
        EXPECT_FALSE(is_orientable(p));
        EXPECT_EQ(is_semi_equivelar(p), FaceSeqType({3, 3, 3, 4, 4}));
    }
}
