#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sem_atlas/sem_atlas.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

const std::string kBin = SEM_ATLAS_CLI;
const std::string kData = SEM_ATLAS_TEST_DATA;
const std::string kFix = SEM_ATLAS_FIXTURE_DIR;

fs::path scratch() {
    auto d = fs::temp_directory_path() / ("sem_atlas_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Run run(const std::string& args) {
    static int counter = 0;
    const auto err_file = fs::temp_directory_path() / ("sem_atlas_cli_err_" + std::to_string(++counter));
    const std::string cmd = "'" + kBin + "' " + args + " 2>'" + err_file.string() + "'";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_file);
    fs::remove(err_file);
    return r;
}

std::string fixture(const std::string& id) { return "'" + kFix + "/" + id + ".map'"; }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

int count_of(const std::string& hay, const std::string& needle) {
    int c = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++c;
    return c;
}

}  // namespace

TEST(Cli, ValidateFixture) {
    auto r = run("validate " + fixture("T_1_10__3-3-3-4-4"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "ok 10 vertices, 25 edges, 15 faces\n");
}

TEST(Cli, ValidatePillow) {
    auto r = run("validate '" + kData + "/pillow.map'");
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.out + r.err, "FaceIntersectionViolation faces 0,1")) << r.out << r.err;
}

TEST(Cli, ValidateMissingFile) { EXPECT_EQ(run("validate /nonexistent/x.map").code, 2); }

TEST(Cli, InvariantsTorus) {
    auto r = run("invariants " + fixture("T_1_12__3-3-3-4-4"));
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "char_poly x^12 - 30x^10 - 24x^9 + 237x^8 + 192x^7 - 708x^6 - 408x^5 + 708x^4 + "
                                "208x^3 - 240x^2\n"))
        << r.out;
    EXPECT_TRUE(contains(r.out, "surface torus\n"));
    EXPECT_TRUE(contains(r.out, "type (3^3,4^2) (3,3,3,4,4)\n"));
}

TEST(Cli, InvariantsSphereAndKlein) {
    auto t = run("invariants '" + kData + "/tetrahedron.map'");
    EXPECT_EQ(t.code, 0);
    EXPECT_TRUE(contains(t.out, "euler_characteristic 2\n"));
    EXPECT_TRUE(contains(t.out, "surface sphere\n"));
    EXPECT_TRUE(contains(t.out, "homological_systole n/a"));
    auto k = run("invariants " + fixture("K_1_14__3-3-3-4-4"));
    EXPECT_TRUE(contains(k.out, "orientable no\n"));
    EXPECT_TRUE(contains(k.out, "surface klein_bottle\n"));
}

TEST(Cli, InvariantsJson) {
    auto r = run("invariants --json " + fixture("K_1_10__3-3-3-4-4"));
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["vertices"], 10);
    EXPECT_EQ(j["orientable"], false);
}

TEST(Cli, Iso) {
    auto r = run("iso " + fixture("T_1_10__3-3-3-4-4") + " " + fixture("T_1_10__3-3-3-4-4") + " --pin 0:4");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "isomorphic\n0 -> 4\n"));
    auto s = run("iso " + fixture("T_1_10__3-3-3-4-4") + " " + fixture("K_1_10__3-3-3-4-4"));
    EXPECT_EQ(s.code, 1);
    EXPECT_EQ(s.out, "not isomorphic\n");
}

TEST(Cli, ClassifyFifteen) {
    auto d = scratch();
    auto r = run("classify --max-vertices 15 --out '" + d.string() + "'");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "total 11 maps, 6 orientable, 5 non-orientable\n")) << r.out;
    int maps = 0;
    for (const auto& e : fs::directory_iterator(d)) maps += e.path().extension() == ".map";
    EXPECT_EQ(maps, 11);
    EXPECT_TRUE(fs::exists(d / "T_1_10__3-3-3-4-4.map"));
    EXPECT_TRUE(fs::exists(d / "table.csv"));
    fs::remove_all(d);
}

TEST(Cli, ClassifyAllTwenty) {
    auto r = run("classify --max-vertices 20 --types all");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "total 15 maps, 9 orientable, 6 non-orientable\n")) << r.out;
    EXPECT_EQ(count_of(r.out, "infeasible:"), 2);
}

TEST(Cli, ClassifyEight) {
    auto r = run("classify --max-vertices 8 --format csv");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "type,n,status,count,orientable,non_orientable,maps,reason\r\n"));
    EXPECT_EQ(count_of(r.out, ",searched,0,0,0,,"), 2);
}

TEST(Cli, ClassifyIsByteDeterministic) {
    auto a = run("classify --max-vertices 14 --format json");
    auto b = run("classify --max-vertices 14 --format json --jobs 2");
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(nlohmann::json::parse(a.out)["total"]["count"], 11);
}

TEST(Cli, Enumerate) {
    auto r = run("enumerate --type 3,3,4,3,4 --n 12");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "1 maps (0 orientable, 1 non-orientable)")) << r.out;
    EXPECT_EQ(run("enumerate --type 3,x,4 --n 12").code, 2);
}

TEST(Cli, Construct) {
    auto r = run("construct --family 4x4 --surface torus --n 7 --verify");
    EXPECT_EQ(r.code, 0);
    auto m = sem_atlas::map_from_raw(sem_atlas::parse_semmap(r.out));
    EXPECT_EQ(m.n_vertices(), 14);
    EXPECT_TRUE(contains(r.err, "verified: 14 vertices, type (4^4), torus"));
    EXPECT_EQ(run("construct --family 4x4 --surface torus --n 3").code, 1);
    EXPECT_EQ(run("construct --family 5x4 --surface torus --n 7").code, 2);
}

TEST(Cli, DeriveTruncate) {
    auto r = run("derive '" + kFix + "/hex_t_n7.map' --ops truncate --verify");
    EXPECT_EQ(r.code, 0) << r.err;
    auto m = sem_atlas::map_from_raw(sem_atlas::parse_semmap(r.out));
    EXPECT_EQ(m.n_vertices(), 42);
    EXPECT_EQ(m.tags().back(), "op truncate");
}

TEST(Cli, DeriveChainAndRefusal) {
    auto r = run("derive '" + kFix + "/hex_t_n7.map' --ops truncate,build-3464,subdivide-3464-to-346 --verify");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.err, "verified: 168 vertices, type (3^4,6)")) << r.err;
    auto bad = run("derive " + fixture("T_1_10__3-3-3-4-4") + " --ops layer");
    EXPECT_EQ(bad.code, 1);
    EXPECT_TRUE(contains(bad.err, "NotGridMap")) << bad.err;
    EXPECT_EQ(run("derive " + fixture("T_1_10__3-3-3-4-4") + " --ops nonsense").code, 2);
}

TEST(Cli, Cover) {
    auto r = run("cover " + fixture("K_1_14__3-3-3-4-4") + " --verify --compare " + fixture("T_1_28__3-3-3-4-4"));
    EXPECT_EQ(r.code, 0) << r.err;
    auto m = sem_atlas::map_from_raw(sem_atlas::parse_semmap(r.out));
    EXPECT_EQ(m.n_vertices(), 28);
    EXPECT_TRUE(contains(r.err, "covering verified"));
    EXPECT_TRUE(contains(r.err, ": yes"));
    EXPECT_EQ(run("cover " + fixture("T_1_10__3-3-3-4-4")).code, 1);
}

TEST(Cli, ExportDot) {
    auto r = run("export " + fixture("T_1_10__3-3-3-4-4") + " --format dot");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(count_of(r.out, " -- "), 25);
    EXPECT_TRUE(r.out.rfind("graph ", 0) == 0);
}

TEST(Cli, ExportSvgGolden) {
    auto d = scratch();
    ASSERT_EQ(run("construct --family 4x4 --surface torus --n 7 --out '" + (d / "g.map").string() + "'").code, 0);
    auto r = run("export '" + (d / "g.map").string() + "' --format svg");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, slurp(fs::path(kData) / "torus_4x4_n7.svg"));
    fs::remove_all(d);
}

TEST(Cli, ExportSvgFallsBack) {
    auto r = run("export " + fixture("T_1_10__3-3-3-4-4") + " --format svg");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.err, "warning"));
    EXPECT_TRUE(r.out.rfind("graph ", 0) == 0);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("classify").code, 2);
    EXPECT_EQ(run("classify --max-vertices 15 --format xml").code, 2);
}
