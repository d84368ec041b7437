#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "cckit/causal.hpp"
#include "cckit/generators.hpp"
#include "cckit/io.hpp"
#include "cckit/subdivision.hpp"

using namespace cckit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
};

Outcome run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + CCKIT_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("cckit_cli_" + std::to_string(::getpid()) + "_" +
                                           ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& f) const { return (dir / f).string(); }
    std::string put(const std::string& f, const Complex& k, const std::string& name = "") {
        io::save(io::document(name.empty() ? f : name, k), path(f));
        return path(f);
    }
    fs::path dir;
};

}  // namespace

TEST(Io, RoundTripIsByteStable) {
    for (const Complex& k : {gen::grid(2, 3), gen::torus_cell(), gen::cylinder(4, 1)}) {
        io::CcDocument d = io::document("k", k);
        d.removed_components = std::vector<int>{0};
        std::string a = io::dump(d);
        std::string b = io::dump(io::parse(a));
        EXPECT_EQ(a, b);
        EXPECT_EQ(io::parse(a).complex, k);
    }
}

TEST(Io, GridDocument) {
    io::CcDocument d = io::parse(io::dump(io::document("grid", gen::grid(5, 5))));
    EXPECT_EQ(d.complex.size(), 121u);
    EXPECT_EQ(d.complex.f_vector(), (std::vector<std::size_t>{36, 60, 25}));
}

TEST(Io, Errors) {
    auto code = [](const std::string& text) {
        try {
            io::parse(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::PredicateFailed;
    };
    EXPECT_EQ(code(R"({"cells":[{"vertices":[0],"rank":0},{"vertices":[1],"rank":0},{"vertices":[0,1],"rank":3}]})"),
              ErrorCode::ValidationFailed);
    EXPECT_EQ(code(R"({"cells":[{"vertices":[0],"rank":"zero"}]})"), ErrorCode::ParseError);
    EXPECT_EQ(code(R"({"cells":[{"vertices":[0,0],"rank":1}]})"), ErrorCode::ParseError);
    EXPECT_EQ(code("[1, 2"), ErrorCode::ParseError);
    EXPECT_EQ(code(R"({"name":"x"})"), ErrorCode::ParseError);
}

TEST(Io, MapsSurvive) {
    io::CcDocument d = io::document("s", gen::cycle(3));
    d.maps.push_back({"s", "t", {{{0}, {5}}, {{0, 1}, {5, 6}}}});
    io::CcDocument e = io::parse(io::dump(d));
    ASSERT_EQ(e.maps.size(), 1u);
    EXPECT_EQ(e.maps[0].to, "t");
    EXPECT_EQ(e.maps[0].pairs.size(), 2u);
}

TEST_F(Cli, EulerOfTorusCell) {
    Outcome r = run("euler " + put("torus.json", gen::torus_cell()));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(io::Json::parse(r.out)["chi"], -1);
}

TEST_F(Cli, DualInvolution) {
    Outcome r = run("dual --check-involution " + put("sphere3.json", gen::simplex_boundary(3)));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(io::Json::parse(r.out)["involution"], "ok");
    Outcome d = run("dual " + path("sphere3.json"));
    EXPECT_EQ(d.code, 0);
    EXPECT_TRUE(is_isomorphic(io::parse(d.out).complex, gen::simplex_boundary(3)));
    EXPECT_EQ(run("dual " + put("grid.json", gen::grid(2, 2))).code, 1);
}

TEST_F(Cli, GlueCylinders) {
    for (int n = 3; n <= 5; ++n) {
        std::string a = put("cylA.json", gen::cylinder(n, 1));
        std::string b = put("cylB.json", gen::cylinder(n, 1));
        Outcome r = run("glue " + a + " " + b + " --interface 1");
        ASSERT_EQ(r.code, 0);
        io::CcDocument d = io::parse(r.out);
        EXPECT_EQ(d.complex.count_rank(2), static_cast<std::size_t>(2 * n));
        EXPECT_TRUE(is_isomorphic(d.complex, gen::cylinder(n, 2)));
        EXPECT_EQ(d.complex.vertices().back(), static_cast<Vertex>(3 * n - 1));
        EXPECT_EQ(d.origins.size(), static_cast<std::size_t>(3 * n));
    }
}

TEST_F(Cli, Deterministic) {
    std::string f = put("t.json", gen::torus_cell());
    for (const char* cmd : {"classify ", "dual-cob ", "bdiv ", "shell "}) {
        Outcome a = run(cmd + f);
        Outcome b = run(cmd + f);
        EXPECT_EQ(a.out, b.out) << cmd;
        EXPECT_EQ(a.code, b.code) << cmd;
    }
}

TEST_F(Cli, ExitCodes) {
    std::ofstream(path("broken.json")) << "{\"cells\": [";
    EXPECT_EQ(run("validate " + path("broken.json")).code, 2);
    EXPECT_EQ(run("validate " + path("missing.json")).code, 2);
    EXPECT_EQ(run("no-such-command").code, 2);
    std::ofstream(path("bad.json")) << R"({"cells":[{"vertices":[0],"rank":0},{"vertices":[0,1],"rank":1}]})";
    Outcome r = run("validate " + path("bad.json"));
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(io::Json::parse(r.out)["ok"].get<bool>());
    std::string g = put("grid.json", gen::grid(5, 5));
    EXPECT_EQ(run("validate " + g).code, 0);
    EXPECT_EQ(run("validate " + g, "CCKIT_MAX_CELLS=100").code, 1);
    EXPECT_EQ(run("validate " + g, "CCKIT_MAX_CELLS=121").code, 0);
}

TEST_F(Cli, ValidateCobordism) {
    std::string c = put("cyl.json", gen::cylinder(4, 2));
    EXPECT_EQ(run("validate " + c + " --removed 0").code, 0);
    std::string s = put("simplex.json", gen::simplex(2));
    EXPECT_EQ(run("validate " + s + " --removed 0").code, 1);
}

TEST_F(Cli, BdivRoundTrip) {
    std::string f = put("s.json", gen::simplex_boundary(3));
    Outcome b = run("bdiv --oriented " + f);
    ASSERT_EQ(b.code, 0);
    std::ofstream(path("b.json")) << b.out;
    Outcome r = run("reconstruct-bdiv " + path("b.json"));
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(is_isomorphic(io::parse(r.out).complex, gen::simplex_boundary(3)));
    std::string t = put("t.json", gen::torus_cell());
    std::ofstream(path("tb.json")) << run("bdiv --oriented " + t).out;
    EXPECT_TRUE(is_isomorphic(io::parse(run("reconstruct-bdiv " + path("tb.json")).out).complex, gen::torus_cell()));
}

TEST_F(Cli, CheckMap) {
    Bdiv b = barycentric(gen::cycle(3));
    io::CcDocument s = io::document("bdiv", *b.complex);
    io::MapEntry e{"bdiv", "C3", {}};
    for (Id x = 0; x < b.complex->size(); ++x) e.pairs.emplace_back(b.complex->cell(x), b.rho.of(x));
    s.maps.push_back(e);
    io::save(s, path("s.json"));
    std::string t = put("t.json", gen::cycle(3), "C3");
    Outcome r = run("check-map " + path("s.json") + " " + t);
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(io::Json::parse(r.out)["reduction"]["ok"].get<bool>());
    EXPECT_EQ(run("check-map " + path("s.json") + " " + t + " --kind collapse").code, 1);
}

TEST_F(Cli, SliceRoundTrip) {
    Complex k = gen::cylinder(4, 1);
    Reduction rho = certify_reduction(barycentric(restriction(k, {0, 1, 2, 3})).rho);
    Complex s = pull_back_boundary(k, rho).complex;
    io::CcDocument d = io::document("prism", s);
    d.removed_components = std::vector<int>{};
    auto comps = boundary_components(s);
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (comps[i] == *rho.source()) d.removed_components->push_back(static_cast<int>(i));
    io::save(d, path("slice.json"));
    Outcome r = run("slice-decompose " + path("slice.json") + " --out-dir " + path("seq"));
    ASSERT_EQ(r.code, 0);
    auto files = io::Json::parse(r.out)["slices"][0]["files"];
    ASSERT_EQ(files.size(), 5u);
    std::string args;
    for (const auto& f : files) args += " " + f.get<std::string>();
    Outcome b = run("slice-build" + args);
    ASSERT_EQ(b.code, 0);
    io::CcDocument back = io::parse(b.out);
    EXPECT_TRUE(is_isomorphic(back.complex, s));
    ASSERT_TRUE(back.removed_components.has_value());
    Complex j = removed_components(back.complex, *back.removed_components);
    EXPECT_TRUE(is_isomorphic(j, *rho.source()));
}

TEST_F(Cli, TransitionAndMidsection) {
    std::string c = put("cyl.json", gen::cylinder(5, 1));
    Outcome t = run("transition " + c + " --removed 0");
    ASSERT_EQ(t.code, 0);
    EXPECT_TRUE(is_isomorphic(io::parse(t.out).complex, gen::cycle(5)));
    Outcome m = run("midsection " + c + " --removed 0");
    ASSERT_EQ(m.code, 0);
    EXPECT_TRUE(is_isomorphic(io::parse(m.out).complex, gen::cycle(5)));
    EXPECT_EQ(run("midsection " + c).code, 1);
}

TEST_F(Cli, ShellingCommands) {
    std::string s = put("s.json", gen::simplex_boundary(3));
    EXPECT_TRUE(io::Json::parse(run("shell " + s).out)["shellable"].get<bool>());
    EXPECT_TRUE(io::Json::parse(run("shell2 " + s).out)["two_shellable"].get<bool>());
    std::string t = put("t.json", gen::torus_cell());
    EXPECT_FALSE(io::Json::parse(run("shell " + t).out)["shellable"].get<bool>());
}

TEST_F(Cli, AmbientAndIso) {
    Complex l = gen::dual_bdiv(gen::simplex_boundary(3));
    std::string f = put("l2.json", skeleton(l, 2));
    Outcome a = run("ambient " + f);
    ASSERT_EQ(a.code, 0);
    std::ofstream(path("amb.json")) << a.out;
    std::string g = put("l.json", l);
    EXPECT_TRUE(io::Json::parse(run("iso " + path("amb.json") + " " + g).out)["isomorphic"].get<bool>());
    std::string c = put("c.json", gen::cycle(4));
    EXPECT_FALSE(io::Json::parse(run("iso " + c + " " + g).out)["isomorphic"].get<bool>());
}

TEST_F(Cli, Gen) {
    Outcome r = run("gen grid 5 5");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(io::parse(r.out).complex.size(), 121u);
    EXPECT_EQ(run("gen grid 0 5").code, 1);
    EXPECT_EQ(run("gen nonsense 3").code, 1);
    EXPECT_EQ(run("gen cycle 5 --format yaml").code, 2);
    Outcome t = run("gen torus_cell");
    EXPECT_EQ(io::parse(t.out).complex.f_vector(), (std::vector<std::size_t>{12, 24, 12, 1}));
}
