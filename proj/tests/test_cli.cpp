#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <cubic_mw/cli.hpp>

using namespace cubic_mw;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "cubic-mw");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("cubic_mw_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    fs::path dir;
};

}  // namespace

TEST_F(CliTest, Compose) {
    const auto r = run({"compose", "--coeffs", "1,2,3,4", "--x", "1,0,1,-1", "--y", "1,1,-1,0"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "3 1 1 -2\n");

    const auto same = run({"compose", "--coeffs", "1,2,3,4", "--x", "1,0,1,-1", "--y", "2,0,2,-2"});
    EXPECT_EQ(same.code, 1);
    EXPECT_NE(same.err.find("EqualPoints"), std::string::npos);

    const auto off = run({"compose", "--coeffs", "1,2,3,4", "--x", "1,1,1,1", "--y", "1,1,-1,0"});
    EXPECT_EQ(off.code, 1);
    EXPECT_NE(off.err.find("NotOnSurface"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"compose", "--coeffs", "1,2,3,4", "--x", "1,0,1,-1"}).code, 2);
    EXPECT_EQ(run({"enumerate", "--coeffs", "1,2,3,4", "--height", "-5", "--out", (dir / "p.txt").string()}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
    const auto v = run({"--version"});
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(v.out, "cubic-mw 1.0.0\n");
    const auto bad = run({"compose", "--coeffs", "1,2,3", "--x", "1,0,1,-1", "--y", "1,1,-1,0"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("ParseError"), std::string::npos);
}

TEST_F(CliTest, EnumerateAndDecompose) {
    const auto pts = dir / "points.txt";
    const auto e = run({"enumerate", "--coeffs", "1,2,3,4", "--height", "200", "--out", pts.string(), "--threads", "2"});
    ASSERT_EQ(e.code, 0) << e.err;
    const std::string text = slurp(pts);
    EXPECT_NE(text.find("# cubic-mw 1.0.0"), std::string::npos);
    EXPECT_NE(text.find("config: subcommand=enumerate coeffs=1,2,3,4 height=200 bound=le sieve=on"), std::string::npos);
    EXPECT_NE(text.find("\n1 0 1 -1\n"), std::string::npos);
    const auto reg = load_registry(pts.string(), CubicSurface::zagier());
    EXPECT_EQ(reg, enumerate_points({1, 2, 3, 4}, 200));

    const auto rep = dir / "report.json";
    const auto d = run({"decompose", "--points", pts.string(), "--coeffs", "1,2,3,4", "--report", rep.string()});
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_NE(d.out.find("points " + std::to_string(reg.size())), std::string::npos);
    const auto j = nlohmann::json::parse(slurp(rep));
    EXPECT_EQ(j["points"], reg.size());
    EXPECT_EQ(j["config"]["subcommand"], "decompose");
    EXPECT_EQ(j["config"]["coeffs"], "1,2,3,4");
    EXPECT_EQ(j["config"]["height"], 200);
    EXPECT_TRUE(j["config"]["max_generations"].is_null());
    EXPECT_EQ(j["strong_count"].get<std::size_t>() + j["weak_only_count"].get<std::size_t>() + j["generator_count"].get<std::size_t>(),
              reg.size());

    const auto missing = run({"decompose", "--points", (dir / "nope.txt").string(), "--coeffs", "1,2,3,4", "--report", rep.string()});
    EXPECT_EQ(missing.code, 2);
    const auto wrong_surface = run({"decompose", "--points", pts.string(), "--coeffs", "1,1,1,1", "--report", rep.string()});
    EXPECT_EQ(wrong_surface.code, 1);
    EXPECT_NE(wrong_surface.err.find("NotOnSurface"), std::string::npos);
}

TEST_F(CliTest, OutputsIndependentOfThreads) {
    const auto a = dir / "a.txt", b = dir / "b.txt";
    ASSERT_EQ(run({"enumerate", "--coeffs", "1,2,3,4", "--height", "150", "--out", a.string(), "--threads", "1"}).code, 0);
    ASSERT_EQ(run({"enumerate", "--coeffs", "1,2,3,4", "--height", "150", "--out", b.string(), "--threads", "4"}).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    const auto ra = dir / "ra.json", rb = dir / "rb.json";
    ASSERT_EQ(run({"decompose", "--points", a.string(), "--coeffs", "1,2,3,4", "--report", ra.string(), "--threads", "1"}).code, 0);
    ASSERT_EQ(run({"decompose", "--points", a.string(), "--coeffs", "1,2,3,4", "--report", rb.string(), "--threads", "4"}).code, 0);
    EXPECT_EQ(slurp(ra), slurp(rb));
}

TEST_F(CliTest, VerifyRelations) {
    const auto r = run({"verify-relations", "--height", "150", "--samples", "300", "--seed", "5"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("PASS involution"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("all suites passed"), std::string::npos);
}

TEST_F(CliTest, SplitDemo) {
    const auto r = run({"split-demo", "--field", "fp:101", "--samples", "30"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("general position: yes"), std::string::npos);
    EXPECT_NE(r.out.find("embedded samples on surface: 30/30"), std::string::npos);
    EXPECT_NE(r.out.find("star vs section composition: 30/30"), std::string::npos);

    const auto q = run({"split-demo", "--field", "q", "--samples", "10", "--base", "1,0,0;0,1,0;0,0,1;1,1,1;1,2,3;1,4,9"});
    EXPECT_EQ(q.code, 0) << q.err;

    const auto conic = run({"split-demo", "--field", "q", "--base", "1,0,0;0,0,1;1,1,1;1,2,4;1,3,9;1,-1,1"});
    EXPECT_EQ(conic.code, 1);
    EXPECT_NE(conic.err.find("DegeneratePosition"), std::string::npos);
    EXPECT_EQ(run({"split-demo", "--field", "fp:100"}).code, 1);
}

TEST_F(CliTest, PlaneClosure) {
    const auto r = run({"plane-closure", "--field", "fp:7", "--target", "3,5,1"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("closure size: 57 (saturated)"), std::string::npos);
    EXPECT_NE(r.out.find("match"), std::string::npos);
    EXPECT_NE(r.out.find("reached"), std::string::npos);

    const auto q = run({"plane-closure", "--field", "q", "--cap", "50", "--extra", "1,2,0", "--max-generations", "2", "--target", "1,1,0"});
    EXPECT_EQ(q.code, 0) << q.err;
    EXPECT_NE(q.out.find("generation 2:"), std::string::npos);
    EXPECT_NE(q.out.find("target (1:1:0): reached"), std::string::npos);

    const auto nocap = run({"plane-closure", "--field", "q"});
    EXPECT_EQ(nocap.code, 1);
    EXPECT_NE(nocap.err.find("BoundTooLarge"), std::string::npos);
}
