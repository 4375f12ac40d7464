#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <regex>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "steklov/io.hpp"

using namespace steklov;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// stdout of the CLI; stderr is discarded
Run run_cli(const std::string& args) {
    const std::string cmd = std::string(STEKLOV_CLI_PATH) + " " + args + " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    if (!pipe) throw std::runtime_error("popen failed");
    Run r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) r.out.append(buf.data(), n);
    const int raw = pclose(pipe.release());
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t c = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++c;
    return c;
}

}  // namespace

TEST(BodyJson, Fourier) {
    const auto b = body_from_json(R"({"type":"fourier","a0":2.0,"cos":[0.1],"sin":[0,0.05],"M":128})");
    EXPECT_EQ(b.a0(), 2.0);
    EXPECT_EQ(b.quadrature_size(), 128);
    EXPECT_EQ(b.order(), 2);
    EXPECT_EQ(b.cos_coeffs()[0], 0.1);
    EXPECT_EQ(b.sin_coeffs()[1], 0.05);
    EXPECT_EQ(body_from_json(R"({"type":"fourier","a0":1.5})", 256).quadrature_size(), 256);
}

TEST(BodyJson, EllipseAndHull) {
    const auto e = body_from_json(R"({"type":"ellipse","a":1,"b":1.2})");
    EXPECT_NEAR(eval_rho(e, 0.0).rho, 1.0, 1e-12);
    EXPECT_EQ(e.quadrature_size(), 512);
    const auto h = body_from_json(R"({"type":"hull","points":[[1,1],[-1,1],[-1,-1],[1,-1]],"M":256})");
    EXPECT_EQ(h.quadrature_size(), 256);
    EXPECT_NEAR(perimeter(h), 8.0, 0.08);
}

TEST(BodyJson, RoundTrip) {
    const auto b = random_convex_body(4, 1.0, 3.0);
    const auto c = body_from_json(body_to_json(b).dump());
    EXPECT_EQ(c.a0(), b.a0());
    ASSERT_EQ(c.order(), b.order());
    for (int k = 0; k < b.order(); ++k) EXPECT_EQ(c.cos_coeffs()[k], b.cos_coeffs()[k]);
}

TEST(BodyJson, Errors) {
    EXPECT_THROW(body_from_json(std::string("not json")), std::invalid_argument);
    EXPECT_THROW(body_from_json(std::string("[1,2]")), std::invalid_argument);
    EXPECT_THROW(body_from_json(std::string(R"({"type":"blob"})")), std::invalid_argument);
    EXPECT_THROW(body_from_json(std::string(R"({"type":"ellipse","a":1})")), std::invalid_argument);
    EXPECT_THROW(body_from_json(std::string(R"({"type":"ellipse","a":"x","b":1})")), std::invalid_argument);
    EXPECT_THROW(body_from_json(std::string(R"({"type":"hull","points":[[1,2,3]]})")), std::invalid_argument);
    EXPECT_THROW(body_from_json(std::string(R"({"type":"fourier","a0":1,"M":100})")), std::invalid_argument);
}

TEST(Svg, Structure) {
    const AnnularDomain2D d(0.5, body_from_ellipse(1.0, 1.2));
    const auto res = solve_sigma1(d, 8, 128);
    const auto svg = render_svg(d, boundary_trace(d, res));
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_EQ(count(svg, "<circle"), 2u);
    EXPECT_EQ(count(svg, "id=\"rbar\""), 1u);
    EXPECT_EQ(count(svg, "id=\"inner\""), 1u);
    EXPECT_EQ(count(svg, "<path id=\"outer\""), 1u);
    EXPECT_NE(svg.find(" Z\"/>"), std::string::npos);
    EXPECT_EQ(count(svg, "<line "), 128u);
    EXPECT_EQ(svg, render_svg(d, boundary_trace(d, res)));
}

TEST(Cli, ShellOutput) {
    auto r = run_cli("shell --n 2 --r1 1 --r2 2");
    ASSERT_EQ(r.status, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["sigma1"].get<double>(), 0.7213475, 1e-7);
    EXPECT_TRUE(j.contains("w_normalization"));
    r = run_cli("shell --n 3 --r1 1 --r2 2");
    ASSERT_EQ(r.status, 0);
    EXPECT_NEAR(nlohmann::json::parse(r.out)["sigma1"].get<double>(), 0.5, 1e-15);
}

TEST(Cli, InvalidShellExitsNonzero) {
    const std::string cmd = std::string(STEKLOV_CLI_PATH) + " shell --n 2 --r1 2 --r2 1 2>&1";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    std::string text;
    std::array<char, 512> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) text.append(buf.data(), n);
    const int raw = pclose(pipe.release());
    EXPECT_NE(WEXITSTATUS(raw), 0);
    EXPECT_NE(text.find("R1"), std::string::npos) << text;
    EXPECT_NE(run_cli("bogus").status, 0);
    EXPECT_NE(run_cli("solve --r1 0.5").status, 0);
}

TEST(Cli, SolveAndBounds) {
    const std::string body = R"(--body '{"type":"ellipse","a":1,"b":1.2}' --r1 0.5)";
    auto r = run_cli("solve " + body);
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_LE(j["sigma1"].get<double>(), j["rayleigh_w"].get<double>() + 1e-12);
    EXPECT_TRUE(j["convex"].get<bool>());
    r = run_cli("bounds " + body);
    ASSERT_EQ(r.status, 0);
    EXPECT_TRUE(nlohmann::json::parse(r.out)["holds_volume"].get<bool>());
}

TEST(Cli, VerifyMainCsvAndDeterminism) {
    const auto a = run_cli("verify-main --seed 42 --samples 5 --r1 1");
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(count(a.out, "\n"), 6u);
    EXPECT_EQ(count(a.out, ",false"), 0u);
    const auto b = run_cli("verify-main --seed 42 --samples 5 --r1 1 --threads 2");
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CounterexampleReportsDirection) {
    const auto r = run_cli("counterexample");
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["r1"].get<double>(), 1e-5);
    const bool holds = j["d_ellipse_gt_d_shell"].get<bool>();
    EXPECT_EQ(holds, j["d_ellipse"].get<double>() > j["d_shell"].get<double>());
    EXPECT_EQ(r.status, holds ? 0 : 1);
}

TEST(Cli, PlotToFileIsByteStable) {
    const std::string path = ::testing::TempDir() + "steklov_plot.svg";
    const std::string args = R"(plot --body '{"type":"ellipse","a":1,"b":1.2}' --r1 0.5 --out )" + path;
    ASSERT_EQ(run_cli(args).status, 0);
    std::ifstream f1(path);
    const std::string first((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    ASSERT_EQ(run_cli(args).status, 0);
    std::ifstream f2(path);
    const std::string second((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    EXPECT_EQ(first, second);
    EXPECT_EQ(count(first, "<circle"), 2u);
    EXPECT_EQ(count(first, "<path"), 1u);
    std::remove(path.c_str());
}
