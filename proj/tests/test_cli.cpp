// Runs the mesd executable and checks output and exit codes.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + MESD_CLI_PATH + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::map<std::string, std::string> fields(const std::string& text) {
    std::map<std::string, std::string> m;
    std::istringstream in(text);
    std::string k, v;
    while (in >> k >> v) m[k] = v;
    return m;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

std::filesystem::path tmp(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("mesd_cli_test_" + name);
}

}  // namespace

TEST(CliTwo, Examples) {
    auto r = run("two --prior 0.5 --overlap 0.5");
    ASSERT_EQ(r.code, 0) << r.out;
    auto f = fields(r.out);
    EXPECT_EQ(f["helstrom"], "0.853553391");
    EXPECT_EQ(f["nc_bound"], "0.75");
    EXPECT_EQ(f["advantage"], "true");

    r = run("two --prior 0.5 --overlap 0");
    ASSERT_EQ(r.code, 0);
    f = fields(r.out);
    EXPECT_EQ(f["helstrom"], "1");
    EXPECT_EQ(f["nc_bound"], "1");
    EXPECT_EQ(f["advantage"], "false");
}

TEST(CliTwo, OutOfRangeNamesFlag) {
    const auto r = run("two --prior 1.5 --overlap 0.2");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("--prior"), std::string::npos);
    EXPECT_EQ(run("two --overlap -1").code, 2);
}

TEST(CliThree, Examples) {
    auto r = run("three --theta-deg 60 --prior 0.3333333");
    ASSERT_EQ(r.code, 0) << r.out;
    auto f = fields(r.out);
    EXPECT_NEAR(std::stod(f["s_quantum"]), 0.6666667, 5e-8);
    EXPECT_NEAR(std::stod(f["s_nc_bound"]), 0.8333333, 5e-8);
    EXPECT_EQ(f["branch"], "low_prior");
    EXPECT_EQ(f["advantage"], "false");

    r = run("three --theta-deg 60 --prior 0.5");
    f = fields(r.out);
    EXPECT_EQ(f["s_quantum"], "0.933012702");
    EXPECT_EQ(f["s_nc_bound"], "0.875");
    EXPECT_EQ(f["threshold_prior"], "0.372715343");
    EXPECT_EQ(f["advantage"], "true");

    r = run("three --theta-deg 45 --prior 0.5");
    f = fields(r.out);
    EXPECT_EQ(f["s_quantum"], "1");
    EXPECT_EQ(f["s_nc_bound"], "1");
    EXPECT_EQ(f["advantage"], "false");
}

TEST(CliThree, Validation) {
    EXPECT_EQ(run("three --theta-deg 91 --prior 0.2").code, 2);
    EXPECT_EQ(run("three --theta 2.0 --prior 0.2").code, 2);
    EXPECT_EQ(run("three --theta-deg 30 --prior 0.6").code, 2);
    EXPECT_EQ(run("three --theta 0.5 --theta-deg 30").code, 2);
    EXPECT_EQ(run("three --theta-deg 90 --prior 0.5").code, 0);
}

TEST(CliThree, JsonFormat) {
    const auto r = run("three --theta 1.0 --prior 0.25 --format json");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"s_quantum\""), std::string::npos);
    EXPECT_NE(r.out.find("\"advantage\": false"), std::string::npos);
}

TEST(CliMap, CsvSchemaAndDeterminism) {
    const auto a = tmp("map_a.csv"), b = tmp("map_b.csv");
    ASSERT_EQ(run("map --theta-steps 181 --prior-steps 101 --out " + a.string(), "MESD_THREADS=1").code, 0);
    ASSERT_EQ(run("map --theta-steps 181 --prior-steps 101 --out " + b.string(), "MESD_THREADS=4").code, 0);
    const std::string sa = slurp(a);
    EXPECT_EQ(sa, slurp(b));
    EXPECT_EQ(sa.substr(0, sa.find('\n')), "theta,prior,s_quantum,s_nc_bound,gap,advantage");
    EXPECT_EQ(std::count(sa.begin(), sa.end(), '\n'), 181 * 101 + 1);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST(CliMap, Json) {
    const auto a = tmp("map.json");
    ASSERT_EQ(run("map --theta-steps 3 --prior-steps 3 --format json --out " + a.string()).code, 0);
    const std::string s = slurp(a);
    EXPECT_NE(s.find("\"config\""), std::string::npos);
    EXPECT_NE(s.find("\"cells\""), std::string::npos);
    std::filesystem::remove(a);
}

TEST(CliMap, Errors) {
    EXPECT_EQ(run("map --theta-steps 1 --prior-steps 5 --out " + tmp("x.csv").string()).code, 2);
    EXPECT_EQ(run("map --theta-steps 3 --prior-steps 3 --out /nonexistent-dir/x.csv").code, 3);
    EXPECT_EQ(run("map --theta-steps 3 --prior-steps 3 --out " + tmp("y.csv").string(), "MESD_THREADS=zero").code, 2);
    std::filesystem::remove(tmp("y.csv"));
}

TEST(CliOracle, ThreeWithinTolerance) {
    const auto r = run("oracle-three --theta-deg 60 --prior 0.3333333 --tol 1e-3");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_LE(std::stod(fields(r.out)["difference"]), 1e-3);
}

TEST(CliOracle, TwoOrthogonal) {
    const auto r = run("oracle-two --sep-deg 90 --prior 0.5");
    EXPECT_EQ(r.code, 0) << r.out;
    auto f = fields(r.out);
    EXPECT_EQ(f["analytic"], "1");
    EXPECT_EQ(f["oracle"], "1");
}

TEST(CliOracle, ToleranceExceededExitsFour) {
    // A 16-point grid without refinement cannot reach 1e-12 at this ensemble.
    const auto r = run("oracle-three --theta 0.7 --prior 0.2 --grid 16 --refine 0 --restarts 0 --tol 1e-12");
    EXPECT_EQ(r.code, 4) << r.out;
    EXPECT_EQ(run("oracle-two --sep 0.3 --prior 0.4 --grid 64 --refine 0 --tol 0").code, 4);
}

TEST(CliOracle, BadFlags) {
    EXPECT_EQ(run("oracle-three --grid 4").code, 2);
    EXPECT_EQ(run("oracle-two --grid 10").code, 2);
    EXPECT_EQ(run("oracle-two --prior 2").code, 2);
    EXPECT_EQ(run("oracle-three --tol -1").code, 2);
}

TEST(CliOnticCheck, Batch) {
    const auto r = run("ontic-check --num-models 10000 --seed 7");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("10000/10000"), std::string::npos);
}

TEST(CliOnticCheck, SingleModelReport) {
    const auto r = run("ontic-check --num-models 1 --seed 1");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("two-state"), std::string::npos);
    EXPECT_NE(r.out.find("three-state"), std::string::npos);
}

TEST(CliOnticCheck, ZeroModelsRejected) {
    EXPECT_EQ(run("ontic-check --num-models 0").code, 2);
}

TEST(Cli, UnknownCommandOrFlag) {
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("two --bogus 1").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}
