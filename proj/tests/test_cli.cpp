// Runs the built command-line tool; C3B_CLI_PATH is supplied by the build.
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "c3b/scan.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int status;
    std::string out;
};

Result run(const std::string& args) {
    std::string cmd = std::string(C3B_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("c3b_cli_" + std::to_string(::getpid()) + "_" +
                                           ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    fs::path dir;
};

}  // namespace

TEST_F(Cli, CriticalPrintsTheNineValueCatalog) {
    Result r = run("critical --preset gravity-demo");
    EXPECT_EQ(r.status, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "nu,family,axis,multiplicity,w1,w2,detail");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 9);
}

TEST_F(Cli, ScanWritesThePaletteImage) {
    Result r = run("scan --preset helium --nu 6.0 --res 400 --ppm " + path("out.ppm"));
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(slurp(path("out.ppm")), c3b::render_ppm(c3b::scan_disk(c3b::preset("helium"), 6.0, 400)));
}

TEST_F(Cli, VerifyEepExitsZero) {
    Result r = run("verify --preset eep");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out.rfind("CHECK ", 0), 0u);
    EXPECT_EQ(r.out.find(" FAIL "), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("critical").status, 2);
    EXPECT_EQ(run("critical --preset nope").status, 2);
    EXPECT_EQ(run("critical --preset eep --system " + path("missing.txt")).status, 2);
    EXPECT_EQ(run("critical --system " + path("missing.txt")).status, 2);
    EXPECT_EQ(run("scan --preset eep").status, 2);
    EXPECT_EQ(run("scan --preset eep --nu 1 --res 1").status, 2);
    EXPECT_EQ(run("contours --preset eep --axis 4").status, 2);
    EXPECT_EQ(run("frobnicate --preset eep").status, 2);
}

TEST_F(Cli, ComputationErrorsExitOne) {
    EXPECT_EQ(run("scan --preset eep --nu 1 --res 8 --ppm " + path("no/such/dir/x.ppm")).status, 1);
    EXPECT_EQ(run("classify --preset eep --nu 1 --shape 2 0").status, 1);
}

TEST_F(Cli, SystemFileMatchesPreset) {
    {
        std::ofstream f(path("he.txt"));
        f << "# helium\nmasses 1 1 7289.56\nalphas 2 2 -1\n";
    }
    for (const std::string args : {"critical", "scan --nu 6 --res 101", "contours --axis 2 --res 40",
                                   "classify --nu 3 --shape 0.1 0.2 --jhat 0 0.6 0.8"}) {
        Result a = run(args + " --preset helium"), b = run(args + " --system " + path("he.txt"));
        EXPECT_EQ(a.status, 0) << args;
        EXPECT_EQ(a.out, b.out) << args;
    }
}

TEST_F(Cli, OutputsAreByteIdenticalAcrossRuns) {
    for (const std::string args : {"critical --preset eep", "scan --preset gravity-demo --nu 16 --res 300",
                                   "contours --preset helium --axis 1 --res 120 --chi-psi",
                                   "simulate --preset eep --steps 200"}) {
        Result a = run(args), b = run(args);
        EXPECT_EQ(a.status, 0) << args;
        EXPECT_FALSE(a.out.empty()) << args;
        EXPECT_EQ(a.out, b.out) << args;
    }
    run("scan --preset eep --nu 0.28 --res 256 --ppm " + path("a.ppm") + " --csv " + path("a.csv"));
    run("scan --preset eep --nu 0.28 --res 256 --ppm " + path("b.ppm") + " --csv " + path("b.csv"));
    EXPECT_EQ(slurp(path("a.ppm")), slurp(path("b.ppm")));
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}
