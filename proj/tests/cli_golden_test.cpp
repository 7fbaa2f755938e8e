#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

// Golden tests for the command line front end. The binary path comes from
// the LOGTOWER_BIN environment variable set by the build.

namespace {

struct RunResult {
    int rc;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("LOGTOWER_BIN");
    if (bin == nullptr) {
        ADD_FAILURE() << "LOGTOWER_BIN is not set";
        return {-1, ""};
    }
    const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (p == nullptr) {
        ADD_FAILURE() << "popen failed for: " << cmd;
        return {-1, ""};
    }
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    const int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

std::string first_line(const std::string& s) {
    return s.substr(0, s.find('\n'));
}

TEST(CliGolden, CompareVerdicts) {
    auto r = run_cli("compare \"log(x)\" \"x\"");
    EXPECT_EQ(r.rc, 0);
    EXPECT_EQ(first_line(r.out), "≺");
    r = run_cli("compare \"x\" \"log(x)\"");
    EXPECT_EQ(r.rc, 0);
    EXPECT_EQ(first_line(r.out), "≻");
    r = run_cli("compare \"x + 1\" \"x\"");
    EXPECT_EQ(r.rc, 0);
    EXPECT_EQ(first_line(r.out), "≍ ∼");
}

TEST(CliGolden, AlgebraicOutputs) {
    EXPECT_EQ(first_line(run_cli("derive \"lambda(1)\"").out),
              "-x^-2 - x^-2*ell(1)^-1 - x^-2*ell(1)^-2");
    EXPECT_EQ(first_line(run_cli("logderiv \"g(1)\"").out),
              "1/2*x^-1 + 1/2*x^-1*ell(1)^-1");
    EXPECT_EQ(first_line(run_cli("omega \"lambda(0)\"").out), "x^-2");
    EXPECT_EQ(first_line(run_cli("sigma \"gamma(0)\"").out), "2*x^-2");
    EXPECT_EQ(first_line(run_cli("val \"gamma(2)\"").out),
              "v(x^-1*ell(1)^-1*ell(2)^-1)");
    EXPECT_EQ(first_line(run_cli("val \"0\"").out), "infinity");
    EXPECT_EQ(first_line(run_cli("sign \"x - ell(1)\"").out), "1");
    EXPECT_EQ(first_line(run_cli("sign \"1/x - 1\"").out), "-1");
}

TEST(CliGolden, ConjugationOutputs) {
    EXPECT_EQ(first_line(run_cli("mulconj \"4*Y'' + x*Y\" \"x\"").out),
              "(4*x)*Y'' + 8*Y' + (x^2)*Y");
    EXPECT_EQ(first_line(run_cli("compconj \"Y'\" \"gamma(0)\"").out),
              "(x^-1)*Y'");
    EXPECT_EQ(first_line(run_cli("chvar \"omega_seq(2)\" \"g(1)\"").out),
              "4*Y'' + (ell(2)^-2)*Y");
}

TEST(CliGolden, TowerIdentities) {
    const auto r = run_cli("tower --identities 4");
    EXPECT_EQ(r.rc, 0);
    EXPECT_NE(r.out.find("identities n<=4: PASS (40 checks)"), std::string::npos);
}

TEST(CliGolden, PcCheckVerdicts) {
    auto r = run_cli(
        "pc-check \"lambda(0)\" \"lambda(1)\" \"lambda(2)\" \"lambda(3)\"");
    EXPECT_EQ(r.rc, 0);
    EXPECT_NE(r.out.find("pc: yes"), std::string::npos);
    EXPECT_NE(r.out.find("v(x^-1*ell(1)^-1)"), std::string::npos);

    r = run_cli("pc-check \"x\" \"0\" \"x\"");
    EXPECT_EQ(r.rc, 1);
    EXPECT_NE(r.out.find("pc: no (violation at step 0)"), std::string::npos);
}

TEST(CliGolden, UsageAndParseErrorsExitTwo) {
    EXPECT_EQ(run_cli("").rc, 2);
    EXPECT_EQ(run_cli("bogus").rc, 2);
    EXPECT_EQ(run_cli("witness --n 1").rc, 2);
    EXPECT_EQ(run_cli("pc-check \"x\" \"x^2\"").rc, 2);
    EXPECT_EQ(run_cli("compare \"exp(x\" \"x\"").rc, 2);
    EXPECT_EQ(run_cli("derive \"exp(x^2/log(x))\"").rc, 2);
    EXPECT_EQ(run_cli("--help").rc, 0);
}

TEST(CliGolden, ComputationFailuresExitOne) {
    EXPECT_EQ(run_cli("logderiv \"0\"").rc, 1);
    EXPECT_EQ(run_cli("witness --m 1 --n 2 --tmax 100").rc, 1);
}

TEST(CliGolden, OdeReport) {
    const auto r = run_cli("ode --f \"omega_seq(1)\" --tmax 1000");
    EXPECT_EQ(r.rc, 0);
    EXPECT_NE(r.out.find("wronskian_drift: pass"), std::string::npos);
    EXPECT_NE(r.out.find("riccati_residual: pass"), std::string::npos);
    EXPECT_NE(r.out.find("ode [10, 1000]"), std::string::npos);
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(CliGolden, WitnessJsonSchema) {
    const auto r = run_cli("witness --m 2 --n 1 --json");
    EXPECT_EQ(r.rc, 0);
    for (const char* key :
         {"\"m\": 2", "\"n\": 1", "\"pass\": true", "\"checks\"", "\"bound\"",
          "\"constant\"", "\"threshold\"", "\"margins_tail\"", "\"status\"",
          "\"sandwich\"", "\"chvar_bound\""}) {
        EXPECT_NE(r.out.find(key), std::string::npos) << "missing " << key;
    }
}

TEST(CliGolden, WitnessCsv) {
    const std::string path = ::testing::TempDir() + "logtower_witness.csv";
    const auto r =
        run_cli("witness --m 2 --n 1 --tmax 1000 --csv " + path);
    EXPECT_EQ(r.rc, 0);
    std::ifstream in(path);
    ASSERT_TRUE(in.good());
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "t,y1,y1p,y2,y2p,re_z,im_z,w");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    EXPECT_EQ(rows, 512u);
    std::remove(path.c_str());
}

}  // namespace
