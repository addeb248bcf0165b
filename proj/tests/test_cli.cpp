#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "subdiv/cli.hpp"

using namespace subdiv;
namespace fs = std::filesystem;

namespace {

const std::string kData = SUBDIV_DATA_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "subdiv");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("subdiv_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = dir_ / name;
        std::ofstream(p, std::ios::binary) << text;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::string scheme(const std::string& name) { return kData + "/schemes/" + name + ".json"; }

}  // namespace

TEST_F(Cli, CatalogBuildQuadraticBSpline) {
    const Result r = run({"catalog", "build", "bspline-2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["taps"], nlohmann::json({0.25, 0.75, 0.75, 0.25}));
    EXPECT_EQ(j["lowDegree"], -2);
    EXPECT_EQ(j["parametrization"]["nu"], 1);
}

TEST_F(Cli, CatalogBuildWithLambdaAndLevels) {
    const Result r = run({"catalog", "build", "hp-family", "--lambda", "0,1", "--p", "0", "--levels", "3"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["levels"].size(), 4u);
    EXPECT_EQ(run({"catalog", "build", "primal-phi4"}).code, kExitInvalidInput);
    EXPECT_EQ(run({"catalog", "build", "nope"}).code, kExitInvalidInput);
    EXPECT_EQ(run({"catalog", "build", "hp-family", "--lambda", "x"}).code, kExitInvalidInput);
}

TEST_F(Cli, CatalogListHasEveryEntry) {
    const Result r = run({"catalog", "list"});
    ASSERT_EQ(r.code, kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.size(), 8u);
    EXPECT_EQ(j[0]["name"], "primal-phi4");
    EXPECT_TRUE(j[0].contains("expectedProperties"));
}

TEST_F(Cli, CheckPerturbedQuadraticFails) {
    const Result r = run({"check", scheme("perturbed-quadratic"), "--space", kData + "/spaces/constants.json"});
    EXPECT_EQ(r.code, kExitExpectationFailed) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_FALSE(j["pass"].get<bool>());
    EXPECT_FALSE(j["reproduction"]["holds"].get<bool>());
}

TEST_F(Cli, CheckCatalogExpectationsPass) {
    for (const char* n : {"primal-phi4", "dual-phi3", "similar-not-equivalent", "h0", "bspline-2"}) {
        const Result r = run({"check", scheme(n), "--levels", "16"});
        EXPECT_EQ(r.code, kExitOk) << n << "\n" << r.out;
    }
    const Result r = run({"check", scheme("primal-phi4"), "--space", kData + "/spaces/phi4.json", "--csv", path("csv")});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_TRUE(fs::exists(path("csv")));
    EXPECT_FALSE(fs::is_empty(path("csv")));
}

TEST_F(Cli, CheckNonCatalogNeedsSpace) {
    EXPECT_EQ(run({"check", scheme("chaikin-table")}).code, kExitInvalidInput);
    EXPECT_EQ(run({"check", scheme("chaikin-table"), "--space", kData + "/spaces/constants.json"}).code, kExitOk);
}

TEST_F(Cli, SubdivideHatDelta) {
    const Result r = run({"subdivide", scheme("bspline-1"), "--data", kData + "/inputs/delta.csv", "--steps", "1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::istringstream lines(r.out);
    std::string header, a, b, c;
    std::getline(lines, header);
    std::getline(lines, a);
    std::getline(lines, b);
    std::getline(lines, c);
    EXPECT_EQ(header, "index,t,value,exact");
    EXPECT_EQ(a.substr(0, a.rfind(',')), "-1,-0.5,0.5");
    EXPECT_EQ(b.substr(0, b.rfind(',')), "0,0,1");
    EXPECT_EQ(c.substr(0, c.rfind(',')), "1,0.5,0.5");
}

TEST_F(Cli, SubdivideOutputIsByteStable) {
    const std::string data = write("d.csv", "index,value\n-2,0.3\n-1,-1.7\n0,2\n1,0.125\n");
    const auto a = run({"subdivide", scheme("primal-phi4"), "--data", data, "--steps", "3"});
    const auto b = run({"subdivide", scheme("primal-phi4"), "--data", data, "--steps", "3"});
    ASSERT_EQ(a.code, kExitOk);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.find('\r'), std::string::npos);
}

TEST_F(Cli, MalformedJsonReportsLocation) {
    const std::string bad = write("bad.json", "{\n  \"kind\": catalog\n}\n");
    const Result r = run({"check", bad});
    EXPECT_EQ(r.code, kExitInvalidInput);
    EXPECT_NE(r.err.find("bad.json:2:"), std::string::npos) << r.err;
}

TEST_F(Cli, SchemaErrorsAndBadArguments) {
    const std::string extra = write("x.json", R"({"kind": "catalog", "name": "bspline-1", "speed": 3})");
    EXPECT_EQ(run({"check", extra}).code, kExitInvalidInput);
    EXPECT_EQ(run({"subdivide", scheme("bspline-1")}).code, kExitInvalidInput);
    EXPECT_EQ(run({"frobnicate"}).code, kExitInvalidInput);
    EXPECT_EQ(run({"order", scheme("bspline-1"), "--f", "tan"}).code, kExitInvalidInput);
    EXPECT_EQ(run({"order", scheme("bspline-1"), "--mlist", "8:3"}).code, kExitInvalidInput);
    EXPECT_EQ(run({"subdivide", scheme("bspline-1"), "--data", path("missing.csv")}).code, kExitInvalidInput);
    const std::string junk = write("junk.csv", "0,1\n1,oops\n");
    EXPECT_EQ(run({"subdivide", scheme("bspline-1"), "--data", junk}).code, kExitInvalidInput);
}

TEST_F(Cli, BlowupExitsThree) {
    const std::string big = write("big.json", R"({"kind": "table", "masks": [{"taps": [8, 8], "lowDegree": 0}]})");
    const Result r = run({"subdivide", big, "--data", kData + "/inputs/delta.csv", "--steps", "20"});
    EXPECT_EQ(r.code, kExitBlowup);
    EXPECT_EQ(run({"blf", big, "--k", "20"}).code, kExitBlowup);
}

TEST_F(Cli, BlfWithStationaryTable) {
    const Result r = run({"blf", scheme("h0"), "--k", "9", "--stationary", kData + "/masks/hat.json", "--mlist", "0,2,4",
                          "--csv", path("out")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto gap = r.out.find("\n\n");
    ASSERT_NE(gap, std::string::npos);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "index,x,value");
    EXPECT_TRUE(fs::exists(path("out") + "/blf_samples.csv"));
    EXPECT_TRUE(fs::exists(path("out") + "/blf_convergence.csv"));
    const Result j = run({"blf", scheme("h0"), "--k", "6", "--json"});
    EXPECT_TRUE(nlohmann::json::parse(j.out).contains("samples"));
}

TEST_F(Cli, OrderReportsFittedOrder) {
    const Result r = run({"order", scheme("bspline-1"), "--f", "sin", "--gamma", "2", "--mlist", "3:8"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.err.find("fitted order 1.9"), std::string::npos) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "m,h,error,cauchy,local_order");
    const Result j = run({"order", scheme("bspline-1"), "--json"});
    const auto doc = nlohmann::json::parse(j.out);
    EXPECT_NEAR(doc["fittedOrder"].get<double>(), 2.0, 0.2);
}

TEST_F(Cli, TolEnvironmentOverride) {
    ::setenv("SUBDIV_TOL", "1e-30", 1);
    const Result r = run({"check", scheme("primal-phi4"), "--levels", "16"});
    ::unsetenv("SUBDIV_TOL");
    EXPECT_EQ(r.code, kExitExpectationFailed);
}
