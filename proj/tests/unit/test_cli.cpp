#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <dqw/ensembles.hpp>
#include <dqw/errors.hpp>

#include "cli.hpp"

namespace {

using nlohmann::json;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = dqw::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json call_json(std::vector<std::string> args) {
    const Result r = call(std::move(args));
    EXPECT_EQ(r.code, 0) << r.err;
    return json::parse(r.out);
}

std::string temp_path(const std::string& name) { return std::string(DQW_TEST_TMPDIR) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double mass_at(const json& mass, long k) {
    for (const auto& e : mass) {
        if (e.at(0).get<long>() == k) return e.at(1).get<double>();
    }
    return 0.0;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override { unsetenv("DQW_SEED"); }
    void TearDown() override { unsetenv("DQW_SEED"); }
};

TEST_F(Cli, RunHadamardFourSteps) {
    const json j = call_json({"run", "--ensemble", "fixed_hadamard", "--init", "1,0", "--n", "4"});
    EXPECT_EQ(j.at("n"), 4);
    const double expected[] = {1.0, 10.0, 2.0, 2.0, 1.0};
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(mass_at(j.at("mass"), -4 + 2 * i), expected[i] / 16.0, 1e-14);
    EXPECT_EQ(j.at("config").at("command"), "run");
}

TEST_F(Cli, RunZeroStepsIsPointMass) {
    const json j = call_json({"run", "--n", "0"});
    ASSERT_EQ(j.at("mass").size(), 1u);
    EXPECT_NEAR(mass_at(j.at("mass"), 0), 1.0, 1e-15);
}

TEST_F(Cli, ConfigErrorsExitTwo) {
    EXPECT_EQ(call({"run", "--ensemble", "nope"}).code, dqw::cli::kConfigError);
    EXPECT_EQ(call({"run", "--ensemble", "shapira"}).code, dqw::cli::kConfigError);
    EXPECT_EQ(call({"run", "--ensemble", "shapira", "--sigma", "-1"}).code, dqw::cli::kConfigError);
    EXPECT_EQ(call({"run", "--init", "2,0"}).code, dqw::cli::kConfigError);
    EXPECT_EQ(call({"run", "--config", temp_path("does_not_exist.json")}).code, dqw::cli::kConfigError);
    EXPECT_EQ(call({"frobnicate"}).code, dqw::cli::kConfigError);
    EXPECT_EQ(call({"run", "--format", "xml"}).code, dqw::cli::kConfigError);
    const Result r = call({"run", "--ensemble", "nope"});
    EXPECT_FALSE(r.err.empty());
    EXPECT_TRUE(r.out.empty());
}

TEST_F(Cli, MalformedConfigFileExitsTwo) {
    const std::string path = temp_path("malformed.json");
    std::ofstream(path) << "{ not json";
    EXPECT_EQ(call({"run", "--config", path}).code, dqw::cli::kConfigError);
    std::ofstream(path) << R"({"ensemble": "shapira", "params": {"sigma": 0}})";
    EXPECT_EQ(call({"run", "--config", path}).code, dqw::cli::kConfigError);
}

TEST_F(Cli, AverageIsDeterministicAndReplayable) {
    const std::vector<std::string> args{"average", "--ensemble", "mackay_uniform", "--init", "caseII", "--n", "8",
                                        "--trials", "2000", "--audit-draws", "1000", "--seed", "17"};
    const Result first = call(args);
    ASSERT_EQ(first.code, 0) << first.err;
    EXPECT_EQ(call(args).out, first.out);

    const std::string path = temp_path("average_out.json");
    std::ofstream(path) << first.out;
    const Result replay = call({"average", "--config", path});
    ASSERT_EQ(replay.code, 0) << replay.err;
    EXPECT_EQ(replay.out, first.out);

    const json j = json::parse(first.out);
    EXPECT_EQ(j.at("trials"), 2000);
    EXPECT_EQ(j.at("seed"), 17);
    EXPECT_EQ(j.at("config").at("ensemble").at("ensemble"), "mackay_uniform");
    EXPECT_TRUE(j.contains("moment_audit"));
}

TEST_F(Cli, AverageWorkersDoNotChangeOutput) {
    const std::vector<std::string> base{"average", "--n", "6", "--trials", "1500", "--audit-draws", "100", "--seed", "4"};
    auto with_workers = base;
    with_workers.insert(with_workers.end(), {"--workers", "3"});
    const json a = call_json(base);
    json b = call_json(with_workers);
    EXPECT_EQ(a.at("mean"), b.at("mean"));
    EXPECT_EQ(a.at("stderr"), b.at("stderr"));
    EXPECT_EQ(a.at("config_digest"), b.at("config_digest"));
}

TEST_F(Cli, OutFlagWritesFile) {
    const std::string path = temp_path("run_out.json");
    std::remove(path.c_str());
    const Result r = call({"run", "--n", "3", "--out", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(json::parse(slurp(path)).at("n"), 3);
}

TEST_F(Cli, ShapiraAuditFlagsCrossMoment) {
    const json j = call_json({"average", "--ensemble", "shapira", "--sigma", "0.866", "--n", "4", "--trials", "100",
                              "--audit-draws", "200000", "--seed", "1"});
    const json& audit = j.at("moment_audit");
    EXPECT_EQ(audit.at("conditions").at("second_moments"), "satisfied");
    EXPECT_EQ(audit.at("conditions").at("cross_moment"), "violated");
}

TEST_F(Cli, ExactTwoPointMatchesBinomial) {
    const json j = call_json({"exact", "--ensemble", "ribeiro_two_point", "--xi", "1.0", "--n", "8"});
    EXPECT_LE(j.at("max_abs_deviation_from_binomial").get<double>(), 1e-12);
    const json four = call_json({"exact", "--ensemble", "ribeiro_two_point", "--xi", "0.7853981633974483", "--n", "4"});
    EXPECT_NEAR(mass_at(four.at("mass"), 0), 6.0 / 16.0, 1e-12);
}

TEST_F(Cli, ExactFixedHadamardDeviates) {
    const json j = call_json({"exact", "--ensemble", "fixed_hadamard", "--init", "1,0", "--n", "4"});
    EXPECT_GT(j.at("tv_to_binomial").get<double>(), 0.05);
}

TEST_F(Cli, ExactContinuousEnsembleIsInfeasible) {
    const Result r = call({"exact", "--ensemble", "mackay_uniform", "--n", "4"});
    EXPECT_EQ(r.code, dqw::cli::kInfeasible);
    EXPECT_FALSE(r.err.empty());
    EXPECT_EQ(call({"exact", "--ensemble", "ribeiro_two_point", "--xi", "0.3", "--init", "caseII", "--n", "4"}).code,
              dqw::cli::kInfeasible);
}

TEST_F(Cli, MomentsShapiraCrossMoment) {
    const json j = call_json({"moments", "--ensemble", "shapira", "--sigma", "0.8660254037844386", "--draws",
                              "1000000", "--seed", "5"});
    const json& est = j.at("estimates").at("a*conj(c)");
    const double mu = dqw::mu_shapira(std::sqrt(3.0) / 2.0);
    EXPECT_LE(std::abs(est.at("re").get<double>() - mu), 4.0 * est.at("stderr").get<double>());
    EXPECT_EQ(j.at("conditions").at("cross_moment"), "violated");
}

TEST_F(Cli, MomentsFiniteSupportAreExact) {
    const json j = call_json({"moments", "--ensemble", "ribeiro_two_point", "--xi", "0.4"});
    EXPECT_EQ(j.at("exact"), true);
    EXPECT_EQ(j.at("conditions").at("second_moments"), "satisfied");
    EXPECT_EQ(j.at("conditions").at("cross_moment"), "satisfied");
}

TEST_F(Cli, CoeffsReconstructAmplitudes) {
    const json j = call_json({"coeffs", "--n", "4", "--seed", "1"});
    EXPECT_LE(j.at("max_reconstruction_residual").get<double>(), 1e-10);
    EXPECT_EQ(j.at("sites").size(), 5u);
}

TEST_F(Cli, VarianceClassical) {
    const json j = call_json({"variance", "--walker", "classical", "--n", "10..100"});
    ASSERT_EQ(j.at("rows").size(), 91u);
    for (const auto& row : j.at("rows")) {
        EXPECT_NEAR(row.at("variance").get<double>(), row.at("n").get<double>(), 1e-10 * row.at("n").get<double>());
    }
}

TEST_F(Cli, VarianceHadamardCsv) {
    const Result r = call({"variance", "--walker", "hadamard", "--n", "20,40", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line.rfind("# config: ", 0), 0u);
    std::getline(lines, line);
    EXPECT_EQ(line, "n,mean,variance,variance_over_n,variance_over_n2");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    EXPECT_EQ(rows, 2);
    EXPECT_EQ(call({"variance", "--n", "10,5"}).code, dqw::cli::kConfigError);
}

TEST_F(Cli, SeedPrecedence) {
    const std::string path = temp_path("seeded.json");
    std::ofstream(path) << R"({"ensemble": "ribeiro_uniform", "params": {}, "seed": 11})";
    const std::vector<std::string> base{"run", "--n", "5", "--config", path};
    EXPECT_EQ(call_json(base).at("config").at("seed"), 11);

    setenv("DQW_SEED", "22", 1);
    EXPECT_EQ(call_json(base).at("config").at("seed"), 22);

    auto flagged = base;
    flagged.insert(flagged.end(), {"--seed", "33"});
    EXPECT_EQ(call_json(flagged).at("config").at("seed"), 33);

    setenv("DQW_SEED", "not-a-seed", 1);
    EXPECT_EQ(call(base).code, dqw::cli::kConfigError);
}

TEST_F(Cli, DifferentSeedsDiffer) {
    const json a = call_json({"run", "--n", "6", "--seed", "1"});
    const json b = call_json({"run", "--n", "6", "--seed", "2"});
    EXPECT_NE(a.at("mass"), b.at("mass"));
}

TEST(ParseNList, Forms) {
    using dqw::cli::parse_n_list;
    EXPECT_EQ(parse_n_list("3..6"), (std::vector<std::size_t>{3, 4, 5, 6}));
    EXPECT_EQ(parse_n_list("10..40:10"), (std::vector<std::size_t>{10, 20, 30, 40}));
    EXPECT_EQ(parse_n_list("10,20,50"), (std::vector<std::size_t>{10, 20, 50}));
    EXPECT_EQ(parse_n_list("7"), (std::vector<std::size_t>{7}));
    for (const char* bad : {"", "a..b", "10..5", "10..20:0", "1,,2", "-3"}) {
        EXPECT_THROW(parse_n_list(bad), dqw::ConfigError) << bad;
    }
}

}  // namespace
