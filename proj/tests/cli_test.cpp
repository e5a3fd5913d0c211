#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

using json = nlohmann::json;

struct CliResult {
    int exit_code = -1;
    std::string out;
};

// Runs the built binary with stderr folded into the captured stream so
// error-path tests stay quiet on the terminal.
CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(DFGS_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    CliResult result;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        result.out.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string scratch_path(const std::string& name) {
    return testing::TempDir() + "dfgs_cli_" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    EXPECT_TRUE(in.is_open()) << path;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    ASSERT_TRUE(out.good()) << path;
}

TEST(GenDbTest, WritesSortedSolutionsInRange) {
    const std::string path = scratch_path("gen.json");
    const CliResult res = run_cli("gen-db --n 4 --m 2 --seed 7 --out " + path);
    ASSERT_EQ(res.exit_code, 0) << res.out;
    const json db = json::parse(slurp(path));
    EXPECT_EQ(db.at("n").get<int>(), 4);
    const auto sols = db.at("solutions").get<std::vector<std::uint64_t>>();
    ASSERT_EQ(sols.size(), 2u);
    EXPECT_LT(sols[0], sols[1]);
    EXPECT_LT(sols[1], 16u);
}

TEST(GenDbTest, SameSeedSameBytes) {
    const std::string a = scratch_path("gen_a.json");
    const std::string b = scratch_path("gen_b.json");
    ASSERT_EQ(run_cli("gen-db --n 6 --m 5 --seed 99 --out " + a).exit_code, 0);
    ASSERT_EQ(run_cli("gen-db --n 6 --m 5 --seed 99 --out " + b).exit_code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
}

TEST(GenDbTest, TooManySolutionsIsAnArgumentError) {
    const CliResult res = run_cli("gen-db --n 4 --m 20 --seed 1 --out " + scratch_path("no.json"));
    EXPECT_EQ(res.exit_code, 2);
}

TEST(GenDbTest, UnwritablePathIsAnIoError) {
    const CliResult res = run_cli("gen-db --n 4 --m 2 --seed 1 --out /nonexistent-dir/db.json");
    EXPECT_EQ(res.exit_code, 3);
}

TEST(RunTest, EmitsOneJsonRecordAndRepeatsByteIdentically) {
    const std::string db = scratch_path("run_db.json");
    ASSERT_EQ(run_cli("gen-db --n 6 --m 3 --seed 11 --out " + db).exit_code, 0);
    const std::string args = "run --db " + db + " --strategy dfgs --p 4 --nu 4 --seed 21";
    const CliResult first = run_cli(args);
    ASSERT_EQ(first.exit_code, 0) << first.out;
    EXPECT_EQ(first.out, run_cli(args).out);

    const json rec = json::parse(first.out);
    EXPECT_EQ(rec.at("n").get<int>(), 6);
    EXPECT_EQ(rec.at("m").get<int>(), 3);
    EXPECT_EQ(rec.at("strategy").get<std::string>(), "dfgs");
    EXPECT_TRUE(rec.at("log").contains("oracle_queries"));
    EXPECT_TRUE(rec.at("totals").contains("verifications"));
    EXPECT_FALSE(rec.contains("elapsed_ms")) << "timing stays off unless asked for";
}

TEST(RunTest, ClassicalStrategyAlwaysSucceeds) {
    const std::string db = scratch_path("classical_db.json");
    ASSERT_EQ(run_cli("gen-db --n 5 --m 4 --seed 3 --out " + db).exit_code, 0);
    const CliResult res = run_cli("run --db " + db + " --strategy classical");
    ASSERT_EQ(res.exit_code, 0);
    const json rec = json::parse(res.out);
    EXPECT_TRUE(rec.at("success").get<bool>());
    EXPECT_EQ(rec.at("found").size(), 4u);
    EXPECT_EQ(rec.at("totals").at("verifications").get<int>(), 32);
}

TEST(RunTest, EmptyDatabaseFindsNothingAndSucceeds) {
    const std::string db = scratch_path("empty_db.json");
    spit(db, "{\"n\":5,\"solutions\":[]}\n");
    const CliResult res = run_cli("run --db " + db + " --strategy dfgs --p 4 --nu 2 --seed 9");
    ASSERT_EQ(res.exit_code, 0);
    const json rec = json::parse(res.out);
    EXPECT_TRUE(rec.at("found").empty());
    EXPECT_TRUE(rec.at("success").get<bool>());
}

TEST(RunTest, CsvFormatUsesTheSweepSchema) {
    const std::string db = scratch_path("csv_db.json");
    ASSERT_EQ(run_cli("gen-db --n 5 --m 2 --seed 13 --out " + db).exit_code, 0);
    const CliResult res = run_cli("run --db " + db + " --strategy naive --p 2 --nu 2 --seed 17 --format csv");
    ASSERT_EQ(res.exit_code, 0);
    std::istringstream lines(res.out);
    std::string header, row, extra;
    ASSERT_TRUE(std::getline(lines, header));
    ASSERT_TRUE(std::getline(lines, row));
    EXPECT_FALSE(std::getline(lines, extra));
    EXPECT_EQ(header,
              "n,m,p,nu,strategy,seed,oracle_queries,partial_searches,verifications,success,"
              "elapsed_ms");
    EXPECT_EQ(row.substr(0, 17), "5,2,2,2,naive,17,");
    EXPECT_EQ(row.substr(row.size() - 6), ",0.000") << "timing column is zero without --timing";
}

TEST(RunTest, MissingDatabaseIsAnIoError) {
    EXPECT_EQ(run_cli("run --db " + scratch_path("absent.json") + " --strategy dfgs").exit_code, 3);
}

TEST(RunTest, UnknownStrategyIsAnArgumentError) {
    const std::string db = scratch_path("strat_db.json");
    ASSERT_EQ(run_cli("gen-db --n 4 --m 1 --seed 2 --out " + db).exit_code, 0);
    EXPECT_EQ(run_cli("run --db " + db + " --strategy bogus").exit_code, 2);
}

TEST(RunTest, MalformedDatabaseIsRejected) {
    const std::string db = scratch_path("mangled_db.json");
    spit(db, "{\"n\":4,\"solutions\":[1,1]}\n");
    EXPECT_NE(run_cli("run --db " + db + " --strategy dfgs").exit_code, 0);
}

std::string sweep_spec(const std::string& out_path) {
    json spec;
    spec["cells"] = json::array({{{"n", 4}, {"m", 1}}, {{"n", 5}, {"m", 2}}});
    spec["p"] = {2};
    spec["nu"] = {1};
    spec["strategies"] = {"dfgs", "naive"};
    spec["trials"] = 3;
    spec["base_seed"] = 400;
    spec["out"] = out_path;
    spec["format"] = "csv";
    return spec.dump();
}

TEST(SweepTest, RowCountHeaderAndRerunIdentity) {
    const std::string spec_path = scratch_path("sweep_spec.json");
    const std::string out_path = scratch_path("sweep_out.csv");
    spit(spec_path, sweep_spec(out_path));
    ASSERT_EQ(run_cli("sweep " + spec_path).exit_code, 0);
    const std::string first = slurp(out_path);

    std::istringstream lines(first);
    std::vector<std::string> rows;
    std::string line;
    while (std::getline(lines, line)) rows.push_back(line);
    ASSERT_EQ(rows.size(), 13u) << "header + 2 cells x 2 strategies x 3 trials";
    EXPECT_EQ(rows[0],
              "n,m,p,nu,strategy,seed,oracle_queries,partial_searches,verifications,success,"
              "elapsed_ms");
    EXPECT_EQ(rows[1].substr(0, 16), "4,1,2,1,dfgs,400");
    EXPECT_EQ(rows[2].substr(0, 17), "4,1,2,1,naive,400");

    ASSERT_EQ(run_cli("sweep " + spec_path).exit_code, 0);
    EXPECT_EQ(slurp(out_path), first) << "sweeps are byte-reproducible";
}

TEST(SweepTest, StrategiesShareTheTrialDatabaseAndSeed) {
    // The naive and dfgs rows of one trial must describe the same instance:
    // the seed column matches and classical row confirms the m per cell.
    const std::string spec_path = scratch_path("pair_spec.json");
    const std::string out_path = scratch_path("pair_out.csv");
    json spec = json::parse(sweep_spec(out_path));
    spec["strategies"] = {"classical", "classical"};
    spit(spec_path, spec.dump());
    ASSERT_EQ(run_cli("sweep " + spec_path).exit_code, 0);
    std::istringstream lines(slurp(out_path));
    std::string header, a, b;
    std::getline(lines, header);
    while (std::getline(lines, a) && std::getline(lines, b)) {
        EXPECT_EQ(a, b) << "identical strategy twice in one trial must tie exactly";
    }
}

TEST(SweepTest, OversizedCellIsRejectedBeforeRunning) {
    const std::string spec_path = scratch_path("bad_spec.json");
    const std::string out_path = scratch_path("bad_out.csv");
    json spec = json::parse(sweep_spec(out_path));
    spec["cells"].push_back({{"n", 3}, {"m", 9}});
    spit(spec_path, spec.dump());
    EXPECT_EQ(run_cli("sweep " + spec_path).exit_code, 2);
    std::ifstream out(out_path);
    EXPECT_FALSE(out.is_open()) << "no output file for a rejected spec";
}

TEST(SweepTest, MissingSpecIsAnIoError) {
    EXPECT_EQ(run_cli("sweep " + scratch_path("ghost_spec.json")).exit_code, 3);
}

TEST(PredictTest, EmitsTheCostModelRecord) {
    const CliResult res = run_cli("predict --n 8 --p 4 --m 2");
    ASSERT_EQ(res.exit_code, 0);
    const json rec = json::parse(res.out);
    EXPECT_EQ(rec.at("N").get<int>(), 256);
    EXPECT_EQ(rec.at("max_depth").get<int>(), 3);
    EXPECT_EQ(rec.at("expected_active_blocks").size(), 4u);
    EXPECT_NEAR(rec.at("predicted_cost").get<double>(), 22.875, 1e-9);
    EXPECT_NEAR(rec.at("predicted_cost_bound").get<double>(), 32.0, 1e-9);
    EXPECT_EQ(res.out, run_cli("predict --n 8 --p 4 --m 2").out);
}

TEST(PredictTest, MissingArgumentsAreAnArgumentError) {
    EXPECT_EQ(run_cli("predict --n 8").exit_code, 2);
}

}  // namespace
