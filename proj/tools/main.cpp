#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "dfgs/metrics.hpp"
#include "dfgs/oracle.hpp"
#include "dfgs/search.hpp"
#include "json.hpp"

namespace {

using dfgs::Database;
using dfgs::SearchOutcome;
using dfgs::SearchParams;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitArgument = 2;
constexpr int kExitIo = 3;

// Raised for filesystem trouble so main can map it to the I/O exit code;
// everything argument-shaped travels as std::invalid_argument.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> kStrategies = {"dfgs", "intercepted", "naive", "classical"};

SearchOutcome run_strategy(const std::string& name, const Database& db,
                           const SearchParams& params) {
    if (name == "dfgs") return dfgs::dfgs_search(db, params);
    if (name == "intercepted") return dfgs::repeated_grover_intercepted(db, params);
    if (name == "naive") return dfgs::repeated_grover_naive(db, params);
    if (name == "classical") return dfgs::classical_scan(db);
    throw std::invalid_argument("unknown strategy: " + name);
}

std::string format_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", ms);
    return buf;
}

// The sweep schema; `run --format csv` reuses it so records stay mergeable.
const char* kCsvHeader = "n,m,p,nu,strategy,seed,oracle_queries,partial_searches,verifications,success,elapsed_ms";

std::string csv_row(int n, std::uint64_t m, int p, int nu, const std::string& strategy,
                    std::uint64_t seed, const SearchOutcome& out, bool timing) {
    std::string row;
    row += std::to_string(n) + ',' + std::to_string(m) + ',';
    row += std::to_string(p) + ',' + std::to_string(nu) + ',';
    row += strategy + ',' + std::to_string(seed) + ',';
    row += std::to_string(out.log.total_oracle_queries()) + ',';
    row += std::to_string(out.log.total_partial_searches()) + ',';
    row += std::to_string(out.log.total_verifications()) + ',';
    row += (out.success ? "1" : "0");
    row += ',' + format_ms(timing ? out.elapsed_ms : 0.0);
    return row;
}

json record_json(int n, std::uint64_t m, int p, int nu, const std::string& strategy,
                 std::uint64_t seed, const SearchOutcome& out, bool timing) {
    json rec;
    rec["n"] = n;
    rec["m"] = m;
    rec["p"] = p;
    rec["nu"] = nu;
    rec["strategy"] = strategy;
    rec["seed"] = seed;
    rec["found"] = out.found;
    rec["success"] = out.success;
    rec["budget_exhausted"] = out.budget_exhausted;
    rec["log"] = {{"oracle_queries", out.log.oracle_queries},
                  {"partial_searches", out.log.partial_searches},
                  {"base_searches", out.log.base_searches},
                  {"verifications", out.log.verifications},
                  {"productive_frames", out.log.productive_frames}};
    rec["totals"] = {{"oracle_queries", out.log.total_oracle_queries()},
                     {"partial_searches", out.log.total_partial_searches()},
                     {"base_searches", out.log.total_base_searches()},
                     {"verifications", out.log.total_verifications()}};
    if (timing) rec["elapsed_ms"] = out.elapsed_ms;
    return rec;
}

int cmd_gen_db(int n, std::uint64_t m, std::uint64_t seed, const std::string& out_path) {
    dfgs::Rng rng(seed);
    const Database db = dfgs::random_database(n, m, rng);
    dfgs::save_database(db, out_path);
    return kExitOk;
}

int cmd_run(const std::string& db_path, const std::string& strategy, int p, int nu,
            std::uint64_t seed, const std::string& format, bool timing) {
    const Database db = dfgs::load_database(db_path);
    SearchParams params;
    params.split = p;
    params.retry = nu;
    params.seed = seed;
    const SearchOutcome out = run_strategy(strategy, db, params);
    const std::uint64_t m = db.solutions.size();
    if (format == "csv") {
        std::cout << kCsvHeader << '\n'
                  << csv_row(db.num_qubits, m, p, nu, strategy, seed, out, timing) << '\n';
    } else {
        std::cout << record_json(db.num_qubits, m, p, nu, strategy, seed, out, timing).dump()
                  << '\n';
    }
    return kExitOk;
}

struct SweepSpec {
    std::vector<std::pair<int, std::uint64_t>> cells;  // (n, m)
    std::vector<int> splits;
    std::vector<int> retries;
    std::vector<std::string> strategies;
    int trials = 1;
    std::uint64_t base_seed = 0;
    std::string out_path;
    std::string format = "csv";
};

SweepSpec load_sweep_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open sweep spec: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed sweep spec: ") + e.what());
    }

    SweepSpec spec;
    try {
        for (const auto& cell : doc.at("cells")) {
            spec.cells.emplace_back(cell.at("n").get<int>(), cell.at("m").get<std::uint64_t>());
        }
        spec.splits = doc.at("p").get<std::vector<int>>();
        spec.retries = doc.at("nu").get<std::vector<int>>();
        spec.strategies = doc.at("strategies").get<std::vector<std::string>>();
        spec.trials = doc.at("trials").get<int>();
        spec.base_seed = doc.at("base_seed").get<std::uint64_t>();
        spec.out_path = doc.at("out").get<std::string>();
        if (doc.contains("format")) spec.format = doc.at("format").get<std::string>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed sweep spec: ") + e.what());
    }

    if (spec.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (spec.format != "csv" && spec.format != "json-lines") {
        throw std::invalid_argument("format must be csv or json-lines");
    }
    for (const auto& [n, m] : spec.cells) {
        if (n < 1 || n > 30) throw std::invalid_argument("cell n out of range");
        if (m > (std::uint64_t{1} << n)) throw std::invalid_argument("cell m exceeds 2^n");
    }
    for (const std::string& s : spec.strategies) {
        if (std::find(kStrategies.begin(), kStrategies.end(), s) == kStrategies.end()) {
            throw std::invalid_argument("unknown strategy: " + s);
        }
    }
    return spec;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_override,
              const std::string& format_override, bool timing) {
    SweepSpec spec = load_sweep_spec(spec_path);
    if (!out_override.empty()) spec.out_path = out_override;
    if (!format_override.empty()) spec.format = format_override;

    std::ofstream out(spec.out_path);
    if (!out) throw IoError("cannot open output: " + spec.out_path);
    if (spec.format == "csv") out << kCsvHeader << '\n';

    // One row per cell x p x nu x strategy x trial, in spec order. The
    // trial seed feeds database generation; the next draw of the same
    // stream seeds the run, so every strategy sees an identical instance
    // and an identical random stream within a trial.
    for (const auto& [n, m] : spec.cells) {
        for (int p : spec.splits) {
            for (int nu : spec.retries) {
                for (int trial = 0; trial < spec.trials; ++trial) {
                    const std::uint64_t trial_seed = spec.base_seed + trial;
                    dfgs::Rng rng(trial_seed);
                    const Database db = dfgs::random_database(n, m, rng);
                    SearchParams params;
                    params.split = p;
                    params.retry = nu;
                    params.seed = rng();
                    for (const std::string& strategy : spec.strategies) {
                        const SearchOutcome result = run_strategy(strategy, db, params);
                        if (spec.format == "csv") {
                            out << csv_row(n, m, p, nu, strategy, trial_seed, result, timing)
                                << '\n';
                        } else {
                            out << record_json(n, m, p, nu, strategy, trial_seed, result,
                                               timing)
                                       .dump()
                                << '\n';
                        }
                    }
                }
            }
        }
    }
    if (!out) throw IoError("write failed: " + spec.out_path);
    return kExitOk;
}

int cmd_predict(int n, int p, std::uint64_t m) {
    const std::uint64_t big_n = std::uint64_t{1} << n;
    const int depth = dfgs::max_depth(big_n, static_cast<std::uint64_t>(p));
    json rec;
    rec["n"] = n;
    rec["N"] = big_n;
    rec["p"] = p;
    rec["m"] = m;
    rec["max_depth"] = depth;
    std::vector<double> active;
    for (int k = 0; k <= depth; ++k) {
        active.push_back(dfgs::expected_active_blocks(p, k, m));
    }
    rec["expected_active_blocks"] = active;
    rec["predicted_cost"] = dfgs::predicted_cost(big_n, p, m);
    rec["predicted_cost_bound"] = dfgs::predicted_cost_bound(big_n, m);
    std::cout << rec.dump() << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"depth-first Grover search laboratory"};
    app.require_subcommand(1);

    int n = 4;
    std::uint64_t m = 1;
    int p = 2;
    int nu = 1;
    std::uint64_t seed = 0;
    std::string db_path;
    std::string out_path;
    std::string strategy = "dfgs";
    std::string format = "json-lines";
    bool timing = false;

    CLI::App* gen = app.add_subcommand("gen-db", "generate a random database file");
    gen->add_option("--n", n, "address qubits")->required();
    gen->add_option("--m", m, "number of solutions")->required();
    gen->add_option("--seed", seed, "rng seed");
    gen->add_option("--out", out_path, "output path")->required();

    CLI::App* run = app.add_subcommand("run", "run one strategy on a database file");
    run->add_option("--db", db_path, "database file")->required();
    run->add_option("--strategy", strategy, "dfgs|intercepted|naive|classical")
        ->check(CLI::IsMember(kStrategies));
    run->add_option("--p", p, "sub-blocks per level (power of two)");
    run->add_option("--nu", nu, "layer-0 failure budget");
    run->add_option("--seed", seed, "rng seed");
    run->add_option("--format", format, "csv|json-lines")
        ->check(CLI::IsMember({"csv", "json-lines"}));
    run->add_flag("--timing", timing, "include wall-clock time (breaks byte determinism)");

    std::string spec_path;
    std::string sweep_format;
    CLI::App* sweep = app.add_subcommand("sweep", "run a sweep spec over cells and strategies");
    sweep->add_option("spec", spec_path, "sweep spec json")->required();
    sweep->add_option("--out", out_path, "override the spec's output path");
    sweep->add_option("--format", sweep_format, "override the spec's format")
        ->check(CLI::IsMember({"csv", "json-lines"}));
    sweep->add_flag("--timing", timing, "include wall-clock time (breaks byte determinism)");

    CLI::App* predict = app.add_subcommand("predict", "evaluate the cost model");
    predict->add_option("--n", n, "address qubits")->required();
    predict->add_option("--p", p, "sub-blocks per level")->required();
    predict->add_option("--m", m, "number of solutions")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitArgument;
    }

    try {
        if (gen->parsed()) return cmd_gen_db(n, m, seed, out_path);
        if (run->parsed()) return cmd_run(db_path, strategy, p, nu, seed, format, timing);
        if (sweep->parsed()) return cmd_sweep(spec_path, out_path, sweep_format, timing);
        if (predict->parsed()) return cmd_predict(n, p, m);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitArgument;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}
