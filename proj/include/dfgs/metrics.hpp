#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace dfgs {

// Per-depth query accounting. One oracle query is one application of the
// intercepted phase flip to the state; partial/base searches count
// invocations; verifications count classical lookups. productive_frames
// counts recursion frames that returned at least one solution, which is the
// observable matched against expected_active_blocks.
struct QueryLog {
    std::vector<std::uint64_t> oracle_queries;
    std::vector<std::uint64_t> partial_searches;
    std::vector<std::uint64_t> base_searches;
    std::vector<std::uint64_t> verifications;
    std::vector<std::uint64_t> productive_frames;

    void add_oracle(int depth, std::uint64_t count);
    void add_partial_search(int depth);
    void add_base_search(int depth);
    void add_verification(int depth);
    void add_productive_frame(int depth);

    std::uint64_t total_oracle_queries() const;
    std::uint64_t total_partial_searches() const;
    std::uint64_t total_base_searches() const;
    std::uint64_t total_verifications() const;

    int depth_count() const;
};

// Entrywise sum; depth arrays padded to the longer log.
QueryLog merge(const QueryLog& a, const QueryLog& b);

// Deepest recursion layer lambda = ceil(n/l) - 1 for N = 2^n, p = 2^l,
// computed on the exponents. Both arguments must be powers of two, p <= N.
int max_depth(std::uint64_t database_size, std::uint64_t split);

// Expected number of depth-k blocks holding at least one of m uniformly
// placed solutions: p^k * (1 - (1 - p^-k)^m).
double expected_active_blocks(std::uint64_t split, int depth, std::uint64_t solutions);

// Expected oracle queries of the depth-first search: layer-by-layer active
// blocks times the per-layer partial-search budget, plus the base-layer full
// searches. Bounded above by predicted_cost_bound.
double predicted_cost(std::uint64_t database_size, std::uint64_t split, std::uint64_t solutions);

// The m*sqrt(N) upper bound the summation telescopes into.
double predicted_cost_bound(std::uint64_t database_size, std::uint64_t solutions);

// Oracle queries of one partial search over a block of L elements split p
// ways: sqrt(L) - sqrt(L/p).
double partial_query_budget(double block_len, double split);

struct PowerLawFit {
    double exponent = 0.0;   // a in y = C * x^a
    double scale = 0.0;      // C
    double rms_residual = 0.0;  // root-mean-square residual in log space
};

// Least squares on (log x, log y). Requires >= 3 points, all positive.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points);

}  // namespace dfgs
