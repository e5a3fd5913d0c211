#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "dfgs/grover.hpp"

namespace dfgs {

struct SearchParams {
    int split = 2;                 // p: sub-blocks per recursion level, power of two >= 2
    int retry = 1;                 // nu: layer-0 failure budget, 1 <= nu <= p
    IterationSchedule schedule{};  // template; adaptive guess restarts per frame
    std::uint64_t seed = 0;
    std::uint64_t query_ceiling = 0;  // 0 = default 50 * p * N
};

// ceil(retry / (depth+1)), never below 1: deeper layers tolerate fewer
// consecutive failures before backtracking.
int failure_budget(int retry, int depth);

struct SearchOutcome {
    std::vector<std::uint64_t> found;  // sorted
    QueryLog log;
    bool success = false;           // found equals the solution set (harness-side check)
    bool budget_exhausted = false;  // stopped by the global query ceiling
    double elapsed_ms = 0.0;
};

// Thrown internally when the global oracle-query ceiling is reached; the
// drivers catch it and return the truncated outcome with the flag set.
struct QueryCeilingReached {};

struct RecursionFrame {
    int depth = 0;
    // Marked-count guess the frame opens with. First descents (and the
    // root) open pristine at 1.0; the v-th descent into the same child
    // opens at the ladder's v-th rung, so a block whose frame gave up
    // early is probed deeper instead of repeating the shot that failed.
    double start_guess = 1.0;
};

struct SearchContext {
    const Database* db = nullptr;
    SearchParams params;
    int ell = 1;  // log2(split): address bits determined per level
    std::uint64_t ceiling = 0;
    EncoderConfig config;
    FoundSet found;
    QueryLog log;
    Rng rng;
};

SearchContext make_context(const Database& db, const SearchParams& params);

// One frame of the depth-first search. With n - r <= ell the frame owns a
// leaf block and exhausts it with full block searches until its consecutive
// no-result budget empties. Otherwise it repeatedly partial-searches for the
// next ell address bits, descends, and backtracks: an empty child return (or
// a pointer to a block this frame already descended into) costs one failure,
// a productive child resets the failure run and counts toward the split
// bound p. Returns the solutions found beneath this frame; everything is
// also accumulated into ctx.found.
std::set<std::uint64_t> dfgs_recurse(const RecursionFrame& frame, SearchContext& ctx);

// Full depth-first Grover search over the database.
SearchOutcome dfgs_search(const Database& db, const SearchParams& params);

// Flat baseline: full-register intercepted Grover repeated until `retry`
// consecutive attempts produce nothing new.
SearchOutcome repeated_grover_intercepted(const Database& db, const SearchParams& params);

// Flat baseline without interception: the oracle keeps marking all of M, so
// later rounds rediscover known solutions. Stops once every address is found
// or after retry * coupon-factor consecutive wasted rounds, the factor being
// the harmonic-number patience a coupon collector needs.
SearchOutcome repeated_grover_naive(const Database& db, const SearchParams& params);

// Ground truth: verifies every address once.
SearchOutcome classical_scan(const Database& db);

}  // namespace dfgs
