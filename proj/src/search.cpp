#include "dfgs/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

namespace dfgs {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t bits_value(const Bits& bits) {
    std::uint64_t value = 0;
    for (std::uint8_t b : bits) value = (value << 1) | b;
    return value;
}

void validate_params(const Database& db, const SearchParams& params) {
    const int p = params.split;
    if (p < 2 || (p & (p - 1)) != 0) {
        throw std::invalid_argument("split must be a power of two, at least 2");
    }
    if (static_cast<std::uint64_t>(p) > db.size()) {
        throw std::invalid_argument("split exceeds the database");
    }
    if (params.retry < 1 || params.retry > p) {
        throw std::invalid_argument("retry budget must lie in [1, split]");
    }
}

// Stops the run at the ceiling and clamps the next draw so the total can
// never step past it.
void enforce_ceiling(const SearchContext& ctx, IterationSchedule& schedule) {
    const std::uint64_t total = ctx.log.total_oracle_queries();
    if (total >= ctx.ceiling) throw QueryCeilingReached{};
    const std::uint64_t remaining = ctx.ceiling - total;
    if (remaining < static_cast<std::uint64_t>(schedule.cap)) {
        schedule.cap = static_cast<int>(remaining);
    }
}

void finish_outcome(SearchOutcome& out, const Database& db, const FoundSet& found,
                    Clock::time_point start) {
    out.found.assign(found.values.begin(), found.values.end());
    out.success = out.found == db.solutions;
    out.elapsed_ms = ms_since(start);
}

// Patience multiplier for the naive baseline: the harmonic number of the
// address space, the expected per-coupon overhead of collection with
// replacement.
std::uint64_t coupon_factor(std::uint64_t dim) {
    const double h = std::log(static_cast<double>(dim)) + 0.57721566490153286 +
                     0.5 / static_cast<double>(dim);
    return static_cast<std::uint64_t>(std::max(1.0, std::ceil(h)));
}

}  // namespace

int failure_budget(int retry, int depth) {
    if (retry < 1) throw std::invalid_argument("retry budget must be positive");
    if (depth < 0) throw std::invalid_argument("negative depth");
    return (retry + depth) / (depth + 1);
}

SearchContext make_context(const Database& db, const SearchParams& params) {
    validate_params(db, params);
    SearchContext ctx;
    ctx.db = &db;
    ctx.params = params;
    ctx.ell = 0;
    while ((1 << (ctx.ell + 1)) <= params.split) ++ctx.ell;
    ctx.ceiling = params.query_ceiling != 0
                      ? params.query_ceiling
                      : 50 * static_cast<std::uint64_t>(params.split) * db.size();
    ctx.config = make_config(db.num_qubits);
    ctx.rng.seed(params.seed);
    return ctx;
}

std::set<std::uint64_t> dfgs_recurse(const RecursionFrame& frame, SearchContext& ctx) {
    const int n = ctx.db->num_qubits;
    const int r = ctx.config.prefix_len;
    const int k = frame.depth;
    if (r != k * ctx.ell) throw std::logic_error("frame depth out of step with the prefix");
    const int budget = failure_budget(ctx.params.retry, k);
    IterationSchedule schedule = ctx.params.schedule;
    if (schedule.mode == IterationSchedule::Mode::kAdaptive) {
        schedule.marked_guess = frame.start_guess;
    }
    std::set<std::uint64_t> results;

    if (n - r <= ctx.ell) {
        // Leaf block: run full searches until the no-result budget empties.
        int failures = 0;
        while (failures < budget) {
            enforce_ceiling(ctx, schedule);
            const auto res =
                block_grover_search(*ctx.db, ctx.found, ctx.config, schedule, ctx.rng, ctx.log, k);
            if (res) {
                ctx.found.insert_new(*res);
                results.insert(*res);
                failures = 0;
                schedule.record_hit();
            } else {
                ++failures;
                schedule.record_miss();
            }
        }
    } else {
        int count = 0;
        int failures = 0;
        std::map<std::uint64_t, int> descended;
        while (count < ctx.params.split && failures < budget) {
            enforce_ceiling(ctx, schedule);
            const Bits bits = partial_grover_search(*ctx.db, ctx.found, ctx.config, ctx.ell,
                                                    schedule, ctx.rng, ctx.log, k);
            // A pointer to a block this frame already walked costs a failure
            // up front; the descent still happens, since the repeat may mean
            // the child gave up early rather than that the block is empty —
            // and it opens one rung deeper per prior visit.
            const int visit = ++descended[bits_value(bits)];
            if (visit > 1) ++failures;

            ctx.config = extend_prefix(ctx.config, bits);
            std::set<std::uint64_t> ret;
            try {
                ret = dfgs_recurse({k + 1, std::pow(schedule.growth, visit - 1)}, ctx);
            } catch (...) {
                ctx.config = retract_prefix(ctx.config, ctx.ell);
                throw;
            }
            ctx.config = retract_prefix(ctx.config, ctx.ell);

            if (ret.empty()) {
                ++failures;
                schedule.record_miss();
            } else {
                results.insert(ret.begin(), ret.end());
                ++count;
                failures = 0;
                schedule.record_hit();
            }
        }
    }

    if (!results.empty()) ctx.log.add_productive_frame(k);
    return results;
}

SearchOutcome dfgs_search(const Database& db, const SearchParams& params) {
    const auto start = Clock::now();
    SearchContext ctx = make_context(db, params);
    SearchOutcome out;
    try {
        dfgs_recurse(RecursionFrame{0}, ctx);
    } catch (const QueryCeilingReached&) {
        out.budget_exhausted = true;
    }
    if (ctx.config.prefix_len != 0) throw std::logic_error("prefix not fully retracted");
    out.log = std::move(ctx.log);
    finish_outcome(out, db, ctx.found, start);
    return out;
}

SearchOutcome repeated_grover_intercepted(const Database& db, const SearchParams& params) {
    const auto start = Clock::now();
    SearchContext ctx = make_context(db, params);
    SearchOutcome out;
    int failures = 0;
    try {
        while (failures < ctx.params.retry && ctx.found.size() < db.size()) {
            enforce_ceiling(ctx, ctx.params.schedule);
            const auto res = block_grover_search(db, ctx.found, ctx.config, ctx.params.schedule,
                                                 ctx.rng, ctx.log, 0);
            if (res) {
                ctx.found.insert_new(*res);
                failures = 0;
                ctx.params.schedule.record_hit();
            } else {
                ++failures;
                ctx.params.schedule.record_miss();
            }
        }
    } catch (const QueryCeilingReached&) {
        out.budget_exhausted = true;
    }
    out.log = std::move(ctx.log);
    finish_outcome(out, db, ctx.found, start);
    return out;
}

SearchOutcome repeated_grover_naive(const Database& db, const SearchParams& params) {
    const auto start = Clock::now();
    SearchContext ctx = make_context(db, params);
    SearchOutcome out;
    const FoundSet nothing;  // never intercept: the oracle keeps marking all of M
    const std::uint64_t patience =
        static_cast<std::uint64_t>(ctx.params.retry) * coupon_factor(db.size());
    std::uint64_t wasted = 0;
    try {
        while (wasted < patience && ctx.found.size() < db.size()) {
            enforce_ceiling(ctx, ctx.params.schedule);
            const auto res = block_grover_search(db, nothing, ctx.config, ctx.params.schedule,
                                                 ctx.rng, ctx.log, 0);
            if (res && !ctx.found.contains(*res)) {
                ctx.found.insert_new(*res);
                wasted = 0;
                ctx.params.schedule.record_hit();
            } else {
                ++wasted;
                ctx.params.schedule.record_miss();
            }
        }
    } catch (const QueryCeilingReached&) {
        out.budget_exhausted = true;
    }
    out.log = std::move(ctx.log);
    finish_outcome(out, db, ctx.found, start);
    return out;
}

SearchOutcome classical_scan(const Database& db) {
    const auto start = Clock::now();
    FoundSet found;
    SearchOutcome out;
    for (std::uint64_t x = 0; x < db.size(); ++x) {
        out.log.add_verification(0);
        if (classical_verify(db, x)) found.insert_new(x);
    }
    finish_outcome(out, db, found, start);
    return out;
}

}  // namespace dfgs
