#pragma once

#include <cstdint>
#include <optional>

#include "dfgs/encoder.hpp"
#include "dfgs/metrics.hpp"
#include "dfgs/oracle.hpp"
#include "dfgs/statevector.hpp"

namespace dfgs {

// Chooses the Grover iteration count for a block whose marked count is not
// known. Fixed mode always returns fixed_j (tests, known-count setups).
//
// Adaptive mode keeps a running guess of the marked count, starting at 1:
// the first draw is the single-solution optimum floor(pi/4 * sqrt(L)), each
// miss triples the guess, and a hit resets the walk. The first shot succeeds
// with probability 1 - O(1/L) on the one-undiscovered-solution blocks that
// dominate sparse instances, which the tight per-layer failure budgets rely
// on. The tripling matters: rung two sits near the optimum for two, three,
// and four survivors at once, where a doubling ladder parks its early rungs
// on zeros of sin^2((2j+1)theta) (four marked in 256 at the first rung, or
// three marked in 4 anywhere on the doubling walk) and a two-failure frame
// dies on two doomed rungs in a row. On a 4-element block the guess of 3
// already draws j=0 — plain classical sampling, whose success t/L is
// zero-free — so nearly-exhausted leaves stay reachable no matter how much
// of them the interception has rotated away.
struct IterationSchedule {
    enum class Mode { kFixed, kAdaptive };

    Mode mode = Mode::kAdaptive;
    int fixed_j = 0;
    double marked_guess = 1.0;
    double growth = 3.0;
    int cap = 1 << 20;

    // Iterations to run on a block of block_len elements.
    int draw(std::uint64_t block_len) const;
    void record_miss();
    void record_hit();
};

// floor(pi/4 * sqrt(L/t)), at least 1 while t < L; zero when t == L (the
// uniform block state is already fully marked). t == 0 or t > L throws.
int optimal_iterations(std::uint64_t block_len, std::uint64_t marked);

// sin^2((2j+1) * asin(sqrt(t/L))): probability that j iterations starting
// from the uniform block state land the measurement on a marked element.
double success_probability(std::uint64_t block_len, std::uint64_t marked, int iterations);

// Runs `iterations` rounds of [intercepted phase flip; block diffusion] on a
// state supported in config's block, marking exactly M \ S. Logs one oracle
// query per round at the given depth.
void grover_iterate(State& s, const Database& db, const FoundSet& found,
                    const EncoderConfig& config, int iterations, QueryLog& log, int depth);

// One full search attempt inside the config's block: encode, iterate with a
// schedule-drawn count, measure the undetermined qubits, classically verify
// the assembled address. Returns it iff it verifies and is not yet found.
// Logs the base-search event, the oracle queries, and the verification.
std::optional<std::uint64_t> block_grover_search(const Database& db, const FoundSet& found,
                                                 const EncoderConfig& config,
                                                 IterationSchedule& schedule, Rng& rng,
                                                 QueryLog& log, int depth);

// One partial search: amplify within the block, then measure only the next
// `bits_wanted` qubits after the prefix, yielding the sub-block pointer.
// Logs the partial-search event and the oracle queries; nothing is verified.
Bits partial_grover_search(const Database& db, const FoundSet& found,
                           const EncoderConfig& config, int bits_wanted,
                           IterationSchedule& schedule, Rng& rng, QueryLog& log, int depth);

}  // namespace dfgs
