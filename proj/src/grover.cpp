#include "dfgs/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dfgs {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

std::uint64_t bits_value(const Bits& bits) {
    std::uint64_t value = 0;
    for (std::uint8_t b : bits) value = (value << 1) | b;
    return value;
}

}  // namespace

int IterationSchedule::draw(std::uint64_t block_len) const {
    if (block_len == 0) throw std::invalid_argument("empty block");
    int j;
    if (mode == Mode::kFixed) {
        j = fixed_j;
    } else {
        const double guess = std::min(marked_guess, static_cast<double>(block_len));
        j = static_cast<int>(kQuarterPi * std::sqrt(static_cast<double>(block_len) / guess));
    }
    return std::clamp(j, 0, cap);
}

void IterationSchedule::record_miss() {
    marked_guess = std::min(marked_guess * growth, 1e18);
}

void IterationSchedule::record_hit() {
    marked_guess = 1.0;
}

int optimal_iterations(std::uint64_t block_len, std::uint64_t marked) {
    if (marked == 0) throw std::invalid_argument("no marked elements");
    if (marked > block_len) throw std::invalid_argument("marked count exceeds the block");
    if (marked == block_len) return 0;
    const int j = static_cast<int>(
        kQuarterPi * std::sqrt(static_cast<double>(block_len) / static_cast<double>(marked)));
    return std::max(j, 1);
}

double success_probability(std::uint64_t block_len, std::uint64_t marked, int iterations) {
    if (block_len == 0) throw std::invalid_argument("empty block");
    if (marked > block_len) throw std::invalid_argument("marked count exceeds the block");
    if (iterations < 0) throw std::invalid_argument("negative iteration count");
    const double theta =
        std::asin(std::sqrt(static_cast<double>(marked) / static_cast<double>(block_len)));
    const double s = std::sin((2.0 * iterations + 1.0) * theta);
    return s * s;
}

void grover_iterate(State& s, const Database& db, const FoundSet& found,
                    const EncoderConfig& config, int iterations, QueryLog& log, int depth) {
    if (iterations < 0) throw std::invalid_argument("negative iteration count");
    if (s.num_qubits != config.num_qubits || s.num_qubits != db.num_qubits) {
        throw std::invalid_argument("state, config, and database widths disagree");
    }
    // Validates S subset of M; the flip below realizes the same predicate,
    // restricted to the block carrying all of the state's support.
    (void)intercepted_marking(db, found);

    const std::uint64_t base = block_base(config);
    const std::uint64_t end = base + block_size(config);
    std::vector<std::uint64_t> marked;
    for (auto it = std::lower_bound(db.solutions.begin(), db.solutions.end(), base);
         it != db.solutions.end() && *it < end; ++it) {
        if (!found.contains(*it)) marked.push_back(*it);
    }

    for (int round = 0; round < iterations; ++round) {
        for (std::uint64_t x : marked) s.amps[x] = -s.amps[x];
        apply_block_diffusion(s, config);
    }
    if (iterations > 0) log.add_oracle(depth, static_cast<std::uint64_t>(iterations));
}

std::optional<std::uint64_t> block_grover_search(const Database& db, const FoundSet& found,
                                                 const EncoderConfig& config,
                                                 IterationSchedule& schedule, Rng& rng,
                                                 QueryLog& log, int depth) {
    log.add_base_search(depth);
    State s = encode(config);
    const int j = schedule.draw(block_size(config));
    grover_iterate(s, db, found, config, j, log, depth);

    const int n = config.num_qubits;
    std::vector<int> positions;
    for (int q = config.prefix_len; q < n; ++q) positions.push_back(q);
    const Bits tail = measure_qubits(s, positions, rng);

    const std::uint64_t address =
        (prefix_value(config) << (n - config.prefix_len)) | bits_value(tail);
    log.add_verification(depth);
    if (classical_verify(db, address) && !found.contains(address)) return address;
    return std::nullopt;
}

Bits partial_grover_search(const Database& db, const FoundSet& found,
                           const EncoderConfig& config, int bits_wanted,
                           IterationSchedule& schedule, Rng& rng, QueryLog& log, int depth) {
    if (bits_wanted < 1 || config.prefix_len + bits_wanted > config.num_qubits) {
        throw std::invalid_argument("partial search asks for more bits than remain");
    }
    log.add_partial_search(depth);
    State s = encode(config);
    const int j = schedule.draw(block_size(config));
    grover_iterate(s, db, found, config, j, log, depth);

    std::vector<int> positions;
    for (int q = config.prefix_len; q < config.prefix_len + bits_wanted; ++q) {
        positions.push_back(q);
    }
    return measure_qubits(s, positions, rng);
}

}  // namespace dfgs
