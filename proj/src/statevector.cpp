#include "dfgs/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dfgs {

namespace {

constexpr double kZeroProbability = 1e-15;

void check_width(int num_qubits, int max_qubits) {
    if (num_qubits < 1 || num_qubits > max_qubits) {
        throw std::invalid_argument("register width out of range: " + std::to_string(num_qubits));
    }
}

}  // namespace

State basis_state(int num_qubits, std::uint64_t index, int max_qubits) {
    check_width(num_qubits, max_qubits);
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    if (index >= dim) throw std::out_of_range("basis index out of range");
    State s;
    s.num_qubits = num_qubits;
    s.amps.assign(dim, Amplitude{0.0, 0.0});
    s.amps[index] = Amplitude{1.0, 0.0};
    return s;
}

State uniform_state(int num_qubits, int max_qubits) {
    check_width(num_qubits, max_qubits);
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    State s;
    s.num_qubits = num_qubits;
    s.amps.assign(dim, Amplitude{std::pow(2.0, -0.5 * num_qubits), 0.0});
    return s;
}

double state_norm(const State& s) {
    double sum = 0.0;
    for (const Amplitude& a : s.amps) sum += std::norm(a);
    return std::sqrt(sum);
}

void apply_block_diffusion(State& s, std::uint64_t block_base, std::uint64_t block_len) {
    if (block_len == 0 || block_base + block_len > s.dimension()) {
        throw std::out_of_range("diffusion block outside the register");
    }
    Amplitude mean{0.0, 0.0};
    for (std::uint64_t i = block_base; i < block_base + block_len; ++i) mean += s.amps[i];
    mean /= static_cast<double>(block_len);
    const Amplitude twice = 2.0 * mean;
    for (std::uint64_t i = block_base; i < block_base + block_len; ++i) {
        s.amps[i] = twice - s.amps[i];
    }
}

Bits measure_qubits(State& s, const std::vector<int>& positions, Rng& rng) {
    if (positions.empty()) throw std::invalid_argument("no qubits to measure");
    std::uint64_t seen = 0;
    for (int q : positions) {
        if (q < 0 || q >= s.num_qubits) throw std::invalid_argument("qubit position out of range");
        const std::uint64_t bit = std::uint64_t{1} << q;
        if (seen & bit) throw std::invalid_argument("duplicate qubit position");
        seen |= bit;
    }

    const std::uint64_t dim = s.dimension();
    double total = 0.0;
    for (const Amplitude& a : s.amps) total += std::norm(a);
    if (total < kZeroProbability) throw std::runtime_error("cannot measure a zero state");

    // Sample one basis index from |a|^2; its bits at the measured positions
    // realize the joint marginal exactly.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double target = unit(rng) * total;
    double acc = 0.0;
    std::uint64_t drawn = 0;
    bool drawn_set = false;
    for (std::uint64_t i = 0; i < dim; ++i) {
        const double p = std::norm(s.amps[i]);
        if (p < kZeroProbability) continue;
        drawn = i;  // last index with weight, in case rounding exhausts the walk
        drawn_set = true;
        acc += p;
        if (acc > target) break;
    }
    if (!drawn_set) throw std::runtime_error("cannot measure a zero state");

    const int n = s.num_qubits;
    Bits outcome(positions.size());
    std::uint64_t mask = 0;      // bits of the index covered by the measurement
    std::uint64_t pattern = 0;   // drawn values at those bits
    for (std::size_t k = 0; k < positions.size(); ++k) {
        const int shift = n - 1 - positions[k];
        const std::uint64_t bit = (drawn >> shift) & 1;
        outcome[k] = static_cast<std::uint8_t>(bit);
        mask |= std::uint64_t{1} << shift;
        pattern |= bit << shift;
    }

    // Collapse: zero inconsistent amplitudes, renormalize the branch.
    double branch = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & mask) == pattern) {
            branch += std::norm(s.amps[i]);
        } else {
            s.amps[i] = Amplitude{0.0, 0.0};
        }
    }
    const double scale = 1.0 / std::sqrt(branch);
    for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & mask) == pattern) s.amps[i] *= scale;
    }
    return outcome;
}

}  // namespace dfgs
