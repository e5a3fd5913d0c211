#pragma once

#include <cstdint>
#include <vector>

#include "dfgs/statevector.hpp"

namespace dfgs {

// Classical partial-address bookkeeping for the depth-first search. bit_values
// holds one bit per qubit (qubit 0 first, i.e. the most significant address
// bit); determined flags which of them are fixed. Determined bits always form
// a prefix: determined[i] == 1 exactly for i < prefix_len, and bit_values is
// zero wherever undetermined.
struct EncoderConfig {
    int num_qubits = 0;
    std::vector<std::uint8_t> bit_values;
    std::vector<std::uint8_t> determined;
    int prefix_len = 0;
};

// Fresh config with nothing determined.
EncoderConfig make_config(int num_qubits);

// Throws std::invalid_argument if the prefix-form invariants are broken.
void validate_config(const EncoderConfig& config);

// Integer reading of the determined bits (high bits of the address).
std::uint64_t prefix_value(const EncoderConfig& config);

// The block of addresses matching the prefix is contiguous:
// [block_base, block_base + block_size).
std::uint64_t block_size(const EncoderConfig& config);
std::uint64_t block_base(const EncoderConfig& config);

// Returns a copy with the given bits appended to the prefix / removed from
// it; the original is unchanged. Overflow/underflow throws std::out_of_range.
EncoderConfig extend_prefix(const EncoderConfig& config, const Bits& bits);
EncoderConfig retract_prefix(const EncoderConfig& config, int count);

// |prefix> on the determined qubits tensor the uniform superposition on the
// rest: amplitude 2^(-(n-r)/2) on every index whose top r bits equal the
// prefix, zero elsewhere.
State encode(const EncoderConfig& config);

// Convenience overload: diffusion about the mean of the config's block.
inline void apply_block_diffusion(State& s, const EncoderConfig& config) {
    apply_block_diffusion(s, block_base(config), block_size(config));
}

}  // namespace dfgs
