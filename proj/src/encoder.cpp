#include "dfgs/encoder.hpp"

#include <cmath>
#include <stdexcept>

namespace dfgs {

EncoderConfig make_config(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("encoder register width out of range");
    }
    EncoderConfig config;
    config.num_qubits = num_qubits;
    config.bit_values.assign(num_qubits, 0);
    config.determined.assign(num_qubits, 0);
    config.prefix_len = 0;
    return config;
}

void validate_config(const EncoderConfig& config) {
    const int n = config.num_qubits;
    if (n < 1 || n > kMaxQubits) throw std::invalid_argument("bad encoder width");
    if (static_cast<int>(config.bit_values.size()) != n ||
        static_cast<int>(config.determined.size()) != n) {
        throw std::invalid_argument("encoder arrays do not match the width");
    }
    if (config.prefix_len < 0 || config.prefix_len > n) {
        throw std::invalid_argument("prefix length out of range");
    }
    for (int i = 0; i < n; ++i) {
        const bool fixed = i < config.prefix_len;
        if ((config.determined[i] != 0) != fixed) {
            throw std::invalid_argument("determined flags must form a prefix");
        }
        if (config.bit_values[i] > 1) throw std::invalid_argument("bit values must be 0 or 1");
        if (!fixed && config.bit_values[i] != 0) {
            throw std::invalid_argument("undetermined bits must be zero");
        }
    }
}

std::uint64_t prefix_value(const EncoderConfig& config) {
    std::uint64_t value = 0;
    for (int i = 0; i < config.prefix_len; ++i) {
        value = (value << 1) | config.bit_values[i];
    }
    return value;
}

std::uint64_t block_size(const EncoderConfig& config) {
    return std::uint64_t{1} << (config.num_qubits - config.prefix_len);
}

std::uint64_t block_base(const EncoderConfig& config) {
    return prefix_value(config) << (config.num_qubits - config.prefix_len);
}

EncoderConfig extend_prefix(const EncoderConfig& config, const Bits& bits) {
    validate_config(config);
    if (config.prefix_len + static_cast<int>(bits.size()) > config.num_qubits) {
        throw std::out_of_range("prefix extension past the register");
    }
    EncoderConfig out = config;
    for (std::uint8_t b : bits) {
        if (b > 1) throw std::invalid_argument("prefix bits must be 0 or 1");
        out.bit_values[out.prefix_len] = b;
        out.determined[out.prefix_len] = 1;
        ++out.prefix_len;
    }
    return out;
}

EncoderConfig retract_prefix(const EncoderConfig& config, int count) {
    validate_config(config);
    if (count < 0 || count > config.prefix_len) {
        throw std::out_of_range("prefix retraction past the start");
    }
    EncoderConfig out = config;
    for (int i = 0; i < count; ++i) {
        --out.prefix_len;
        out.bit_values[out.prefix_len] = 0;
        out.determined[out.prefix_len] = 0;
    }
    return out;
}

State encode(const EncoderConfig& config) {
    validate_config(config);
    const int n = config.num_qubits;
    const int free_qubits = n - config.prefix_len;
    State s;
    s.num_qubits = n;
    s.amps.assign(std::uint64_t{1} << n, Amplitude{0.0, 0.0});
    const std::uint64_t base = block_base(config);
    const std::uint64_t len = block_size(config);
    const Amplitude value{std::pow(2.0, -0.5 * free_qubits), 0.0};
    for (std::uint64_t i = base; i < base + len; ++i) s.amps[i] = value;
    return s;
}

}  // namespace dfgs
