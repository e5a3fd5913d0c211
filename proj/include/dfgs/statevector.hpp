#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace dfgs {

using Amplitude = std::complex<double>;
using Bits = std::vector<std::uint8_t>;
using Rng = std::mt19937_64;

// Largest register the dense simulator accepts by default (16 MiB of amplitudes).
inline constexpr int kMaxQubits = 20;

// Dense statevector over n qubits. Amplitudes are indexed by the integer
// reading of the basis label where qubit 0 is the MOST significant address
// bit: bit of qubit q in index i is (i >> (n-1-q)) & 1. Every routine in
// this project follows that convention; a determined prefix of r qubits
// therefore always occupies the top r bits of the index.
struct State {
    int num_qubits = 0;
    std::vector<Amplitude> amps;

    std::uint64_t dimension() const { return amps.size(); }
};

// |0...0> with the given register width.
State basis_state(int num_qubits, std::uint64_t index, int max_qubits = kMaxQubits);

// Equal superposition, amplitude 2^(-n/2) everywhere.
State uniform_state(int num_qubits, int max_qubits = kMaxQubits);

double state_norm(const State& s);

// Negates the amplitude of every basis index the predicate marks. Exact:
// sign flips introduce no rounding.
template <class Pred>
void apply_phase_flip(State& s, Pred&& marked) {
    const std::uint64_t dim = s.dimension();
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (marked(i)) s.amps[i] = -s.amps[i];
    }
}

// Reflects amplitudes inside [block_base, block_base + block_len) about their
// block mean (a <- 2*mean - a); amplitudes outside the block are untouched.
// With block_base = 0 and block_len = 2^n this is the standard diffuser.
void apply_block_diffusion(State& s, std::uint64_t block_base, std::uint64_t block_len);

// Projective measurement of the listed qubit positions (each in [0, n),
// duplicates rejected). Returns one bit per position, in the order given,
// sampled from the joint |amplitude|^2 marginal; the state collapses to the
// consistent subspace and is renormalized by the square root of the branch
// probability. Branch weights below 1e-15 are treated as zero.
Bits measure_qubits(State& s, const std::vector<int>& positions, Rng& rng);

}  // namespace dfgs
