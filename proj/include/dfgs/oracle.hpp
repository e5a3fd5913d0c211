#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "dfgs/statevector.hpp"

namespace dfgs {

// Search instance: n address qubits and the sorted set of solution indices.
// The algorithms may consult it only through classical_verify and the
// phase-flip marking; nothing else leaks the solutions.
struct Database {
    int num_qubits = 0;
    std::vector<std::uint64_t> solutions;

    std::uint64_t size() const { return std::uint64_t{1} << num_qubits; }
    // Inline: this sits on the per-amplitude marking path.
    bool contains(std::uint64_t x) const {
        return std::binary_search(solutions.begin(), solutions.end(), x);
    }
};

// Validates ranges, sorts, and rejects duplicates.
Database make_database(int num_qubits, std::vector<std::uint64_t> solutions);

// Uniformly random m-subset of [0, 2^n) as the solution set.
Database random_database(int num_qubits, std::uint64_t num_solutions, Rng& rng);

// One classical oracle lookup; callers account for it in their QueryLog.
bool classical_verify(const Database& db, std::uint64_t x);

// Solutions discovered so far, kept sorted. Grows monotonically; insert_new
// throws if an element is already present, which keeps the no-repetition
// guarantee exact. Flat storage: contains sits on the same per-amplitude
// marking path as Database::contains.
struct FoundSet {
    std::vector<std::uint64_t> values;

    bool contains(std::uint64_t x) const {
        return std::binary_search(values.begin(), values.end(), x);
    }
    std::size_t size() const { return values.size(); }
    void insert_new(std::uint64_t x);
};

// Marking predicate for the intercepted oracle: true exactly on M \ S, so a
// phase flip with it equals flipping M and then flipping S (already-found
// solutions get two sign flips and cancel). Throws if S is not a subset of M.
class InterceptedMarking {
  public:
    InterceptedMarking(const Database& db, const FoundSet& found);
    bool operator()(std::uint64_t x) const {
        return db_->contains(x) && !found_->contains(x);
    }

  private:
    const Database* db_;
    const FoundSet* found_;
};

inline InterceptedMarking intercepted_marking(const Database& db, const FoundSet& found) {
    return InterceptedMarking(db, found);
}

// Plain single-line JSON, e.g. {"n":4,"solutions":[3,5]}; solutions sorted.
// save writes exactly that byte sequence (plus trailing newline); load
// rejects out-of-range and duplicate entries.
Database load_database(const std::string& path);
void save_database(const Database& db, const std::string& path);

}  // namespace dfgs
