#include "dfgs/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace dfgs {

Database make_database(int num_qubits, std::vector<std::uint64_t> solutions) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("database register width out of range");
    }
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    for (std::uint64_t x : solutions) {
        if (x >= dim) throw std::invalid_argument("solution index out of range");
    }
    std::sort(solutions.begin(), solutions.end());
    if (std::adjacent_find(solutions.begin(), solutions.end()) != solutions.end()) {
        throw std::invalid_argument("duplicate solution index");
    }
    Database db;
    db.num_qubits = num_qubits;
    db.solutions = std::move(solutions);
    return db;
}

Database random_database(int num_qubits, std::uint64_t num_solutions, Rng& rng) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("database register width out of range");
    }
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    if (num_solutions > dim) throw std::invalid_argument("more solutions than addresses");

    // Floyd's sampling: uniform m-subset in O(m) draws.
    std::set<std::uint64_t> picked;
    for (std::uint64_t j = dim - num_solutions; j < dim; ++j) {
        std::uniform_int_distribution<std::uint64_t> pick(0, j);
        const std::uint64_t t = pick(rng);
        if (!picked.insert(t).second) picked.insert(j);
    }
    return make_database(num_qubits,
                         std::vector<std::uint64_t>(picked.begin(), picked.end()));
}

bool classical_verify(const Database& db, std::uint64_t x) {
    if (x >= db.size()) throw std::out_of_range("address outside the database");
    return db.contains(x);
}

void FoundSet::insert_new(std::uint64_t x) {
    const auto it = std::lower_bound(values.begin(), values.end(), x);
    if (it != values.end() && *it == x) {
        throw std::logic_error("element reported twice");
    }
    values.insert(it, x);
}

InterceptedMarking::InterceptedMarking(const Database& db, const FoundSet& found)
    : db_(&db), found_(&found) {
    for (std::uint64_t x : found.values) {
        if (!db.contains(x)) {
            throw std::invalid_argument("found set contains a non-solution");
        }
    }
}

Database load_database(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open database file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed database file: " + std::string(e.what()));
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("solutions") ||
        !doc["n"].is_number_integer() || !doc["solutions"].is_array()) {
        throw std::invalid_argument("malformed database file: expected {\"n\",\"solutions\"}");
    }
    std::vector<std::uint64_t> solutions;
    for (const auto& v : doc["solutions"]) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
            throw std::invalid_argument("malformed database file: bad solution entry");
        }
        solutions.push_back(v.get<std::uint64_t>());
    }
    return make_database(doc["n"].get<int>(), std::move(solutions));
}

void save_database(const Database& db, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["n"] = db.num_qubits;
    doc["solutions"] = db.solutions;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write database file: " + path);
    out << doc.dump() << '\n';
}

}  // namespace dfgs
