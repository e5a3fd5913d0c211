#include "dfgs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dfgs {

namespace {

void bump(std::vector<std::uint64_t>& v, int depth, std::uint64_t count) {
    if (depth < 0) throw std::invalid_argument("negative depth");
    if (static_cast<int>(v.size()) <= depth) v.resize(depth + 1, 0);
    v[depth] += count;
}

std::uint64_t sum(const std::vector<std::uint64_t>& v) {
    return std::accumulate(v.begin(), v.end(), std::uint64_t{0});
}

// Exponent of a power of two; throws otherwise.
int log2_exact(std::uint64_t value, const char* what) {
    if (value == 0 || (value & (value - 1)) != 0) {
        throw std::invalid_argument(std::string(what) + " must be a power of two");
    }
    int e = 0;
    while ((std::uint64_t{1} << e) < value) ++e;
    return e;
}

}  // namespace

void QueryLog::add_oracle(int depth, std::uint64_t count) { bump(oracle_queries, depth, count); }
void QueryLog::add_partial_search(int depth) { bump(partial_searches, depth, 1); }
void QueryLog::add_base_search(int depth) { bump(base_searches, depth, 1); }
void QueryLog::add_verification(int depth) { bump(verifications, depth, 1); }
void QueryLog::add_productive_frame(int depth) { bump(productive_frames, depth, 1); }

std::uint64_t QueryLog::total_oracle_queries() const { return sum(oracle_queries); }
std::uint64_t QueryLog::total_partial_searches() const { return sum(partial_searches); }
std::uint64_t QueryLog::total_base_searches() const { return sum(base_searches); }
std::uint64_t QueryLog::total_verifications() const { return sum(verifications); }

int QueryLog::depth_count() const {
    return static_cast<int>(std::max({oracle_queries.size(), partial_searches.size(),
                                      base_searches.size(), verifications.size(),
                                      productive_frames.size()}));
}

QueryLog merge(const QueryLog& a, const QueryLog& b) {
    auto merged = [](const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) {
        std::vector<std::uint64_t> out(std::max(x.size(), y.size()), 0);
        for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
        for (std::size_t i = 0; i < y.size(); ++i) out[i] += y[i];
        return out;
    };
    QueryLog out;
    out.oracle_queries = merged(a.oracle_queries, b.oracle_queries);
    out.partial_searches = merged(a.partial_searches, b.partial_searches);
    out.base_searches = merged(a.base_searches, b.base_searches);
    out.verifications = merged(a.verifications, b.verifications);
    out.productive_frames = merged(a.productive_frames, b.productive_frames);
    return out;
}

int max_depth(std::uint64_t database_size, std::uint64_t split) {
    const int n = log2_exact(database_size, "database size");
    const int l = log2_exact(split, "split");
    if (l == 0) throw std::invalid_argument("split must be at least 2");
    if (split > database_size) throw std::invalid_argument("split exceeds the database");
    return (n + l - 1) / l - 1;
}

double expected_active_blocks(std::uint64_t split, int depth, std::uint64_t solutions) {
    if (split < 2) throw std::invalid_argument("split must be at least 2");
    if (depth < 0) throw std::invalid_argument("negative depth");
    const double blocks = std::pow(static_cast<double>(split), depth);
    return blocks * (1.0 - std::pow(1.0 - 1.0 / blocks, static_cast<double>(solutions)));
}

double predicted_cost(std::uint64_t database_size, std::uint64_t split, std::uint64_t solutions) {
    const int lambda = max_depth(database_size, split);
    if (solutions > database_size) throw std::invalid_argument("more solutions than addresses");
    const double n_d = static_cast<double>(database_size);
    const double p_d = static_cast<double>(split);
    double cost = 0.0;
    for (int k = 0; k < lambda; ++k) {
        const double level = std::sqrt(n_d / std::pow(p_d, k));
        const double next = std::sqrt(n_d / std::pow(p_d, k + 1));
        cost += expected_active_blocks(split, k, solutions) * (level - next);
    }
    cost += static_cast<double>(solutions) * std::sqrt(n_d / std::pow(p_d, lambda));
    return cost;
}

double predicted_cost_bound(std::uint64_t database_size, std::uint64_t solutions) {
    return static_cast<double>(solutions) * std::sqrt(static_cast<double>(database_size));
}

double partial_query_budget(double block_len, double split) {
    if (block_len <= 0.0 || split <= 0.0) throw std::invalid_argument("non-positive budget input");
    return std::sqrt(block_len) - std::sqrt(block_len / split);
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("need at least three points");
    std::vector<double> lx, ly;
    lx.reserve(points.size());
    ly.reserve(points.size());
    for (const auto& [x, y] : points) {
        if (x <= 0.0 || y <= 0.0) throw std::invalid_argument("points must be positive");
        lx.push_back(std::log(x));
        ly.push_back(std::log(y));
    }
    const double n = static_cast<double>(points.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("all abscissae equal");
    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    const double intercept = my - fit.exponent * mx;
    fit.scale = std::exp(intercept);
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.exponent * lx[i] + intercept);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace dfgs
