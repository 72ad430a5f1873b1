#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "lpr/types.hpp"

namespace lpr {

// Saturating arithmetic: combinatorial counts are compared against guards,
// so overflow must clamp instead of wrapping.
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

constexpr std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return (a > kSaturated - b) ? kSaturated : a + b;
}

constexpr std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > kSaturated / b) return kSaturated;
    return a * b;
}

// C(n, k), saturating at 2^64-1.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > kSaturated) return kSaturated;
    }
    return static_cast<std::uint64_t>(acc);
}

// Dense C(a, j) lookups for 0 <= a <= max_n, 0 <= j <= max_k.
class BinomialTable {
public:
    BinomialTable() = default;

    BinomialTable(long max_n, int max_k) { reset(max_n, max_k); }

    void reset(long max_n, int max_k) {
        max_n_ = max_n;
        max_k_ = max_k;
        table_.assign(static_cast<std::size_t>(max_n + 1) * (max_k + 1), 0);
        for (long a = 0; a <= max_n; ++a) {
            cell(a, 0) = 1;
            for (int j = 1; j <= max_k; ++j)
                cell(a, j) = (a == 0) ? 0 : sat_add(cell(a - 1, j - 1), cell(a - 1, j));
        }
    }

    std::uint64_t at(long a, int j) const {
        if (j < 0 || j > max_k_) return 0;
        if (a < 0) return 0;
        if (a > max_n_) return binomial(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(j));
        return table_[static_cast<std::size_t>(a) * (max_k_ + 1) + j];
    }

    long max_n() const { return max_n_; }
    int max_k() const { return max_k_; }

private:
    std::uint64_t& cell(long a, int j) {
        return table_[static_cast<std::size_t>(a) * (max_k_ + 1) + j];
    }

    long max_n_ = -1;
    int max_k_ = -1;
    std::vector<std::uint64_t> table_;
};

inline void require_edge_key(std::span<const Vertex> edge, int k) {
    if (static_cast<int>(edge.size()) != k)
        throw ValidationError("edge has " + std::to_string(edge.size()) +
                              " vertices, expected k=" + std::to_string(k));
    for (std::size_t i = 1; i < edge.size(); ++i)
        if (edge[i - 1] >= edge[i])
            throw ValidationError("edge vertices must be strictly increasing");
}

// Colexicographic rank of a strictly increasing k-set:
//   rank = sum_i C(a_i, i+1).
// The rank does not depend on n, so memo tables are n-agnostic per k.
inline std::uint64_t colex_rank(std::span<const Vertex> edge, int k, const BinomialTable& binom) {
    require_edge_key(edge, k);
    std::uint64_t rank = 0;
    for (int i = 0; i < k; ++i)
        rank = sat_add(rank, binom.at(static_cast<long>(edge[i]), i + 1));
    return rank;
}

inline std::uint64_t colex_rank(std::span<const Vertex> edge, int k) {
    require_edge_key(edge, k);
    std::uint64_t rank = 0;
    for (int i = 0; i < k; ++i)
        rank = sat_add(rank, binomial(edge[i], static_cast<std::uint64_t>(i) + 1));
    return rank;
}

// Inverse of colex_rank over the k-subsets of [0, n).
inline Edge colex_unrank(std::uint64_t rank, int k, long n) {
    if (k < 1 || n < k) throw RangeError("colex_unrank: need 1 <= k <= n");
    std::uint64_t total = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    if (rank >= total) throw RangeError("colex_unrank: rank out of range");
    Edge out(static_cast<std::size_t>(k));
    long hi = n - 1;
    for (int j = k; j >= 1; --j) {
        long a = hi;
        while (binomial(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(j)) > rank) --a;
        out[j - 1] = static_cast<Vertex>(a);
        rank -= binomial(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(j));
        hi = a - 1;
    }
    return out;
}

// First/next k-combination of indices in [0, size), colex order.
inline void first_combination(std::vector<std::size_t>& comb, int k) {
    comb.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
}

inline bool next_combination(std::vector<std::size_t>& comb, std::size_t size) {
    const std::size_t k = comb.size();
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t limit = (i + 1 < k) ? comb[i + 1] : size;
        if (comb[i] + 1 < limit) {
            ++comb[i];
            for (std::size_t j = 0; j < i; ++j) comb[j] = j;
            return true;
        }
    }
    return false;
}

}  // namespace lpr
