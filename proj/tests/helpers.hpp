#pragma once

// Test-only reference implementations, kept independent of the library's
// code paths they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "lpr/coloring.hpp"
#include "lpr/loose_path.hpp"
#include "lpr/types.hpp"

namespace testutil {

// Naive pairwise-intersection check of a vertex sequence against the loose
// path definition, via std::set only.
inline bool naive_is_loose_path(const std::vector<lpr::Vertex>& seq, int k) {
    if (seq.empty() || seq.size() == 1) return true;
    if ((seq.size() - 1) % static_cast<std::size_t>(k - 1) != 0) return false;
    const std::size_t t = (seq.size() - 1) / static_cast<std::size_t>(k - 1);
    std::vector<std::set<lpr::Vertex>> edges;
    for (std::size_t i = 0; i < t; ++i) {
        std::set<lpr::Vertex> e(seq.begin() + i * (k - 1), seq.begin() + i * (k - 1) + k);
        if (e.size() != static_cast<std::size_t>(k)) return false;
        edges.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) {
            std::size_t common = 0;
            for (lpr::Vertex v : edges[i]) common += edges[j].count(v);
            if (common != ((j - i == 1) ? 1u : 0u)) return false;
        }
    return true;
}

// Second, independent brute force: enumerates every sequence of distinct
// vertices of length (k-1)ell+1 and tests it with the naive checker plus a
// per-edge color probe. Exponential; only for tiny instances.
inline bool bruteforce_mono_path_exists(const lpr::ColoringSource& coloring, int k, int ell,
                                        long n, lpr::ColorId color) {
    const std::size_t len = static_cast<std::size_t>((k - 1) * ell + 1);
    if (static_cast<long>(len) > n) return false;
    std::vector<lpr::Vertex> seq;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    lpr::Edge key;

    auto colors_ok = [&]() {
        for (int e = 0; e * (k - 1) + k <= static_cast<int>(seq.size()); ++e) {
            key.assign(seq.begin() + e * (k - 1), seq.begin() + e * (k - 1) + k);
            std::sort(key.begin(), key.end());
            if (coloring.color_of(key) != color) return false;
        }
        return true;
    };

    std::function<bool()> rec = [&]() -> bool {
        if (seq.size() == len) return naive_is_loose_path(seq, k) && colors_ok();
        for (long v = 0; v < n; ++v) {
            if (used[static_cast<std::size_t>(v)]) continue;
            used[static_cast<std::size_t>(v)] = true;
            seq.push_back(static_cast<lpr::Vertex>(v));
            if (rec()) return true;
            seq.pop_back();
            used[static_cast<std::size_t>(v)] = false;
        }
        return false;
    };
    return rec();
}

// Deterministic biased table: colors 1..r-1 appear with probability num/den
// each (roughly), the rest is color r. Drives the finder into stuck and
// padding branches, which uniform random colorings essentially never reach.
inline std::vector<lpr::ColorId> biased_table(int k, long n, int r, std::uint64_t seed,
                                              std::uint64_t num, std::uint64_t den) {
    const std::uint64_t edges =
        lpr::binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    std::vector<lpr::ColorId> table(edges);
    for (std::uint64_t rank = 0; rank < edges; ++rank) {
        std::uint64_t x = seed ^ (rank * 0x9E3779B97F4A7C15ull);
        x ^= x >> 30;
        x *= 0xBF58476D1CE4E5B9ull;
        x ^= x >> 27;
        x *= 0x94D049BB133111EBull;
        x ^= x >> 31;
        if (x % den < num)
            table[rank] = 1 + static_cast<lpr::ColorId>((x / den) % static_cast<std::uint64_t>(r - 1));
        else
            table[rank] = static_cast<lpr::ColorId>(r);
    }
    return table;
}

}  // namespace testutil
