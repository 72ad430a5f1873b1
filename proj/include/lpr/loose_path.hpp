#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "lpr/types.hpp"

namespace lpr {

// A loose path P_t^(k) as an ordered vertex sequence of (k-1)*t + 1 vertices.
// Edge i (0-based) occupies positions [i*(k-1), i*(k-1)+k-1]; consecutive
// edges share exactly the boundary vertex. t = 0 is a single vertex and an
// empty sequence is the empty path.
struct LoosePath {
    int k = 2;
    std::vector<Vertex> seq;

    bool empty() const { return seq.empty(); }

    // Edge count; requires a well-formed sequence length.
    long edge_count() const {
        if (seq.empty() || seq.size() == 1) return 0;
        return static_cast<long>((seq.size() - 1) / static_cast<std::size_t>(k - 1));
    }

    std::span<const Vertex> edge_span(long i) const {
        return std::span<const Vertex>(seq.data() + i * (k - 1), static_cast<std::size_t>(k));
    }

    Edge edge_key(long i) const {
        auto s = edge_span(i);
        Edge e(s.begin(), s.end());
        std::sort(e.begin(), e.end());
        return e;
    }
};

struct PathCheck {
    bool ok = true;
    std::string diagnostic;
};

// Checks an arbitrary sequence against the loose-path definition: derived
// edges must satisfy |e_i ∩ e_j| = 1 for |i-j| = 1 and e_i ∩ e_j = ∅ for
// |i-j| >= 2. The diagnostic names the first violation.
inline PathCheck validate_loose_path(const LoosePath& path, const Params& params) {
    const int k = params.k;
    if (path.k != k)
        return {false, "path uniformity " + std::to_string(path.k) +
                           " does not match k=" + std::to_string(k)};
    if (k < 2) return {false, "k must be >= 2"};
    const std::size_t len = path.seq.size();
    if (len == 0) return {true, "empty path"};
    if (params.n > 0) {
        for (Vertex v : path.seq)
            if (static_cast<long>(v) >= params.n)
                return {false, "vertex " + std::to_string(v) + " out of range [0," +
                                   std::to_string(params.n) + ")"};
    }
    if (len != 1 && (len - 1) % static_cast<std::size_t>(k - 1) != 0)
        return {false, "sequence length " + std::to_string(len) +
                           " is not (k-1)t+1 for k=" + std::to_string(k)};
    const long t = (len == 1) ? 0 : static_cast<long>((len - 1) / static_cast<std::size_t>(k - 1));

    auto edge_set = [&](long i) {
        Edge e(path.seq.begin() + i * (k - 1), path.seq.begin() + i * (k - 1) + k);
        std::sort(e.begin(), e.end());
        return e;
    };

    if (t == 0) return {true, ""};

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(t));
    for (long i = 0; i < t; ++i) {
        edges.push_back(edge_set(i));
        for (int q = 1; q < k; ++q)
            if (edges.back()[q - 1] == edges.back()[q])
                return {false, "edge " + std::to_string(i + 1) + " repeats vertex " +
                                   std::to_string(edges.back()[q])};
    }

    Edge inter;
    for (long i = 0; i < t; ++i) {
        for (long j = i + 1; j < t; ++j) {
            inter.clear();
            std::set_intersection(edges[i].begin(), edges[i].end(),
                                  edges[j].begin(), edges[j].end(),
                                  std::back_inserter(inter));
            const std::size_t want = (j - i == 1) ? 1 : 0;
            if (inter.size() != want)
                return {false, "edges (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                   ") intersect in " + std::to_string(inter.size()) +
                                   " vertices, expected " + std::to_string(want)};
        }
    }
    return {true, ""};
}

}  // namespace lpr
