#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lpr/binomial.hpp"
#include "lpr/loose_path.hpp"
#include "lpr/types.hpp"

namespace lpr {

// An m-partite complete k-graph K^(k)(W_1,...,W_{m-1},V_m): all k-sets with
// exactly one vertex in each part W_i and k-m+1 vertices in the residual V_m.
struct PartiteFamily {
    std::vector<std::vector<Vertex>> parts;  // W_1..W_{m-1}, each sorted ascending
    std::vector<Vertex> residual;            // V_m, sorted ascending

    int m() const { return static_cast<int>(parts.size()) + 1; }
};

inline void require_family(const PartiteFamily& family, int k) {
    const int m = family.m();
    if (m < 2 || m > k)
        throw ValidationError("partite family needs 2 <= m <= k, got m=" + std::to_string(m));
    std::vector<Vertex> all;
    for (const auto& part : family.parts) {
        if (!std::is_sorted(part.begin(), part.end()))
            throw ValidationError("family parts must be sorted");
        all.insert(all.end(), part.begin(), part.end());
    }
    if (!std::is_sorted(family.residual.begin(), family.residual.end()))
        throw ValidationError("family residual must be sorted");
    all.insert(all.end(), family.residual.begin(), family.residual.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw ValidationError("family parts and residual must be pairwise disjoint");
}

// (prod |W_i|) * C(|V_m|, k-m+1), saturating.
inline std::uint64_t partite_edge_count(const PartiteFamily& family, int k) {
    const int m = family.m();
    std::uint64_t count = binomial(family.residual.size(), static_cast<std::uint64_t>(k - m + 1));
    for (const auto& part : family.parts) count = sat_mul(count, part.size());
    return count;
}

inline bool edge_in_family(const PartiteFamily& family, std::span<const Vertex> edge, int k) {
    if (static_cast<int>(edge.size()) != k) return false;
    const int m = family.m();
    std::vector<int> per_part(family.parts.size(), 0);
    int in_residual = 0;
    for (Vertex v : edge) {
        bool placed = false;
        for (std::size_t j = 0; j < family.parts.size(); ++j) {
            if (std::binary_search(family.parts[j].begin(), family.parts[j].end(), v)) {
                ++per_part[j];
                placed = true;
                break;
            }
        }
        if (placed) continue;
        if (std::binary_search(family.residual.begin(), family.residual.end(), v))
            ++in_residual;
        else
            return false;
    }
    for (int c : per_part)
        if (c != 1) return false;
    return in_residual == k - m + 1;
}

// Lazily yields the family's edges exactly once each, in colex-rank order.
// Enumerates k-subsets of the family's support (colex) and filters by shape;
// qualifying edges use only support vertices, so the filtered order is the
// global colex order.
class PartiteEdgeStream {
public:
    PartiteEdgeStream(const PartiteFamily& family, int k) : family_(family), k_(k) {
        require_family(family, k);
        for (const auto& part : family.parts)
            support_.insert(support_.end(), part.begin(), part.end());
        support_.insert(support_.end(), family.residual.begin(), family.residual.end());
        std::sort(support_.begin(), support_.end());
        exhausted_ = support_.size() < static_cast<std::size_t>(k);
    }

    bool next(Edge& out) {
        while (!exhausted_) {
            if (first_) {
                first_combination(comb_, k_);
                first_ = false;
            } else if (!next_combination(comb_, support_.size())) {
                exhausted_ = true;
                break;
            }
            out.clear();
            for (std::size_t idx : comb_) out.push_back(support_[idx]);
            if (edge_in_family(family_, out, k_)) return true;
        }
        return false;
    }

private:
    const PartiteFamily& family_;
    int k_;
    std::vector<Vertex> support_;
    std::vector<std::size_t> comb_;
    bool first_ = true;
    bool exhausted_ = false;
};

namespace detail {

// Hands out vertices of one part, lowest index first.
class PartCursor {
public:
    PartCursor(const std::vector<Vertex>& part, std::string name)
        : part_(part), name_(std::move(name)) {}

    Vertex take() {
        if (next_ >= part_.size())
            throw InsufficientPartError("part " + name_ + " exhausted after " +
                                            std::to_string(next_) + " vertices",
                                        name_);
        return part_[next_++];
    }

private:
    const std::vector<Vertex>& part_;
    std::string name_;
    std::size_t next_ = 0;
};

}  // namespace detail

// Explicit loose path of length ell inside K^(k)(W_1,...,W_{m-1},V_m).
//
// For m <= k-1 consecutive edges intersect in V_m; for m = k they alternate
// between V_k and W_1, starting in V_k. Vertices are consumed lowest-index
// first, so the witness is reproducible.
//
// Preconditions: |W_i| >= ell for all i; |V_m| >= ell(k-m)+1 when m <= k-1,
// |V_m| >= max(ell, 1) when m = k.
inline LoosePath build_partite_path(const PartiteFamily& family, const Params& params) {
    const int k = params.k;
    const long ell = params.ell;
    if (ell < 0) throw RangeError("ell must be >= 0");
    require_family(family, k);
    const int m = family.m();

    for (std::size_t j = 0; j < family.parts.size(); ++j) {
        if (static_cast<long>(family.parts[j].size()) < ell)
            throw InsufficientPartError(
                "part W_" + std::to_string(j + 1) + " has " +
                    std::to_string(family.parts[j].size()) + " vertices, needs >= " +
                    std::to_string(ell),
                "W_" + std::to_string(j + 1));
    }
    const long residual_need =
        (m <= k - 1) ? ell * (k - m) + 1 : std::max<long>(ell, 1);
    if (static_cast<long>(family.residual.size()) < residual_need)
        throw InsufficientPartError("residual V_" + std::to_string(m) + " has " +
                                        std::to_string(family.residual.size()) +
                                        " vertices, needs >= " + std::to_string(residual_need),
                                    "V_" + std::to_string(m));

    std::vector<detail::PartCursor> w;
    w.reserve(family.parts.size());
    for (std::size_t j = 0; j < family.parts.size(); ++j)
        w.emplace_back(family.parts[j], "W_" + std::to_string(j + 1));
    detail::PartCursor v(family.residual, "V_" + std::to_string(m));

    LoosePath path;
    path.k = k;
    if (ell == 0) {
        path.seq.push_back(v.take());
        return path;
    }

    if (m <= k - 1) {
        // Segment i: [connector] w_1..w_{m-1} fresh-v...; connectors sit in V_m.
        path.seq.push_back(v.take());
        for (long i = 0; i < ell; ++i) {
            for (auto& cursor : w) path.seq.push_back(cursor.take());
            for (int q = 0; q < k - m; ++q) path.seq.push_back(v.take());
        }
    } else {
        // m = k: every edge has exactly one V_k vertex; consecutive edges
        // alternate their shared vertex between V_k and W_1, first in V_k.
        // Edge 1: w_1 w_2..w_{k-1} v. Even edges end in a fresh W_1 vertex,
        // odd edges (after the first) end in a fresh V_k vertex.
        path.seq.push_back(w[0].take());
        for (std::size_t j = 1; j < w.size(); ++j) path.seq.push_back(w[j].take());
        path.seq.push_back(v.take());
        for (long i = 2; i <= ell; ++i) {
            for (std::size_t j = 1; j < w.size(); ++j) path.seq.push_back(w[j].take());
            if (i % 2 == 0)
                path.seq.push_back(w[0].take());
            else
                path.seq.push_back(v.take());
        }
    }
    return path;
}

}  // namespace lpr
