#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lpr/binomial.hpp"
#include "lpr/coloring.hpp"
#include "lpr/loose_path.hpp"
#include "lpr/types.hpp"

namespace lpr::oracle {

struct SearchGuard {
    std::uint64_t max_nodes = 100'000'000;  // r * C(n,k) precheck
};

// Ground truth for small instances: either an explicit witness or an
// exhaustion certificate with the number of candidate edges examined.
struct OracleVerdict {
    bool found = false;
    ColorId color = 0;
    LoosePath path;
    std::uint64_t nodes = 0;
};

namespace detail {

// Backtracking search for a color-c loose path of length ell, grown left to
// right. First edges run over all k-sets in colex order; each later edge is
// {connector} ∪ F for fresh (k-1)-subsets F in colex order over the unused
// vertices, with the next connector drawn from F (ascending). This enforces
// the definition directly: a new edge meets the path exactly in its
// connector, and the connector chain never reuses a vertex.
class MonoPathSearch {
public:
    MonoPathSearch(const ColoringSource& coloring, const Params& params, ColorId color,
                   QueryCounter* qc)
        : coloring_(coloring), params_(params), color_(color) {
        counter_ = qc ? qc : &own_counter_;
        used_.assign(static_cast<std::size_t>(params.n), false);
    }

    bool run() {
        if (params_.ell == 0) {
            path_.push_back(0);
            return true;
        }
        if (params_.n < params_.k) return false;
        std::vector<std::size_t> comb;
        first_combination(comb, params_.k);
        Edge first;
        do {
            first.clear();
            for (std::size_t idx : comb) first.push_back(static_cast<Vertex>(idx));
            ++nodes_;
            if (CountedColoring{&coloring_, counter_}(first) != color_) continue;
            for (Vertex v : first) used_[v] = true;
            if (params_.ell == 1) {
                path_ = first;
                return true;
            }
            for (Vertex c1 : first) {
                for (Vertex v : first)
                    if (v != c1) path_.push_back(v);
                path_.push_back(c1);
                if (grow(c1, 2)) return true;
                path_.clear();
            }
            for (Vertex v : first) used_[v] = false;
        } while (next_combination(comb, static_cast<std::size_t>(params_.n)));
        return false;
    }

    std::uint64_t nodes() const { return nodes_; }

    LoosePath path() const {
        LoosePath p;
        p.k = params_.k;
        p.seq = path_;
        return p;
    }

private:
    // Finds edge number d through `connector`.
    bool grow(Vertex connector, long d) {
        std::vector<Vertex> free;
        for (long u = 0; u < params_.n; ++u)
            if (!used_[static_cast<std::size_t>(u)]) free.push_back(static_cast<Vertex>(u));
        if (free.size() < static_cast<std::size_t>(params_.k - 1)) return false;
        std::vector<std::size_t> comb;
        first_combination(comb, params_.k - 1);
        Edge cand;
        std::vector<Vertex> fresh;
        do {
            fresh.clear();
            for (std::size_t idx : comb) fresh.push_back(free[idx]);
            cand = fresh;
            cand.push_back(connector);
            std::sort(cand.begin(), cand.end());
            ++nodes_;
            if (CountedColoring{&coloring_, counter_}(cand) != color_) continue;
            for (Vertex v : fresh) used_[v] = true;
            if (d == static_cast<long>(params_.ell)) {
                for (Vertex v : fresh) path_.push_back(v);
                return true;
            }
            for (Vertex next : fresh) {
                for (Vertex v : fresh)
                    if (v != next) path_.push_back(v);
                path_.push_back(next);
                if (grow(next, d + 1)) return true;
                path_.resize(path_.size() - static_cast<std::size_t>(params_.k - 1));
            }
            for (Vertex v : fresh) used_[v] = false;
        } while (next_combination(comb, free.size()));
        return false;
    }

    const ColoringSource& coloring_;
    const Params& params_;
    ColorId color_;
    QueryCounter* counter_;
    QueryCounter own_counter_;
    std::vector<bool> used_;
    std::vector<Vertex> path_;
    std::uint64_t nodes_ = 0;
};

}  // namespace detail

namespace detail {

inline void require_search_guard(const Params& params, const SearchGuard& guard) {
    const std::uint64_t space = sat_mul(
        binomial(static_cast<std::uint64_t>(params.n), static_cast<std::uint64_t>(params.k)),
        static_cast<std::uint64_t>(params.r));
    if (space > guard.max_nodes)
        throw TooLargeError("search space r*C(n,k) = " + std::to_string(space) +
                            " exceeds the guard " + std::to_string(guard.max_nodes));
}

}  // namespace detail

// Decides existence of a P_ell^(k) in one fixed color.
inline OracleVerdict exhaustive_mono_path_search_color(const ColoringSource& coloring,
                                                       const Params& params, ColorId color,
                                                       QueryCounter* qc = nullptr,
                                                       const SearchGuard& guard = {}) {
    require_core_params(params);
    if (params.ell < 0) throw RangeError("ell must be >= 0");
    detail::require_search_guard(params, guard);
    detail::MonoPathSearch search(coloring, params, color, qc);
    OracleVerdict verdict;
    verdict.found = search.run();
    verdict.nodes = search.nodes();
    if (verdict.found) {
        verdict.color = color;
        verdict.path = search.path();
    }
    return verdict;
}

// Decides existence of a monochromatic P_ell^(k) by exhaustive backtracking,
// color by color (1..r); the first witness in scan order is returned.
inline OracleVerdict exhaustive_mono_path_search(const ColoringSource& coloring,
                                                 const Params& params, QueryCounter* qc = nullptr,
                                                 const SearchGuard& guard = {}) {
    require_core_params(params);
    if (params.ell < 0) throw RangeError("ell must be >= 0");
    detail::require_search_guard(params, guard);
    OracleVerdict verdict;
    for (int c = 1; c <= params.r; ++c) {
        detail::MonoPathSearch search(coloring, params, static_cast<ColorId>(c), qc);
        const bool found = search.run();
        verdict.nodes += search.nodes();
        if (found) {
            verdict.found = true;
            verdict.color = static_cast<ColorId>(c);
            verdict.path = search.path();
            return verdict;
        }
    }
    return verdict;
}

// True iff the path is structurally valid, has exactly ell edges, and every
// edge carries the claimed color.
inline bool verify_witness(const ColoringSource& coloring, const LoosePath& path, ColorId color,
                           const Params& params, std::string* diagnostic = nullptr,
                           QueryCounter* qc = nullptr) {
    auto explain = [&](const std::string& msg) {
        if (diagnostic) *diagnostic = msg;
        return false;
    };
    PathCheck check = validate_loose_path(path, params);
    if (!check.ok) return explain(check.diagnostic);
    if (path.empty()) return explain("witness is empty");
    if (path.edge_count() != params.ell)
        return explain("witness has " + std::to_string(path.edge_count()) + " edges, expected " +
                       std::to_string(params.ell));
    if (color < 1 || static_cast<int>(color) > params.r)
        return explain("claimed color out of range");
    QueryCounter own;
    CountedColoring query{&coloring, qc ? qc : &own};
    for (long e = 0; e < path.edge_count(); ++e) {
        const ColorId c = query(path.edge_key(e));
        if (c != color)
            return explain("edge " + std::to_string(e + 1) + " has color " + std::to_string(c) +
                           ", claimed " + std::to_string(color));
    }
    if (diagnostic) diagnostic->clear();
    return true;
}

inline std::unique_ptr<ColoringSource> generate_coloring(const GenSpec& spec,
                                                         const Params& params) {
    require_core_params(params);
    switch (spec.kind) {
        case GenSpec::Kind::Constant:
            return std::make_unique<ConstantColoring>(params.k, params.n, params.r,
                                                      spec.constant_color);
        case GenSpec::Kind::Seeded:
            return std::make_unique<SeededRandomColoring>(params.k, params.n, params.r, spec.seed);
        case GenSpec::Kind::Star:
            return std::make_unique<StarColoring>(params.k, params.n, params.r, spec.center,
                                                  spec.inner, spec.outer);
        case GenSpec::Kind::Table:
            return std::make_unique<TableColoring>(params.k, params.n, params.r, spec.table);
        case GenSpec::Kind::File:
            throw ValidationError("file-backed specs are materialized by the io layer");
    }
    throw ValidationError("unknown coloring spec");
}

namespace detail {

class RefTableColoring final : public ColoringSource {
public:
    RefTableColoring(int k, long n, int r, const std::vector<ColorId>& table,
                     const BinomialTable& binom)
        : ColoringSource(k, n, r), table_(table), binom_(binom) {}

    ColorId color_of(std::span<const Vertex> edge) const override {
        return table_[colex_rank(edge, k_, binom_)];
    }
    std::string_view kind() const override { return "table"; }
    std::string describe() const override { return "table (enumeration)"; }

private:
    const std::vector<ColorId>& table_;
    const BinomialTable& binom_;
};

}  // namespace detail

// True iff every r-coloring of K_n^(k) contains a monochromatic P_ell^(k).
// Enumerates all r^C(n,k) colorings as base-r counters indexed by colex rank
// and decides each one with the exhaustive search. Guarded to tiny cases.
inline bool verify_small_ramsey(int k, int ell, int r, long n,
                                std::uint64_t max_colorings = 1ull << 24,
                                std::uint64_t* colorings_checked = nullptr,
                                const SearchGuard& guard = {}) {
    Params params{k, ell, r, n};
    require_core_params(params);
    const std::uint64_t edges =
        binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    if (edges >= 64) throw TooLargeError("coloring space exceeds the enumeration guard");
    std::uint64_t space = 1;
    for (std::uint64_t e = 0; e < edges; ++e) {
        space = sat_mul(space, static_cast<std::uint64_t>(r));
        if (space > max_colorings)
            throw TooLargeError("r^C(n,k) exceeds the enumeration guard of " +
                                std::to_string(max_colorings));
    }

    BinomialTable binom(n, k);
    std::vector<ColorId> table(edges, 1);
    detail::RefTableColoring coloring(k, n, r, table, binom);
    std::uint64_t checked = 0;
    bool all_contain = true;
    while (true) {
        ++checked;
        OracleVerdict v = exhaustive_mono_path_search(coloring, params, nullptr, guard);
        if (!v.found) {
            all_contain = false;
            break;
        }
        // advance the base-r counter
        std::size_t pos = 0;
        while (pos < table.size() && table[pos] == static_cast<ColorId>(r)) {
            table[pos] = 1;
            ++pos;
        }
        if (pos == table.size()) break;
        ++table[pos];
    }
    if (colorings_checked) *colorings_checked = checked;
    return all_contain;
}

}  // namespace lpr::oracle
