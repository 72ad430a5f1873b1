#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "lpr/binomial.hpp"
#include "lpr/bounds.hpp"
#include "lpr/coloring.hpp"
#include "lpr/finder_result.hpp"
#include "lpr/loose_path.hpp"
#include "lpr/partite.hpp"
#include "lpr/types.hpp"

namespace lpr::reduction {

// Majority-vote projection of a k-uniform coloring down to uniformity k-1:
// every (k-1)-subset e of the ground set takes the most frequent color among
// its reservoir extensions e ∪ {w}. Acts as a ColoringSource over the ground
// set (dense table over colex ranks); keeps, per projected edge, the list of
// reservoir vertices that voted for the winner.
class ProjectedColoring final : public ColoringSource {
public:
    ProjectedColoring(int k, std::vector<Vertex> ground, std::vector<Vertex> reservoir, int r,
                      std::vector<ColorId> majority, std::vector<std::vector<Vertex>> witnesses)
        : ColoringSource(k, static_cast<long>(ground.size()), r),
          ground_(std::move(ground)),
          reservoir_(std::move(reservoir)),
          majority_(std::move(majority)),
          witnesses_(std::move(witnesses)),
          binom_(static_cast<long>(ground_.size()), k) {}

    ColorId color_of(std::span<const Vertex> edge) const override {
        return majority_[colex_rank(edge, k_, binom_)];
    }
    std::string_view kind() const override { return "projected"; }
    std::string describe() const override {
        return "projected k=" + std::to_string(k_) + " n=" + std::to_string(n_) +
               " r=" + std::to_string(r_);
    }

    // Ground vertices in the base coloring's id space; projected ids are
    // positions into this list.
    const std::vector<Vertex>& ground() const { return ground_; }
    const std::vector<Vertex>& reservoir() const { return reservoir_; }
    const std::vector<Vertex>& witnesses_at(std::uint64_t rank) const { return witnesses_[rank]; }
    std::size_t edge_table_size() const { return majority_.size(); }

private:
    std::vector<Vertex> ground_;
    std::vector<Vertex> reservoir_;
    std::vector<ColorId> majority_;
    std::vector<std::vector<Vertex>> witnesses_;
    BinomialTable binom_;
};

// Builds the projection by querying every (k-1)-subset of `ground` against
// every reservoir vertex: C(|ground|, k-1) * |reservoir| base queries. Ties
// break toward the smallest color id. With |reservoir| = r(l-1)+1 pigeonhole
// gives every projected edge at least l witnesses.
inline ProjectedColoring majority_projection(const ColoringSource& base, QueryCounter& counter,
                                             const std::vector<Vertex>& ground,
                                             const std::vector<Vertex>& reservoir,
                                             const Params& params) {
    const int k = params.k;
    if (k < 3) throw RangeError("majority_projection needs k >= 3");
    {
        std::vector<Vertex> overlap;
        std::set_intersection(ground.begin(), ground.end(), reservoir.begin(), reservoir.end(),
                              std::back_inserter(overlap));
        if (!overlap.empty()) throw ValidationError("ground and reservoir sets overlap");
    }
    const long want_reservoir = static_cast<long>(params.r) * (params.ell - 1) + 1;
    if (static_cast<long>(reservoir.size()) != want_reservoir)
        throw ValidationError("reservoir must have exactly r(l-1)+1 = " +
                              std::to_string(want_reservoir) + " vertices");
    if (static_cast<long>(ground.size()) < k - 1)
        throw ValidationError("ground set smaller than k-1");

    const std::uint64_t table_size =
        binomial(ground.size(), static_cast<std::uint64_t>(k - 1));
    if (table_size == kSaturated) throw TooLargeError("projection table exceeds 64-bit ranks");

    std::vector<ColorId> majority(table_size, 0);
    std::vector<std::vector<Vertex>> witnesses(table_size);
    CountedColoring query{&base, &counter};

    std::vector<std::size_t> comb;
    first_combination(comb, k - 1);
    Edge lifted(static_cast<std::size_t>(k));
    std::vector<std::vector<Vertex>> votes(static_cast<std::size_t>(params.r) + 1);
    std::uint64_t rank = 0;
    bool more = ground.size() >= static_cast<std::size_t>(k - 1);
    while (more) {
        for (auto& v : votes) v.clear();
        for (Vertex w : reservoir) {
            for (int q = 0; q < k - 1; ++q) lifted[static_cast<std::size_t>(q)] = ground[comb[q]];
            lifted[static_cast<std::size_t>(k - 1)] = w;
            std::sort(lifted.begin(), lifted.end());
            const ColorId c = query(lifted);
            if (c < 1 || static_cast<int>(c) > params.r)
                throw ValidationError("base coloring returned color out of range");
            votes[c].push_back(w);
        }
        ColorId best = 1;
        for (ColorId c = 2; c <= static_cast<ColorId>(params.r); ++c)
            if (votes[c].size() > votes[best].size()) best = c;
        majority[rank] = best;
        witnesses[rank] = votes[best];
        // Pigeonhole: ceil(|reservoir| / r) >= l witnesses per projected edge.
        if (static_cast<long>(witnesses[rank].size()) < params.ell)
            throw InvariantViolation("projected edge has fewer than l same-color extensions");
        ++rank;
        more = next_combination(comb, ground.size());
    }

    return ProjectedColoring(k - 1, ground, reservoir, params.r, std::move(majority),
                             std::move(witnesses));
}

// Selfish extension of a monochromatic projected path: assigns a distinct
// reservoir witness to each base edge (greedy in edge order, backtracking on
// conflicts; with >= l witnesses per edge and l edges a system of distinct
// representatives always exists) and raises uniformity by one.
inline LoosePath selfish_lift(const LoosePath& base_path, const ProjectedColoring& projected) {
    const int base_k = projected.k();
    if (base_path.k != base_k) throw ValidationError("base path uniformity mismatch");
    const long t = base_path.edge_count();

    std::vector<const std::vector<Vertex>*> lists;
    lists.reserve(static_cast<std::size_t>(t));
    BinomialTable binom(projected.n(), base_k);
    for (long e = 0; e < t; ++e) {
        Edge key = base_path.edge_key(e);
        lists.push_back(&projected.witnesses_at(colex_rank(key, base_k, binom)));
    }

    std::vector<Vertex> chosen(static_cast<std::size_t>(t));
    std::vector<std::size_t> cursor(static_cast<std::size_t>(t), 0);
    long depth = 0;
    while (depth < t) {
        auto& cur = cursor[static_cast<std::size_t>(depth)];
        const auto& list = *lists[static_cast<std::size_t>(depth)];
        bool placed = false;
        while (cur < list.size()) {
            Vertex w = list[cur++];
            bool clash = false;
            for (long q = 0; q < depth; ++q)
                if (chosen[static_cast<std::size_t>(q)] == w) {
                    clash = true;
                    break;
                }
            if (!clash) {
                chosen[static_cast<std::size_t>(depth)] = w;
                placed = true;
                break;
            }
        }
        if (placed) {
            ++depth;
        } else {
            cur = 0;
            --depth;
            if (depth < 0)
                throw InvariantViolation("no distinct-witness assignment exists for the lift");
        }
    }

    // Insert each witness just after its segment's first vertex; connectors
    // stay at the segment boundaries. Base ids map through the ground list.
    const auto& ground = projected.ground();
    auto map_id = [&](Vertex v) { return ground[v]; };
    LoosePath lifted;
    lifted.k = base_k + 1;
    if (base_path.seq.empty()) return lifted;
    lifted.seq.push_back(map_id(base_path.seq[0]));
    for (long e = 0; e < t; ++e) {
        lifted.seq.push_back(chosen[static_cast<std::size_t>(e)]);
        for (int q = 1; q < base_k; ++q)
            lifted.seq.push_back(map_id(base_path.seq[static_cast<std::size_t>(e * (base_k - 1) + q)]));
    }
    return lifted;
}

// --- base case: monochromatic paths in colored complete graphs -------------

// Either a monochromatic graph path of length ell, or two disjoint sets with
// no probed-color edges between them, each at least `guarantee` large.
struct SplitResult {
    bool found = false;
    LoosePath path;            // when found
    std::vector<Vertex> a, b;  // when split
    long guarantee = 0;
};

// Host structure for the base-case recursion: the complete graph on `a`
// (b empty) or the complete bipartite graph between `a` and `b`.
struct Host {
    std::vector<Vertex> a;
    std::vector<Vertex> b;
    bool bipartite() const { return !b.empty(); }
};

namespace detail {

enum class Side : std::uint8_t { None, A, B, Stack, Dead };

}  // namespace detail

// DFS on the color-c subgraph of the host: grows a path until it has ell
// edges, or collects a dead set D with no color-c host edges into the
// untouched set U. Stops as soon as one side of D is big enough to split
// evenly, so the recursion halves the host per color. Each host pair is
// queried at most once (monotone per-vertex cursors).
inline SplitResult dfs_split(const ColoringSource& coloring, QueryCounter& counter,
                             const Host& host, ColorId probe, int ell) {
    CountedColoring query{&coloring, &counter};
    const bool bip = host.bipartite();
    const long m = bip ? static_cast<long>(std::min(host.a.size(), host.b.size()))
                       : static_cast<long>(host.a.size());
    const long stop = std::max<long>((m - ell) / 2, 1);

    // side lookup by vertex id
    std::vector<detail::Side> side(static_cast<std::size_t>(coloring.n()), detail::Side::None);
    for (Vertex v : host.a) side[v] = detail::Side::A;
    for (Vertex v : host.b) side[v] = detail::Side::B;

    std::vector<Vertex> untouched;  // sorted; doubles as U
    untouched.reserve(host.a.size() + host.b.size());
    untouched.insert(untouched.end(), host.a.begin(), host.a.end());
    untouched.insert(untouched.end(), host.b.begin(), host.b.end());
    std::sort(untouched.begin(), untouched.end());
    std::vector<bool> in_u(static_cast<std::size_t>(coloring.n()), false);
    for (Vertex v : untouched) in_u[v] = true;

    std::vector<Vertex> stack;
    std::vector<detail::Side> orig(static_cast<std::size_t>(coloring.n()), detail::Side::None);
    for (Vertex v : host.a) orig[v] = detail::Side::A;
    for (Vertex v : host.b) orig[v] = detail::Side::B;
    std::vector<std::size_t> cursor(static_cast<std::size_t>(coloring.n()), 0);
    std::vector<Vertex> dead;
    long dead_a = 0, dead_b = 0;

    Edge pair(2);
    auto adjacent_pool = [&](Vertex v) -> const std::vector<Vertex>& {
        // candidate neighbours live in the whole untouched list; bipartite
        // hosts additionally require the opposite side (checked in the loop)
        (void)v;
        return untouched;
    };

    auto emit_split = [&]() {
        SplitResult out;
        out.guarantee = stop;
        auto grab = [&](detail::Side want_orig, bool from_dead, std::vector<Vertex>& into) {
            if (from_dead) {
                for (Vertex v : dead)
                    if (!bip || orig[v] == want_orig) into.push_back(v);
            } else {
                for (Vertex v : untouched)
                    if (in_u[v] && (!bip || orig[v] == want_orig)) into.push_back(v);
            }
            std::sort(into.begin(), into.end());
        };
        if (!bip) {
            grab(detail::Side::A, true, out.a);
            grab(detail::Side::A, false, out.b);
        } else if (dead_a >= stop) {
            grab(detail::Side::A, true, out.a);
            grab(detail::Side::B, false, out.b);
        } else {
            grab(detail::Side::A, false, out.a);
            grab(detail::Side::B, true, out.b);
        }
        return out;
    };

    while (true) {
        if (static_cast<long>(stack.size()) == ell + 1) {
            SplitResult out;
            out.found = true;
            out.path.k = 2;
            out.path.seq = stack;
            return out;
        }
        if (stack.empty()) {
            auto it = std::find_if(untouched.begin(), untouched.end(),
                                   [&](Vertex v) { return in_u[v]; });
            if (it == untouched.end()) return emit_split();  // everything dead
            in_u[*it] = false;
            stack.push_back(*it);
            continue;
        }
        Vertex top = stack.back();
        const auto& pool = adjacent_pool(top);
        bool pushed = false;
        auto& cur = cursor[top];
        while (cur < pool.size()) {
            Vertex u = pool[cur];
            ++cur;
            if (!in_u[u]) continue;
            if (bip && orig[u] == orig[top]) continue;  // stay on host edges
            pair[0] = std::min(top, u);
            pair[1] = std::max(top, u);
            if (query(pair) == probe) {
                in_u[u] = false;
                stack.push_back(u);
                pushed = true;
                break;
            }
        }
        if (pushed) continue;
        stack.pop_back();
        dead.push_back(top);
        if (orig[top] == detail::Side::A)
            ++dead_a;
        else
            ++dead_b;
        if (!bip) {
            if (dead_a >= stop) return emit_split();
        } else if (dead_a >= stop || dead_b >= stop) {
            return emit_split();
        }
    }
}

// Exhaustive absence check for a split: true iff no probed-color edge joins
// the two sides. Used by tests and debug runs.
inline bool split_is_clean(const ColoringSource& coloring, const std::vector<Vertex>& a,
                           const std::vector<Vertex>& b, ColorId probe) {
    QueryCounter qc;
    CountedColoring query{&coloring, &qc};
    Edge pair(2);
    for (Vertex x : a)
        for (Vertex y : b) {
            pair[0] = std::min(x, y);
            pair[1] = std::max(x, y);
            if (query(pair) == probe) return false;
        }
    return true;
}

// Monochromatic graph path finder: repeated DFS-splits, one color at a time;
// each split halves the host, and with one color left a monochromatic
// complete (bi)partite host of side >= ell contains the path by alternation.
// Query count is O(n^2): hosts shrink geometrically and each pair is probed
// at most once per color round.
inline std::pair<ColorId, LoosePath> base_graph_path_finder(const ColoringSource& coloring,
                                                            long n, int r, int ell,
                                                            QueryCounter& counter,
                                                            bool debug_check_splits = false) {
    if (coloring.k() != 2) throw ValidationError("base finder needs a k=2 coloring");
    if (r < 1) throw RangeError("base finder needs r >= 1");
    if (ell < 1) throw RangeError("base finder needs ell >= 1");
    const long need = (r == 1) ? ell + 1 : (1L << (r + 1)) * ell;
    if (n < need)
        throw ThresholdError("base finder needs n >= " + std::to_string(need), need);

    Host host;
    host.a.resize(static_cast<std::size_t>(n));
    for (long v = 0; v < n; ++v) host.a[v] = static_cast<Vertex>(v);

    for (int c = 1; c <= r - 1; ++c) {
        SplitResult res = dfs_split(coloring, counter, host, static_cast<ColorId>(c), ell);
        if (res.found) return {static_cast<ColorId>(c), std::move(res.path)};
        if (debug_check_splits && !split_is_clean(coloring, res.a, res.b, static_cast<ColorId>(c)))
            throw InvariantViolation("split leaked a probed-color edge");
        host.a = std::move(res.a);
        host.b = std::move(res.b);
        if (static_cast<long>(std::min(host.a.size(), host.b.size())) < ell)
            throw InvariantViolation("split produced a side smaller than ell");
    }

    // Last color: the host is monochromatic in color r.
    LoosePath path;
    path.k = 2;
    if (!host.bipartite()) {
        if (static_cast<long>(host.a.size()) < ell + 1)
            throw InvariantViolation("final host smaller than ell+1");
        path.seq.assign(host.a.begin(), host.a.begin() + ell + 1);
    } else {
        PartiteFamily family;
        family.parts.push_back(host.a);
        family.residual = host.b;
        Params p;
        p.k = 2;
        p.ell = ell;
        p.r = r;
        p.n = n;
        path = build_partite_path(family, p);
    }
    CountedColoring query{&coloring, &counter};
    for (long e = 0; e < path.edge_count(); ++e)
        if (query(path.edge_key(e)) != static_cast<ColorId>(r))
            throw InvariantViolation("final host edge is not color r");
    return {static_cast<ColorId>(r), std::move(path)};
}

// --- the full reduction -----------------------------------------------------

// Constructive reduction: peel one uniformity level per stage by reserving
// the highest-indexed r(l-1)+1 vertices as the voting reservoir, recurse to
// graphs, solve there, then lift stage by stage via selfish extensions.
// Reported queries sum the per-level counters (projection builds hit the
// level's own source) plus the base-case and final verification queries.
inline FinderResult find_via_reduction(const ColoringSource& coloring, const Params& params,
                                       bool debug_checks = false) {
    require_core_params(params);
    if (params.ell < 3) throw RangeError("find_via_reduction needs ell >= 3");
    if (params.r < 2) throw RangeError("find_via_reduction needs r >= 2");
    if (coloring.k() != params.k || coloring.n() != params.n || coloring.r() != params.r)
        throw ValidationError("coloring parameters do not match the request");
    const long need = bounds::n_min_con2(params);
    if (params.n < need)
        throw ThresholdError("reduction needs n >= " + std::to_string(need) + ", got " +
                                 std::to_string(params.n),
                             need);

    const long reservoir_size = static_cast<long>(params.r) * (params.ell - 1) + 1;
    std::uint64_t total_queries = 0;

    // Projection stack: level j handles uniformity j over ground [0, u_j).
    std::vector<std::unique_ptr<ProjectedColoring>> stack;
    const ColoringSource* current = &coloring;
    long u = params.n;
    for (int j = params.k; j >= 3; --j) {
        const long ground_size = u - reservoir_size;
        std::vector<Vertex> ground(static_cast<std::size_t>(ground_size));
        for (long v = 0; v < ground_size; ++v) ground[v] = static_cast<Vertex>(v);
        std::vector<Vertex> reservoir(static_cast<std::size_t>(reservoir_size));
        for (long v = 0; v < reservoir_size; ++v)
            reservoir[v] = static_cast<Vertex>(ground_size + v);
        Params level = params;
        level.k = j;
        level.n = u;
        QueryCounter qc;
        stack.push_back(std::make_unique<ProjectedColoring>(
            majority_projection(*current, qc, ground, reservoir, level)));
        total_queries += qc.queries;
        current = stack.back().get();
        u = ground_size;
    }

    // Base case at uniformity 2: the ground set kept >= 2^{r+1} l vertices.
    if (u < (1L << (params.r + 1)) * params.ell)
        throw InvariantViolation("reduction reached the graph case with too few vertices");
    QueryCounter base_qc;
    auto [color, path] = base_graph_path_finder(*current, u, params.r, params.ell, base_qc,
                                                debug_checks);
    total_queries += base_qc.queries;

    // Lift back up, innermost projection first.
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) path = selfish_lift(path, **it);

    PathCheck check = validate_loose_path(path, params);
    if (!check.ok)
        throw InvariantViolation("reduction produced invalid path: " + check.diagnostic);
    if (path.edge_count() != params.ell)
        throw InvariantViolation("reduction path has wrong length");
    QueryCounter verify_qc;
    CountedColoring query{&coloring, &verify_qc};
    for (long e = 0; e < path.edge_count(); ++e)
        if (query(path.edge_key(e)) != color)
            throw InvariantViolation("reduction path edge color mismatch");
    total_queries += verify_qc.queries;

    FinderResult result;
    result.color = color;
    result.path = std::move(path);
    result.stats.queries = total_queries;
    // Budget: sum of projection-table builds, a generous O(n^2) base-case
    // allowance, and the verification edges.
    std::uint64_t budget = 0;
    long uu = params.n;
    for (int j = params.k; j >= 3; --j) {
        const long ground_size = uu - reservoir_size;
        budget = sat_add(budget, sat_mul(binomial(static_cast<std::uint64_t>(ground_size),
                                                  static_cast<std::uint64_t>(j - 1)),
                                         static_cast<std::uint64_t>(reservoir_size)));
        uu = ground_size;
    }
    budget = sat_add(budget, 2 * binomial(static_cast<std::uint64_t>(uu), 2));
    budget = sat_add(budget, static_cast<std::uint64_t>(params.k) *
                                 static_cast<std::uint64_t>(params.ell));
    result.stats.budget = budget;
    result.stats.budget_guaranteed = true;
    result.stats.rounds_run = 0;
    if (result.stats.queries > result.stats.budget)
        throw InvariantViolation("reduction query budget exceeded");
    return result;
}

}  // namespace lpr::reduction
