#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_set>
#include <vector>

#include "lpr/binomial.hpp"
#include "lpr/bounds.hpp"
#include "lpr/coloring.hpp"
#include "lpr/finder_result.hpp"
#include "lpr/loose_path.hpp"
#include "lpr/partite.hpp"
#include "lpr/rational.hpp"
#include "lpr/types.hpp"

namespace lpr::dfs {

enum class Mode { Strict, Permissive };

// Per-round memo of edges already queried and found non-i-colored. For rank
// spaces up to 2^33 bits the memo is exact: a hash set that upgrades to a
// dense bitmap once it outgrows a small threshold (most rounds reject only a
// handful of edges, so the bitmap is rarely materialized). Larger spaces use
// a capped hash set which may be flushed; that preserves correctness but not
// the query-budget guarantee.
class RejectedMemo {
public:
    static constexpr std::uint64_t kBitmapLimitBits = 1ull << 33;
    static constexpr std::size_t kUpgradeAt = 4096;
    static constexpr std::size_t kHashCap = 1u << 26;

    void reset(std::uint64_t edge_space) {
        edge_space_ = edge_space;
        bits_.clear();
        bits_.shrink_to_fit();
        set_.clear();
        // Saturated rank spaces would alias distinct edges; disable the memo.
        usable_ = edge_space_ < kSaturated;
        can_bitmap_ = usable_ && edge_space_ <= kBitmapLimitBits;
        bitmap_ = false;
        exact_ = usable_;
    }

    bool contains(std::uint64_t rank) const {
        if (!usable_) return false;
        if (bitmap_) return (bits_[rank >> 6] >> (rank & 63)) & 1;
        return set_.count(rank) != 0;
    }

    void insert(std::uint64_t rank) {
        if (!usable_) {
            exact_ = false;
            return;
        }
        if (bitmap_) {
            bits_[rank >> 6] |= 1ull << (rank & 63);
            return;
        }
        if (can_bitmap_ && set_.size() >= kUpgradeAt) {
            bits_.assign((edge_space_ + 63) / 64, 0);
            for (std::uint64_t r : set_) bits_[r >> 6] |= 1ull << (r & 63);
            set_.clear();
            bitmap_ = true;
            bits_[rank >> 6] |= 1ull << (rank & 63);
            return;
        }
        if (!can_bitmap_ && set_.size() >= kHashCap) {
            set_.clear();
            exact_ = false;
        }
        set_.insert(rank);
    }

    // True while no rejection has been forgotten; the query budget
    // r*C(n,k)+ell is guaranteed exactly when this holds for every round.
    bool exact() const { return exact_; }
    bool bitmap_mode() const { return can_bitmap_; }

private:
    std::uint64_t edge_space_ = 0;
    std::vector<std::uint64_t> bits_;
    std::unordered_set<std::uint64_t> set_;
    bool can_bitmap_ = false;
    bool bitmap_ = false;
    bool usable_ = false;
    bool exact_ = false;
};

struct RetreatEvent {
    int round;          // i
    long edges_before;  // t of the stuck path
    int to_trash;       // vertices moved to T_i
    int to_w;           // vertices moved to W_{i,i}
};

// Full state of the multi-round DFS: working path P, the sets W_{j,i},
// trash bins T_i, frozen sets S_i, and the residual pool V_i. The W, T, S
// sets, the pool and V(P) stay pairwise disjoint and partition [0, n).
struct RoundState {
    enum class Loc : std::uint8_t { Avail, Path, W, T, S };
    struct Slot {
        Loc loc = Loc::Avail;
        std::uint16_t idx = 0;  // 1-based round index for W/T/S
    };

    Params params;
    int round = 0;  // rounds completed; run_round executes round round+1

    std::vector<Slot> where;                 // per vertex
    std::vector<std::vector<Vertex>> W;      // W[i-1] = W_{i, current}
    std::vector<std::vector<Vertex>> T;      // T[i-1] = T_i
    std::vector<std::vector<Vertex>> S;      // S[i-1] = S_i
    std::vector<Vertex> avail;               // V_i, sorted

    std::deque<Vertex> path;                 // working path vertex sequence
    std::vector<std::uint8_t> origin;        // for path vertices: 0 = pool, j = W_j

    RejectedMemo rejected;
    BinomialTable binom;
    std::uint64_t edge_space = 0;            // C(n,k), saturating

    std::vector<std::uint64_t> stuck_events;  // per round
    std::vector<std::uint64_t> pad_events;    // per round
    bool memo_exact_all = true;

    bool log_events = false;
    std::vector<RetreatEvent> event_log;
    bool check_each_step = false;  // partition check after every transition

    long path_edges() const {
        if (path.empty() || path.size() == 1) return 0;
        return static_cast<long>((path.size() - 1) / static_cast<std::size_t>(params.k - 1));
    }

    LoosePath path_snapshot() const {
        LoosePath p;
        p.k = params.k;
        p.seq.assign(path.begin(), path.end());
        return p;
    }
};

enum class RoundStatus { PathFound, StateUpdated };

struct RoundOutcome {
    RoundStatus status;
    LoosePath path;  // set when status == PathFound
};

namespace detail {

inline void sorted_insert(std::vector<Vertex>& set, Vertex v) {
    set.insert(std::lower_bound(set.begin(), set.end(), v), v);
}

inline void sorted_erase(std::vector<Vertex>& set, Vertex v) {
    auto it = std::lower_bound(set.begin(), set.end(), v);
    if (it == set.end() || *it != v) throw InvariantViolation("vertex missing from set");
    set.erase(it);
}

// Deterministic scan over shaped candidate edges: one vertex from each
// listed part, `draws` vertices from the pool, plus an optional fixed
// connector. Pool subsets advance in colex order (outer loop); part choices
// advance odometer-style (inner, last part fastest).
class ShapedScan {
public:
    ShapedScan(std::vector<const std::vector<Vertex>*> parts, const std::vector<Vertex>& pool,
               int draws, std::optional<Vertex> fixed)
        : parts_(std::move(parts)), pool_(pool), draws_(draws), fixed_(fixed) {
        if (pool_.size() < static_cast<std::size_t>(draws_)) done_ = true;
        for (const auto* part : parts_)
            if (part->empty()) done_ = true;
        odo_.assign(parts_.size(), 0);
    }

    bool next(Edge& out) {
        if (done_) return false;
        if (first_) {
            first_ = false;
            first_combination(comb_, draws_);
        } else if (!advance()) {
            done_ = true;
            return false;
        }
        out.clear();
        if (fixed_) out.push_back(*fixed_);
        for (std::size_t j = 0; j < parts_.size(); ++j) out.push_back((*parts_[j])[odo_[j]]);
        for (std::size_t idx : comb_) out.push_back(pool_[idx]);
        std::sort(out.begin(), out.end());
        return true;
    }

private:
    bool advance() {
        for (std::size_t j = parts_.size(); j-- > 0;) {
            if (++odo_[j] < parts_[j]->size()) return true;
            odo_[j] = 0;
        }
        return next_combination(comb_, pool_.size());
    }

    std::vector<const std::vector<Vertex>*> parts_;
    const std::vector<Vertex>& pool_;
    int draws_;
    std::optional<Vertex> fixed_;
    std::vector<std::size_t> odo_;
    std::vector<std::size_t> comb_;
    bool first_ = true;
    bool done_ = false;
};

inline void check_partition(const RoundState& st) {
    const long n = st.params.n;
    std::vector<std::uint32_t> seen(static_cast<std::size_t>(n), 0);
    auto mark = [&](const std::vector<Vertex>& set, RoundState::Loc loc, std::uint16_t idx) {
        for (Vertex v : set) {
            ++seen[v];
            const auto& slot = st.where[v];
            if (slot.loc != loc || slot.idx != idx)
                throw InvariantViolation("location tag mismatch for vertex " + std::to_string(v));
        }
    };
    mark(st.avail, RoundState::Loc::Avail, 0);
    for (std::size_t i = 0; i < st.W.size(); ++i)
        mark(st.W[i], RoundState::Loc::W, static_cast<std::uint16_t>(i + 1));
    for (std::size_t i = 0; i < st.T.size(); ++i)
        mark(st.T[i], RoundState::Loc::T, static_cast<std::uint16_t>(i + 1));
    for (std::size_t i = 0; i < st.S.size(); ++i)
        mark(st.S[i], RoundState::Loc::S, static_cast<std::uint16_t>(i + 1));
    for (Vertex v : st.path) {
        ++seen[v];
        if (st.where[v].loc != RoundState::Loc::Path)
            throw InvariantViolation("path vertex not tagged as path");
    }
    for (long v = 0; v < n; ++v)
        if (seen[v] != 1)
            throw InvariantViolation("vertex " + std::to_string(v) + " appears " +
                                     std::to_string(seen[v]) + " times across the partition");
}

}  // namespace detail

inline RoundState make_initial_state(const Params& params) {
    require_finder_params(params);
    RoundState st;
    st.params = params;
    st.where.assign(static_cast<std::size_t>(params.n), {});
    st.origin.assign(static_cast<std::size_t>(params.n), 0);
    st.avail.resize(static_cast<std::size_t>(params.n));
    for (long v = 0; v < params.n; ++v) st.avail[v] = static_cast<Vertex>(v);
    st.binom.reset(params.n, params.k);
    st.edge_space = binomial(static_cast<std::uint64_t>(params.n),
                             static_cast<std::uint64_t>(params.k));
    return st;
}

namespace detail {

// Moves a fresh edge's vertices onto the path; fills `origin` tags.
inline void consume_edge(RoundState& st, const Edge& chosen, int i) {
    for (Vertex v : chosen) {
        auto& slot = st.where[v];
        if (slot.loc == RoundState::Loc::Avail) {
            sorted_erase(st.avail, v);
            st.origin[v] = 0;
        } else if (slot.loc == RoundState::Loc::W && slot.idx < i) {
            sorted_erase(st.W[slot.idx - 1], v);
            st.origin[v] = static_cast<std::uint8_t>(slot.idx);
        } else if (slot.loc == RoundState::Loc::Path) {
            continue;  // the connector
        } else {
            throw InvariantViolation("candidate edge drew from an unavailable vertex");
        }
        slot = {RoundState::Loc::Path, 0};
    }
}

// Initial-edge layout: a pool vertex at each end, W-origin vertices inside,
// so both ends stay eligible as future connectors.
inline void lay_initial_edge(RoundState& st, const Edge& chosen) {
    std::vector<Vertex> ws, us;
    for (Vertex v : chosen)
        (st.origin[v] == 0 ? us : ws).push_back(v);
    std::sort(ws.begin(), ws.end(),
              [&](Vertex a, Vertex b) { return st.origin[a] < st.origin[b]; });
    st.path.clear();
    st.path.push_back(us.front());
    for (Vertex w : ws) st.path.push_back(w);
    for (std::size_t q = 1; q < us.size(); ++q) st.path.push_back(us[q]);
}

// Reorders the degree-one slots of the pendant edge at one end so that the
// connector v sits at the outer boundary; order within a segment carries no
// meaning beyond the boundary vertices.
inline void rotate_connector_to_end(RoundState& st, Vertex v, bool tail) {
    const int k = st.params.k;
    const long t = st.path_edges();
    std::vector<Vertex> seg;
    std::size_t lo, hi;  // [lo, hi) = reorderable slot range
    if (t <= 1) {
        lo = 0;
        hi = st.path.size();
    } else if (tail) {
        lo = static_cast<std::size_t>((t - 1) * (k - 1) + 1);
        hi = st.path.size();
    } else {
        lo = 0;
        hi = static_cast<std::size_t>(k - 1);
    }
    for (std::size_t p = lo; p < hi; ++p) seg.push_back(st.path[p]);
    auto it = std::find(seg.begin(), seg.end(), v);
    if (it == seg.end()) throw InvariantViolation("connector not in pendant segment");
    seg.erase(it);
    std::vector<Vertex> ws, us;
    for (Vertex x : seg) (st.origin[x] == 0 ? us : ws).push_back(x);
    std::sort(ws.begin(), ws.end(),
              [&](Vertex a, Vertex b) { return st.origin[a] < st.origin[b]; });
    std::sort(us.begin(), us.end());
    std::vector<Vertex> arranged;
    if (tail) {
        // ... w_1..w_{i-1} u... v  (v becomes the tail end)
        if (t <= 1 && !us.empty()) {
            arranged.push_back(us.front());
            us.erase(us.begin());
        }
        arranged.insert(arranged.end(), ws.begin(), ws.end());
        arranged.insert(arranged.end(), us.begin(), us.end());
        arranged.push_back(v);
    } else {
        // v u... w_1..w_{i-1} ...  (v becomes the head end)
        arranged.push_back(v);
        arranged.insert(arranged.end(), us.begin(), us.end());
        arranged.insert(arranged.end(), ws.begin(), ws.end());
    }
    for (std::size_t p = lo; p < hi; ++p) st.path[p] = arranged[p - lo];
}

inline void append_extension(RoundState& st, const Edge& chosen, Vertex connector, bool tail) {
    std::vector<Vertex> ws, us;
    for (Vertex v : chosen) {
        if (v == connector) continue;
        (st.origin[v] == 0 ? us : ws).push_back(v);
    }
    std::sort(ws.begin(), ws.end(),
              [&](Vertex a, Vertex b) { return st.origin[a] < st.origin[b]; });
    std::sort(us.begin(), us.end());
    if (st.path.size() == 1) {
        // Extending P_0: lay out as a fresh edge ending in the connector.
        st.path.clear();
        st.path.push_back(us.front());
        for (Vertex w : ws) st.path.push_back(w);
        for (std::size_t q = 1; q < us.size(); ++q) st.path.push_back(us[q]);
        st.path.push_back(connector);
        return;
    }
    rotate_connector_to_end(st, connector, tail);
    if (tail) {
        for (Vertex w : ws) st.path.push_back(w);
        for (Vertex u : us) st.path.push_back(u);
    } else {
        for (std::size_t q = ws.size(); q-- > 0;) st.path.push_front(ws[q]);
        for (std::size_t q = us.size(); q-- > 0;) st.path.push_front(us[q]);
    }
}

// Pendant vertices eligible as connectors: degree-one, pool-origin vertices
// of the pendant edges, tail side first, ascending ids within a side.
inline std::vector<std::pair<Vertex, bool>> eligible_connectors(const RoundState& st) {
    const int k = st.params.k;
    const long t = st.path_edges();
    std::vector<std::pair<Vertex, bool>> out;
    if (st.path.empty()) return out;
    if (t == 0) {
        out.emplace_back(st.path.front(), true);
        return out;
    }
    auto collect = [&](std::size_t lo, std::size_t hi, bool tail) {
        std::vector<Vertex> vs;
        for (std::size_t p = lo; p < hi; ++p)
            if (st.origin[st.path[p]] == 0) vs.push_back(st.path[p]);
        std::sort(vs.begin(), vs.end());
        for (Vertex v : vs) out.emplace_back(v, tail);
    };
    if (t == 1) {
        collect(0, st.path.size(), true);
        return out;
    }
    collect(static_cast<std::size_t>((t - 1) * (k - 1) + 1), st.path.size(), true);
    collect(0, static_cast<std::size_t>(k - 1), false);
    return out;
}

// Moves the pendant vertices of both pendant edges off the path: W-origin
// pendants to T_i, pool-origin pendants to W_{i,i}. Drops the pendant
// edge(s); a 2-edge path collapses to its middle vertex, shorter paths
// to the empty path.
inline void retreat(RoundState& st, int i) {
    const int k = st.params.k;
    const long t = st.path_edges();
    int to_trash = 0, to_w = 0;
    auto discard = [&](Vertex v) {
        const std::uint8_t org = st.origin[v];
        if (org == 0) {
            sorted_insert(st.W[static_cast<std::size_t>(i - 1)], v);
            st.where[v] = {RoundState::Loc::W, static_cast<std::uint16_t>(i)};
            ++to_w;
        } else {
            sorted_insert(st.T[static_cast<std::size_t>(i - 1)], v);
            st.where[v] = {RoundState::Loc::T, static_cast<std::uint16_t>(i)};
            ++to_trash;
        }
    };
    if (t <= 1) {
        for (Vertex v : st.path) discard(v);
        st.path.clear();
    } else {
        for (int q = 0; q < k - 1; ++q) {
            discard(st.path.front());
            st.path.pop_front();
            discard(st.path.back());
            st.path.pop_back();
        }
    }
    ++st.stuck_events.back();
    if (st.log_events) st.event_log.push_back({i, t, to_trash, to_w});
    if (st.check_each_step) check_partition(st);
}

inline void end_round(RoundState& st, int i) {
    auto& s_i = st.S[static_cast<std::size_t>(i - 1)];
    for (Vertex v : st.path) {
        sorted_insert(s_i, v);
        st.where[v] = {RoundState::Loc::S, static_cast<std::uint16_t>(i)};
    }
    st.path.clear();
    st.round = i;
    if (!st.rejected.exact()) st.memo_exact_all = false;
}

// Counting-chain checks at the end of round i (exact rational comparisons).
inline void check_round_end(const RoundState& st, int i) {
    const Params& p = st.params;
    const Rational w_size(static_cast<long long>(st.W[static_cast<std::size_t>(i - 1)].size()));
    const Rational target = bounds::round_target(i, p);
    if (w_size < target)
        throw InvariantViolation("round " + std::to_string(i) + ": |W_{i,i}| below target");
    Rational upper;
    if (i == 1)
        upper = (p.r == 2) ? Rational(p.ell + 2 * (p.k - 1) - 1)
                           : target + Rational(2 * (p.k - 1));
    else
        upper = target + Rational(2 * (p.k - i));
    if (w_size > upper)
        throw InvariantViolation("round " + std::to_string(i) + ": |W_{i,i}| above cap");
    if (i >= 2) {
        const auto t_size = static_cast<long long>(st.T[static_cast<std::size_t>(i - 1)].size());
        if (Rational(t_size * (p.k - i)) > Rational(i - 1) * w_size)
            throw InvariantViolation("round " + std::to_string(i) +
                                     ": |T_i| exceeds (i-1)/(k-i) |W_{i,i}|");
        if (Rational(t_size) > bounds::t_bin(i, p))
            throw InvariantViolation("round " + std::to_string(i) + ": |T_i| exceeds t_i");
        const Rational floor_all = Rational(p.k - i, i - 1) * bounds::tau(i, p);
        for (int j = 1; j <= i; ++j)
            if (Rational(static_cast<long long>(st.W[static_cast<std::size_t>(j - 1)].size())) <
                floor_all)
                throw InvariantViolation("round " + std::to_string(i) + ": |W_{" +
                                         std::to_string(j) + "}| below (k-i)/(i-1) tau_i");
    }
    const long s_cap = static_cast<long>(p.ell - 1) * (p.k - 1) + 1;
    if (static_cast<long>(st.S[static_cast<std::size_t>(i - 1)].size()) > s_cap)
        throw InvariantViolation("round " + std::to_string(i) + ": |S_i| exceeds |V(P_{l-1})|");
    check_partition(st);
}

}  // namespace detail

// Runs round i = state.round + 1 of the DFS. Either finds a color-i loose
// path of length ell, or updates the state so that |W_{i,i}| meets the round
// target, S_i holds the stranded path's vertices, and no edge of the partite
// family K^(k)(W_1,...,W_i,V_i) has color <= i.
inline RoundOutcome run_round(RoundState& st, const ColoringSource& coloring, QueryCounter& counter,
                              Mode mode = Mode::Strict) {
    const Params& p = st.params;
    const int i = st.round + 1;
    if (i > p.r - 1) throw RangeError("all rounds already complete");
    if (!st.path.empty()) throw InvariantViolation("working path must be empty between rounds");

    st.W.emplace_back();
    st.T.emplace_back();
    st.S.emplace_back();
    st.stuck_events.push_back(0);
    st.pad_events.push_back(0);
    st.rejected.reset(st.edge_space);

    const Rational target = bounds::round_target(i, p);
    const BigInt target_ceil = rational_ceil(target);
    auto& w_i = st.W[static_cast<std::size_t>(i - 1)];
    const ColorId want = static_cast<ColorId>(i);
    CountedColoring query{&coloring, &counter};

    std::vector<const std::vector<Vertex>*> parts;
    for (int j = 1; j < i; ++j) parts.push_back(&st.W[static_cast<std::size_t>(j - 1)]);

    // Scans shaped candidates through `fixed`; the first color-i hit is
    // consumed by `accept`. Every miss lands in the per-round memo, which is
    // what makes a negative scan an exhaustive certificate.
    auto scan = [&](std::optional<Vertex> fixed, int draws, auto&& accept) {
        detail::ShapedScan gen(parts, st.avail, draws, fixed);
        Edge candidate;
        while (gen.next(candidate)) {
            const std::uint64_t rank = colex_rank(candidate, p.k, st.binom);
            if (st.rejected.contains(rank)) continue;
            if (query(candidate) == want) {
                accept(candidate);
                return true;
            }
            st.rejected.insert(rank);
        }
        return false;
    };

    while (true) {
        if (Rational(static_cast<long long>(w_i.size())) >= target) {
            detail::end_round(st, i);
            detail::check_round_end(st, i);
            return {RoundStatus::StateUpdated, {}};
        }
        if (st.path.empty()) {
            const bool started = scan(std::nullopt, p.k - i + 1, [&](const Edge& e) {
                detail::consume_edge(st, e, i);
                detail::lay_initial_edge(st, e);
            });
            if (!started) {
                // No color-i edge of the round shape exists; pad W_{i,i} from
                // the pool (lowest ids) up to the ceiling of the target.
                BigInt need = target_ceil - static_cast<long long>(w_i.size());
                if (need > static_cast<long long>(st.avail.size())) {
                    if (mode == Mode::Permissive)
                        throw NoGuaranteeError("pool exhausted while padding round " +
                                               std::to_string(i));
                    throw InvariantViolation("strict-mode pool exhausted while padding round " +
                                             std::to_string(i));
                }
                const auto take = static_cast<std::size_t>(need.convert_to<long long>());
                for (std::size_t q = 0; q < take; ++q) {
                    Vertex v = st.avail.front();
                    st.avail.erase(st.avail.begin());
                    detail::sorted_insert(w_i, v);
                    st.where[v] = {RoundState::Loc::W, static_cast<std::uint16_t>(i)};
                }
                ++st.pad_events.back();
                detail::end_round(st, i);
                detail::check_round_end(st, i);
                return {RoundStatus::StateUpdated, {}};
            }
            if (st.check_each_step) detail::check_partition(st);
            continue;
        }
        if (st.path_edges() == p.ell) {
            LoosePath found = st.path_snapshot();
            st.round = i;
            if (!st.rejected.exact()) st.memo_exact_all = false;
            return {RoundStatus::PathFound, std::move(found)};
        }
        bool extended = false;
        for (const auto& [v, tail] : detail::eligible_connectors(st)) {
            if (scan(v, p.k - i, [&](const Edge& e) {
                    detail::consume_edge(st, e, i);
                    detail::append_extension(st, e, v, tail);
                })) {
                extended = true;
                break;
            }
        }
        if (st.check_each_step) detail::check_partition(st);
        if (!extended) detail::retreat(st, i);
    }
}

// After round r-1: the family K^(k)(W_1,...,W_{r-1},V_r) carries only color
// r; builds the explicit path and re-checks every edge's color.
inline LoosePath finalize_extraction(RoundState& st, const ColoringSource& coloring,
                                     QueryCounter& counter, Mode mode = Mode::Strict) {
    const Params& p = st.params;
    if (st.round != p.r - 1)
        throw InvariantViolation("finalize_extraction requires all r-1 rounds complete");

    // Final counting chain: every W_j survived with >= ell vertices, and the
    // residual covers the path's pool demand. For r >= 3 that demand is the
    // ell(k-r+1) of the paper's chain; the improved r=2 threshold guarantees
    // only ell(k-2)+1 (k >= 3) resp. ell (k = 2).
    long residual_need;
    if (p.r >= 3)
        residual_need = static_cast<long>(p.ell) * (p.k - p.r + 1);
    else
        residual_need = (p.k >= 3) ? static_cast<long>(p.ell) * (p.k - 2) + 1
                                   : static_cast<long>(p.ell);
    auto fail = [&](const std::string& msg) -> void {
        if (mode == Mode::Permissive) throw NoGuaranteeError(msg);
        throw InvariantViolation(msg);
    };
    for (int j = 1; j <= p.r - 1; ++j)
        if (static_cast<long>(st.W[static_cast<std::size_t>(j - 1)].size()) < p.ell)
            fail("final |W_" + std::to_string(j) + "| below ell");
    if (static_cast<long>(st.avail.size()) < residual_need)
        fail("final |V_r| below the residual demand");

    PartiteFamily family;
    family.parts.assign(st.W.begin(), st.W.end());
    family.residual = st.avail;
    LoosePath path = build_partite_path(family, p);

    CountedColoring query{&coloring, &counter};
    for (long e = 0; e < path.edge_count(); ++e) {
        Edge key = path.edge_key(e);
        const ColorId c = query(key);
        if (c != static_cast<ColorId>(p.r)) {
            std::string edge_str;
            for (Vertex v : key) edge_str += std::to_string(v) + " ";
            throw InvariantViolation("extraction edge { " + edge_str + "} has color " +
                                     std::to_string(c) + ", expected " + std::to_string(p.r));
        }
    }
    return path;
}

// The whole algorithm: r-1 DFS rounds, one color each, then extraction of a
// color-r path from the final partite family. Deterministic given
// (coloring, params). Strict mode requires n >= n_min_con and guarantees a
// witness; permissive mode runs the same machine on smaller n and reports a
// no-guarantee failure if the pool runs dry.
inline FinderResult find_monochromatic_path(const ColoringSource& coloring, const Params& params,
                                            Mode mode = Mode::Strict,
                                            bool check_each_step = false) {
    require_finder_params(params);
    if (coloring.k() != params.k || coloring.n() != params.n || coloring.r() != params.r)
        throw ValidationError("coloring parameters do not match the request");
    if (mode == Mode::Strict) {
        const long need = bounds::n_min_con(params);
        if (params.n < need)
            throw ThresholdError("strict mode needs n >= " + std::to_string(need) + ", got " +
                                     std::to_string(params.n),
                                 need);
    }

    RoundState st = make_initial_state(params);
    st.check_each_step = check_each_step;
    QueryCounter counter;

    FinderResult result;
    bool found = false;
    for (int i = 1; i <= params.r - 1 && !found; ++i) {
        RoundOutcome outcome = run_round(st, coloring, counter, mode);
        if (outcome.status == RoundStatus::PathFound) {
            result.color = static_cast<ColorId>(i);
            result.path = std::move(outcome.path);
            found = true;
        }
    }
    if (!found) {
        result.path = finalize_extraction(st, coloring, counter, mode);
        result.color = static_cast<ColorId>(params.r);
    }

    // Witness soundness: structural validity plus per-edge color re-check.
    PathCheck check = validate_loose_path(result.path, params);
    if (!check.ok) throw InvariantViolation("finder produced invalid path: " + check.diagnostic);
    if (result.path.edge_count() != params.ell)
        throw InvariantViolation("finder path has wrong length");
    CountedColoring query{&coloring, &counter};
    for (long e = 0; e < result.path.edge_count(); ++e)
        if (query(result.path.edge_key(e)) != result.color)
            throw InvariantViolation("finder path edge color mismatch");

    result.stats.queries = counter.queries;
    result.stats.budget = sat_add(
        sat_mul(static_cast<std::uint64_t>(params.r), st.edge_space),
        static_cast<std::uint64_t>(params.ell));
    result.stats.budget_guaranteed = st.memo_exact_all;
    result.stats.rounds_run = st.round;
    result.stats.stuck_events = st.stuck_events;
    result.stats.pad_events = st.pad_events;
    if (result.stats.budget_guaranteed && result.stats.queries > result.stats.budget)
        throw InvariantViolation("query budget exceeded with exact memo");
    return result;
}

}  // namespace lpr::dfs
