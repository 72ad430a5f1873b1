#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "helpers.hpp"
#include "lpr/dfs_finder.hpp"
#include "lpr/oracle.hpp"

using namespace lpr;
using namespace lpr::dfs;

namespace {

// Edges containing a vertex below `cut` get the color of the smallest such
// vertex's bucket; everything else gets color r. Buckets: vertex 0 -> color
// 1, vertices {1,2} -> color 2, {3,4} -> color 3, ... Forces short-lived
// paths in every round, so stuck and padding branches are exercised.
class BucketStarColoring final : public ColoringSource {
public:
    BucketStarColoring(int k, long n, int r) : ColoringSource(k, n, r) {}

    ColorId color_of(std::span<const Vertex> edge) const override {
        Vertex low = static_cast<Vertex>(n_);
        for (Vertex v : edge) low = std::min(low, v);
        if (low == 0) return 1;
        for (int c = 2; c <= r_ - 1; ++c) {
            const Vertex base = static_cast<Vertex>(2 * c - 3);
            if (low == base || low == base + 1) return static_cast<ColorId>(c);
        }
        return static_cast<ColorId>(r_);
    }
    std::string_view kind() const override { return "bucket-star"; }
    std::string describe() const override { return "bucket-star"; }
};

}  // namespace

TEST_CASE("constant coloring: path found in round one by pure extension") {
    Params p{3, 3, 2, 15};
    ConstantColoring src(3, 15, 2, 1);
    FinderResult res = find_monochromatic_path(src, p, Mode::Strict, true);
    CHECK(res.color == 1);
    CHECK(res.stats.rounds_run == 1);
    CHECK(res.stats.stuck_events[0] == 0);
    CHECK(oracle::verify_witness(src, res.path, res.color, p));
}

TEST_CASE("star coloring: color 1 impossible, finder lands on color 2") {
    Params p{3, 3, 2, 15};
    StarColoring src(3, 15, 2, 0, 1, 2);
    FinderResult res = find_monochromatic_path(src, p, Mode::Strict, true);
    CHECK(res.color == 2);
    CHECK(oracle::verify_witness(src, res.path, res.color, p));
    // oracle cross-check: no color-1 witness exists at all
    oracle::OracleVerdict v = oracle::exhaustive_mono_path_search(src, p);
    REQUIRE(v.found);
    CHECK(v.color == 2);
}

TEST_CASE("round one with no color-1 edge pads W with the lowest pool vertices") {
    Params p{3, 3, 2, 15};
    ConstantColoring src(3, 15, 2, 2);
    RoundState st = make_initial_state(p);
    QueryCounter qc;
    RoundOutcome out = run_round(st, src, qc);
    REQUIRE(out.status == RoundStatus::StateUpdated);
    CHECK(st.W[0] == std::vector<Vertex>{0, 1, 2});
    CHECK(st.S[0].empty());
    CHECK(st.T[0].empty());
    CHECK(st.pad_events[0] == 1);
    CHECK(st.stuck_events[0] == 0);
}

TEST_CASE("round one on constant input returns PathFound") {
    Params p{3, 3, 2, 15};
    ConstantColoring src(3, 15, 2, 1);
    RoundState st = make_initial_state(p);
    QueryCounter qc;
    RoundOutcome out = run_round(st, src, qc);
    REQUIRE(out.status == RoundStatus::PathFound);
    CHECK(validate_loose_path(out.path, p).ok);
    CHECK(out.path.edge_count() == 3);
}

TEST_CASE("retreat accounting matches the per-event formulas") {
    // k=5, r=4: per stuck event with two full pendant edges exactly
    // 2(i-1) = 2 vertices must enter T_2 and 2(k-i) = 6 enter W_{2,2}.
    Params p{5, 3, 4, 60};
    BucketStarColoring src(5, 60, 4);
    RoundState st = make_initial_state(p);
    st.log_events = true;
    st.check_each_step = true;
    QueryCounter qc;
    REQUIRE(run_round(st, src, qc, Mode::Permissive).status == RoundStatus::StateUpdated);
    REQUIRE(run_round(st, src, qc, Mode::Permissive).status == RoundStatus::StateUpdated);
    bool saw_full_retreat = false;
    for (const auto& ev : st.event_log) {
        if (ev.round == 1) {
            CHECK(ev.to_trash == 0);  // no W sets yet
            continue;
        }
        REQUIRE(ev.round == 2);
        if (ev.edges_before >= 2) {
            CHECK(ev.to_trash == 2);  // 2(i-1)
            CHECK(ev.to_w == 6);      // 2(k-i)
            saw_full_retreat = true;
        } else if (ev.edges_before == 1) {
            CHECK(ev.to_trash == 1);  // i-1
            CHECK(ev.to_w == 4);      // k-i+1
        } else {
            CHECK(ev.to_trash == 0);
            CHECK(ev.to_w == 1);
        }
    }
    CHECK(saw_full_retreat);
}

TEST_CASE("post-round state satisfies the counting-chain bounds") {
    Params p{3, 3, 2, 15};
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 300 && checked < 20; ++seed) {
        TableColoring src(3, 15, 2, testutil::biased_table(3, 15, 2, seed, 1, 150));
        RoundState st = make_initial_state(p);
        QueryCounter qc;
        if (run_round(st, src, qc).status != RoundStatus::StateUpdated) continue;
        ++checked;
        const long w = static_cast<long>(st.W[0].size());
        CHECK(w >= 3);                  // round target ell
        CHECK(w <= 3 + 2 * (3 - 1) - 1);  // ell + 2(k-1) - 1
        CHECK(st.T[0].empty());
        CHECK(static_cast<long>(st.S[0].size()) <= (3 - 1) * (3 - 1) + 1);
        // freeness: no color-1 edge in K^(3)(W_{1,1}, V_1)
        PartiteFamily fam;
        fam.parts.push_back(st.W[0]);
        fam.residual = st.avail;
        PartiteEdgeStream stream(fam, 3);
        Edge e;
        while (stream.next(e)) CHECK(src.color_of(e) == 2);
    }
    CHECK(checked == 20);
}

TEST_CASE("finalize extraction demands completed rounds") {
    Params p{3, 3, 2, 15};
    ConstantColoring src(3, 15, 2, 2);
    RoundState st = make_initial_state(p);
    QueryCounter qc;
    CHECK_THROWS_AS(finalize_extraction(st, src, qc), InvariantViolation);
    REQUIRE(run_round(st, src, qc).status == RoundStatus::StateUpdated);
    LoosePath path = finalize_extraction(st, src, qc);
    CHECK(oracle::verify_witness(src, path, 2, p));
}

TEST_CASE("strict mode rejects undersized instances with the threshold") {
    Params p{3, 3, 2, 14};
    SeededRandomColoring src(3, 14, 2, 5);
    try {
        find_monochromatic_path(src, p);
        FAIL("expected ThresholdError");
    } catch (const ThresholdError& e) {
        CHECK(e.required_n == 15);
    }
}

TEST_CASE("permissive mode runs below threshold and may still succeed") {
    Params p{3, 3, 2, 9};
    ConstantColoring src(3, 9, 2, 1);
    FinderResult res = find_monochromatic_path(src, p, Mode::Permissive);
    CHECK(res.color == 1);
    CHECK(oracle::verify_witness(src, res.path, res.color, p));
}

TEST_CASE("permissive exhaustion reports a no-guarantee failure") {
    // all edges color 2 on a tiny pool: round 1 pads, extraction starves
    // (n=7 still squeaks through with |V_1| = l(k-2)+1 exactly)
    Params p7{3, 3, 2, 7};
    ConstantColoring src7(3, 7, 2, 2);
    FinderResult res = find_monochromatic_path(src7, p7, Mode::Permissive);
    CHECK(res.color == 2);
    Params p{3, 3, 2, 6};
    ConstantColoring src(3, 6, 2, 2);
    CHECK_THROWS_AS(find_monochromatic_path(src, p, Mode::Permissive), NoGuaranteeError);
}

TEST_CASE("worst-case constant-last-color run stays within the query budget") {
    Params p{3, 3, 3, 20};
    ConstantColoring src(3, 20, 3, 3);
    FinderResult res = find_monochromatic_path(src, p, Mode::Permissive, true);
    CHECK(res.color == 3);
    CHECK(res.stats.budget_guaranteed);
    CHECK(res.stats.queries <= res.stats.budget);
    // both rounds exhausted their scans without finding anything
    CHECK(res.stats.pad_events[0] == 1);
    CHECK(res.stats.pad_events[1] == 1);
}

TEST_CASE("identical inputs give identical results including stats") {
    Params p{4, 4, 3, 115};
    for (std::uint64_t seed : {3ull, 77ull}) {
        SeededRandomColoring src(4, 115, 3, seed);
        FinderResult a = find_monochromatic_path(src, p);
        FinderResult b = find_monochromatic_path(src, p);
        CHECK(a.color == b.color);
        CHECK(a.path.seq == b.path.seq);
        CHECK(a.stats.queries == b.stats.queries);
        CHECK(a.stats.stuck_events == b.stats.stuck_events);
    }
}

TEST_CASE("seeded strict run at each uniformity verifies end to end") {
    struct Cfg {
        int k, l, r;
        long n;
    } cfgs[] = {{3, 3, 2, 15}, {3, 3, 3, 97}, {4, 4, 3, 115}, {5, 4, 5, 424}, {2, 3, 2, 8}};
    for (const auto& c : cfgs) {
        Params p{c.k, c.l, c.r, c.n};
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            SeededRandomColoring src(c.k, c.n, c.r, seed);
            FinderResult res = find_monochromatic_path(src, p, Mode::Strict, true);
            std::string diag;
            CHECK(oracle::verify_witness(src, res.path, res.color, p, &diag));
            CHECK(res.stats.queries <= res.stats.budget);
        }
    }
}

TEST_CASE("bucket coloring drives a full multi-round run to the last color") {
    Params p{5, 3, 4, 176};
    BucketStarColoring src(5, 176, 4);
    FinderResult res = find_monochromatic_path(src, p, Mode::Strict, true);
    CHECK(res.color == 4);
    CHECK(res.stats.rounds_run == 3);
    CHECK(oracle::verify_witness(src, res.path, res.color, p));
    CHECK(res.stats.queries <= res.stats.budget);
}
