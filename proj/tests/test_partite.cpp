#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "lpr/partite.hpp"

using namespace lpr;

TEST_CASE("singleton family yields exactly its forced edge") {
    PartiteFamily fam{{{0}}, {1, 2}};
    PartiteEdgeStream stream(fam, 3);
    Edge e;
    REQUIRE(stream.next(e));
    CHECK(e == Edge{0, 1, 2});
    CHECK_FALSE(stream.next(e));
}

TEST_CASE("two-part family has the predicted count") {
    PartiteFamily fam{{{0, 1}}, {2, 3, 4}};
    CHECK(partite_edge_count(fam, 3) == 6);
    PartiteEdgeStream stream(fam, 3);
    Edge e;
    std::set<Edge> seen;
    while (stream.next(e)) CHECK(seen.insert(e).second);
    CHECK(seen.size() == 6);
}

TEST_CASE("all-singleton family with one residual vertex is forced") {
    PartiteFamily fam{{{4}, {7}}, {9}};
    CHECK(partite_edge_count(fam, 3) == 1);
}

TEST_CASE("overlapping parts are rejected") {
    PartiteFamily fam{{{0, 1}}, {1, 2, 3}};
    CHECK_THROWS_AS(require_family(fam, 3), ValidationError);
}

TEST_CASE("stream yields edges in increasing colex rank, no duplicates, exact count") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 40; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 4);
        const int m = 2 + static_cast<int>(rng() % (k - 1));
        PartiteFamily fam;
        Vertex next = rng() % 3;
        for (int j = 0; j < m - 1; ++j) {
            std::vector<Vertex> part;
            for (std::uint32_t c = 1 + rng() % 3; c-- > 0;) {
                part.push_back(next);
                next += 1 + rng() % 2;
            }
            fam.parts.push_back(part);
        }
        for (std::uint32_t c = static_cast<std::uint32_t>(k) + rng() % 4; c-- > 0;) {
            fam.residual.push_back(next);
            next += 1 + rng() % 2;
        }
        PartiteEdgeStream stream(fam, k);
        Edge e;
        std::uint64_t count = 0;
        std::uint64_t last_rank = 0;
        while (stream.next(e)) {
            const std::uint64_t rank = colex_rank(e, k);
            if (count > 0) CHECK(rank > last_rank);
            last_rank = rank;
            CHECK(edge_in_family(fam, e, k));
            ++count;
        }
        CHECK(count == partite_edge_count(fam, k));
    }
}

TEST_CASE("partite path matches the worked example") {
    PartiteFamily fam{{{0, 1, 2}}, {3, 4, 5, 6, 7, 8, 9}};
    Params p{3, 3, 2, 10};
    LoosePath path = build_partite_path(fam, p);
    CHECK(path.seq == std::vector<Vertex>{3, 0, 4, 1, 5, 2, 6});
    CHECK(validate_loose_path(path, p).ok);
}

TEST_CASE("zero-length path is a single residual vertex") {
    PartiteFamily fam{{{0, 1}}, {5, 6}};
    LoosePath path = build_partite_path(fam, Params{3, 0, 2, 7});
    CHECK(path.seq == std::vector<Vertex>{5});
}

TEST_CASE("m = k alternation keeps the shared vertex in W_1 or V_k") {
    PartiteFamily fam{{{0, 1}, {2, 3}}, {4, 5}};
    Params p{3, 2, 3, 6};
    LoosePath path = build_partite_path(fam, p);
    REQUIRE(validate_loose_path(path, p).ok);
    REQUIRE(path.edge_count() == 2);
    Edge e0 = path.edge_key(0), e1 = path.edge_key(1);
    Edge shared;
    std::set_intersection(e0.begin(), e0.end(), e1.begin(), e1.end(), std::back_inserter(shared));
    REQUIRE(shared.size() == 1);
    const Vertex c = shared[0];
    const bool in_w1 = c == 0 || c == 1;
    const bool in_vk = c == 4 || c == 5;
    CHECK((in_w1 || in_vk));
    for (long i = 0; i < 2; ++i) CHECK(edge_in_family(fam, path.edge_key(i), 3));
}

TEST_CASE("insufficient parts raise the deficient part's name") {
    PartiteFamily fam{{{0}}, {3, 4, 5, 6}};
    try {
        build_partite_path(fam, Params{3, 3, 2, 7});
        FAIL("expected InsufficientPartError");
    } catch (const InsufficientPartError& e) {
        CHECK(e.part == "W_1");
    }
    PartiteFamily fam2{{{0, 1, 2}}, {3, 4}};
    try {
        build_partite_path(fam2, Params{3, 3, 2, 7});
        FAIL("expected InsufficientPartError");
    } catch (const InsufficientPartError& e) {
        CHECK(e.part == "V_2");
    }
}

TEST_CASE("built paths pass validation and membership at minimum part sizes") {
    for (int k = 2; k <= 6; ++k)
        for (int m = 2; m <= k; ++m)
            for (int ell = 0; ell <= 5; ++ell) {
                PartiteFamily fam;
                Vertex next = 0;
                for (int j = 0; j < m - 1; ++j) {
                    std::vector<Vertex> part;
                    for (int c = 0; c < ell; ++c) part.push_back(next++);
                    fam.parts.push_back(part);
                }
                const long rsize = (m <= k - 1) ? static_cast<long>(ell) * (k - m) + 1
                                                : std::max<long>(ell, 1);
                for (long c = 0; c < rsize; ++c) fam.residual.push_back(next++);
                if (ell == 0 && m <= k - 1) {
                    // single residual vertex; fine
                }
                Params p{k, ell, std::max(2, m), static_cast<long>(next)};
                if (ell > 0 && static_cast<long>(fam.parts.empty() ? 0 : fam.parts[0].size()) < ell)
                    continue;
                LoosePath path = build_partite_path(fam, p);
                CHECK(validate_loose_path(path, p).ok);
                CHECK(path.edge_count() == ell);
                for (long e = 0; e < path.edge_count(); ++e)
                    CHECK(edge_in_family(fam, path.edge_key(e), k));
            }
}
