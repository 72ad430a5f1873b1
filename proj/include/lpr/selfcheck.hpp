#pragma once

#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "lpr/bounds.hpp"
#include "lpr/dfs_finder.hpp"
#include "lpr/oracle.hpp"
#include "lpr/partite.hpp"
#include "lpr/reduction.hpp"

namespace lpr::selfcheck {

struct Check {
    std::string name;
    std::function<bool(std::string&)> run;
};

inline std::vector<Check> all_checks() {
    std::vector<Check> checks;

    checks.push_back({"colex-roundtrip", [](std::string&) {
        for (long n = 2; n <= 10; ++n)
            for (int k = 1; k <= std::min<long>(4, n); ++k) {
                const std::uint64_t total = binomial(n, k);
                for (std::uint64_t x = 0; x < total; ++x)
                    if (colex_rank(colex_unrank(x, k, n), k) != x) return false;
            }
        return true;
    }});

    checks.push_back({"loose-path-validation", [](std::string&) {
        Params p{4, 3, 2, 11};
        LoosePath fig{4, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}};
        if (!validate_loose_path(fig, p).ok) return false;
        LoosePath bad{3, {0, 1, 2, 3, 4, 5}};
        return !validate_loose_path(bad, Params{3, 2, 2, 6}).ok;
    }});

    checks.push_back({"partite-count", [](std::string&) {
        std::mt19937 rng(7);
        for (int trial = 0; trial < 30; ++trial) {
            const int k = 2 + static_cast<int>(rng() % 4);
            const int m = 2 + static_cast<int>(rng() % (k - 1));
            PartiteFamily fam;
            Vertex next = 0;
            for (int j = 0; j < m - 1; ++j) {
                std::vector<Vertex> part;
                for (std::uint32_t q = rng() % 3 + 1; q-- > 0;) part.push_back(next++);
                fam.parts.push_back(part);
            }
            for (std::uint32_t q = rng() % 4 + static_cast<std::uint32_t>(k); q-- > 0;)
                fam.residual.push_back(next++);
            PartiteEdgeStream stream(fam, k);
            Edge e;
            std::uint64_t count = 0;
            while (stream.next(e)) ++count;
            if (count != partite_edge_count(fam, k)) return false;
        }
        return true;
    }});

    checks.push_back({"coloring-determinism", [](std::string&) {
        SeededRandomColoring src(3, 9, 3, 99);
        for (std::uint64_t rank = 0; rank < binomial(9, 3); ++rank) {
            Edge e = colex_unrank(rank, 3, 9);
            if (src.color_of(e) != src.color_of(e)) return false;
        }
        return true;
    }});

    checks.push_back({"tau-identities", [](std::string& note) {
        for (int k = 3; k <= 30; ++k)
            for (int r = 3; r <= k; ++r)
                for (int ell = 3; ell <= 10; ++ell) {
                    Params p{k, ell, r, 0};
                    if (Rational(k - r + 1, r - 2) * bounds::tau(r - 1, p) != Rational(ell)) {
                        note = "final-round identity failed";
                        return false;
                    }
                    for (int i = 3; i <= r - 1; ++i) {
                        Rational lhs = Rational(k - i + 1, i - 2) * bounds::tau(i - 1, p);
                        Rational rhs =
                            Rational(k - i + 1, i - 1) * bounds::tau(i, p) + Rational(ell + 1);
                        if (lhs != rhs) {
                            note = "telescoping identity failed";
                            return false;
                        }
                    }
                }
        return true;
    }});

    checks.push_back({"claim-inequalities", [](std::string&) {
        for (int k = 2; k <= 40; ++k)
            for (int r = 2; r <= k; ++r)
                for (int i = 1; i <= r - 1; ++i)
                    if (!bounds::check_claim_tau(i, Params{k, 7, r, 0})) return false;
        for (int k = 3; k <= 60; ++k)
            for (int r = 2; r <= k - 1; ++r)
                if (!bounds::check_claim_cor(k, r)) return false;
        return true;
    }});

    checks.push_back({"dfs-finder-witnesses", [](std::string& note) {
        Params p{3, 3, 2, 15};
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            SeededRandomColoring src(p.k, p.n, p.r, seed);
            FinderResult res = dfs::find_monochromatic_path(src, p);
            std::string diag;
            if (!oracle::verify_witness(src, res.path, res.color, p, &diag)) {
                note = diag;
                return false;
            }
            FinderResult again = dfs::find_monochromatic_path(src, p);
            if (again.path.seq != res.path.seq || again.stats.queries != res.stats.queries) {
                note = "determinism breach";
                return false;
            }
        }
        return true;
    }});

    checks.push_back({"reduction-witnesses", [](std::string& note) {
        Params p{3, 3, 2, 30};
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            SeededRandomColoring src(p.k, p.n, p.r, seed);
            FinderResult res = reduction::find_via_reduction(src, p, true);
            std::string diag;
            if (!oracle::verify_witness(src, res.path, res.color, p, &diag)) {
                note = diag;
                return false;
            }
        }
        return true;
    }});

    checks.push_back({"oracle-small-cases", [](std::string&) {
        ConstantColoring all1(3, 7, 2, 1);
        if (!oracle::exhaustive_mono_path_search(all1, Params{3, 3, 2, 7}).found) return false;
        ConstantColoring small(3, 4, 2, 1);
        if (oracle::exhaustive_mono_path_search(small, Params{3, 2, 2, 4}).found) return false;
        return oracle::verify_small_ramsey(2, 2, 2, 3);
    }});

    return checks;
}

// Runs every module's quick invariant suite; returns true iff all pass.
inline bool run_all(std::ostream& out) {
    bool ok = true;
    for (const auto& check : all_checks()) {
        std::string note;
        bool pass = false;
        try {
            pass = check.run(note);
        } catch (const std::exception& e) {
            note = e.what();
        }
        out << (pass ? "ok   " : "FAIL ") << check.name;
        if (!pass && !note.empty()) out << "  (" << note << ")";
        out << "\n";
        ok = ok && pass;
    }
    return ok;
}

}  // namespace lpr::selfcheck
