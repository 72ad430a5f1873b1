#pragma once

#include <cstdint>
#include <vector>

#include "lpr/loose_path.hpp"
#include "lpr/types.hpp"

namespace lpr {

struct FinderStats {
    std::uint64_t queries = 0;
    std::uint64_t budget = 0;        // r*C(n,k) + ell, saturating
    bool budget_guaranteed = true;   // exact per-round memo throughout
    int rounds_run = 0;
    std::vector<std::uint64_t> stuck_events;  // per round
    std::vector<std::uint64_t> pad_events;    // per round
};

// A verified monochromatic loose path of length ell: the run's witness.
struct FinderResult {
    ColorId color = 0;
    LoosePath path;
    FinderStats stats;
};

}  // namespace lpr
