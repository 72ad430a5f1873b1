#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpr {

using Vertex = std::uint32_t;
using ColorId = std::uint32_t;       // colors are 1-based: {1..r}
using Edge = std::vector<Vertex>;    // strictly increasing k-set

// Instance parameters: uniformity k, path length ell, color count r,
// vertex count n (vertices are 0-based ids in [0, n)).
struct Params {
    int k = 3;
    int ell = 3;
    int r = 2;
    long n = 0;
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct RangeError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct TooLargeError : Error {
    using Error::Error;
};

// Requested instance is below a guaranteed threshold; carries the minimum n.
struct ThresholdError : Error {
    ThresholdError(const std::string& msg, long required)
        : Error(msg), required_n(required) {}
    long required_n;
};

// An internal guarantee failed; signals a bug or an upstream precondition
// breach, never an expected outcome on valid inputs.
struct InvariantViolation : Error {
    using Error::Error;
};

// Permissive-mode run exhausted its vertex budget; no guarantee applies.
struct NoGuaranteeError : Error {
    using Error::Error;
};

struct InsufficientPartError : Error {
    InsufficientPartError(const std::string& msg, std::string part_name)
        : Error(msg), part(std::move(part_name)) {}
    std::string part;
};

inline void require_core_params(const Params& p) {
    if (p.k < 2) throw RangeError("k must be >= 2");
    if (p.r < 1) throw RangeError("r must be >= 1");
    if (p.n < p.k) throw RangeError("n must be >= k");
}

// Preconditions of the multi-round DFS entry point.
inline void require_finder_params(const Params& p) {
    require_core_params(p);
    if (p.r < 2 || p.r > p.k) throw RangeError("finder needs 2 <= r <= k");
    if (p.ell < 3) throw RangeError("finder needs ell >= 3");
}

}  // namespace lpr
