#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpr/binomial.hpp"
#include "lpr/types.hpp"

namespace lpr {

struct QueryCounter {
    std::uint64_t queries = 0;
};

// Deterministic oracle mapping each k-subset of [0, n) to a color in {1..r}.
// Implementations are pure: repeated queries return the same color, and
// concurrent read-only queries are safe. Callers count queries through their
// own QueryCounter (see CountedColoring).
class ColoringSource {
public:
    ColoringSource(int k, long n, int r) : k_(k), n_(n), r_(r) {
        if (k < 1 || r < 1 || n < k) throw ValidationError("bad coloring parameters");
    }
    virtual ~ColoringSource() = default;

    int k() const { return k_; }
    long n() const { return n_; }
    int r() const { return r_; }

    virtual ColorId color_of(std::span<const Vertex> edge) const = 0;
    virtual std::string_view kind() const = 0;
    // Canonical one-line description; equal sources describe identically.
    virtual std::string describe() const = 0;

protected:
    int k_;
    long n_;
    int r_;
};

// Per-worker counting handle over a shared source.
struct CountedColoring {
    const ColoringSource* source = nullptr;
    QueryCounter* counter = nullptr;

    ColorId operator()(std::span<const Vertex> edge) const {
        ++counter->queries;
        return source->color_of(edge);
    }
};

class ConstantColoring final : public ColoringSource {
public:
    ConstantColoring(int k, long n, int r, ColorId color)
        : ColoringSource(k, n, r), color_(color) {
        if (color < 1 || static_cast<int>(color) > r)
            throw ValidationError("constant color out of range");
    }

    ColorId color_of(std::span<const Vertex>) const override { return color_; }
    std::string_view kind() const override { return "constant"; }
    std::string describe() const override {
        return "constant color=" + std::to_string(color_);
    }
    ColorId color() const { return color_; }

private:
    ColorId color_;
};

// Edges containing the center vertex get the inner color, the rest the outer.
class StarColoring final : public ColoringSource {
public:
    StarColoring(int k, long n, int r, Vertex center, ColorId inner, ColorId outer)
        : ColoringSource(k, n, r), center_(center), inner_(inner), outer_(outer) {
        if (static_cast<long>(center) >= n) throw ValidationError("star center out of range");
        if (inner < 1 || static_cast<int>(inner) > r || outer < 1 || static_cast<int>(outer) > r)
            throw ValidationError("star colors out of range");
    }

    ColorId color_of(std::span<const Vertex> edge) const override {
        for (Vertex v : edge)
            if (v == center_) return inner_;
        return outer_;
    }
    std::string_view kind() const override { return "star"; }
    std::string describe() const override {
        return "star center=" + std::to_string(center_) + " inner=" + std::to_string(inner_) +
               " outer=" + std::to_string(outer_);
    }
    Vertex center() const { return center_; }
    ColorId inner() const { return inner_; }
    ColorId outer() const { return outer_; }

private:
    Vertex center_;
    ColorId inner_;
    ColorId outer_;
};

// Bit-exact color rule shared across implementations and platforms: a 64-bit
// finalizer over the edge's colex rank, wrap-around arithmetic.
inline ColorId seeded_color(std::uint64_t seed, std::uint64_t rank, int r) {
    std::uint64_t x = seed ^ (rank * 0x9E3779B97F4A7C15ull);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return static_cast<ColorId>(x % static_cast<std::uint64_t>(r)) + 1;
}

class SeededRandomColoring final : public ColoringSource {
public:
    SeededRandomColoring(int k, long n, int r, std::uint64_t seed)
        : ColoringSource(k, n, r), seed_(seed), binom_(n, k) {
        if (binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)) == kSaturated)
            throw ValidationError("C(n,k) exceeds the 64-bit rank space");
    }

    ColorId color_of(std::span<const Vertex> edge) const override {
        return seeded_color(seed_, colex_rank(edge, k_, binom_), r_);
    }
    std::string_view kind() const override { return "random"; }
    std::string describe() const override { return "random seed=" + std::to_string(seed_); }
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    BinomialTable binom_;
};

// Dense color array indexed by colex rank.
class TableColoring final : public ColoringSource {
public:
    TableColoring(int k, long n, int r, std::vector<ColorId> table)
        : ColoringSource(k, n, r), table_(std::move(table)), binom_(n, k) {
        const std::uint64_t expect =
            binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
        if (expect == kSaturated || table_.size() != expect)
            throw ValidationError("table size must equal C(n,k)");
        for (ColorId c : table_)
            if (c < 1 || static_cast<int>(c) > r)
                throw ValidationError("table color out of range {1..r}");
    }

    ColorId color_of(std::span<const Vertex> edge) const override {
        return table_[colex_rank(edge, k_, binom_)];
    }
    std::string_view kind() const override { return "table"; }
    std::string describe() const override {
        return "table k=" + std::to_string(k_) + " n=" + std::to_string(n_) +
               " r=" + std::to_string(r_);
    }
    const std::vector<ColorId>& table() const { return table_; }

private:
    std::vector<ColorId> table_;
    BinomialTable binom_;
};

// Generator request for oracle::generate_coloring.
struct GenSpec {
    enum class Kind { Constant, Seeded, Star, Table, File } kind = Kind::Seeded;
    ColorId constant_color = 1;
    std::uint64_t seed = 0;
    Vertex center = 0;
    ColorId inner = 1;
    ColorId outer = 2;
    std::vector<ColorId> table;
    std::string path;
};

}  // namespace lpr
