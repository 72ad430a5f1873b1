#pragma once

#include <cstdint>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "lpr/binomial.hpp"
#include "lpr/coloring.hpp"
#include "lpr/loose_path.hpp"
#include "lpr/oracle.hpp"
#include "lpr/types.hpp"

namespace lpr::io {

// Witness file (bit-exact):
//   line 1: lprw 1
//   line 2: k=<k> l=<ell> r=<r> n=<n> color=<c>
//   line 3: space-separated vertex ids of the path sequence
struct WitnessFile {
    Params params;
    ColorId color = 0;
    LoosePath path;
};

inline std::string format_witness(const WitnessFile& w) {
    std::ostringstream out;
    out << "lprw 1\n";
    out << "k=" << w.params.k << " l=" << w.params.ell << " r=" << w.params.r
        << " n=" << w.params.n << " color=" << w.color << "\n";
    for (std::size_t i = 0; i < w.path.seq.size(); ++i) {
        if (i) out << ' ';
        out << w.path.seq[i];
    }
    out << "\n";
    return out.str();
}

namespace detail {

inline long parse_kv(std::istringstream& line, const std::string& key) {
    std::string token;
    if (!(line >> token)) throw ParseError("missing field " + key);
    const std::string prefix = key + "=";
    if (token.rfind(prefix, 0) != 0) throw ParseError("expected " + prefix + "..., got " + token);
    try {
        return std::stol(token.substr(prefix.size()));
    } catch (const std::exception&) {
        throw ParseError("bad integer in " + token);
    }
}

inline std::uint64_t parse_kv_u64(std::istringstream& line, const std::string& key) {
    std::string token;
    if (!(line >> token)) throw ParseError("missing field " + key);
    const std::string prefix = key + "=";
    if (token.rfind(prefix, 0) != 0) throw ParseError("expected " + prefix + "..., got " + token);
    try {
        return std::stoull(token.substr(prefix.size()));
    } catch (const std::exception&) {
        throw ParseError("bad integer in " + token);
    }
}

}  // namespace detail

inline WitnessFile parse_witness(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "lprw 1")
        throw ParseError("witness file must start with 'lprw 1'");
    if (!std::getline(in, line)) throw ParseError("witness file truncated");
    std::istringstream header(line);
    WitnessFile w;
    w.params.k = static_cast<int>(detail::parse_kv(header, "k"));
    w.params.ell = static_cast<int>(detail::parse_kv(header, "l"));
    w.params.r = static_cast<int>(detail::parse_kv(header, "r"));
    w.params.n = detail::parse_kv(header, "n");
    w.color = static_cast<ColorId>(detail::parse_kv(header, "color"));
    w.path.k = w.params.k;
    if (!std::getline(in, line)) throw ParseError("witness file truncated");
    std::istringstream body(line);
    long v;
    while (body >> v) {
        if (v < 0 || v >= w.params.n) throw ParseError("witness vertex out of range");
        w.path.seq.push_back(static_cast<Vertex>(v));
    }
    return w;
}

inline void write_witness_file(const std::string& path, const WitnessFile& w) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out << format_witness(w);
}

inline WitnessFile read_witness_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    return parse_witness(in);
}

// Coloring file (bit-exact):
//   line 1: lprc 1
//   line 2: k=<k> n=<n> r=<r> kind=<table|random|constant|star>
//   table:    whitespace-separated colors, one per colex rank
//   random:   line 3: seed=<u64>
//   constant: line 3: color=<c>
//   star:     line 3: center=<v> inner=<c1> outer=<c2>
inline void write_coloring(std::ostream& out, const ColoringSource& src,
                           bool materialize = false) {
    const std::string_view kind = src.kind();
    const bool as_table = materialize || (kind != "random" && kind != "constant" && kind != "star");
    out << "lprc 1\n";
    out << "k=" << src.k() << " n=" << src.n() << " r=" << src.r() << " kind="
        << (as_table ? "table" : kind) << "\n";
    if (as_table) {
        const std::uint64_t edges = binomial(static_cast<std::uint64_t>(src.n()),
                                             static_cast<std::uint64_t>(src.k()));
        if (edges == kSaturated) throw TooLargeError("coloring too large to materialize");
        for (std::uint64_t rank = 0; rank < edges; ++rank) {
            Edge e = colex_unrank(rank, src.k(), src.n());
            out << src.color_of(e);
            out << (((rank + 1) % 20 == 0) ? '\n' : ' ');
        }
        if (edges % 20 != 0) out << "\n";
        return;
    }
    if (kind == "random") {
        out << "seed=" << static_cast<const SeededRandomColoring&>(src).seed() << "\n";
    } else if (kind == "constant") {
        out << "color=" << static_cast<const ConstantColoring&>(src).color() << "\n";
    } else {
        const auto& star = static_cast<const StarColoring&>(src);
        out << "center=" << star.center() << " inner=" << star.inner()
            << " outer=" << star.outer() << "\n";
    }
}

inline void write_coloring_file(const std::string& path, const ColoringSource& src,
                                bool materialize = false) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    write_coloring(out, src, materialize);
}

inline std::unique_ptr<ColoringSource> parse_coloring(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "lprc 1")
        throw ParseError("coloring file must start with 'lprc 1'");
    if (!std::getline(in, line)) throw ParseError("coloring file truncated");
    std::istringstream header(line);
    Params p;
    p.k = static_cast<int>(detail::parse_kv(header, "k"));
    p.n = detail::parse_kv(header, "n");
    p.r = static_cast<int>(detail::parse_kv(header, "r"));
    std::string token;
    if (!(header >> token) || token.rfind("kind=", 0) != 0)
        throw ParseError("coloring file missing kind=...");
    const std::string kind = token.substr(5);
    if (kind == "table") {
        const std::uint64_t edges =
            binomial(static_cast<std::uint64_t>(p.n), static_cast<std::uint64_t>(p.k));
        std::vector<ColorId> table;
        table.reserve(edges);
        long c;
        while (in >> c) table.push_back(static_cast<ColorId>(c));
        if (table.size() != edges)
            throw ParseError("table has " + std::to_string(table.size()) + " entries, expected " +
                             std::to_string(edges));
        return std::make_unique<TableColoring>(p.k, p.n, p.r, std::move(table));
    }
    if (!std::getline(in, line)) throw ParseError("coloring file truncated");
    std::istringstream body(line);
    if (kind == "random")
        return std::make_unique<SeededRandomColoring>(p.k, p.n, p.r,
                                                      detail::parse_kv_u64(body, "seed"));
    if (kind == "constant")
        return std::make_unique<ConstantColoring>(
            p.k, p.n, p.r, static_cast<ColorId>(detail::parse_kv(body, "color")));
    if (kind == "star") {
        const auto center = static_cast<Vertex>(detail::parse_kv(body, "center"));
        const auto inner = static_cast<ColorId>(detail::parse_kv(body, "inner"));
        const auto outer = static_cast<ColorId>(detail::parse_kv(body, "outer"));
        return std::make_unique<StarColoring>(p.k, p.n, p.r, center, inner, outer);
    }
    throw ParseError("unknown coloring kind '" + kind + "'");
}

inline std::unique_ptr<ColoringSource> read_coloring_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    return parse_coloring(in);
}

// Command-line coloring specs: constant:C | seed:S | star:CENTER:IN:OUT |
// file:PATH.
inline GenSpec parse_coloring_spec(const std::string& text) {
    GenSpec spec;
    auto split = [&]() {
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : text) {
            if (ch == ':') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        parts.push_back(cur);
        return parts;
    };
    const std::vector<std::string> parts = split();
    auto as_long = [&](const std::string& s) {
        try {
            return std::stol(s);
        } catch (const std::exception&) {
            throw ParseError("bad number '" + s + "' in coloring spec '" + text + "'");
        }
    };
    const std::string& head = parts[0];
    if (head == "constant" && parts.size() == 2) {
        spec.kind = GenSpec::Kind::Constant;
        spec.constant_color = static_cast<ColorId>(as_long(parts[1]));
    } else if (head == "seed" && parts.size() == 2) {
        spec.kind = GenSpec::Kind::Seeded;
        try {
            spec.seed = std::stoull(parts[1]);
        } catch (const std::exception&) {
            throw ParseError("bad seed in coloring spec '" + text + "'");
        }
    } else if (head == "star" && parts.size() == 4) {
        spec.kind = GenSpec::Kind::Star;
        spec.center = static_cast<Vertex>(as_long(parts[1]));
        spec.inner = static_cast<ColorId>(as_long(parts[2]));
        spec.outer = static_cast<ColorId>(as_long(parts[3]));
    } else if (head == "file" && parts.size() >= 2) {
        spec.kind = GenSpec::Kind::File;
        spec.path = text.substr(5);
    } else {
        throw ParseError("cannot parse coloring spec '" + text +
                         "' (want constant:C | seed:S | star:V:C1:C2 | file:PATH)");
    }
    return spec;
}

// Resolves a spec to a live source; file-backed specs go through the reader
// and must agree with the requested parameters.
inline std::unique_ptr<ColoringSource> make_coloring(const GenSpec& spec, const Params& params) {
    if (spec.kind != GenSpec::Kind::File) return oracle::generate_coloring(spec, params);
    auto src = read_coloring_file(spec.path);
    if (src->k() != params.k || src->n() != params.n || src->r() != params.r)
        throw ValidationError("coloring file parameters (k=" + std::to_string(src->k()) + " n=" +
                              std::to_string(src->n()) + " r=" + std::to_string(src->r()) +
                              ") do not match the request");
    return src;
}

}  // namespace lpr::io
