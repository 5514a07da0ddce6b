#pragma once

// Bundled sequences: a 15-entry corpus of regular length-12 paths with
// their own continuations, periodic generators for the memory study, and
// uniform random sequences.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "board.hpp"
#include "rng.hpp"

namespace seqval {

struct CorpusEntry {
    std::string name;
    PositionSequence full;
    std::size_t base_len = 6;
};

namespace detail {

inline PositionSequence from_fn(int count, const std::function<Position(int)>& f, BoardConfig board = {}) {
    std::vector<Position> out;
    for (int i = 0; i < count; ++i) out.push_back(f(i));
    return PositionSequence(board, std::move(out));
}

inline PositionSequence from_list(std::vector<Position> ps, BoardConfig board = {}) {
    return PositionSequence(board, std::move(ps));
}

}  // namespace detail

/// One of the eight symmetries of the square board (rotations by multiples
/// of 90 degrees, optionally mirrored).
inline Position board_symmetry(Position p, int n, int which) {
    int c = p.col, r = p.row;
    if (which & 4) c = n - 1 - c;
    for (int k = 0; k < (which & 3); ++k) {
        const int nc = n - 1 - r;
        r = c;
        c = nc;
    }
    return {c, r};
}

inline PositionSequence apply_symmetry(const PositionSequence& s, int which) {
    std::vector<Position> out;
    for (const auto& p : s) out.push_back(board_symmetry(p, s.board().size, which));
    return PositionSequence(s.board(), std::move(out));
}

/// Fifteen regular sequences of length 12 on the 12x12 board. The first six
/// positions form the base; positions 6..11 are the designated continuations.
inline std::vector<CorpusEntry> regular_corpus() {
    using detail::from_fn;
    using detail::from_list;
    std::vector<CorpusEntry> c;
    c.push_back({"diagonal", from_fn(12, [](int i) { return Position{i, i}; })});
    c.push_back({"row", from_fn(12, [](int i) { return Position{i, 2}; })});
    c.push_back({"zigzag", from_fn(12, [](int i) { return Position{i, 1 + i % 2}; })});
    c.push_back({"staircase", from_fn(12, [](int i) { return Position{(i + 1) / 2, i / 2}; })});
    c.push_back({"knight-zigzag", from_fn(12, [](int i) { return Position{i, 3 + 2 * (i % 2)}; })});
    c.push_back({"sawtooth", from_fn(12, [](int i) { return Position{i, 2 * (i % 3)}; })});
    c.push_back({"column", from_fn(12, [](int i) { return Position{5, i}; })});
    c.push_back({"anti-diagonal", from_fn(12, [](int i) { return Position{i, 11 - i}; })});
    c.push_back({"spiral", from_list({{5, 5}, {6, 5}, {6, 6}, {5, 6}, {4, 6}, {4, 5},
                                      {4, 4}, {5, 4}, {6, 4}, {7, 4}, {7, 5}, {7, 6}})});
    c.push_back({"meander", from_fn(12, [](int i) { return Position{i, 4 + 2 * ((i / 2) % 2)}; })});
    c.push_back({"half-slope", from_fn(12, [](int i) { return Position{i, i / 2}; })});
    c.push_back({"long-treads", from_fn(12, [](int i) { return Position{i - i / 3, i / 3}; })});
    c.push_back({"wave", from_fn(12, [](int i) { return Position{i, i / 2 + 2 * (i % 2)}; })});
    c.push_back({"braid", from_fn(12, [](int i) { return Position{i / 2 + 2 * (i % 2), i / 2}; })});
    c.push_back({"diamond", from_list({{3, 0}, {4, 1}, {5, 2}, {6, 3}, {5, 4}, {4, 5},
                                       {3, 6}, {2, 5}, {1, 4}, {0, 3}, {1, 2}, {2, 1}})});
    return c;
}

/// The corpus under one board symmetry per entry, drawn from @p seed.
/// Seed 0 leaves every entry untouched.
inline std::vector<CorpusEntry> transformed_corpus(std::uint64_t seed) {
    auto corpus = regular_corpus();
    if (seed == 0) return corpus;
    Rng rng(seed);
    for (auto& e : corpus) e.full = apply_symmetry(e.full, static_cast<int>(uniform_below(rng, 8)));
    return corpus;
}

inline const std::vector<std::string>& pattern_ids() {
    static const std::vector<std::string> ids{"diamond", "square", "knight-cycle"};
    return ids;
}

/// Periodic regular sequences of any length on the default board.
inline PositionSequence generate_pattern(const std::string& id, int length) {
    std::vector<Position> cycle;
    if (id == "diamond") {
        cycle = {{6, 1}, {7, 2}, {8, 3}, {9, 4}, {8, 5}, {7, 6}, {6, 7}, {5, 6}, {4, 5}, {3, 4}, {4, 3}, {5, 2}};
    } else if (id == "square") {
        cycle = {{4, 4}, {5, 4}, {6, 4}, {7, 4}, {7, 5}, {7, 6}, {7, 7}, {6, 7}, {5, 7}, {4, 7}, {4, 6}, {4, 5}};
    } else if (id == "knight-cycle") {
        cycle = {{5, 3}, {7, 4}, {8, 6}, {7, 8}, {5, 9}, {3, 8}, {2, 6}, {3, 4}};
    } else {
        throw std::invalid_argument("unknown pattern '" + id + "'");
    }
    return detail::from_fn(length, [&](int i) { return cycle[static_cast<std::size_t>(i) % cycle.size()]; });
}

inline PositionSequence random_sequence(Rng& rng, int length, BoardConfig board = {}) {
    const auto n = static_cast<std::uint64_t>(board.size);
    std::vector<Position> out;
    for (int i = 0; i < length; ++i) {
        const int col = static_cast<int>(uniform_below(rng, n));
        const int row = static_cast<int>(uniform_below(rng, n));
        out.push_back({col, row});
    }
    return PositionSequence(board, std::move(out));
}

}  // namespace seqval
