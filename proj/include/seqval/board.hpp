#pragma once

/**
 * @file board.hpp
 * @brief Square board geometry, chess-style field notation and text diagrams.
 *
 * Fields are addressed by a column letter and a 1-based row number ("C7").
 * Columns run A, B, ..., Z, AA, AB, ... (spreadsheet style) so boards wider
 * than 26 fields still have a notation. Internally a field is a (col, row)
 * pair with A1 = (0, 0), which maps onto the complex number col + i*row.
 */

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace seqval {

using cplx = std::complex<double>;

/// Thrown for malformed notation. Carries the offending token and, for
/// sequence parsing, the token's index in the input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::string token, std::optional<std::size_t> index = std::nullopt)
        : std::runtime_error(message), token_(std::move(token)), index_(index) {}

    const std::string& token() const noexcept { return token_; }
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    std::string token_;
    std::optional<std::size_t> index_;
};

struct BoardConfig {
    int size = 12;

    void validate() const {
        if (size < 2) {
            throw std::invalid_argument("board size must be at least 2, got " + std::to_string(size));
        }
    }
    int field_count() const { return size * size; }
    bool contains(int col, int row) const { return col >= 0 && col < size && row >= 0 && row < size; }

    friend bool operator==(const BoardConfig&, const BoardConfig&) = default;
};

struct Position {
    int col = 0;
    int row = 0;

    friend auto operator<=>(const Position&, const Position&) = default;
};

inline cplx to_complex(Position p) { return {static_cast<double>(p.col), static_cast<double>(p.row)}; }

/// Column label for a 0-based column index: 0 -> "A", 25 -> "Z", 26 -> "AA".
inline std::string column_label(int col) {
    std::string out;
    int c = col + 1;
    while (c > 0) {
        int rem = (c - 1) % 26;
        out.insert(out.begin(), static_cast<char>('A' + rem));
        c = (c - 1) / 26;
    }
    return out;
}

inline std::string format_position(Position p) { return column_label(p.col) + std::to_string(p.row + 1); }

inline Position parse_position(std::string_view text, const BoardConfig& board) {
    const std::string token(text);
    std::size_t i = 0;
    long col = 0;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) {
        col = col * 26 + (std::toupper(static_cast<unsigned char>(text[i])) - 'A' + 1);
        if (col > 1'000'000) throw ParseError("column out of range in '" + token + "'", token);
        ++i;
    }
    if (i == 0) throw ParseError("missing column letter in '" + token + "'", token);
    const std::size_t digits_start = i;
    long row = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        row = row * 10 + (text[i] - '0');
        if (row > 1'000'000) throw ParseError("row out of range in '" + token + "'", token);
        ++i;
    }
    if (i == digits_start) throw ParseError("missing row number in '" + token + "'", token);
    if (i != text.size()) throw ParseError("unexpected character in '" + token + "'", token);
    Position p{static_cast<int>(col - 1), static_cast<int>(row - 1)};
    if (!board.contains(p.col, p.row)) {
        throw ParseError("field '" + token + "' is off the " + std::to_string(board.size) + "x" +
                             std::to_string(board.size) + " board",
                         token);
    }
    return p;
}

/// An ordered list of board fields. Repeats are allowed. Value type: every
/// "modifying" operation returns a new sequence.
class PositionSequence {
public:
    PositionSequence() = default;
    explicit PositionSequence(BoardConfig board, std::vector<Position> positions = {})
        : board_(board), positions_(std::move(positions)) {
        board_.validate();
        for (const auto& p : positions_) {
            if (!board_.contains(p.col, p.row)) {
                throw std::invalid_argument("position (" + std::to_string(p.col) + "," + std::to_string(p.row) +
                                            ") is off the board");
            }
        }
    }

    const BoardConfig& board() const noexcept { return board_; }
    const std::vector<Position>& positions() const noexcept { return positions_; }
    std::size_t size() const noexcept { return positions_.size(); }
    bool empty() const noexcept { return positions_.empty(); }
    const Position& operator[](std::size_t i) const { return positions_[i]; }
    auto begin() const noexcept { return positions_.begin(); }
    auto end() const noexcept { return positions_.end(); }

    PositionSequence appended(Position p) const {
        auto next = positions_;
        next.push_back(p);
        return PositionSequence(board_, std::move(next));
    }

    PositionSequence prefix(std::size_t n) const {
        n = std::min(n, positions_.size());
        return PositionSequence(board_, std::vector<Position>(positions_.begin(), positions_.begin() + n));
    }

    std::vector<cplx> to_complex() const {
        std::vector<cplx> out;
        out.reserve(positions_.size());
        for (const auto& p : positions_) out.push_back(seqval::to_complex(p));
        return out;
    }

    std::vector<std::string> notation() const {
        std::vector<std::string> out;
        out.reserve(positions_.size());
        for (const auto& p : positions_) out.push_back(format_position(p));
        return out;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < positions_.size(); ++i) {
            if (i) out += ' ';
            out += format_position(positions_[i]);
        }
        return out;
    }

    friend bool operator==(const PositionSequence&, const PositionSequence&) = default;

private:
    BoardConfig board_{};
    std::vector<Position> positions_;
};

inline PositionSequence parse_sequence(const std::vector<std::string>& tokens, const BoardConfig& board) {
    std::vector<Position> out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        try {
            out.push_back(parse_position(tokens[i], board));
        } catch (const ParseError& e) {
            throw ParseError("token " + std::to_string(i) + ": " + e.what(), e.token(), i);
        }
    }
    return PositionSequence(board, std::move(out));
}

/// Whitespace-separated notation, e.g. "E6 D4 F3 H2 G4 F2".
inline PositionSequence parse_sequence(std::string_view text, const BoardConfig& board) {
    std::istringstream in{std::string(text)};
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return parse_sequence(tokens, board);
}

/**
 * Text diagram of a sequence: one line per board row (top row first), each
 * occupied field showing the index of the latest visit, and a trailing axis
 * line with column labels.
 *
 * When @p extra is given, unoccupied fields show one character from a ramp
 * proportional to their value (min..max over the map).
 */
inline std::string render_board(const PositionSequence& seq, const std::map<Position, double>* extra = nullptr) {
    const int n = seq.board().size;
    std::vector<std::string> cells(static_cast<std::size_t>(n) * n, ".");
    auto at = [&](Position p) -> std::string& { return cells[static_cast<std::size_t>(p.row) * n + p.col]; };

    if (extra && !extra->empty()) {
        static constexpr std::string_view ramp = " .:-=+*#%@";
        double lo = extra->begin()->second, hi = lo;
        for (const auto& [_, v] : *extra) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        for (const auto& [p, v] : *extra) {
            if (!seq.board().contains(p.col, p.row)) continue;
            std::size_t level = ramp.size() - 1;
            if (hi > lo) level = static_cast<std::size_t>(std::floor((v - lo) / (hi - lo) * (ramp.size() - 1) + 0.5));
            at(p) = std::string(1, ramp[std::min(level, ramp.size() - 1)]);
        }
    }
    for (std::size_t i = 0; i < seq.size(); ++i) at(seq[i]) = std::to_string(i);

    std::size_t width = 2;
    for (const auto& c : cells) width = std::max(width, c.size() + 1);
    for (int c = 0; c < n; ++c) width = std::max(width, column_label(c).size() + 1);
    const std::size_t label_width = std::to_string(n).size();

    std::ostringstream out;
    auto pad = [&](const std::string& s, std::size_t w) { return std::string(w > s.size() ? w - s.size() : 0, ' ') + s; };
    for (int row = n - 1; row >= 0; --row) {
        out << pad(std::to_string(row + 1), label_width);
        for (int col = 0; col < n; ++col) out << pad(at({col, row}), width);
        out << '\n';
    }
    out << std::string(label_width, ' ');
    for (int col = 0; col < n; ++col) out << pad(column_label(col), width);
    out << '\n';
    return out.str();
}

}  // namespace seqval
