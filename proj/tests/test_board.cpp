#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "seqval/board.hpp"
#include "seqval/model_io.hpp"

using namespace seqval;

namespace {
const BoardConfig kBoard{};
}

TEST(Board, ParsesNotation) {
    EXPECT_EQ(parse_position("A1", kBoard), (Position{0, 0}));
    EXPECT_EQ(parse_position("C7", kBoard), (Position{2, 6}));
    EXPECT_EQ(parse_position("B1", kBoard), (Position{1, 0}));
    EXPECT_EQ(parse_position("L12", kBoard), (Position{11, 11}));
    EXPECT_EQ(parse_position("I9", kBoard), (Position{8, 8}));
    EXPECT_EQ(parse_position("c7", kBoard), (Position{2, 6}));
}

TEST(Board, RejectsMalformedAndOffBoard) {
    for (const char* bad : {"M1", "A13", "A0", "", "7", "A", "A1x", "1A", "A-1"}) {
        EXPECT_THROW(parse_position(bad, kBoard), ParseError) << bad;
    }
    try {
        parse_position("M1", kBoard);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.token(), "M1");
        EXPECT_NE(std::string(e.what()).find("M1"), std::string::npos);
    }
}

TEST(Board, ComplexEncoding) {
    EXPECT_EQ(to_complex(Position{0, 0}), cplx(0, 0));
    EXPECT_EQ(to_complex(Position{1, 0}), cplx(1, 0));
    EXPECT_EQ(to_complex(Position{2, 6}), cplx(2, 6));
}

TEST(Board, FormatParseRoundTripAndInjectivity) {
    for (int n : {2, 12, 27, 30}) {
        BoardConfig b{n};
        std::set<std::pair<double, double>> seen;
        for (int c = 0; c < n; ++c) {
            for (int r = 0; r < n; ++r) {
                const Position p{c, r};
                EXPECT_EQ(parse_position(format_position(p), b), p);
                const auto z = to_complex(p);
                EXPECT_TRUE(seen.insert({z.real(), z.imag()}).second);
            }
        }
    }
    EXPECT_EQ(column_label(25), "Z");
    EXPECT_EQ(column_label(26), "AA");
    EXPECT_EQ(column_label(27), "AB");
}

TEST(Board, ParseSequence) {
    const auto s = parse_sequence("A1 B2 C3", kBoard);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[2], (Position{2, 2}));
    EXPECT_TRUE(parse_sequence("", kBoard).empty());
    EXPECT_TRUE(parse_sequence("  \n\t ", kBoard).empty());
    try {
        parse_sequence("A1 Z9", kBoard);
        FAIL();
    } catch (const ParseError& e) {
        ASSERT_TRUE(e.index().has_value());
        EXPECT_EQ(*e.index(), 1u);
        EXPECT_EQ(e.token(), "Z9");
    }
}

TEST(Board, ParseSequenceJson) {
    const auto s = parse_sequence_json(nlohmann::json::parse(R"(["E6","D4","F3"])"), kBoard);
    EXPECT_EQ(s.to_string(), "E6 D4 F3");
    try {
        parse_sequence_json(nlohmann::json::parse(R"(["A1", 5])"), kBoard);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.index().value_or(99), 1u);
    }
}

TEST(Board, SequencesAreValues) {
    const auto s = parse_sequence("A1 B2", kBoard);
    const auto t = s.appended({2, 2});
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(t.size(), 3u);
    EXPECT_EQ(t.prefix(2), s);
    EXPECT_THROW(PositionSequence(kBoard, {{12, 0}}), std::invalid_argument);
}

namespace {
std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) out.push_back(l);
    return out;
}
}  // namespace

TEST(Board, RenderShowsIndicesAndAxes) {
    const auto text = render_board(parse_sequence("A1 B2", kBoard));
    const auto ls = lines(text);
    ASSERT_EQ(ls.size(), 13u);  // 12 content rows + axis
    EXPECT_EQ(ls[11].substr(0, 2), " 1");
    EXPECT_NE(ls[11].find('0'), std::string::npos);  // A1 on row "1"
    EXPECT_NE(ls[10].find('1', 2), std::string::npos);
    EXPECT_NE(ls[12].find('L'), std::string::npos);
}

TEST(Board, RenderEmptyAndCollision) {
    const auto empty = lines(render_board(PositionSequence(kBoard)));
    ASSERT_EQ(empty.size(), 13u);
    EXPECT_EQ(empty[0].find_first_of("0123456789", 2), std::string::npos);

    const auto rep = lines(render_board(parse_sequence("A1 A1", kBoard)));
    // Bottom row: label, then A1 shows the later index.
    const auto& bottom = rep[11];
    EXPECT_NE(bottom.find('1', 2), std::string::npos);
    EXPECT_EQ(bottom.find('0', 2), std::string::npos);
}

TEST(Board, RenderWithValueMapFillsUnoccupied) {
    std::map<Position, double> values;
    for (int c = 0; c < 12; ++c) {
        for (int r = 0; r < 12; ++r) values[{c, r}] = c + r;
    }
    const auto ls = lines(render_board(parse_sequence("A1", kBoard), &values));
    ASSERT_EQ(ls.size(), 13u);
    EXPECT_NE(ls[0].find('@'), std::string::npos);  // L12 holds the maximum
}
