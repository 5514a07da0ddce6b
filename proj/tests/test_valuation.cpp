#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracle.hpp"
#include "seqval/corpus.hpp"
#include "seqval/model_io.hpp"
#include "seqval/valuation.hpp"

using namespace seqval;

namespace {

const BoardConfig kBoard{};

PositionSequence seq(const char* text) { return parse_sequence(text, kBoard); }

std::shared_ptr<const FeatureBank> default_bank(std::uint64_t pool_seed = 1) {
    PoolConfig pool;
    pool.seed = pool_seed;
    return build_bank(GeneralSequenceConfig{}, pool);
}

oracle::Op to_oracle(const OperatorSpec& op) {
    return {op.conv_len, static_cast<int>(op.chain), static_cast<int>(op.proj)};
}

}  // namespace

TEST(Model, BuildsTablesForEveryOperator) {
    const auto m = build_model(seq("A1 B2 C3 D4 E5 F6"), GeneralSequenceConfig{}, PoolConfig{});
    EXPECT_EQ(m.size(), 200u);
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto t = m.table(i);
        double sum = 0;
        for (double p : t.p_s) {
            EXPECT_GE(p, 0.0);
            sum += p;
        }
        EXPECT_NEAR(sum, m.trained(i) ? 1.0 : 0.0, 1e-9);
    }
}

TEST(Model, RejectsTooShortSpecial) {
    EXPECT_THROW(build_model(default_bank(), seq("A1")), ValuationError);
    EXPECT_THROW(build_model(default_bank(), seq("")), ValuationError);
}

TEST(Model, LengthTwoSpecialUsesOnlyDifferenceOperators) {
    const auto m = build_model(default_bank(), seq("A1 B2"));
    std::size_t trained = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto& op = m.bank().operators[i].op;
        EXPECT_EQ(m.trained(i), op.conv_len == 1 && op.chain == TransformChain::D) << to_string(op);
        trained += m.trained(i);
    }
    EXPECT_GT(trained, 0u);
}

TEST(Model, DeterministicDumps) {
    const auto a = build_model(seq("A1 B2 C3 D4 E5 F6"), GeneralSequenceConfig{}, PoolConfig{});
    const auto b = build_model(seq("A1 B2 C3 D4 E5 F6"), GeneralSequenceConfig{}, PoolConfig{});
    EXPECT_EQ(dump_model(a), dump_model(b));
}

TEST(Prolongation, DiagonalPrefersG7) {
    const auto m = build_model(default_bank(), seq("A1 B2 C3 D4 E5 F6"));
    EXPECT_GT(value_prolongation(m, seq("A1 B2 C3 D4 E5 F6 G7")), value_prolongation(m, seq("A1 B2 C3 D4 E5 F6 G2")));
    EXPECT_THROW(value_prolongation(m, seq("A1")), ValuationError);
}

TEST(Prolongation, IndicatorModeMeanOfOnes) {
    PoolConfig pool;
    pool.scoring = ScoringMode::Indicator;
    const auto s = seq("A1 B2 C3 D4 E5 F6 G7");
    const auto m = build_model(s, GeneralSequenceConfig{}, pool);
    // The special sequence's own last window lands in occupied bins for
    // every operator.
    EXPECT_EQ(value_prolongation(m, s), 1.0);
}

TEST(Prolongation, MatchesBruteForceOracle) {
    std::mt19937_64 rng(21);
    const auto general = generate_general_sequence(GeneralSequenceConfig{}).to_complex();
    for (int trial = 0; trial < 60; ++trial) {
        PoolConfig pool;
        pool.pool_size = 1 + static_cast<int>(rng() % 5);
        pool.seed = rng();
        pool.bins_k = 2 + static_cast<int>(rng() % 9);
        pool.scoring = trial % 4 == 0 ? ScoringMode::Indicator : ScoringMode::LogRatio;
        const auto bank = build_bank(GeneralSequenceConfig{}, pool);
        Rng srng(rng());
        const auto special = random_sequence(srng, 2 + static_cast<int>(rng() % 5));
        const auto m = build_model(bank, special);
        const auto prolonged = special.appended({static_cast<int>(rng() % 12), static_cast<int>(rng() % 12)});

        std::vector<oracle::Op> ops;
        bool any = false;
        for (const auto& st : bank->operators) {
            ops.push_back(to_oracle(st.op));
            any = any || min_length(st.op) <= special.size();
        }
        const double expect = oracle::prolongation(ops, general, special.to_complex(), prolonged.to_complex(),
                                                   pool.bins_k, pool.epsilon, pool.scoring == ScoringMode::Indicator);
        if (!any) {
            EXPECT_THROW(value_prolongation(m, prolonged), ValuationError);
            continue;
        }
        EXPECT_NEAR(value_prolongation(m, prolonged), expect, 1e-12);
    }
}

TEST(Ranking, CoversBoardAndIsSorted) {
    const auto base = seq("A1 B2 C3 D4 E5 F6");
    const auto ranking = rank_continuations(build_model(default_bank(), base), base);
    ASSERT_EQ(ranking.size(), 144u);
    std::set<Position> fields;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        EXPECT_EQ(ranking[i].rank, static_cast<int>(i) + 1);
        fields.insert(ranking[i].position);
        if (i) {
            EXPECT_GE(ranking[i - 1].value, ranking[i].value);
            if (ranking[i - 1].value == ranking[i].value) {
                EXPECT_LT(ranking[i - 1].position, ranking[i].position);
            }
        }
    }
    EXPECT_EQ(fields.size(), 144u);
    EXPECT_EQ(format_position(ranking[0].position), "G7");
}

TEST(Ranking, TiesBrokenByColumnThenRow) {
    // Indicator scores on a two-point model take few distinct values, so ties
    // are plentiful.
    PoolConfig pool;
    pool.scoring = ScoringMode::Indicator;
    const auto base = seq("C3 D4");
    const auto ranking = rank_continuations(build_model(seq("C3 D4"), GeneralSequenceConfig{}, pool), base);
    int ties = 0;
    for (std::size_t i = 1; i < ranking.size(); ++i) {
        if (ranking[i - 1].value == ranking[i].value) {
            ++ties;
            EXPECT_LT(ranking[i - 1].position, ranking[i].position);
        }
    }
    EXPECT_GT(ties, 10);
}

// Model on c; the similarity image of a prolongation, evaluated off-board,
// gets the same value. Pool restricted to quotient chains; Gaussian-integer
// maps keep the arithmetic exact.
TEST(RankingProperty, SimilarityMapsPreserveValuesOnThePlane) {
    PoolConfig pool;
    pool.chains = {TransformChain::QD, TransformChain::DQD, TransformChain::QQD};
    const auto bank = build_bank(GeneralSequenceConfig{}, pool);
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> k(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        Rng srng(rng());
        const auto c = random_sequence(srng, 6);
        const auto m = build_model(bank, c);
        cplx a;
        do {
            a = cplx(k(rng), k(rng));
        } while (a == cplx(0, 0));
        const cplx b(k(rng) * 7, k(rng) * 7);
        auto cz = c.to_complex();
        std::vector<cplx> dz;
        for (auto z : cz) dz.push_back(a * z + b);
        cz.push_back({});
        dz.push_back({});
        for (int col = 0; col < 12; ++col) {
            for (int row = 0; row < 12; ++row) {
                const cplx x(col, row);
                cz.back() = x;
                dz.back() = a * x + b;
                EXPECT_NEAR(value_prolongation(m, std::span<const cplx>(cz)),
                            value_prolongation(m, std::span<const cplx>(dz)), 1e-9);
            }
        }
    }
}

// Board rotations are similarity maps, so models built on the rotated
// sequence rank the rotated fields identically.
TEST(RankingProperty, BoardSymmetryPermutesRanking) {
    PoolConfig pool;
    pool.chains = {TransformChain::QD, TransformChain::DQD, TransformChain::QQD};
    const auto bank = build_bank(GeneralSequenceConfig{}, pool);
    const auto c = seq("B2 C3 D2 E3 F2");
    for (int which = 1; which < 8; ++which) {
        if (which & 4) continue;  // mirror images are not similarity maps a z + b
        const auto d = apply_symmetry(c, which);
        const auto rc = rank_continuations(build_model(bank, c), c);
        const auto rd = rank_continuations(build_model(bank, d), d);
        std::map<Position, double> vd;
        for (const auto& r : rd) vd[r.position] = r.value;
        for (const auto& r : rc) EXPECT_NEAR(r.value, vd.at(board_symmetry(r.position, 12, which)), 1e-9);
    }
}

TEST(Similarity, OwnSequenceScoresAboveGeneral) {
    const auto special = seq("A1 B2 C3 D4 E5 F6 G7 H8");
    int wins = 0;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        GeneralSequenceConfig g;
        g.seed = s;
        PoolConfig pool;
        pool.seed = s;
        const auto m = build_model(special, g, pool);
        wins += value_similarity(m, special) >= value_similarity(m, generate_general_sequence(g)) ? 1 : 0;
    }
    EXPECT_EQ(wins, 20);
}

TEST(Similarity, SingleWindowEqualsProlongation) {
    PoolConfig pool;
    pool.chains = {TransformChain::QD};
    pool.max_conv_len = 1;
    pool.pool_size = 12;
    const auto m = build_model(seq("A1 B2 C3 D4 E5"), GeneralSequenceConfig{}, pool);
    const auto d = seq("C3 E4 F7");
    EXPECT_DOUBLE_EQ(value_similarity(m, d), value_prolongation(m, d));
    EXPECT_THROW(value_similarity(m, seq("C3 E4")), ValuationError);
}

TEST(Continuation, ZeroStepsAndComposition) {
    const auto m = build_model(default_bank(), seq("B3 B5 D5 D7 F7 F9 H9"));
    const auto start = seq("B3 B5");
    EXPECT_EQ(continue_iteratively(m, start, 0), start);
    const auto five = continue_iteratively(m, start, 5);
    EXPECT_EQ(five, continue_iteratively(m, continue_iteratively(m, start, 2), 3));
    EXPECT_EQ(five, continue_iteratively(m, start, 5));
    EXPECT_THROW(continue_iteratively(m, start, -1), std::invalid_argument);
}

TEST(Continuation, StaircaseSeedGrowsIntoStairs) {
    const auto model_seq = seq("B3 B5 D5 D7 F7 F9 H9");
    const auto m = build_model(default_bank(), model_seq);
    std::set<std::pair<int, int>> steps;
    for (std::size_t i = 1; i < model_seq.size(); ++i) {
        steps.insert({model_seq[i].col - model_seq[i - 1].col, model_seq[i].row - model_seq[i - 1].row});
    }
    const auto out = continue_iteratively(m, seq("C2 C4"), 4);
    for (std::size_t i = 2; i < out.size(); ++i) {
        EXPECT_TRUE(steps.contains({out[i].col - out[i - 1].col, out[i].row - out[i - 1].row})) << out.to_string();
    }
}

TEST(Reconstruction, RegularSequenceFromLongPrefix) {
    const auto s = seq("A1 B2 C3 D4 E5 F6");
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto m = build_model(default_bank(seed), s);
        const auto r = reconstruct(m, s.size() - 1);
        EXPECT_EQ(r.deviations, 0);
        EXPECT_EQ(r.sequence, s);
    }
    const auto m = build_model(default_bank(), s);
    EXPECT_EQ(reconstruct(m, s.size()).deviations, 0);
    EXPECT_THROW(reconstruct(m, 0), std::invalid_argument);
    EXPECT_THROW(reconstruct(m, 7), std::invalid_argument);
}

TEST(Model, ValuationDoesNotMutateModel) {
    const auto base = seq("E6 D4 F3 H2 G4 F2");
    const auto m = build_model(default_bank(), base);
    const auto before = dump_model(m);
    rank_continuations(m, base);
    value_similarity(m, base);
    continue_iteratively(m, base, 3);
    reconstruct(m, 3);
    EXPECT_EQ(dump_model(m), before);
}
