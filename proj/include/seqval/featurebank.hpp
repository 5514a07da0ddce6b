#pragma once

/**
 * @file featurebank.hpp
 * @brief Operator pool, quantile bins and reference probabilities.
 *
 * A feature is "operator value lies in interval I". For every operator of a
 * randomly sampled pool the real axis is cut into k intervals that each hold
 * (nearly) the same share of the operator's values over a long uniform random
 * reference ("general") sequence. The bank stores those bins together with
 * the reference probabilities p_g. It does not depend on any special
 * sequence and is shared by every model built over it.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "board.hpp"
#include "rng.hpp"
#include "transform.hpp"

namespace seqval {

/// Invalid configuration value. field() names the offending setting.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

enum class ScoringMode { LogRatio, Indicator };

inline std::string_view to_string(ScoringMode m) { return m == ScoringMode::LogRatio ? "log" : "indicator"; }

inline ScoringMode parse_scoring(std::string_view s) {
    if (s == "log") return ScoringMode::LogRatio;
    if (s == "indicator") return ScoringMode::Indicator;
    throw ConfigError("scoring", "expected 'log' or 'indicator', got '" + std::string(s) + "'");
}

struct GeneralSequenceConfig {
    int length = 1000;
    std::uint64_t seed = 7;
    BoardConfig board{};

    void validate(int bins_k) const {
        if (board.size < 2) throw ConfigError("board_size", "must be >= 2");
        if (length < 10 * bins_k) {
            throw ConfigError("general_length", "must be >= 10 * bins_k = " + std::to_string(10 * bins_k));
        }
    }
};

struct PoolConfig {
    int pool_size = 200;
    std::uint64_t seed = 1;
    int max_conv_len = 4;
    int bins_k = 8;
    double epsilon = 0.01;
    ScoringMode scoring = ScoringMode::LogRatio;
    /// Redraw duplicates so the pool holds pool_size distinct operators.
    bool distinct = false;
    std::vector<TransformChain> chains{kStandardChains.begin(), kStandardChains.end()};

    void validate() const {
        if (pool_size < 1) throw ConfigError("pool_size", "must be >= 1");
        if (bins_k < 2) throw ConfigError("bins_k", "must be >= 2");
        if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon", "must lie in (0, 1)");
        if (max_conv_len < 1 || max_conv_len > 30) throw ConfigError("max_conv_len", "must lie in 1..30");
        if (chains.empty()) throw ConfigError("chains", "at least one transform chain required");
    }

    std::size_t distinct_operator_count() const {
        std::set<TransformChain> uniq(chains.begin(), chains.end());
        return static_cast<std::size_t>(max_conv_len) * uniq.size() * kProjections.size();
    }
};

/// Interval partition of the real axis. With boundaries b_1 < ... < b_{k-1}
/// the intervals are (-inf, b_1), [b_1, b_2), ..., [b_{k-1}, inf).
struct Bins {
    std::vector<double> boundaries;

    std::size_t count() const { return boundaries.size() + 1; }
    std::size_t locate(double x) const {
        return static_cast<std::size_t>(std::upper_bound(boundaries.begin(), boundaries.end(), x) -
                                        boundaries.begin());
    }
    friend bool operator==(const Bins&, const Bins&) = default;
};

/// Quantile bins: boundary j is the sorted value at index ceil(j N / k).
/// Boundaries that would leave an interval empty (ties) are merged, so the
/// effective count may be smaller than k.
inline Bins build_bins(std::span<const double> values, int k) {
    if (k < 1) throw std::invalid_argument("bin count must be >= 1");
    const std::size_t n = values.size();
    if (n < static_cast<std::size_t>(k)) {
        throw std::invalid_argument("need at least " + std::to_string(k) + " values for " + std::to_string(k) +
                                    " bins, got " + std::to_string(n));
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    Bins bins;
    for (std::size_t j = 1; j < static_cast<std::size_t>(k); ++j) {
        const std::size_t idx = (j * n + k - 1) / k;
        const double b = sorted[idx];
        if (b <= sorted.front()) continue;
        if (!bins.boundaries.empty() && b <= bins.boundaries.back()) continue;
        bins.boundaries.push_back(b);
    }
    return bins;
}

/// Empirical bin frequencies; an empty value list gives the zero vector.
inline std::vector<double> estimate_probs(std::span<const double> values, const Bins& bins) {
    std::vector<double> p(bins.count(), 0.0);
    if (values.empty()) return p;
    std::vector<std::size_t> counts(bins.count(), 0);
    for (double v : values) ++counts[bins.locate(v)];
    for (std::size_t i = 0; i < counts.size(); ++i) {
        p[i] = static_cast<double>(counts[i]) / static_cast<double>(values.size());
    }
    return p;
}

/// Contribution of one feature. LogRatio: ln(max(p_s, eps) / max(p_g, eps)).
/// Indicator: 1 when the special sequence occupies the interval, else 0.
inline double score(double p_s, double p_g, double eps, ScoringMode mode) {
    if (mode == ScoringMode::Indicator) return p_s > 0.0 ? 1.0 : 0.0;
    return std::log(std::max(p_s, eps) / std::max(p_g, eps));
}

inline PositionSequence generate_general_sequence(const GeneralSequenceConfig& cfg) {
    Rng rng(cfg.seed);
    const auto n = static_cast<std::uint64_t>(cfg.board.size);
    std::vector<Position> out;
    out.reserve(static_cast<std::size_t>(std::max(cfg.length, 0)));
    for (int i = 0; i < cfg.length; ++i) {
        const int col = static_cast<int>(uniform_below(rng, n));
        const int row = static_cast<int>(uniform_below(rng, n));
        out.push_back({col, row});
    }
    return PositionSequence(cfg.board, std::move(out));
}

/// Draws one operator: convolution length from P(l) proportional to 2^-l on
/// 1..max_conv_len, chain and projection uniform.
inline OperatorSpec draw_operator(Rng& rng, const PoolConfig& cfg) {
    const auto max_l = static_cast<unsigned>(cfg.max_conv_len);
    const std::uint64_t total = (std::uint64_t{1} << max_l) - 1;  // sum of 2^(max_l - l)
    std::uint64_t u = uniform_below(rng, total);
    int l = 1;
    for (unsigned w = max_l - 1;; --w, ++l) {
        const std::uint64_t weight = std::uint64_t{1} << w;
        if (u < weight || w == 0) break;
        u -= weight;
    }
    OperatorSpec op;
    op.conv_len = l;
    op.chain = cfg.chains[uniform_below(rng, cfg.chains.size())];
    op.proj = kProjections[uniform_below(rng, kProjections.size())];
    return op;
}

inline std::vector<OperatorSpec> sample_operator_pool(const PoolConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    std::vector<OperatorSpec> pool;
    pool.reserve(static_cast<std::size_t>(cfg.pool_size));
    if (!cfg.distinct) {
        for (int i = 0; i < cfg.pool_size; ++i) pool.push_back(draw_operator(rng, cfg));
        return pool;
    }
    const std::size_t bound = cfg.distinct_operator_count();
    if (static_cast<std::size_t>(cfg.pool_size) > bound) {
        throw ConfigError("pool_size", "exceeds the number of distinct operators (" + std::to_string(bound) + ")");
    }
    std::set<OperatorSpec> seen;
    while (pool.size() < static_cast<std::size_t>(cfg.pool_size)) {
        const auto op = draw_operator(rng, cfg);
        if (seen.insert(op).second) pool.push_back(op);
    }
    return pool;
}

/// Reference statistics of one operator.
struct OperatorStats {
    OperatorSpec op;
    Bins bins;
    std::vector<double> p_g;
};

struct FeatureBank {
    GeneralSequenceConfig general;
    PoolConfig pool;
    std::vector<OperatorStats> operators;

    const BoardConfig& board() const { return general.board; }
};

/// Everything needed to rebuild a bank.
struct EngineConfig {
    GeneralSequenceConfig general;
    PoolConfig pool;

    void validate() const {
        pool.validate();
        general.validate(pool.bins_k);
    }
    const BoardConfig& board() const { return general.board; }
};

inline std::shared_ptr<const FeatureBank> build_bank(const GeneralSequenceConfig& general, const PoolConfig& pool) {
    pool.validate();
    general.validate(pool.bins_k);
    const auto g = generate_general_sequence(general).to_complex();
    auto bank = std::make_shared<FeatureBank>();
    bank->general = general;
    bank->pool = pool;
    for (const auto& op : sample_operator_pool(pool)) {
        const auto values = apply_operator(op, g);
        auto bins = build_bins(values, pool.bins_k);
        auto p_g = estimate_probs(values, bins);
        bank->operators.push_back({op, std::move(bins), std::move(p_g)});
    }
    return bank;
}

}  // namespace seqval

namespace seqval {
inline std::shared_ptr<const FeatureBank> build_bank(const EngineConfig& cfg) { return build_bank(cfg.general, cfg.pool); }
}  // namespace seqval
