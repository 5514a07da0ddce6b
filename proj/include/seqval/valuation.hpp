#pragma once

/**
 * @file valuation.hpp
 * @brief Valuation models built from a special sequence.
 *
 * A model pairs a feature bank with the special sequence's own bin
 * probabilities p_s (over all full windows of the sequence, per operator).
 * A candidate prolongation is valued by the mean score of the bins that its
 * newest window falls into; the similarity of an arbitrary sequence is the
 * mean score over all of its windows.
 */

#include <algorithm>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "board.hpp"
#include "featurebank.hpp"
#include "transform.hpp"

namespace seqval {

class ValuationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Read-only view of one operator's feature table.
struct FeatureTable {
    const OperatorSpec& op;
    const Bins& bins;
    std::span<const double> p_g;
    std::span<const double> p_s;
};

class ValuationModel {
public:
    ValuationModel(std::shared_ptr<const FeatureBank> bank, PositionSequence special,
                   std::vector<std::vector<double>> p_s)
        : bank_(std::move(bank)), special_(std::move(special)), p_s_(std::move(p_s)) {
        if (!bank_) throw std::invalid_argument("model requires a feature bank");
        if (p_s_.size() != bank_->operators.size()) throw std::invalid_argument("p_s table count mismatch");
        for (std::size_t i = 0; i < p_s_.size(); ++i) {
            if (p_s_[i].size() != bank_->operators[i].bins.count()) {
                throw std::invalid_argument("p_s length mismatch for operator " + to_string(bank_->operators[i].op));
            }
        }
    }

    const FeatureBank& bank() const { return *bank_; }
    const std::shared_ptr<const FeatureBank>& bank_ptr() const { return bank_; }
    const PositionSequence& special() const { return special_; }
    const BoardConfig& board() const { return bank_->board(); }
    const PoolConfig& pool_config() const { return bank_->pool; }
    std::size_t size() const { return p_s_.size(); }

    FeatureTable table(std::size_t i) const {
        const auto& st = bank_->operators[i];
        return {st.op, st.bins, st.p_g, p_s_[i]};
    }

    /// Operators with at least one window in the special sequence.
    bool trained(std::size_t i) const { return min_length(bank_->operators[i].op) <= special_.size(); }

    double feature_score(std::size_t i, double value) const {
        const auto& st = bank_->operators[i];
        const std::size_t bin = st.bins.locate(value);
        return score(p_s_[i][bin], st.p_g[bin], bank_->pool.epsilon, bank_->pool.scoring);
    }

private:
    std::shared_ptr<const FeatureBank> bank_;
    PositionSequence special_;
    std::vector<std::vector<double>> p_s_;
};

inline ValuationModel build_model(std::shared_ptr<const FeatureBank> bank, const PositionSequence& special) {
    if (special.size() < 2) throw ValuationError("sequence too short: a model needs at least 2 positions");
    if (special.board() != bank->board()) throw std::invalid_argument("special sequence board differs from bank board");
    const auto s = special.to_complex();
    std::vector<std::vector<double>> p_s;
    p_s.reserve(bank->operators.size());
    for (const auto& st : bank->operators) {
        p_s.push_back(estimate_probs(apply_operator(st.op, s), st.bins));
    }
    return ValuationModel(std::move(bank), special, std::move(p_s));
}

inline ValuationModel build_model(const PositionSequence& special, const GeneralSequenceConfig& general,
                                  const PoolConfig& pool) {
    if (special.board() != general.board) throw std::invalid_argument("special sequence board differs from config");
    return build_model(build_bank(general, pool), special);
}

/// Value of the sequence's newest point: mean over applicable operators of
/// the score of the window of exactly min_length positions ending at it.
inline double value_prolongation(const ValuationModel& m, std::span<const cplx> prolonged) {
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto& op = m.bank().operators[i].op;
        if (!m.trained(i) || min_length(op) > prolonged.size()) continue;
        sum += m.feature_score(i, apply_to_tail(op, prolonged));
        ++used;
    }
    if (used == 0) throw ValuationError("sequence too short: no operator applies");
    return sum / static_cast<double>(used);
}

inline double value_prolongation(const ValuationModel& m, const PositionSequence& prolonged) {
    const auto c = prolonged.to_complex();
    return value_prolongation(m, std::span<const cplx>(c));
}

/// Mean score over every applicable operator and every window of @p d.
inline double value_similarity(const ValuationModel& m, std::span<const cplx> d) {
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m.trained(i)) continue;
        for (double v : apply_operator(m.bank().operators[i].op, d)) {
            sum += m.feature_score(i, v);
            ++used;
        }
    }
    if (used == 0) throw ValuationError("sequence too short: no operator window applies");
    return sum / static_cast<double>(used);
}

inline double value_similarity(const ValuationModel& m, const PositionSequence& d) {
    const auto c = d.to_complex();
    return value_similarity(m, std::span<const cplx>(c));
}

struct RankedContinuation {
    Position position;
    double value = 0.0;
    int rank = 0;
};

/// Every board field as a candidate next point, best first. Equal values
/// keep (col, row) ascending order.
inline std::vector<RankedContinuation> rank_continuations(const ValuationModel& m, const PositionSequence& base) {
    const int n = m.board().size;
    auto c = base.to_complex();
    c.push_back({});
    std::vector<RankedContinuation> out;
    out.reserve(static_cast<std::size_t>(n) * n);
    for (int col = 0; col < n; ++col) {
        for (int row = 0; row < n; ++row) {
            c.back() = to_complex(Position{col, row});
            out.push_back({{col, row}, value_prolongation(m, std::span<const cplx>(c)), 0});
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const RankedContinuation& a, const RankedContinuation& b) { return a.value > b.value; });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i) + 1;
    return out;
}

inline PositionSequence continue_iteratively(const ValuationModel& m, const PositionSequence& seed, int steps) {
    if (steps < 0) throw std::invalid_argument("steps must be >= 0");
    PositionSequence seq = seed;
    for (int i = 0; i < steps; ++i) seq = seq.appended(rank_continuations(m, seq).front().position);
    return seq;
}

struct Reconstruction {
    PositionSequence sequence;
    int deviations = 0;
};

/// Regrows the model's own sequence from its first @p prefix_len positions,
/// always adopting the best continuation, and counts mismatches.
inline Reconstruction reconstruct(const ValuationModel& m, std::size_t prefix_len) {
    const auto& s = m.special();
    if (prefix_len < 1 || prefix_len > s.size()) {
        throw std::invalid_argument("prefix length must lie in 1.." + std::to_string(s.size()));
    }
    auto seq = continue_iteratively(m, s.prefix(prefix_len), static_cast<int>(s.size() - prefix_len));
    int deviations = 0;
    for (std::size_t i = prefix_len; i < s.size(); ++i) deviations += seq[i] != s[i] ? 1 : 0;
    return {std::move(seq), deviations};
}

}  // namespace seqval
