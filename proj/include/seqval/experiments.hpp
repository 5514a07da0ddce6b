#pragma once

/**
 * @file experiments.hpp
 * @brief Reproducible studies on top of the valuation engine.
 *
 * Each run_* function returns an ExperimentReport whose rows are ordered by
 * loop index, so reports depend only on their inputs.
 *
 * Seed sets: index s turns a base EngineConfig into an independent one by
 * deriving pool seed, general-sequence seed and (where used) corpus
 * symmetries from (base seed, s).
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "board.hpp"
#include "corpus.hpp"
#include "featurebank.hpp"
#include "model_io.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "valuation.hpp"

namespace seqval {

enum class FeatureSetChoice { ConvOnly, ConvDiff, ConvQuot, Full };

inline std::string_view to_string(FeatureSetChoice f) {
    switch (f) {
        case FeatureSetChoice::ConvOnly: return "conv-only";
        case FeatureSetChoice::ConvDiff: return "conv-diff";
        case FeatureSetChoice::ConvQuot: return "conv-quot";
        case FeatureSetChoice::Full: return "full";
    }
    return "?";
}

inline FeatureSetChoice parse_feature_set(std::string_view s) {
    for (auto f : {FeatureSetChoice::ConvOnly, FeatureSetChoice::ConvDiff, FeatureSetChoice::ConvQuot,
                   FeatureSetChoice::Full}) {
        if (to_string(f) == s) return f;
    }
    throw ConfigError("feature_set", "unknown feature set '" + std::string(s) + "'");
}

inline std::vector<TransformChain> chains_for(FeatureSetChoice f) {
    switch (f) {
        case FeatureSetChoice::ConvOnly: return {TransformChain::None};
        case FeatureSetChoice::ConvDiff: return {TransformChain::D, TransformChain::DD};
        case FeatureSetChoice::ConvQuot: return {TransformChain::QD, TransformChain::DQD, TransformChain::QQD};
        case FeatureSetChoice::Full: break;
    }
    return {kStandardChains.begin(), kStandardChains.end()};
}

inline constexpr std::uint64_t kCorpusTag = 0x636f72707573ULL;
inline constexpr std::uint64_t kSequenceTag = 0x72616e646f6dULL;

/// The base config with seeds derived for seed set @p s.
inline EngineConfig seeded(const EngineConfig& base, std::uint64_t s) {
    EngineConfig cfg = base;
    cfg.pool.seed = derive_seed(base.pool.seed, s);
    cfg.general.seed = derive_seed(base.general.seed, s);
    return cfg;
}

inline nlohmann::ordered_json to_json(const EngineConfig& cfg) {
    return {{"general", to_json(cfg.general)}, {"pool", to_json(cfg.pool)}};
}

namespace detail {

inline double mean(const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double stddev(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

inline int rank_of(const std::vector<RankedContinuation>& ranking, Position p) {
    for (const auto& r : ranking) {
        if (r.position == p) return r.rank;
    }
    throw std::logic_error("position missing from ranking");
}

}  // namespace detail

// ---------------------------------------------------------------- ablation

/// Mean rank of each corpus entry's designated continuations under pools
/// restricted to each feature set. For entry e and t in [base_len, |e|) the
/// model is built on e[0..t) and e[t] is ranked among all board fields.
inline ExperimentReport run_ablation(const std::vector<CorpusEntry>& corpus, const std::vector<FeatureSetChoice>& sets,
                                     const std::vector<std::uint64_t>& seed_sets, const EngineConfig& base,
                                     bool transform_corpus = true) {
    if (corpus.empty()) throw ConfigError("corpus", "empty corpus");
    if (sets.empty()) throw ConfigError("sets", "no feature sets given");
    if (seed_sets.empty()) throw ConfigError("seeds", "no seed sets given");
    base.validate();

    ExperimentReport rep;
    rep.id = "ablation";
    rep.config = to_json(base);
    rep.config["seed_sets"] = seed_sets;
    rep.config["corpus_size"] = corpus.size();
    rep.config["transform_corpus"] = transform_corpus;
    rep.columns = {"feature_set", "seed_set", "sequence", "length", "designated", "rank"};

    const double n_fields = static_cast<double>(base.board().field_count());
    rep.summary["random_baseline_rank"] = (n_fields + 1.0) / 2.0;
    auto per_set = nlohmann::ordered_json::object();
    auto per_seed = nlohmann::ordered_json::array();

    std::map<FeatureSetChoice, std::vector<double>> all_ranks;
    for (std::uint64_t s : seed_sets) {
        std::vector<CorpusEntry> entries = corpus;
        if (transform_corpus && s != 0) {
            Rng rng(derive_seed(base.pool.seed ^ kCorpusTag, s));
            for (auto& e : entries) e.full = apply_symmetry(e.full, static_cast<int>(uniform_below(rng, 8)));
        }
        nlohmann::ordered_json seed_row = {{"seed_set", s}};
        for (auto set : sets) {
            EngineConfig cfg = seeded(base, s);
            cfg.pool.chains = chains_for(set);
            const auto bank = build_bank(cfg);
            std::vector<double> ranks;
            for (const auto& e : entries) {
                for (std::size_t t = e.base_len; t < e.full.size(); ++t) {
                    const auto prefix = e.full.prefix(t);
                    const auto model = build_model(bank, prefix);
                    const int rank = detail::rank_of(rank_continuations(model, prefix), e.full[t]);
                    ranks.push_back(rank);
                    rep.rows.push_back({std::string(to_string(set)), s, e.name, t, format_position(e.full[t]), rank});
                }
            }
            seed_row[std::string(to_string(set))] = detail::mean(ranks);
            auto& acc = all_ranks[set];
            acc.insert(acc.end(), ranks.begin(), ranks.end());
        }
        per_seed.push_back(std::move(seed_row));
    }
    for (auto set : sets) {
        const auto& r = all_ranks[set];
        per_set[std::string(to_string(set))] = {{"mean_rank", detail::mean(r)}, {"continuations", r.size()}};
    }
    rep.summary["per_feature_set"] = per_set;
    rep.summary["per_seed_set"] = per_seed;
    return rep;
}

// ----------------------------------------------------------- random study

struct RandomStudyResult {
    ExperimentReport report;
    std::vector<double> best_values;  ///< by trial index
};

/// Best-continuation value of @p trials uniform random sequences, all valued
/// with one shared bank. The report lists every trial and, in its body, the
/// @p top highest-valued sequences with diagrams.
inline RandomStudyResult run_random_study(int trials, int length, int top, std::uint64_t seed, const EngineConfig& cfg) {
    if (trials < 1) throw ConfigError("trials", "must be >= 1");
    if (top < 1 || top > trials) throw ConfigError("top", "must lie in 1..trials");
    if (length < 2) throw ConfigError("length", "must be >= 2");
    cfg.validate();
    const auto bank = build_bank(cfg);

    RandomStudyResult out;
    auto& rep = out.report;
    rep.id = "random-study";
    rep.config = to_json(cfg);
    rep.config["trials"] = trials;
    rep.config["length"] = length;
    rep.config["top"] = top;
    rep.config["seed"] = seed;
    rep.columns = {"trial", "sequence", "best_field", "best_value"};

    struct Trial {
        int index;
        PositionSequence seq;
        Position best;
        double value;
    };
    std::vector<Trial> all;
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed ^ kSequenceTag, static_cast<std::uint64_t>(t)));
        auto seq = random_sequence(rng, length, cfg.board());
        const auto model = build_model(bank, seq);
        const auto best = rank_continuations(model, seq).front();
        rep.rows.push_back({t, seq.to_string(), format_position(best.position), best.value});
        out.best_values.push_back(best.value);
        all.push_back({t, std::move(seq), best.position, best.value});
    }
    std::stable_sort(all.begin(), all.end(), [](const Trial& a, const Trial& b) { return a.value > b.value; });

    std::ostringstream body;
    auto top_list = nlohmann::ordered_json::array();
    for (int i = 0; i < top; ++i) {
        const auto& tr = all[static_cast<std::size_t>(i)];
        top_list.push_back({{"trial", tr.index}, {"sequence", tr.seq.to_string()},
                            {"best_field", format_position(tr.best)}, {"best_value", tr.value}});
        body << "#" << (i + 1) << "  trial " << tr.index << "  best " << format_position(tr.best) << " "
             << fixed4(tr.value) << "\n"
             << render_board(tr.seq) << "\n";
    }
    rep.body = body.str();
    const auto& v = out.best_values;
    rep.summary["mean_best_value"] = detail::mean(v);
    rep.summary["sd_best_value"] = detail::stddev(v);
    rep.summary["min_best_value"] = *std::min_element(v.begin(), v.end());
    rep.summary["max_best_value"] = *std::max_element(v.begin(), v.end());
    rep.summary["top"] = top_list;
    return out;
}

// -------------------------------------------------------- stability probe

struct StabilityResult {
    ExperimentReport report;
    double agreement = 0.0;
    Position modal{};
};

/// Rank-1 continuation of @p seq under @p pools independently seeded
/// operator pools; agreement is the share of pools that pick the most common
/// rank-1 field. With vary_pools = false every pool uses cfg's seed.
inline StabilityResult run_stability_probe(const PositionSequence& seq, int pools, std::uint64_t seed,
                                           const EngineConfig& cfg, bool vary_pools = true) {
    if (pools < 2) throw ConfigError("pools", "must be >= 2");
    if (seq.size() < 2) throw ValuationError("sequence too short: a model needs at least 2 positions");
    cfg.validate();

    StabilityResult out;
    auto& rep = out.report;
    rep.id = "stability";
    rep.config = to_json(cfg);
    rep.config["sequence"] = seq.to_string();
    rep.config["pools"] = pools;
    rep.config["seed"] = seed;
    rep.config["vary_pools"] = vary_pools;
    rep.notes.push_back(
        "interpretation: regularity is measured as agreement of the rank-1 continuation across independently "
        "sampled operator pools");
    rep.columns = {"pool", "pool_seed", "rank1_field", "rank1_value", "rank2_field", "rank2_value"};

    std::map<Position, int> votes;
    std::vector<Position> firsts;
    for (int p = 0; p < pools; ++p) {
        EngineConfig c = cfg;
        if (vary_pools) c.pool.seed = derive_seed(seed, static_cast<std::uint64_t>(p));
        const auto model = build_model(build_bank(c), seq);
        const auto ranking = rank_continuations(model, seq);
        ++votes[ranking[0].position];
        firsts.push_back(ranking[0].position);
        rep.rows.push_back({p, c.pool.seed, format_position(ranking[0].position), ranking[0].value,
                            format_position(ranking[1].position), ranking[1].value});
    }
    // Most votes; ties resolved by first appearance.
    int best = -1;
    for (const auto& f : firsts) {
        if (votes[f] > best) {
            best = votes[f];
            out.modal = f;
        }
    }
    out.agreement = static_cast<double>(best) / static_cast<double>(pools);
    rep.summary["modal_field"] = format_position(out.modal);
    rep.summary["agreement"] = out.agreement;
    rep.summary["distinct_rank1_fields"] = votes.size();
    return out;
}

// ----------------------------------------------------------- memory curve

struct MemoryResult {
    ExperimentReport report;
    /// deviations[i][j]: seed set i, length j
    std::vector<std::vector<int>> deviations;
};

/// Builds a model on a generated regular sequence of each length, regrows
/// it from its first @p prefix positions and counts deviations.
inline MemoryResult run_memory_curve(const std::string& pattern, const std::vector<int>& lengths, int prefix,
                                     const std::vector<std::uint64_t>& seed_sets, const EngineConfig& base) {
    if (lengths.empty()) throw ConfigError("lengths", "at least one length required");
    if (seed_sets.empty()) throw ConfigError("seeds", "no seed sets given");
    if (prefix < 1) throw ConfigError("prefix", "must be >= 1");
    for (int len : lengths) {
        if (len < prefix) throw ConfigError("lengths", "every length must be >= prefix");
        if (len < 2) throw ConfigError("lengths", "every length must be >= 2");
    }
    base.validate();

    MemoryResult out;
    auto& rep = out.report;
    rep.id = "memory";
    rep.config = to_json(base);
    rep.config["pattern"] = pattern;
    rep.config["lengths"] = lengths;
    rep.config["prefix"] = prefix;
    rep.config["seed_sets"] = seed_sets;
    rep.columns = {"seed_set", "length", "deviations", "first_deviation"};

    for (std::uint64_t s : seed_sets) {
        const auto bank = build_bank(seeded(base, s));
        std::vector<int> row;
        for (int len : lengths) {
            const auto seq = generate_pattern(pattern, len);
            const auto model = build_model(bank, seq);
            const auto rec = reconstruct(model, static_cast<std::size_t>(prefix));
            int first = -1;
            for (std::size_t i = static_cast<std::size_t>(prefix); i < seq.size() && first < 0; ++i) {
                if (rec.sequence[i] != seq[i]) first = static_cast<int>(i);
            }
            rep.rows.push_back({s, len, rec.deviations, first});
            row.push_back(rec.deviations);
        }
        out.deviations.push_back(std::move(row));
    }
    auto per_length = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < lengths.size(); ++j) {
        std::vector<double> d;
        int perfect = 0;
        for (const auto& row : out.deviations) {
            d.push_back(row[j]);
            perfect += row[j] == 0 ? 1 : 0;
        }
        per_length.push_back({{"length", lengths[j]},
                              {"mean_deviations", detail::mean(d)},
                              {"max_deviations", *std::max_element(d.begin(), d.end())},
                              {"perfect_seed_sets", perfect}});
    }
    rep.summary["per_length"] = per_length;
    return out;
}

// ---------------------------------------------------------------- example

/// A worked example: the sequence's diagram, then for each of @p horizon
/// steps the @p top best continuations, adopting rank 1 each time. The
/// model is built once on the given sequence.
inline ExperimentReport run_example(const PositionSequence& seq, int horizon, int top, const EngineConfig& cfg) {
    if (horizon < 1) throw ConfigError("horizon", "must be >= 1");
    if (top < 1 || top > cfg.board().field_count()) throw ConfigError("top", "must lie in 1..n^2");
    cfg.validate();
    const auto model = build_model(build_bank(cfg), seq);

    ExperimentReport rep;
    rep.id = "example";
    rep.config = to_json(cfg);
    rep.config["sequence"] = seq.to_string();
    rep.config["horizon"] = horizon;
    rep.config["top"] = top;
    rep.columns = {"index", "rank", "field", "value"};

    std::vector<std::vector<RankedContinuation>> steps;
    auto gaps = nlohmann::ordered_json::array();
    PositionSequence current = seq;
    for (int h = 0; h < horizon; ++h) {
        auto ranking = rank_continuations(model, current);
        const auto index = current.size();
        for (int r = 0; r < top; ++r) {
            const auto& rc = ranking[static_cast<std::size_t>(r)];
            rep.rows.push_back({index, rc.rank, format_position(rc.position), rc.value});
        }
        gaps.push_back({{"index", index}, {"adopted", format_position(ranking[0].position)},
                        {"gap_rank1_rank2", ranking[0].value - ranking[1].value}});
        current = current.appended(ranking[0].position);
        ranking.resize(static_cast<std::size_t>(top));
        steps.push_back(std::move(ranking));
    }

    std::ostringstream body;
    body << render_board(seq) << '\n';
    body << "Rank";
    for (int h = 0; h < horizon; ++h) {
        const auto idx = seq.size() + static_cast<std::size_t>(h);
        body << "  c_" << idx << "  Value(c_" << idx << ")";
        if (h > 0) body << " [c_" << idx - 1 << " = " << format_position(steps[h - 1][0].position) << "]";
    }
    body << '\n';
    for (int r = 0; r < top; ++r) {
        body << r + 1;
        for (int h = 0; h < horizon; ++h) {
            const auto& rc = steps[static_cast<std::size_t>(h)][static_cast<std::size_t>(r)];
            body << "  " << format_position(rc.position) << "  " << fixed4(rc.value);
        }
        body << '\n';
    }
    body << '\n' << render_board(current);
    rep.body = body.str();
    rep.summary["continued"] = current.to_string();
    rep.summary["steps"] = gaps;
    return rep;
}

}  // namespace seqval
