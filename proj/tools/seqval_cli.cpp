// seqval: command line front end for ranking continuations, measuring
// similarity and running the bundled studies.
//
// Exit codes: 0 success, 2 configuration or input error, 1 anything else.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqval/seqval.hpp"

namespace {

using namespace seqval;

struct CommonOptions {
    int board_size = 12;
    int pool_size = 200;
    int bins = 8;
    double epsilon = 0.01;
    std::string scoring = "log";
    std::uint64_t seed = 1;
    std::uint64_t general_seed = 7;
    int general_length = 1000;
    int max_conv_len = 4;
    std::string format = "text";
    std::string out;

    EngineConfig engine() const {
        EngineConfig cfg;
        cfg.general.board.size = board_size;
        cfg.general.seed = general_seed;
        cfg.general.length = general_length;
        cfg.pool.pool_size = pool_size;
        cfg.pool.seed = seed;
        cfg.pool.bins_k = bins;
        cfg.pool.epsilon = epsilon;
        cfg.pool.scoring = parse_scoring(scoring);
        cfg.pool.max_conv_len = max_conv_len;
        cfg.validate();
        return cfg;
    }
};

/// Whitespace-separated notation, or a JSON array of strings.
PositionSequence read_sequence(const std::string& text, const BoardConfig& board) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        const auto j = nlohmann::json::parse(text, nullptr, false);
        if (j.is_discarded()) throw ParseError("sequence is not valid JSON", text);
        return parse_sequence_json(j, board);
    }
    return parse_sequence(text, board);
}

std::vector<std::uint64_t> seed_range(int n) {
    std::vector<std::uint64_t> out;
    for (int i = 0; i < n; ++i) out.push_back(static_cast<std::uint64_t>(i));
    return out;
}

void emit(const CommonOptions& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + opt.out);
    f << text;
}

std::string ranking_text(const PositionSequence& base, const std::vector<RankedContinuation>& ranking, int top) {
    std::map<Position, double> values;
    for (const auto& r : ranking) values[r.position] = r.value;
    std::ostringstream out;
    out << render_board(base, &values) << '\n' << "Rank  Field  Value\n";
    for (int i = 0; i < top; ++i) {
        const auto& r = ranking[static_cast<std::size_t>(i)];
        out << r.rank << "  " << format_position(r.position) << "  " << fixed4(r.value) << '\n';
    }
    return out.str();
}

std::string render_ranking(const CommonOptions& opt, const PositionSequence& base,
                           std::vector<RankedContinuation> ranking, int top) {
    top = std::clamp(top, 1, static_cast<int>(ranking.size()));
    if (opt.format == "text") return ranking_text(base, ranking, top);
    ranking.resize(static_cast<std::size_t>(top));
    if (opt.format == "csv") return ranking_csv(ranking);
    return ranking_json(ranking).dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Valuation of position sequences: continuation ranking, similarity and studies"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOptions opt;
    app.add_option("--board-size", opt.board_size, "Fields per board side")->capture_default_str();
    app.add_option("--pool-size", opt.pool_size, "Operators per pool")->capture_default_str();
    app.add_option("--bins", opt.bins, "Quantile bins per operator (k)")->capture_default_str();
    app.add_option("--epsilon", opt.epsilon, "Probability floor")->capture_default_str();
    app.add_option("--scoring", opt.scoring, "Feature score")
        ->check(CLI::IsMember({"log", "indicator"}))
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "Operator pool seed")->capture_default_str();
    app.add_option("--general-seed", opt.general_seed, "General sequence seed")->capture_default_str();
    app.add_option("--general-length", opt.general_length, "General sequence length")->capture_default_str();
    app.add_option("--max-conv-len", opt.max_conv_len, "Longest convolution")->capture_default_str();
    app.add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", opt.out, "Write output to PATH instead of stdout");

    std::string sequence, model_sequence, seed_sequence, pattern = "square", sets_text;
    int top = 10, steps = 4, trials = 1000, length = 6, pools = 20, prefix = 5, seed_sets = 5, horizon = 4;
    std::vector<int> lengths{50, 100};
    bool fixed_pool = false, no_transform = false;

    auto* rank = app.add_subcommand("rank", "Rank all continuations of a sequence");
    rank->add_option("--sequence", sequence, "Base sequence, e.g. \"A1 B2 C3\"")->required();
    rank->add_option("--top", top, "Entries to print")->capture_default_str();

    auto* cont = app.add_subcommand("continue", "Extend a seed sequence with a model built on another sequence");
    cont->add_option("--model-sequence", model_sequence, "Sequence the model is built on")->required();
    cont->add_option("--seed-sequence", seed_sequence, "Sequence to extend")->required();
    cont->add_option("--steps", steps, "Positions to append")->capture_default_str();

    auto* sim = app.add_subcommand("similarity", "Similarity of a sequence to a model sequence");
    sim->add_option("--model-sequence", model_sequence, "Sequence the model is built on")->required();
    sim->add_option("--sequence", sequence, "Sequence to value")->required();

    auto* abl = app.add_subcommand("ablation", "Mean designated-continuation rank per feature set");
    abl->add_option("--seed-sets", seed_sets, "Number of seed sets")->capture_default_str();
    abl->add_option("--sets", sets_text, "Comma-separated feature sets (conv-only,conv-diff,conv-quot,full)");
    abl->add_flag("--no-transform", no_transform, "Use the corpus without board symmetries");

    auto* rnd = app.add_subcommand("random-study", "Best-continuation values of random sequences");
    rnd->add_option("--trials", trials, "Random sequences")->capture_default_str();
    rnd->add_option("--length", length, "Sequence length")->capture_default_str();
    rnd->add_option("--top", top, "Highest-valued sequences to show")->capture_default_str();

    auto* stab = app.add_subcommand("stability", "Rank-1 agreement across independently sampled pools");
    stab->add_option("--sequence", sequence, "Sequence to probe")->required();
    stab->add_option("--pools", pools, "Number of pools")->capture_default_str();
    stab->add_flag("--fixed-pool", fixed_pool, "Reuse the same pool seed every time");

    auto* mem = app.add_subcommand("memory", "Reconstruct generated regular sequences from a prefix");
    mem->add_option("--pattern", pattern, "Generator id")->check(CLI::IsMember(pattern_ids()))->capture_default_str();
    mem->add_option("--lengths", lengths, "Sequence lengths")->delimiter(',')->capture_default_str();
    mem->add_option("--prefix", prefix, "Given initial positions")->capture_default_str();
    mem->add_option("--seed-sets", seed_sets, "Number of seed sets")->capture_default_str();

    auto* ex = app.add_subcommand("example", "Diagram and best continuations step by step");
    ex->add_option("--sequence", sequence, "Base sequence")->required();
    ex->add_option("--horizon", horizon, "Steps")->capture_default_str();
    ex->add_option("--top", top, "Continuations per step")->capture_default_str();

    auto* model = app.add_subcommand("model", "Dump the valuation model of a sequence as JSON");
    model->add_option("--sequence", sequence, "Special sequence")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const EngineConfig cfg = opt.engine();
        const auto& board = cfg.board();
        const auto fmt = parse_format(opt.format);

        if (*rank) {
            const auto base = read_sequence(sequence, board);
            const auto m = build_model(build_bank(cfg), base);
            emit(opt, render_ranking(opt, base, rank_continuations(m, base), top));
        } else if (*cont) {
            const auto m = build_model(build_bank(cfg), read_sequence(model_sequence, board));
            const auto seed = read_sequence(seed_sequence, board);
            const auto out = continue_iteratively(m, seed, steps);
            if (fmt == OutputFormat::Text) {
                emit(opt, render_board(out) + "\n" + out.to_string() + "\n");
            } else if (fmt == OutputFormat::Json) {
                emit(opt, nlohmann::ordered_json{{"sequence", to_json(out)}}.dump(2) + "\n");
            } else {
                std::string csv = "index,field\n";
                for (std::size_t i = 0; i < out.size(); ++i) csv += std::to_string(i) + "," + format_position(out[i]) + "\n";
                emit(opt, csv);
            }
        } else if (*sim) {
            const auto m = build_model(build_bank(cfg), read_sequence(model_sequence, board));
            const auto d = read_sequence(sequence, board);
            const double v = value_similarity(m, d);
            if (fmt == OutputFormat::Json) {
                emit(opt, nlohmann::ordered_json{{"sequence", d.to_string()}, {"similarity", v}}.dump(2) + "\n");
            } else if (fmt == OutputFormat::Csv) {
                emit(opt, "sequence,similarity\n" + d.to_string() + "," + fixed4(v) + "\n");
            } else {
                emit(opt, fixed4(v) + "\n");
            }
        } else if (*abl) {
            std::vector<FeatureSetChoice> sets{FeatureSetChoice::ConvOnly, FeatureSetChoice::ConvDiff,
                                               FeatureSetChoice::ConvQuot, FeatureSetChoice::Full};
            if (!sets_text.empty()) {
                sets.clear();
                std::stringstream ss(sets_text);
                std::string item;
                while (std::getline(ss, item, ',')) sets.push_back(parse_feature_set(item));
            }
            emit(opt, render(run_ablation(regular_corpus(), sets, seed_range(seed_sets), cfg, !no_transform), fmt));
        } else if (*rnd) {
            emit(opt, render(run_random_study(trials, length, top, cfg.pool.seed, cfg).report, fmt));
        } else if (*stab) {
            const auto seq = read_sequence(sequence, board);
            emit(opt, render(run_stability_probe(seq, pools, cfg.pool.seed, cfg, !fixed_pool).report, fmt));
        } else if (*mem) {
            emit(opt, render(run_memory_curve(pattern, lengths, prefix, seed_range(seed_sets), cfg).report, fmt));
        } else if (*ex) {
            emit(opt, render(run_example(read_sequence(sequence, board), horizon, top, cfg), fmt));
        } else if (*model) {
            emit(opt, dump_model(build_model(build_bank(cfg), read_sequence(sequence, board)), 2) + "\n");
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ValuationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
