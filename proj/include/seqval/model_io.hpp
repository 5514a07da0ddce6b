#pragma once

// JSON forms of configurations, sequences and models. Model dumps carry the
// bank tables verbatim, so load_model(dump_model(m)) reproduces m bit for bit
// without regenerating the general sequence.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "board.hpp"
#include "featurebank.hpp"
#include "valuation.hpp"

namespace seqval {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const GeneralSequenceConfig& g) {
    return {{"length", g.length}, {"seed", g.seed}, {"board_size", g.board.size}};
}

inline ordered_json to_json(const PoolConfig& p) {
    ordered_json chains = ordered_json::array();
    for (auto c : p.chains) chains.push_back(std::string(to_string(c)));
    return {{"pool_size", p.pool_size}, {"seed", p.seed},
            {"max_conv_len", p.max_conv_len}, {"bins_k", p.bins_k},
            {"epsilon", p.epsilon}, {"scoring", std::string(to_string(p.scoring))},
            {"distinct", p.distinct}, {"chains", chains}};
}

inline GeneralSequenceConfig general_config_from_json(const ordered_json& j) {
    GeneralSequenceConfig g;
    g.length = j.at("length").get<int>();
    g.seed = j.at("seed").get<std::uint64_t>();
    g.board.size = j.at("board_size").get<int>();
    return g;
}

inline PoolConfig pool_config_from_json(const ordered_json& j) {
    PoolConfig p;
    p.pool_size = j.at("pool_size").get<int>();
    p.seed = j.at("seed").get<std::uint64_t>();
    p.max_conv_len = j.at("max_conv_len").get<int>();
    p.bins_k = j.at("bins_k").get<int>();
    p.epsilon = j.at("epsilon").get<double>();
    p.scoring = parse_scoring(j.at("scoring").get<std::string>());
    p.distinct = j.value("distinct", false);
    if (j.contains("chains")) {
        p.chains.clear();
        for (const auto& c : j.at("chains")) p.chains.push_back(parse_chain(c.get<std::string>()));
    }
    return p;
}

inline ordered_json to_json(const PositionSequence& s) { return s.notation(); }

/// Accepts a JSON array of notation strings.
template <class Json>
PositionSequence parse_sequence_json(const Json& j, const BoardConfig& board) {
    if (!j.is_array()) throw ParseError("sequence must be a JSON array of field names", j.dump());
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) throw ParseError("token " + std::to_string(i) + ": not a string", j[i].dump(), i);
        tokens.push_back(j[i].template get<std::string>());
    }
    return parse_sequence(tokens, board);
}

inline ordered_json to_json(const ValuationModel& m) {
    ordered_json ops = ordered_json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto t = m.table(i);
        ops.push_back({{"spec", to_string(t.op)},
                       {"boundaries", t.bins.boundaries},
                       {"p_g", std::vector<double>(t.p_g.begin(), t.p_g.end())},
                       {"p_s", std::vector<double>(t.p_s.begin(), t.p_s.end())}});
    }
    return {{"general", to_json(m.bank().general)},
            {"pool", to_json(m.bank().pool)},
            {"special", to_json(m.special())},
            {"operators", ops}};
}

inline std::string dump_model(const ValuationModel& m, int indent = -1) { return to_json(m).dump(indent); }

inline ValuationModel model_from_json(const ordered_json& j) {
    auto bank = std::make_shared<FeatureBank>();
    bank->general = general_config_from_json(j.at("general"));
    bank->pool = pool_config_from_json(j.at("pool"));
    std::vector<std::vector<double>> p_s;
    for (const auto& rec : j.at("operators")) {
        OperatorStats st;
        st.op = parse_operator(rec.at("spec").get<std::string>());
        st.bins.boundaries = rec.at("boundaries").get<std::vector<double>>();
        st.p_g = rec.at("p_g").get<std::vector<double>>();
        if (st.p_g.size() != st.bins.count()) throw std::invalid_argument("p_g length mismatch in model dump");
        bank->operators.push_back(std::move(st));
        p_s.push_back(rec.at("p_s").get<std::vector<double>>());
    }
    auto special = parse_sequence_json(j.at("special"), bank->general.board);
    return ValuationModel(std::move(bank), std::move(special), std::move(p_s));
}

inline ValuationModel load_model(const std::string& text) { return model_from_json(ordered_json::parse(text)); }

}  // namespace seqval
