#pragma once

/**
 * @file service.hpp
 * @brief In-memory session store behind the HTTP facade.
 *
 * A session owns a base sequence and the valuation model built on it. Every
 * operation returns a status code plus a JSON body; the HTTP layer in
 * http.hpp only routes. Requests on one session are serialized by the
 * session's mutex; distinct sessions proceed concurrently.
 *
 * With a state directory every session is snapshotted to <dir>/<id>.json
 * after each change and reloaded on construction. Models are not stored:
 * they are rebuilt deterministically from config and the sequence they were
 * built on.
 */

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "board.hpp"
#include "featurebank.hpp"
#include "model_io.hpp"
#include "valuation.hpp"

namespace seqval::service {

using json = nlohmann::ordered_json;

struct Response {
    int status = 200;
    json body;
};

inline Response error(int status, const std::string& code, const std::string& detail, json extra = json::object()) {
    json body = {{"error", code}, {"detail", detail}};
    for (auto it = extra.begin(); it != extra.end(); ++it) body[it.key()] = it.value();
    return {status, std::move(body)};
}

struct SessionConfig {
    EngineConfig engine;
    bool freeze_model = false;
    int top = 5;
};

inline json to_json(const SessionConfig& c) {
    return {{"board_size", c.engine.general.board.size},
            {"pool_size", c.engine.pool.pool_size},
            {"seed", c.engine.pool.seed},
            {"max_conv_len", c.engine.pool.max_conv_len},
            {"bins_k", c.engine.pool.bins_k},
            {"epsilon", c.engine.pool.epsilon},
            {"scoring", std::string(to_string(c.engine.pool.scoring))},
            {"general_seed", c.engine.general.seed},
            {"general_length", c.engine.general.length},
            {"freeze_model", c.freeze_model},
            {"top", c.top}};
}

/// Applies overrides on top of defaults. Throws ConfigError naming the field.
inline SessionConfig session_config_from_json(const json& overrides, SessionConfig cfg = {}) {
    if (!overrides.is_object()) throw ConfigError("body", "config overrides must be a JSON object");
    auto get_int = [](const json& v, const std::string& key) -> long long {
        if (!v.is_number_integer()) throw ConfigError(key, "must be an integer");
        return v.get<long long>();
    };
    for (auto it = overrides.begin(); it != overrides.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        if (key == "board_size") {
            cfg.engine.general.board.size = static_cast<int>(get_int(v, key));
        } else if (key == "pool_size") {
            cfg.engine.pool.pool_size = static_cast<int>(get_int(v, key));
        } else if (key == "seed") {
            cfg.engine.pool.seed = static_cast<std::uint64_t>(get_int(v, key));
        } else if (key == "max_conv_len") {
            cfg.engine.pool.max_conv_len = static_cast<int>(get_int(v, key));
        } else if (key == "bins_k") {
            cfg.engine.pool.bins_k = static_cast<int>(get_int(v, key));
        } else if (key == "epsilon") {
            if (!v.is_number()) throw ConfigError(key, "must be a number");
            cfg.engine.pool.epsilon = v.get<double>();
        } else if (key == "scoring") {
            if (!v.is_string()) throw ConfigError(key, "must be 'log' or 'indicator'");
            cfg.engine.pool.scoring = parse_scoring(v.get<std::string>());
        } else if (key == "general_seed") {
            cfg.engine.general.seed = static_cast<std::uint64_t>(get_int(v, key));
        } else if (key == "general_length") {
            cfg.engine.general.length = static_cast<int>(get_int(v, key));
        } else if (key == "freeze_model") {
            if (!v.is_boolean()) throw ConfigError(key, "must be a boolean");
            cfg.freeze_model = v.get<bool>();
        } else if (key == "top") {
            cfg.top = static_cast<int>(get_int(v, key));
        } else {
            throw ConfigError(key, "unknown setting");
        }
    }
    if (cfg.top < 1) throw ConfigError("top", "must be >= 1");
    cfg.engine.validate();
    return cfg;
}

/// Full ranking of base's continuations plus the best @p top of them.
inline json heatmap_payload(const ValuationModel& model, const PositionSequence& base, int top, bool frozen) {
    const auto ranking = rank_continuations(model, base);
    json cells = json::array();
    for (const auto& r : ranking) {
        cells.push_back({{"field", format_position(r.position)}, {"value", r.value}, {"rank", r.rank}});
    }
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(top), cells.size());
    json best = json::array();
    for (std::size_t i = 0; i < k; ++i) best.push_back(cells[i]);
    return {{"sequence", to_json(base)},
            {"length", base.size()},
            {"board_size", base.board().size},
            {"freeze_model", frozen},
            {"model_sequence", to_json(model.special())},
            {"cells", std::move(cells)},
            {"top", std::move(best)}};
}

class SessionStore {
public:
    explicit SessionStore(std::optional<std::filesystem::path> state_dir = std::nullopt)
        : state_dir_(std::move(state_dir)), ids_(std::random_device{}()) {
        if (state_dir_) {
            std::filesystem::create_directories(*state_dir_);
            load_snapshots();
        }
    }

    Response create(const json& overrides) {
        SessionConfig cfg;
        try {
            cfg = session_config_from_json(overrides);
        } catch (const ConfigError& e) {
            return error(400, "invalid_config", e.what(), {{"field", e.field()}});
        }
        auto s = std::make_shared<Session>();
        s->config = cfg;
        s->base = PositionSequence(cfg.engine.board());
        s->created = s->updated = now();
        std::string id;
        {
            std::unique_lock lock(map_mutex_);
            do {
                id = next_id();
            } while (sessions_.contains(id));
            s->id = id;
            sessions_[id] = s;
        }
        std::lock_guard lock(s->mutex);
        persist(*s);
        return {201, describe(*s)};
    }

    Response get(const std::string& id) {
        auto s = find(id);
        if (!s) return not_found(id);
        std::lock_guard lock(s->mutex);
        return {200, describe(*s)};
    }

    Response remove(const std::string& id) {
        std::shared_ptr<Session> s;
        {
            std::unique_lock lock(map_mutex_);
            auto it = sessions_.find(id);
            if (it == sessions_.end()) return not_found(id);
            s = it->second;
            sessions_.erase(it);
        }
        std::lock_guard lock(s->mutex);
        if (state_dir_) std::filesystem::remove(*state_dir_ / (id + ".json"));
        return {200, {{"deleted", id}}};
    }

    /// Body: {"positions": [...]} or a bare JSON array of field names.
    Response set_sequence(const std::string& id, const json& body) {
        auto s = find(id);
        if (!s) return not_found(id);
        const json& list = body.is_object() && body.contains("positions") ? body.at("positions") : body;
        std::lock_guard lock(s->mutex);
        PositionSequence seq;
        try {
            seq = parse_sequence_json(list, s->config.engine.board());
        } catch (const ParseError& e) {
            return parse_error(e);
        }
        if (seq.size() < 2) return too_short();
        s->model = build_model(bank(*s), seq);
        s->base = std::move(seq);
        s->updated = now();
        persist(*s);
        return {200, heatmap(*s, s->config.top)};
    }

    /// Body: {"field": "G7"}. Rebuilds the model unless the session freezes it.
    Response accept(const std::string& id, const json& body) {
        auto s = find(id);
        if (!s) return not_found(id);
        std::lock_guard lock(s->mutex);
        if (!body.is_object() || !body.contains("field") || !body.at("field").is_string()) {
            return error(400, "bad_request", "expected {\"field\": \"<notation>\"}");
        }
        Position p;
        try {
            p = parse_position(body.at("field").get<std::string>(), s->config.engine.board());
        } catch (const ParseError& e) {
            return error(400, "parse_error", e.what(), {{"token", e.token()}, {"index", 0}});
        }
        auto seq = s->base.appended(p);
        if (seq.size() < 2) return too_short();
        if (!s->model || !s->config.freeze_model) s->model = build_model(bank(*s), seq);
        s->base = std::move(seq);
        s->updated = now();
        persist(*s);
        return {200, heatmap(*s, s->config.top)};
    }

    Response heatmap(const std::string& id, std::optional<int> top = std::nullopt) {
        auto s = find(id);
        if (!s) return not_found(id);
        std::lock_guard lock(s->mutex);
        if (!s->model) return too_short();
        const int k = top.value_or(s->config.top);
        if (k < 1) return error(400, "invalid_parameter", "top must be >= 1", {{"field", "top"}});
        return {200, heatmap(*s, k)};
    }

    /// Model dump of a session, for inspection and tests.
    std::optional<std::string> model_dump(const std::string& id) {
        auto s = find(id);
        if (!s) return std::nullopt;
        std::lock_guard lock(s->mutex);
        if (!s->model) return std::string();
        return dump_model(*s->model);
    }

    std::size_t size() const {
        std::shared_lock lock(map_mutex_);
        return sessions_.size();
    }

private:
    struct Session {
        std::mutex mutex;
        std::string id;
        SessionConfig config;
        PositionSequence base;
        std::optional<ValuationModel> model;
        std::shared_ptr<const FeatureBank> bank;
        std::string created;
        std::string updated;
    };

    static std::string now() {
        const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&t, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }

    std::string next_id() {
        std::ostringstream out;
        out << std::hex << ids_() << std::hex << ++counter_;
        return out.str();
    }

    std::shared_ptr<Session> find(const std::string& id) const {
        std::shared_lock lock(map_mutex_);
        auto it = sessions_.find(id);
        return it == sessions_.end() ? nullptr : it->second;
    }

    static const std::shared_ptr<const FeatureBank>& bank(Session& s) {
        if (!s.bank) s.bank = build_bank(s.config.engine);
        return s.bank;
    }

    static Response not_found(const std::string& id) { return error(404, "not_found", "no session '" + id + "'"); }
    static Response too_short() {
        return error(422, "sequence too short", "a valuation needs at least 2 positions");
    }
    static Response parse_error(const ParseError& e) {
        json extra = {{"token", e.token()}};
        if (e.index()) extra["index"] = *e.index();
        return error(400, "parse_error", e.what(), std::move(extra));
    }

    static json heatmap(Session& s, int top) { return heatmap_payload(*s.model, s.base, top, s.config.freeze_model); }

    static json describe(const Session& s) {
        return {{"id", s.id},
                {"config", to_json(s.config)},
                {"sequence", to_json(s.base)},
                {"length", s.base.size()},
                {"has_model", s.model.has_value()},
                {"created", s.created},
                {"updated", s.updated}};
    }

    void persist(const Session& s) const {
        if (!state_dir_) return;
        json snap = {{"id", s.id},
                     {"config", to_json(s.config)},
                     {"sequence", to_json(s.base)},
                     {"model_sequence", s.model ? to_json(s.model->special()) : json(nullptr)},
                     {"created", s.created},
                     {"updated", s.updated}};
        const auto path = *state_dir_ / (s.id + ".json");
        const auto tmp = path.string() + ".tmp";
        {
            std::ofstream out(tmp);
            out << snap.dump(2) << '\n';
        }
        std::filesystem::rename(tmp, path);
    }

    void load_snapshots() {
        for (const auto& entry : std::filesystem::directory_iterator(*state_dir_)) {
            if (entry.path().extension() != ".json") continue;
            std::ifstream in(entry.path());
            const json snap = json::parse(in, nullptr, false);
            if (snap.is_discarded()) continue;
            auto s = std::make_shared<Session>();
            s->id = snap.at("id").get<std::string>();
            s->config = session_config_from_json(snap.at("config"));
            s->base = parse_sequence_json(snap.at("sequence"), s->config.engine.board());
            if (!snap.at("model_sequence").is_null()) {
                s->model = build_model(bank(*s), parse_sequence_json(snap.at("model_sequence"), s->config.engine.board()));
            }
            s->created = snap.value("created", now());
            s->updated = snap.value("updated", s->created);
            sessions_[s->id] = std::move(s);
        }
    }

    std::optional<std::filesystem::path> state_dir_;
    mutable std::shared_mutex map_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::mt19937_64 ids_;
    std::uint64_t counter_ = 0;
};

}  // namespace seqval::service
