#include "socialai/trajectory.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <sstream>

#include "socialai/errors.hpp"
#include "socialai/textworld.hpp"

namespace socialai {

using nlohmann::ordered_json;

namespace {

ordered_json info_json(const StepInfo& i) {
    return ordered_json{{"success", i.success},
                        {"blocked", i.blocked},
                        {"intro_satisfied", i.intro_satisfied},
                        {"peer_phase", std::string(peer_phase_name(i.peer_phase))},
                        {"seen", i.seen},
                        {"peer_idle", i.peer_idle}};
}

PeerPhase phase_from_name(const std::string& n) {
    for (int i = 0; i <= static_cast<int>(PeerPhase::Done); ++i)
        if (peer_phase_name(static_cast<PeerPhase>(i)) == n) return static_cast<PeerPhase>(i);
    throw IoError("unknown peer phase '" + n + "'");
}

std::uint64_t parse_hash(const std::string& s) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &used, 16);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (s.empty() || used != s.size()) throw IoError("bad hash '" + s + "'");
    return v;
}

std::string diff(int t, const std::string& what) { return "step " + std::to_string(t) + ": " + what + " differs"; }

}  // namespace

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string to_jsonl(const Trajectory& t) {
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : t.params) params[k] = v;
    ordered_json header{{"type", "header"},
                        {"version", kTrajectoryVersion},
                        {"seed", t.seed},
                        {"params", params},
                        {"env", describe(params_from_set(t.params))},
                        {"initial_obs_hash", hash_hex(t.initial_obs_hash)}};
    if (t.bonus_kind != BonusKind::None)
        header["bonus"] = ordered_json{{"kind", std::string(bonus_kind_name(t.bonus_kind))},
                                       {"T", t.bonus_params.T},
                                       {"C", t.bonus_params.C},
                                       {"M", t.bonus_params.M}};
    std::string out = header.dump() + "\n";
    for (const auto& s : t.steps) {
        ordered_json action{{"primitive", static_cast<int>(s.action.primitive)}, {"template", nullptr}, {"noun", nullptr}};
        if (s.action.utterance) {
            action["template"] = s.action.utterance->template_index;
            action["noun"] = s.action.utterance->noun_index;
        }
        ordered_json line{{"type", "step"},       {"t", s.t},
                          {"action", action},     {"reward", s.reward},
                          {"done", s.done},       {"obs_hash", hash_hex(s.obs_hash)},
                          {"info", info_json(s.info)}};
        if (s.bonus) line["bonus"] = *s.bonus;
        out += line.dump() + "\n";
    }
    return out;
}

Trajectory from_jsonl(std::istream& in) {
    Trajectory t;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    try {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            const auto j = ordered_json::parse(line);
            const std::string type = j.at("type").get<std::string>();
            if (type == "header") {
                if (have_header) throw IoError("duplicate header");
                if (j.at("version").get<int>() != kTrajectoryVersion) throw IoError("unsupported trajectory version");
                t.seed = j.at("seed").get<std::uint64_t>();
                for (const auto& [k, v] : j.at("params").items()) t.params.emplace_back(k, v.get<std::string>());
                t.initial_obs_hash = parse_hash(j.at("initial_obs_hash").get<std::string>());
                if (j.contains("bonus")) {
                    const auto& b = j.at("bonus");
                    try {
                        t.bonus_kind = bonus_kind_from_name(b.at("kind").get<std::string>());
                    } catch (const ConfigError& e) {
                        throw IoError(e.what());
                    }
                    t.bonus_params = {b.at("T").get<double>(), b.at("C").get<double>(), b.at("M").get<double>()};
                }
                have_header = true;
            } else if (type == "step") {
                if (!have_header) throw IoError("step before header");
                StepRecord s;
                s.t = j.at("t").get<int>();
                const auto& a = j.at("action");
                const int prim = a.at("primitive").get<int>();
                if (prim < 0 || prim >= kPrimitiveCount) throw IoError("primitive out of range");
                s.action.primitive = static_cast<Primitive>(prim);
                if (a.at("template").is_null() != a.at("noun").is_null())
                    throw IoError("template and noun must both be present or both null");
                if (!a.at("template").is_null())
                    s.action.utterance = Utterance{a.at("template").get<int>(), a.at("noun").get<int>()};
                s.reward = j.at("reward").get<double>();
                s.done = j.at("done").get<bool>();
                s.obs_hash = parse_hash(j.at("obs_hash").get<std::string>());
                const auto& i = j.at("info");
                s.info.success = i.at("success").get<bool>();
                s.info.blocked = i.at("blocked").get<bool>();
                s.info.intro_satisfied = i.at("intro_satisfied").get<bool>();
                s.info.peer_phase = phase_from_name(i.at("peer_phase").get<std::string>());
                s.info.seen = i.at("seen").get<bool>();
                s.info.peer_idle = i.at("peer_idle").get<bool>();
                if (j.contains("bonus")) s.bonus = j.at("bonus").get<double>();
                t.steps.push_back(s);
            } else {
                throw IoError("unknown record type '" + type + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError("trajectory line " + std::to_string(lineno) + ": " + e.what());
    } catch (const IoError& e) {
        throw IoError("trajectory line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!have_header) throw IoError("trajectory has no header");
    return t;
}

void save_trajectory(const Trajectory& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << to_jsonl(t);
    if (!out) throw IoError("write failed for " + path);
}

Trajectory load_trajectory(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    return from_jsonl(in);
}

ReplayReport replay(const Trajectory& t) {
    ReplayReport r;
    Env env(params_from_set(t.params), t.seed);
    if (observation_hash(env.state()) != t.initial_obs_hash) {
        r.ok = false;
        r.mismatch = "initial observation differs";
        return r;
    }
    EpisodicCounts counts;
    for (const auto& rec : t.steps) {
        if (env.done()) {
            r.ok = false;
            r.mismatch = diff(rec.t, "episode length");
            return r;
        }
        const std::size_t heard_before = env.state().dialogue.entries().size();
        const StepResult res = env.step(rec.action);
        ++r.steps_checked;
        std::optional<double> bonus;
        if (t.bonus_kind != BonusKind::None)
            bonus = step_bonus(t.bonus_kind, counts, env.view(), env.state().dialogue, heard_before, t.bonus_params);
        std::string what;
        if (env.state().step != rec.t) what = "step index";
        else if (res.reward != rec.reward) what = "reward";
        else if (res.done != rec.done) what = "done flag";
        else if (!(res.info == rec.info)) what = "info";
        else if (observation_hash(env.state()) != rec.obs_hash) what = "observation";
        else if (bonus != rec.bonus) what = "bonus";
        if (!what.empty()) {
            r.ok = false;
            r.mismatch = diff(rec.t, what);
            return r;
        }
    }
    return r;
}

std::string transcript_of(const Trajectory& t) {
    Env env(params_from_set(t.params), t.seed);
    TranscriptWriter w;
    w.begin(env.state());
    for (const auto& rec : t.steps) {
        if (env.done()) break;
        env.step(rec.action);
        w.step(rec.action.primitive, env.state());
    }
    return w.str();
}

}  // namespace socialai
