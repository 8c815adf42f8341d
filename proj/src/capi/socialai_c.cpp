#include "socialai.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "socialai/errors.hpp"
#include "socialai/llm.hpp"
#include "socialai/runner.hpp"
#include "socialai/textworld.hpp"
#include "socialai/trajectory.hpp"

struct sai_tree {
    socialai::ParamTree tree;
};

struct sai_env {
    std::optional<socialai::ParamTree> tree;
    socialai::ParamSet params;  // fixed parameters, or the last sampled ones
    std::unique_ptr<socialai::Env> env;
    socialai::Trajectory trajectory;
};

namespace {

using namespace socialai;

thread_local std::string g_last_error;

sai_status fail(sai_status s, std::string msg) {
    g_last_error = std::move(msg);
    return s;
}

template <typename F>
sai_status guarded(F&& f) {
    try {
        f();
        return SAI_OK;
    } catch (const ConfigError& e) {
        return fail(SAI_ERR_CONFIG, e.what());
    } catch (const IoError& e) {
        return fail(SAI_ERR_IO, e.what());
    } catch (const StateError& e) {
        return fail(SAI_ERR_STATE, e.what());
    } catch (const ProviderError& e) {
        return fail(SAI_ERR_PROVIDER, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(SAI_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(SAI_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(SAI_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(SAI_ERR_INTERNAL, "unknown error");
    }
}

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

void copy_view(const View& v, uint8_t* obs) {
    if (obs == nullptr) return;
    std::size_t k = 0;
    for (const auto& row : v)
        for (const auto& cell : row)
            for (std::uint8_t c : cell) obs[k++] = c;
}

std::string params_json(const ParamSet& ps) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : ps) j[k] = v;
    return j.dump();
}

ParamSet parse_params(const char* json) {
    ParamSet ps;
    try {
        const auto j = nlohmann::ordered_json::parse(json);
        if (!j.is_object()) throw ConfigError("parameters must be a JSON object");
        for (const auto& [k, v] : j.items()) ps.emplace_back(k, v.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad parameter JSON: ") + e.what());
    }
    params_from_set(ps);
    return ps;
}

Env& live_env(sai_env* env) {
    if (!env->env) throw StateError("environment has not been reset");
    return *env->env;
}

const Env& live_env(const sai_env* env) {
    if (!env->env) throw StateError("environment has not been reset");
    return *env->env;
}

Trajectory parse_trajectory(const char* jsonl) {
    std::istringstream in(jsonl);
    return from_jsonl(in);
}

}  // namespace

extern "C" {

const char* sai_version(void) { return "1.0.0"; }

const char* sai_last_error(void) { return g_last_error.c_str(); }

const char* sai_status_name(sai_status s) {
    switch (s) {
        case SAI_OK: return "ok";
        case SAI_ERR_INVALID_ARGUMENT: return "invalid argument";
        case SAI_ERR_CONFIG: return "configuration error";
        case SAI_ERR_IO: return "i/o error";
        case SAI_ERR_STATE: return "state error";
        case SAI_ERR_PROVIDER: return "provider error";
        case SAI_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void sai_free_string(char* s) { std::free(s); }

const char* sai_data_dir(void) {
    const char* env = std::getenv("SOCIALAI_DATA_DIR");
    return env != nullptr && *env != '\0' ? env : SOCIALAI_DATA_DIR;
}

sai_status sai_tree_load(const char* path, sai_tree** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "null argument");
        *out = new sai_tree{ParamTree::load(path)};
    });
}

sai_status sai_tree_parse(const char* json, sai_tree** out) {
    return guarded([&] {
        require(json != nullptr && out != nullptr, "null argument");
        *out = new sai_tree{ParamTree::parse(json)};
    });
}

void sai_tree_free(sai_tree* tree) { delete tree; }

sai_status sai_tree_set_weights(sai_tree* tree, const char* path, const double* weights, size_t count) {
    return guarded([&] {
        require(tree != nullptr && path != nullptr && (weights != nullptr || count == 0), "null argument");
        tree->tree.set_weights(path, std::vector<double>(weights, weights + count));
    });
}

sai_status sai_tree_sample(const sai_tree* tree, uint64_t seed, char** json_out) {
    return guarded([&] {
        require(tree != nullptr && json_out != nullptr, "null argument");
        *json_out = dup_string(params_json(episode_seeds(tree->tree, seed, 0).params));
    });
}

sai_status sai_tree_to_json(const sai_tree* tree, char** json_out) {
    return guarded([&] {
        require(tree != nullptr && json_out != nullptr, "null argument");
        *json_out = dup_string(tree->tree.to_json());
    });
}

sai_status sai_env_from_tree(const sai_tree* tree, sai_env** out) {
    return guarded([&] {
        require(tree != nullptr && out != nullptr, "null argument");
        auto env = std::make_unique<sai_env>();
        env->tree = tree->tree;
        *out = env.release();
    });
}

sai_status sai_env_from_params(const char* params_json, sai_env** out) {
    return guarded([&] {
        require(params_json != nullptr && out != nullptr, "null argument");
        auto env = std::make_unique<sai_env>();
        env->params = parse_params(params_json);
        *out = env.release();
    });
}

void sai_env_free(sai_env* env) { delete env; }

sai_status sai_env_reset(sai_env* env, uint64_t seed, uint8_t* obs) {
    return guarded([&] {
        require(env != nullptr, "null environment");
        std::uint64_t env_seed = seed;
        if (env->tree) {
            const EpisodeSeeds s = episode_seeds(*env->tree, seed, 0);
            env->params = s.params;
            env_seed = s.env_seed;
        }
        env->env = std::make_unique<Env>(params_from_set(env->params), env_seed);
        env->trajectory = Trajectory{};
        env->trajectory.seed = env_seed;
        env->trajectory.params = env->params;
        env->trajectory.initial_obs_hash = observation_hash(env->env->state());
        copy_view(env->env->view(), obs);
    });
}

sai_status sai_env_step(sai_env* env, int primitive, int template_index, int noun_index, uint8_t* obs,
                        sai_step_info* info) {
    return guarded([&] {
        require(env != nullptr, "null environment");
        require(primitive >= 0 && primitive < kPrimitiveCount, "primitive out of range");
        AgentAction a;
        a.primitive = static_cast<Primitive>(primitive);
        if (template_index != -1 || noun_index != -1) {
            require(template_index >= 0 && template_index < kTemplateCount, "template index out of range");
            require(noun_index >= 0 && noun_index < kNounCount, "noun index out of range");
            a.utterance = Utterance{template_index, noun_index};
        }
        Env& e = live_env(env);
        const StepResult r = e.step(a);
        StepRecord rec;
        rec.t = e.state().step;
        rec.action = a;
        rec.reward = r.reward;
        rec.done = r.done;
        rec.obs_hash = observation_hash(e.state());
        rec.info = r.info;
        env->trajectory.steps.push_back(rec);
        copy_view(e.view(), obs);
        if (info != nullptr) {
            info->reward = r.reward;
            info->done = r.done ? 1 : 0;
            info->success = r.info.success ? 1 : 0;
            info->blocked = r.info.blocked ? 1 : 0;
            info->intro_satisfied = r.info.intro_satisfied ? 1 : 0;
            info->peer_seen = r.info.seen ? 1 : 0;
            info->step = e.state().step;
        }
    });
}

sai_status sai_env_observation(const sai_env* env, uint8_t* obs) {
    return guarded([&] {
        require(env != nullptr && obs != nullptr, "null argument");
        copy_view(live_env(env).view(), obs);
    });
}

sai_status sai_env_render_text(const sai_env* env, char** text_out) {
    return guarded([&] {
        require(env != nullptr && text_out != nullptr, "null argument");
        *text_out = dup_string(render_obs(live_env(env).state()));
    });
}

sai_status sai_env_render_ascii(const sai_env* env, char** text_out) {
    return guarded([&] {
        require(env != nullptr && text_out != nullptr, "null argument");
        *text_out = dup_string(render_ascii(live_env(env).state()));
    });
}

sai_status sai_env_dialogue(const sai_env* env, char** text_out) {
    return guarded([&] {
        require(env != nullptr && text_out != nullptr, "null argument");
        std::string out;
        for (const auto& e : live_env(env).state().dialogue.entries())
            out += std::string(e.speaker == Speaker::Agent ? "Agent: " : "Caretaker: ") + e.text + "\n";
        *text_out = dup_string(out);
    });
}

sai_status sai_env_params(const sai_env* env, char** json_out) {
    return guarded([&] {
        require(env != nullptr && json_out != nullptr, "null argument");
        live_env(env);
        *json_out = dup_string(params_json(env->params));
    });
}

sai_status sai_env_trajectory(const sai_env* env, char** jsonl_out) {
    return guarded([&] {
        require(env != nullptr && jsonl_out != nullptr, "null argument");
        live_env(env);
        *jsonl_out = dup_string(to_jsonl(env->trajectory));
    });
}

void sai_run_options_init(sai_run_options* opts) {
    if (opts == nullptr) return;
    const BonusParams defaults;
    *opts = sai_run_options{0, 1, "oracle", "none", defaults.T, defaults.C, defaults.M, 1, nullptr};
}

sai_status sai_run(const sai_tree* tree, const sai_run_options* opts, char** summary_json_out) {
    return guarded([&] {
        require(tree != nullptr && opts != nullptr && summary_json_out != nullptr, "null argument");
        require(opts->policy != nullptr, "null policy name");
        RunOptions o;
        o.seed = opts->seed;
        o.episodes = opts->episodes;
        o.policy = opts->policy;
        o.bonus = bonus_kind_from_name(opts->bonus != nullptr ? opts->bonus : "none");
        o.bonus_params = BonusParams{opts->bonus_T, opts->bonus_C, opts->bonus_M};
        o.jobs = opts->jobs;
        if (o.bonus != BonusKind::None) validate(o.bonus_params);
        const auto results = run_tree(tree->tree, o);
        const std::string summary = summary_json(summarize(results), o);
        if (opts->out_dir != nullptr) {
            namespace fs = std::filesystem;
            const fs::path dir(opts->out_dir);
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
            for (std::size_t i = 0; i < results.size(); ++i) {
                char name[32];
                std::snprintf(name, sizeof name, "episode_%05zu.jsonl", i);
                save_trajectory(results[i].trajectory, (dir / name).string());
            }
            std::ofstream out(dir / "summary.json");
            out << summary;
            if (!out) throw IoError("cannot write " + (dir / "summary.json").string());
        }
        *summary_json_out = dup_string(summary);
    });
}

sai_status sai_replay(const char* jsonl, sai_replay_result* result) {
    return guarded([&] {
        require(jsonl != nullptr && result != nullptr, "null argument");
        const ReplayReport r = replay(parse_trajectory(jsonl));
        result->ok = r.ok ? 1 : 0;
        result->steps_checked = r.steps_checked;
        std::snprintf(result->mismatch, sizeof result->mismatch, "%s", r.mismatch.c_str());
    });
}

sai_status sai_export(const char* jsonl, const char* format, char** text_out) {
    return guarded([&] {
        require(jsonl != nullptr && format != nullptr && text_out != nullptr, "null argument");
        const Trajectory t = parse_trajectory(jsonl);
        const std::string f(format);
        if (f == "transcript") *text_out = dup_string(transcript_of(t));
        else if (f == "jsonl") *text_out = dup_string(to_jsonl(t));
        else throw ConfigError("unknown export format '" + f + "' (expected transcript, jsonl)");
    });
}

void sai_llm_options_init(sai_llm_options* opts) {
    if (opts == nullptr) return;
    const PromptConfig defaults;
    *opts = sai_llm_options{"asocialbox", "mock:oracle", nullptr, defaults.history_steps, defaults.budget, 15};
}

sai_status sai_llm_eval(const sai_llm_options* opts, char** report_json_out) {
    return guarded([&] {
        require(opts != nullptr && report_json_out != nullptr, "null argument");
        require(opts->testset != nullptr && opts->provider != nullptr, "null test set or provider");
        const EvalSetup setup = load_eval_setup(opts->testset, opts->data_dir != nullptr ? opts->data_dir : sai_data_dir());
        auto provider = make_provider(opts->provider);
        PromptConfig cfg;
        cfg.in_context = setup.in_context;
        cfg.history_steps = opts->history_steps;
        cfg.budget = opts->budget;
        if (cfg.budget < 1) throw ConfigError("budget must be positive");
        const EvalReport report = run_eval(*provider, setup.testset.cases, cfg, opts->step_limit);
        *report_json_out = dup_string(report_json(report));
    });
}

int sai_match_action(const char* generated) {
    return generated == nullptr ? SAI_NO_OP : static_cast<int>(match_action(generated));
}

}  // extern "C"
