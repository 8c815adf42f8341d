#include "socialai/llm.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "socialai/errors.hpp"
#include "socialai/policies.hpp"
#include "socialai/textworld.hpp"

#include <httplib.h>

namespace socialai {

namespace {

constexpr std::array<Primitive, 4> kMatchOrder = {Primitive::TurnLeft, Primitive::TurnRight, Primitive::Forward,
                                                  Primitive::Toggle};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v != nullptr && *v != '\0' ? std::string(v) : fallback;
}

class GarbageProvider : public CompletionProvider {
public:
    std::string complete(const std::string&, int) override { return "xyz"; }
};

class RandomProvider : public CompletionProvider {
public:
    explicit RandomProvider(std::uint64_t seed) : rng_(seed) {}
    std::string complete(const std::string&, int) override {
        return " " + std::string(action_text(kMatchOrder[rng_.index(kMatchOrder.size())]));
    }

private:
    Rng rng_;
};

// Answers with the oracle's next action for the attached environment.
class OracleProvider : public CompletionProvider {
public:
    std::string complete(const std::string&, int) override {
        if (state_ == nullptr) throw ProviderError("oracle provider has no environment attached");
        return " " + std::string(action_text(oracle_.act(*state_).primitive));
    }
    void begin_episode(const EnvState& s) override {
        state_ = &s;
        oracle_.reset(s, s.seed);
    }
    void observe(const EnvState& s) override { state_ = &s; }

private:
    OraclePolicy oracle_;
    const EnvState* state_ = nullptr;
};

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string assemble(const std::string& in_context, const std::vector<std::string>& obs,
                     const std::vector<std::string>& acts, std::size_t first, const std::string& query) {
    std::string p = in_context;
    if (!p.empty() && p.back() != '\n') p += '\n';
    p += "New episode.\n";
    for (std::size_t i = first; i < obs.size(); ++i) {
        p += obs[i] + "\n";
        if (i < acts.size()) p += "Act : " + acts[i] + "\n";
    }
    return p + query;
}

}  // namespace

std::string build_prompt(const PromptConfig& cfg, const std::vector<std::string>& observations,
                         const std::vector<std::string>& actions, std::size_t max_chars) {
    if (cfg.history_steps < 1) throw ConfigError("history_steps must be at least 1");
    if (observations.empty() || actions.size() + 1 != observations.size())
        throw std::invalid_argument("need one more observation than actions");
    const std::size_t n = observations.size();
    const std::size_t window = static_cast<std::size_t>(cfg.history_steps);
    std::size_t first = n > window ? n - window : 0;
    std::string prompt = assemble(cfg.in_context, observations, actions, first, cfg.query);
    if (max_chars == 0) return prompt;
    while (prompt.size() > max_chars && first + 1 < n) {
        ++first;
        prompt = assemble(cfg.in_context, observations, actions, first, cfg.query);
    }
    auto lines = split_lines(cfg.in_context);
    std::size_t drop = 0;
    while (prompt.size() > max_chars && drop < lines.size()) {
        ++drop;
        std::string ctx;
        for (std::size_t i = drop; i < lines.size(); ++i) ctx += lines[i] + "\n";
        prompt = assemble(ctx, observations, actions, first, cfg.query);
    }
    return prompt;
}

Primitive match_action(std::string_view generated) {
    const std::string g = lower(generated);
    for (Primitive p : kMatchOrder)
        if (g.find(action_text(p)) != std::string::npos) return p;
    return Primitive::NoOp;
}

HttpProvider::HttpProvider()
    : base_url_(env_or("SOCIALAI_LLM_BASE_URL", "")),
      api_key_(env_or("SOCIALAI_LLM_API_KEY", "")),
      model_(env_or("SOCIALAI_LLM_MODEL", "")) {
    if (base_url_.empty()) throw ConfigError("SOCIALAI_LLM_BASE_URL is not set");
    try {
        budget_ = std::stoi(env_or("SOCIALAI_LLM_BUDGET", "3"));
        context_chars_ = std::stoul(env_or("SOCIALAI_LLM_CONTEXT_CHARS", "0"));
    } catch (const std::logic_error&) {
        throw ConfigError("SOCIALAI_LLM_BUDGET and SOCIALAI_LLM_CONTEXT_CHARS must be integers");
    }
    if (budget_ < 1) throw ConfigError("SOCIALAI_LLM_BUDGET must be positive");
    while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

std::string HttpProvider::complete(const std::string& prompt, int budget) {
    // Split "scheme://host[:port]/path" into the client address and path prefix.
    const auto scheme_end = base_url_.find("://");
    const auto path_start = base_url_.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    const std::string origin = path_start == std::string::npos ? base_url_ : base_url_.substr(0, path_start);
    const std::string prefix = path_start == std::string::npos ? "" : base_url_.substr(path_start);

    httplib::Client client(origin);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    const nlohmann::json body{{"model", model_},
                              {"prompt", prompt},
                              {"max_tokens", std::min(budget, budget_)},
                              {"temperature", 0}};
    auto res = client.Post(prefix + "/completions", headers, body.dump(), "application/json");
    if (!res) throw ProviderError("request failed: " + httplib::to_string(res.error()));
    if (res->status != 200) throw ProviderError("provider returned HTTP " + std::to_string(res->status));
    try {
        const auto j = nlohmann::json::parse(res->body);
        const auto& choice = j.at("choices").at(0);
        if (choice.contains("text")) return choice.at("text").get<std::string>();
        return choice.at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ProviderError(std::string("malformed provider response: ") + e.what());
    }
}

std::unique_ptr<CompletionProvider> make_provider(std::string_view spec) {
    if (spec == "http") return std::make_unique<HttpProvider>();
    if (spec == "mock:oracle") return std::make_unique<OracleProvider>();
    if (spec == "mock:garbage") return std::make_unique<GarbageProvider>();
    constexpr std::string_view kRandom = "mock:random:";
    if (spec.substr(0, kRandom.size()) == kRandom) {
        const std::string seed(spec.substr(kRandom.size()));
        try {
            std::size_t used = 0;
            const auto v = std::stoull(seed, &used);
            if (used == seed.size()) return std::make_unique<RandomProvider>(v);
        } catch (const std::logic_error&) {
        }
        throw ConfigError("bad random provider seed '" + seed + "'");
    }
    throw ConfigError("unknown provider '" + std::string(spec) +
                      "' (expected http, mock:oracle, mock:garbage, mock:random:SEED)");
}

TestSet load_testset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    TestSet t;
    try {
        const auto j = nlohmann::ordered_json::parse(in);
        t.name = j.at("name").get<std::string>();
        ParamSet ps;
        for (const auto& [k, v] : j.at("params").items()) ps.emplace_back(k, v.get<std::string>());
        const EnvParams params = params_from_set(ps);
        for (const auto& s : j.at("seeds")) t.cases.push_back({params, s.get<std::uint64_t>()});
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return t;
}

std::string load_in_context(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::string out;
    for (std::string line; std::getline(in, line);)
        if (line.empty() || line[0] != '#') out += line + "\n";
    return out;
}

EvalReport run_eval(CompletionProvider& provider, const std::vector<TestCase>& tests, const PromptConfig& cfg,
                    int step_limit) {
    if (step_limit < 1) throw ConfigError("step limit must be at least 1");
    EvalReport report;
    for (const auto& test : tests) {
        EvalEpisode ep;
        ep.test = test;
        Env env(test.params, test.seed);
        TranscriptWriter transcript;
        transcript.begin(env.state());
        std::vector<std::string> obs{render_obs(env.state())};
        std::vector<std::string> acts;
        provider.begin_episode(env.state());
        try {
            while (!env.done() && env.state().step < step_limit) {
                provider.observe(env.state());
                const std::string prompt = build_prompt(cfg, obs, acts, provider.context_limit());
                const std::string gen = provider.complete(prompt, cfg.budget);
                const Primitive a = match_action(gen);
                env.step(AgentAction{a, std::nullopt});
                ep.generations.push_back(gen);
                ep.actions.emplace_back(action_text(a));
                acts.emplace_back(action_text(a));
                obs.push_back(render_obs(env.state()));
                transcript.step(a, env.state());
                ++report.actions;
                report.no_ops += a == Primitive::NoOp ? 1 : 0;
            }
        } catch (const ProviderError& e) {
            ep.errored = true;
            ep.error = e.what();
        }
        ep.success = !ep.errored && env.state().success;
        ep.transcript = transcript.str();
        report.successes += ep.success ? 1 : 0;
        report.errored += ep.errored ? 1 : 0;
        report.episodes.push_back(std::move(ep));
    }
    report.evaluated = static_cast<int>(report.episodes.size()) - report.errored;
    report.success_rate = report.evaluated > 0 ? static_cast<double>(report.successes) / report.evaluated : 0.0;
    return report;
}

std::string report_json(const EvalReport& r) {
    nlohmann::ordered_json eps = nlohmann::ordered_json::array();
    for (const auto& e : r.episodes) {
        eps.push_back({{"env", describe(e.test.params)},
                       {"seed", e.test.seed},
                       {"success", e.success},
                       {"errored", e.errored},
                       {"error", e.error},
                       {"actions", e.actions},
                       {"generations", e.generations},
                       {"transcript", e.transcript}});
    }
    nlohmann::ordered_json j{{"episodes", static_cast<int>(r.episodes.size())},
                             {"evaluated", r.evaluated},
                             {"errored", r.errored},
                             {"successes", r.successes},
                             {"success_rate", r.success_rate},
                             {"actions", r.actions},
                             {"no_ops", r.no_ops},
                             {"records", eps}};
    return j.dump(2) + "\n";
}

EvalSetup load_eval_setup(std::string_view name, const std::string& data_dir) {
    std::string set;
    std::string ctx;
    if (name == "asocialbox") {
        set = "asocialbox";
        ctx = "asocialbox";
    } else if (name == "colorboxes") {
        set = "colorboxes";
        ctx = "colorboxes";
    } else if (name == "colorboxes-gen") {
        set = "colorboxes";
        ctx = "colorboxes_gen";
    } else {
        throw ConfigError("unknown test set '" + std::string(name) + "' (expected asocialbox, colorboxes, colorboxes-gen)");
    }
    EvalSetup s;
    s.testset = load_testset(data_dir + "/testsets/" + set + ".json");
    s.in_context = load_in_context(data_dir + "/in_context/" + ctx + ".txt");
    return s;
}

}  // namespace socialai
