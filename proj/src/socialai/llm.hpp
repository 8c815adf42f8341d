#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "socialai/env.hpp"
#include "socialai/params.hpp"

namespace socialai {

struct PromptConfig {
    std::string in_context;
    int history_steps = 3;  // observations shown, the current one included
    std::string query = "Act :";
    int budget = 3;         // generation units requested from the provider
};

// in_context, "New episode.", the last history_steps observations with the
// actions between them, then the query on its own line. When `max_chars` is
// positive the oldest history is dropped first, then the oldest in-context
// lines, until the prompt fits.
std::string build_prompt(const PromptConfig& cfg, const std::vector<std::string>& observations,
                         const std::vector<std::string>& actions, std::size_t max_chars = 0);

// Case-insensitive substring search in the order turn left, turn right,
// move forward, toggle; no match gives NoOp.
Primitive match_action(std::string_view generated);

class CompletionProvider {
public:
    virtual ~CompletionProvider() = default;
    // Throws ProviderError on failure.
    virtual std::string complete(const std::string& prompt, int budget) = 0;
    // Largest prompt in characters, or 0 for no limit.
    virtual std::size_t context_limit() const { return 0; }
    // Hooks for providers that peek at the environment (test doubles only).
    virtual void begin_episode(const EnvState&) {}
    virtual void observe(const EnvState&) {}
};

// POST {base}/completions with {"model","prompt","max_tokens","temperature"};
// configured from SOCIALAI_LLM_BASE_URL, SOCIALAI_LLM_API_KEY,
// SOCIALAI_LLM_MODEL, SOCIALAI_LLM_BUDGET and SOCIALAI_LLM_CONTEXT_CHARS.
class HttpProvider : public CompletionProvider {
public:
    HttpProvider();  // throws ConfigError when the base URL is unset
    std::string complete(const std::string& prompt, int budget) override;
    std::size_t context_limit() const override { return context_chars_; }
    int budget() const { return budget_; }

private:
    std::string base_url_;
    std::string api_key_;
    std::string model_;
    int budget_ = 3;
    std::size_t context_chars_ = 0;
};

// "http", "mock:oracle", "mock:garbage" or "mock:random:SEED".
std::unique_ptr<CompletionProvider> make_provider(std::string_view spec);

struct TestCase {
    EnvParams params;
    std::uint64_t seed = 0;
};

struct TestSet {
    std::string name;
    std::vector<TestCase> cases;
};

// {"name": ..., "params": {...}, "seeds": [...]}.
TestSet load_testset(const std::string& path);
// Drops lines starting with '#'.
std::string load_in_context(const std::string& path);

struct EvalEpisode {
    TestCase test;
    std::string transcript;
    std::vector<std::string> generations;
    std::vector<std::string> actions;  // matched action names
    bool success = false;
    bool errored = false;
    std::string error;
};

struct EvalReport {
    std::vector<EvalEpisode> episodes;
    int successes = 0;
    int errored = 0;
    int evaluated = 0;  // episodes without provider errors
    double success_rate = 0.0;
    int actions = 0;
    int no_ops = 0;
};

EvalReport run_eval(CompletionProvider& provider, const std::vector<TestCase>& tests, const PromptConfig& cfg,
                    int step_limit = 15);

std::string report_json(const EvalReport& r);

// Named test set and in-context block: asocialbox, colorboxes, colorboxes-gen.
struct EvalSetup {
    TestSet testset;
    std::string in_context;
};
EvalSetup load_eval_setup(std::string_view name, const std::string& data_dir);

}  // namespace socialai
