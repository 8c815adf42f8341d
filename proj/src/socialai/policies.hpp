#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "socialai/env.hpp"

namespace socialai {

class Policy {
public:
    virtual ~Policy() = default;
    virtual void reset(const EnvState& s, std::uint64_t seed) = 0;
    virtual AgentAction act(const EnvState& s) = 0;
    virtual std::string_view name() const = 0;
};

// Full-state scripted solver: introduction, the intended solution, eating.
class OraclePolicy : public Policy {
public:
    void reset(const EnvState& s, std::uint64_t seed) override;
    AgentAction act(const EnvState& s) override;
    std::string_view name() const override { return "oracle"; }

private:
    std::optional<AgentPose> eat_pose_;  // adversarial: where to eat from
};

// Performs the introduction, then operates a uniformly chosen candidate.
// Only defined for two-object information seeking.
class GuesserPolicy : public Policy {
public:
    void reset(const EnvState& s, std::uint64_t seed) override;
    AgentAction act(const EnvState& s) override;
    std::string_view name() const override { return "guesser"; }
    int guess() const { return guess_; }

private:
    int guess_ = 0;
};

// Grid mode: uniform over all primitives, speaking with probability 0.25.
// Text mode: uniform over the four matchable actions.
class RandomPolicy : public Policy {
public:
    explicit RandomPolicy(bool text_mode = false) : text_mode_(text_mode) {}
    void reset(const EnvState& s, std::uint64_t seed) override;
    AgentAction act(const EnvState& s) override;
    std::string_view name() const override { return text_mode_ ? "random-text" : "random"; }

private:
    bool text_mode_;
    Rng rng_;
};

inline constexpr double kRandomSpeechProbability = 0.25;

// "oracle", "guesser", "random" or "random-text"; throws ConfigError otherwise.
std::unique_ptr<Policy> make_policy(std::string_view name);

// Introduction step for scripted agents, or nullopt once it is satisfied.
std::optional<AgentAction> intro_action(const EnvState& s);

}  // namespace socialai
