#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "socialai/bonuses.hpp"
#include "socialai/param_tree.hpp"
#include "socialai/policies.hpp"
#include "socialai/trajectory.hpp"

namespace socialai {

struct EpisodeResult {
    Trajectory trajectory;
    bool success = false;
    double total_reward = 0.0;
    int steps = 0;
    double bonus_total = 0.0;
};

// Runs one episode to completion. The policy is reset with `policy_seed`.
EpisodeResult run_episode(const ParamSet& params, std::uint64_t env_seed, Policy& policy, std::uint64_t policy_seed,
                          BonusKind bonus = BonusKind::None, const BonusParams& bonus_params = {});

struct EpisodeSeeds {
    ParamSet params;
    std::uint64_t env_seed = 0;
    std::uint64_t policy_seed = 0;
};

// Episode i draws its parameters from stream 2i of `seed` and its
// environment and policy seeds from stream 2i+1.
EpisodeSeeds episode_seeds(const ParamTree& tree, std::uint64_t seed, int index);

struct RunOptions {
    std::uint64_t seed = 0;
    int episodes = 1;
    std::string policy = "oracle";
    BonusKind bonus = BonusKind::None;
    BonusParams bonus_params;
    int jobs = 1;
};

struct RunSummary {
    int episodes = 0;
    int successes = 0;
    double success_rate = 0.0;
    double mean_reward = 0.0;
    double mean_steps = 0.0;
    double bonus_total = 0.0;
};

// Results are in episode order regardless of `jobs`.
std::vector<EpisodeResult> run_tree(const ParamTree& tree, const RunOptions& opt);
RunSummary summarize(const std::vector<EpisodeResult>& results);
std::string summary_json(const RunSummary& s, const RunOptions& opt);

}  // namespace socialai
