#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "socialai/bonuses.hpp"
#include "socialai/env.hpp"
#include "socialai/params.hpp"

namespace socialai {

inline constexpr int kTrajectoryVersion = 1;

struct StepRecord {
    int t = 0;
    AgentAction action;
    double reward = 0.0;
    bool done = false;
    std::uint64_t obs_hash = 0;
    StepInfo info;
    std::optional<double> bonus;
};

struct Trajectory {
    std::uint64_t seed = 0;
    ParamSet params;
    std::uint64_t initial_obs_hash = 0;
    BonusKind bonus_kind = BonusKind::None;  // steps carry a bonus unless None
    BonusParams bonus_params;
    std::vector<StepRecord> steps;
};

// Line-delimited JSON: one header line, then one line per step.
std::string to_jsonl(const Trajectory& t);
// Throws IoError on malformed input.
Trajectory from_jsonl(std::istream& in);
void save_trajectory(const Trajectory& t, const std::string& path);
Trajectory load_trajectory(const std::string& path);

std::string hash_hex(std::uint64_t h);

struct ReplayReport {
    bool ok = true;
    int steps_checked = 0;
    std::string mismatch;  // first difference, empty when ok
};

// Re-executes the recorded actions and compares every recorded field.
ReplayReport replay(const Trajectory& t);

// Rebuilds the environment and renders the episode as a text transcript.
std::string transcript_of(const Trajectory& t);

}  // namespace socialai
