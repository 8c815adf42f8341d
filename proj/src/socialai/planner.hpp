#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "socialai/env.hpp"

namespace socialai {

struct PathStep {
    bool reachable = false;
    Primitive first = Primitive::NoOp;  // NoOp when the start already satisfies the goal
    int cost = 0;
    AgentPose goal;
};

using PoseGoal = std::function<bool(const AgentPose&)>;

// Breadth-first search over poses using turn/forward moves; cells in
// `blocked` are never entered. Successors are expanded forward, left, right.
PathStep plan_to(const Grid& grid, const AgentPose& start, const std::vector<Position>& blocked, const PoseGoal& goal);

// Cells the actor must avoid: the other actor and the lane of a rolling marble.
std::vector<Position> blocked_cells(const EnvState& s, Actor who);

const AgentPose& actor_pose(const EnvState& s, Actor who);

// One reactive step towards completing `plan`.
Primitive script_step(const EnvState& s, Actor who, const Plan& plan);

// Waits in place, or at `wait_pose`, stepping off reserved cells first.
Primitive wait_step(const EnvState& s, Actor who, const std::optional<AgentPose>& wait_pose);

// Moves to the nearest cell satisfying `ok`; NoOp once there or if none is reachable.
Primitive move_to_cell(const EnvState& s, Actor who, const std::function<bool(Position)>& ok);

Primitive turn_toward(const AgentPose& from, Position target);

// A fresh apple the agent could walk up to, ignoring the peer.
bool apple_accessible_to_agent(const EnvState& s);

// Cells from which the correct candidate of `group` can be pointed at
// without any other candidate on the ray; paired with the pointing direction.
std::vector<std::pair<Position, Direction>> pointing_cells(const EnvState& s, int group);

bool is_reserved(const EnvState& s, Position p);

// Whether an actor standing at `c` would cut `other` off from floor cells or
// objects it could otherwise reach.
bool obstructs(const EnvState& s, Actor other, Position c);
bool obstructs_agent(const EnvState& s, Position c);

}  // namespace socialai
