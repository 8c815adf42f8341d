#pragma once

#include <string>

#include "socialai/env.hpp"

namespace socialai::test {

// Walled room with no peer and no objects; the agent at (1,1) facing East.
inline EnvState bare_state(int width, int height) {
    EnvState s;
    s.params.env_type = EnvType::InformationSeeking;
    s.params.problem = Problem::Boxes;
    s.params.n_objects = 1;
    s.params.peer = false;
    s.params.version = Version::Asocial;
    s.world.grid = Grid(width, height);
    s.agent = AgentPose{{1, 1}, Direction::East};
    s.intro_satisfied = true;
    s.initial_world = s.world;
    return s;
}

inline WorldObject box_with_apple(Color c) {
    WorldObject b = make_object(ObjectKind::LockableBox, c, obj_state::kClosed);
    b.holds_apple = true;
    return b;
}

inline std::string data_dir() { return SOCIALAI_DATA_DIR; }

}  // namespace socialai::test
