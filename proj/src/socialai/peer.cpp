#include "socialai/peer.hpp"

#include <algorithm>

#include "socialai/planner.hpp"

namespace socialai {

FeedbackBand feedback_band(int distance) {
    if (distance <= 1) return FeedbackBand::Hot;
    if (distance <= 2) return FeedbackBand::Warm;
    if (distance <= 4) return FeedbackBand::Medium;
    return FeedbackBand::Cold;
}

std::string_view feedback_word(FeedbackBand b) {
    switch (b) {
        case FeedbackBand::Hot: return "Hot";
        case FeedbackBand::Warm: return "Warm";
        case FeedbackBand::Medium: return "Medium";
        case FeedbackBand::Cold: return "Cold";
    }
    return "?";
}

namespace {

const ChoiceGroup& main_group(const EnvState& s) { return s.world.groups.at(static_cast<std::size_t>(s.main_group)); }

Position correct_object(const EnvState& s) {
    const auto& g = main_group(s);
    return g.candidates.at(static_cast<std::size_t>(g.correct.value_or(0)));
}

// Color as laid out, so an opened box keeps its name.
std::string color_of(const EnvState& s, Position p) {
    const WorldObject* o = s.initial_world.grid.object_at(p);
    return std::string(color_name(o != nullptr ? o->color : Color::Grey));
}

PeerPhase cue_phase(const EnvParams& p) {
    if (p.help) return PeerPhase::Helping;
    switch (p.cue) {
        case Cue::Pointing: return PeerPhase::Pointing;
        case Cue::LanguageColor: return PeerPhase::LanguageColor;
        case Cue::LanguageFeedback: return PeerPhase::LanguageFeedback;
        case Cue::Imitation: return PeerPhase::Demonstrating;
    }
    return PeerPhase::Done;
}

void enter_phase(PeerState& p, PeerPhase phase) {
    p.phase = phase;
    p.timer = 0;
    p.stage = 0;
}

void say_misleading(EnvState& s) {
    const auto& g = main_group(s);
    const Position pick = g.candidates[s.rng.index(g.candidates.size())];
    peer_say(s, color_of(s, pick), true);
}

// Cells near things the agent will need to reach.
bool in_the_way(const EnvState& s, Position c) {
    if (is_reserved(s, c)) return true;
    const Grid& g = s.world.grid;
    const WorldObject* here = g.object_at(c);
    if (here != nullptr) return true;
    if (s.initial_world.grid.object_at(c) != nullptr) return true;
    for (Direction d : {Direction::North, Direction::East, Direction::South, Direction::West}) {
        const WorldObject* o = g.object_at(step_toward(c, d));
        if (o == nullptr) continue;
        switch (o->kind) {
            case ObjectKind::Wall:
            case ObjectKind::Fence:
            case ObjectKind::Occluder: break;
            default: return true;
        }
    }
    return false;
}

bool bad_spot(const EnvState& s, Position c) { return in_the_way(s, c) || obstructs_agent(s, c); }

Primitive step_aside(const EnvState& s, bool& finished) {
    if (!bad_spot(s, s.peer->pose.pos)) {
        finished = true;
        return Primitive::NoOp;
    }
    const PathStep r = plan_to(s.world.grid, s.peer->pose, blocked_cells(s, Actor::Peer),
                               [&](const AgentPose& q) { return !bad_spot(s, q.pos); });
    if (!r.reachable) {
        finished = true;
        return Primitive::NoOp;
    }
    return r.first;
}

Primitive pointing_step(EnvState& s) {
    PeerState& p = *s.peer;
    if (p.point_dir && !obstructs_agent(s, p.pose.pos)) return turn_toward(p.pose, s.agent.pos);
    p.point_dir.reset();
    auto cells = pointing_cells(s, s.main_group);
    std::erase_if(cells, [&](const auto& cd) { return obstructs_agent(s, cd.first); });
    for (const auto& [c, d] : cells) {
        if (c == p.pose.pos) {
            p.point_dir = d;
            return turn_toward(p.pose, s.agent.pos);
        }
    }
    const PathStep r = plan_to(s.world.grid, p.pose, blocked_cells(s, Actor::Peer), [&](const AgentPose& q) {
        return std::any_of(cells.begin(), cells.end(), [&](const auto& cd) { return cd.first == q.pos; });
    });
    if (!r.reachable) {
        p.idle = true;
        return Primitive::NoOp;
    }
    return r.first;
}

bool cell_clear_in_initial(const EnvState& s, Position c) {
    const Grid& g0 = s.initial_world.grid;
    return g0.object_at(c) == nullptr && !g0.marble_at(c);
}

Primitive demonstrate_step(EnvState& s) {
    PeerState& p = *s.peer;
    const auto& grp = main_group(s);
    if (p.stage < 2 && (s.agent_touched || grp.blocked)) {
        p.stage = 3;
    }
    switch (p.stage) {
        case 0: {
            if (s.peer_meals > 0) {
                p.stage = 1;
                return demonstrate_step(s);
            }
            Plan plan;
            plan.target_group = s.main_group;
            return script_step(s, Actor::Peer, plan);
        }
        case 1: {
            if (!cell_clear_in_initial(s, p.pose.pos))
                return move_to_cell(s, Actor::Peer, [&](Position c) { return cell_clear_in_initial(s, c); });
            p.stage = 2;
            [[fallthrough]];
        }
        case 2: {
            if (s.agent_touched || grp.blocked) {
                p.stage = 3;
                return demonstrate_step(s);
            }
            if (!cell_clear_in_initial(s, s.agent.pos)) return turn_toward(p.pose, s.agent.pos);
            s.world = s.initial_world;
            p.stage = 3;
            return Primitive::NoOp;
        }
        default: {
            bool finished = false;
            const Primitive a = step_aside(s, finished);
            if (finished) enter_phase(p, PeerPhase::Done);
            return a;
        }
    }
}

Primitive help_step(EnvState& s) {
    PeerState& p = *s.peer;
    if (p.stage == 0) {
        if (apple_accessible_to_agent(s) || main_group(s).blocked) {
            p.stage = 1;
        } else {
            Plan plan;
            plan.target_group = s.main_group;
            plan.may_eat = false;
            return script_step(s, Actor::Peer, plan);
        }
    }
    bool finished = false;
    const Primitive a = step_aside(s, finished);
    if (finished) enter_phase(p, PeerPhase::Done);
    return a;
}

void utter_for_phase(EnvState& s) {
    PeerState& p = *s.peer;
    switch (p.phase) {
        case PeerPhase::WaitIntro:
            if (s.params.misleading_cues && p.timer % 3 == 0) say_misleading(s);
            break;
        case PeerPhase::LanguageColor:
            if (!p.color_heard) {
                peer_say(s, color_of(s, correct_object(s)));
                p.color_heard = s.peer_log.back().heard;
            }
            break;
        case PeerPhase::LanguageFeedback:
            peer_say(s, std::string(feedback_word(feedback_band(manhattan(s.agent.pos, correct_object(s))))));
            break;
        default: break;
    }
}

}  // namespace

void peer_reset(EnvState& s) {
    if (!s.peer) return;
    PeerState& p = *s.peer;
    switch (s.params.env_type) {
        case EnvType::InformationSeeking:
            enter_phase(p, s.intro_satisfied ? cue_phase(s.params) : PeerPhase::WaitIntro);
            break;
        case EnvType::Collaboration: enter_phase(p, PeerPhase::RoleScript); break;
        case EnvType::AdversarialPeer: enter_phase(p, PeerPhase::Patrol); break;
    }
    utter_for_phase(s);
}

void peer_tick(EnvState& s) {
    PeerState& p = *s.peer;
    p.idle = false;
    if (p.phase == PeerPhase::WaitIntro && s.intro_satisfied) enter_phase(p, cue_phase(s.params));

    Primitive a = Primitive::NoOp;
    switch (p.phase) {
        case PeerPhase::WaitIntro:
            ++p.timer;
            a = turn_toward(p.pose, s.agent.pos);
            break;
        case PeerPhase::Pointing: a = pointing_step(s); break;
        case PeerPhase::LanguageColor:
        case PeerPhase::LanguageFeedback:
        case PeerPhase::Done:
            if (is_reserved(s, p.pose.pos) || obstructs_agent(s, p.pose.pos)) {
                bool finished = false;
                a = step_aside(s, finished);
            } else {
                a = turn_toward(p.pose, s.agent.pos);
            }
            break;
        case PeerPhase::Demonstrating: a = demonstrate_step(s); break;
        case PeerPhase::Helping: a = help_step(s); break;
        case PeerPhase::RoleScript: a = script_step(s, Actor::Peer, p.plan); break;
        case PeerPhase::Patrol:
            if (s.rng.bernoulli(0.2)) a = Primitive::TurnRight;
            break;
        case PeerPhase::None: break;
    }
    apply_primitive(s, Actor::Peer, a);
    p.last_action = p.point_dir && a == Primitive::NoOp ? kPeerPointAction : static_cast<std::uint8_t>(a);
    utter_for_phase(s);
}

}  // namespace socialai
