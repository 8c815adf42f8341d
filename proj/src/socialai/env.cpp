#include "socialai/env.hpp"

#include <algorithm>

#include "socialai/errors.hpp"
#include "socialai/peer.hpp"

namespace socialai {

std::string_view peer_phase_name(PeerPhase p) {
    switch (p) {
        case PeerPhase::None: return "none";
        case PeerPhase::WaitIntro: return "wait_intro";
        case PeerPhase::Pointing: return "pointing";
        case PeerPhase::LanguageColor: return "language_color";
        case PeerPhase::LanguageFeedback: return "language_feedback";
        case PeerPhase::Demonstrating: return "demonstrating";
        case PeerPhase::Helping: return "helping";
        case PeerPhase::RoleScript: return "role_script";
        case PeerPhase::Patrol: return "patrol";
        case PeerPhase::Done: return "done";
    }
    return "?";
}

double success_reward(int step) { return 1.0 - 0.9 * (static_cast<double>(step) / kMaxSteps); }

bool eye_contact(const EnvState& s) {
    if (!s.peer) return false;
    const auto d = axis_direction(s.agent.pos, s.peer->pose.pos);
    if (!d) return false;
    return s.agent.dir == *d && s.peer->pose.dir == opposite(*d) &&
           line_of_sight(s.world.grid, s.agent.pos, s.peer->pose.pos);
}

bool peer_sees_agent(const EnvState& s) { return s.peer && sees(s.world.grid, s.peer->pose, s.agent.pos); }

PeerAppearance peer_appearance(const PeerState& peer, Direction viewer) {
    PeerAppearance a;
    a.color = peer.color;
    a.kind_social = peer.kind_social;
    a.gaze = relative_to_viewer(viewer, peer.pose.dir);
    a.point = peer.point_dir ? relative_to_viewer(viewer, *peer.point_dir) : RelDir::None;
    a.last_action = peer.last_action;
    return a;
}

namespace {

AgentPose& pose_of(EnvState& s, Actor who) { return who == Actor::Agent ? s.agent : s.peer->pose; }

std::vector<Position> other_actors(const EnvState& s, Actor who) {
    std::vector<Position> out;
    if (who == Actor::Peer) out.push_back(s.agent.pos);
    else if (s.peer) out.push_back(s.peer->pose.pos);
    return out;
}

void fire_triggers(World& w, Position source) {
    for (const auto& t : w.triggers) {
        if (t.source != source) continue;
        for (Position p : t.platforms) {
            const WorldObject* o = w.grid.object_at(p);
            if (o != nullptr && o->kind == ObjectKind::Platform) w.grid.set(p, make_apple());
        }
    }
}

struct GroupRef {
    int group = -1;
    int index = -1;
};

GroupRef find_candidate(const World& w, Position p) {
    for (std::size_t g = 0; g < w.groups.size(); ++g) {
        const auto& c = w.groups[g].candidates;
        auto it = std::find(c.begin(), c.end(), p);
        if (it != c.end()) return {static_cast<int>(g), static_cast<int>(it - c.begin())};
    }
    return {};
}

void decide(World& w, int target_group, Color color) {
    auto& tg = w.groups[static_cast<std::size_t>(target_group)];
    for (std::size_t i = 0; i < tg.candidates.size(); ++i) {
        const WorldObject* o = w.grid.object_at(tg.candidates[i]);
        if (o != nullptr && o->color == color) tg.correct = static_cast<int>(i);
    }
}

// Gate for using an object; non-candidates are always usable.
bool use_candidate(EnvState& s, Actor who, Position p) {
    const GroupRef ref = find_candidate(s.world, p);
    if (ref.group < 0) return true;
    auto& g = s.world.groups[static_cast<std::size_t>(ref.group)];
    if (g.blocked) return false;
    if (g.resolved) {
        const bool ok = *g.resolved == ref.index;
        if (ok && who == Actor::Agent) s.agent_touched = true;
        return ok;
    }
    if (g.any_correct) g.correct = ref.index;
    if (!g.correct) return false;
    if (*g.correct != ref.index) {
        g.blocked = true;
        s.blocked = true;
        return false;
    }
    g.resolved = ref.index;
    g.resolved_by = who;
    if (who == Actor::Agent) s.agent_touched = true;
    if (g.decides) {
        const WorldObject* o = s.world.grid.object_at(p);
        if (o != nullptr) decide(s.world, *g.decides, o->color);
    }
    return true;
}

// In demonstration episodes, operating the object the wrong way blocks it.
void misuse(EnvState& s, Position p) {
    if (s.params.env_type != EnvType::InformationSeeking || s.params.cue != Cue::Imitation || !s.peer || s.params.help) return;
    const GroupRef ref = find_candidate(s.world, p);
    if (ref.group < 0) return;
    auto& g = s.world.groups[static_cast<std::size_t>(ref.group)];
    if (g.resolved || g.blocked) return;
    g.blocked = true;
    s.blocked = true;
}

bool toggles_on_use(ObjectKind k) {
    return k == ObjectKind::LockableBox || k == ObjectKind::Switch || k == ObjectKind::Lever || k == ObjectKind::Door;
}

void on_marble_hit(EnvState& s, Position generator) {
    const Actor who = s.marble_pusher.value_or(Actor::Agent);
    if (use_candidate(s, who, generator) && activate_generator(s.world.grid, generator)) fire_triggers(s.world, generator);
}

void handle_marble(EnvState& s, const MarbleOutcome& m) {
    if (m.event == MarbleEvent::GeneratorHit) on_marble_hit(s, m.generator);
}

}  // namespace

void apply_primitive(EnvState& s, Actor who, Primitive a) {
    Grid& grid = s.world.grid;
    AgentPose& pose = pose_of(s, who);
    const auto others = other_actors(s, who);
    switch (a) {
        case Primitive::TurnLeft:
        case Primitive::TurnRight:
        case Primitive::Forward: {
            const MoveOutcome out = step_move(grid, pose, a, others);
            pose = out.pose;
            if (out.pushed) {
                s.marble_pusher = who;
                handle_marble(s, out.marble);
            }
            if (out.bumped) {
                const WorldObject* o = grid.object_at(*out.bumped);
                if (o->kind == ObjectKind::AppleGenerator) {
                    if (use_candidate(s, who, *out.bumped) && activate_generator(grid, *out.bumped))
                        fire_triggers(s.world, *out.bumped);
                } else if (who == Actor::Agent && toggles_on_use(o->kind)) {
                    misuse(s, *out.bumped);
                }
            }
            break;
        }
        case Primitive::Toggle: {
            const Position p = pose.front();
            const WorldObject* o = grid.object_at(p);
            if (o == nullptr) break;
            if (o->kind == ObjectKind::Apple) {
                if (o->state != obj_state::kFresh) break;
                toggle_at(grid, p);
                if (who == Actor::Agent) {
                    if (s.params.env_type == EnvType::AdversarialPeer && peer_sees_agent(s)) s.eaten_while_seen = true;
                    else s.success = true;
                } else {
                    ++s.peer_meals;
                }
                break;
            }
            if (o->kind == ObjectKind::AppleGenerator) {
                if (who == Actor::Agent) misuse(s, p);
                break;
            }
            if (use_candidate(s, who, p)) toggle_at(grid, p);
            break;
        }
        case Primitive::NoOp:
        case Primitive::Done: break;
    }
}

void peer_say(EnvState& s, std::string text, bool misleading) {
    const bool heard = s.peer && sees(s.world.grid, s.agent, s.peer->pose.pos);
    if (heard) s.dialogue.append(Speaker::Peer, text, s.step);
    s.peer_log.push_back({s.step, std::move(text), heard, misleading});
}

// ---------------------------------------------------------------------------

Env::Env(const EnvParams& params, std::uint64_t seed) : s_(build_env(params, seed)) {}

void Env::update_intro(const std::optional<std::string>& said) {
    if (s_.intro_satisfied || !s_.peer) return;
    const bool asked = said && is_help_request(*said);
    switch (s_.params.intro) {
        case Intro::No: s_.intro_satisfied = true; break;
        case Intro::EyeContact: s_.intro_satisfied = eye_contact(s_); break;
        case Intro::Ask: s_.intro_satisfied = asked; break;
        case Intro::AskEyeContact: s_.intro_satisfied = asked && eye_contact(s_); break;
    }
}

StepResult Env::step(const AgentAction& action) {
    if (s_.done) throw StateError("step called on a finished episode");
    if (static_cast<int>(action.primitive) >= kPrimitiveCount) throw std::invalid_argument("primitive out of range");
    ++s_.step;

    std::optional<std::string> said;
    if (action.utterance) {
        said = render_utterance(*action.utterance);
        s_.dialogue.append(Speaker::Agent, *said, s_.step);
    }

    const bool was_success = s_.success;
    const bool done_action = action.primitive == Primitive::Done;
    apply_primitive(s_, Actor::Agent, action.primitive);

    std::vector<Position> actors{s_.agent.pos};
    if (s_.peer) actors.push_back(s_.peer->pose.pos);
    const MarbleOutcome m = advance_marble(s_.world.grid, actors);
    handle_marble(s_, m);

    update_intro(said);
    if (s_.peer && !s_.success && !s_.eaten_while_seen && !done_action) {
        peer_tick(s_);
        update_intro(said);
    }

    StepResult r;
    r.reward = s_.success && !was_success ? success_reward(s_.step) : 0.0;
    s_.done = s_.success || s_.eaten_while_seen || done_action || s_.step >= kMaxSteps;
    r.done = s_.done;
    r.info = info();
    return r;
}

StepInfo Env::info() const {
    StepInfo i;
    i.success = s_.success;
    i.blocked = s_.blocked;
    i.intro_satisfied = s_.intro_satisfied;
    i.peer_phase = s_.peer ? s_.peer->phase : PeerPhase::None;
    i.seen = peer_sees_agent(s_);
    i.peer_idle = s_.peer && s_.peer->idle;
    return i;
}

View agent_view(const EnvState& s) {
    std::vector<ActorMark> marks;
    if (s.peer) marks.push_back({s.peer->pose.pos, encode(CellContent{peer_appearance(*s.peer, s.agent.dir)})});
    return field_of_view(s.world.grid, s.agent, marks);
}

View Env::view() const { return agent_view(s_); }

std::uint64_t observation_hash(const EnvState& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::uint8_t b) {
        h ^= b;
        h *= 0x100000001b3ULL;
    };
    const View v = agent_view(s);
    for (const auto& row : v)
        for (const auto& cell : row)
            for (std::uint8_t b : cell) mix(b);
    for (const auto& e : s.dialogue.entries()) {
        mix(e.speaker == Speaker::Agent ? 1 : 2);
        for (char c : e.text) mix(static_cast<std::uint8_t>(c));
        mix(0);
    }
    return h;
}

}  // namespace socialai
