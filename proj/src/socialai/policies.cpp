#include "socialai/policies.hpp"

#include <limits>

#include "socialai/errors.hpp"
#include "socialai/planner.hpp"

namespace socialai {

namespace {

constexpr std::array<Primitive, 4> kTextActions = {Primitive::TurnLeft, Primitive::TurnRight, Primitive::Forward,
                                                   Primitive::Toggle};

AgentAction act_with(Primitive p) { return {p, std::nullopt}; }

bool contact_pose(const EnvState& s, const AgentPose& q) {
    const Position peer = s.peer->pose.pos;
    const auto d = axis_direction(q.pos, peer);
    return d && *d == q.dir && line_of_sight(s.world.grid, q.pos, peer);
}

}  // namespace

std::optional<AgentAction> intro_action(const EnvState& s) {
    if (s.intro_satisfied || !s.peer) return std::nullopt;
    const AgentAction help{Primitive::NoOp, Utterance{kHelpTemplate, kPleaseNoun}};
    switch (s.params.intro) {
        case Intro::No: return std::nullopt;
        case Intro::Ask: return help;
        case Intro::EyeContact:
        case Intro::AskEyeContact: {
            if (eye_contact(s)) return help;
            const PathStep r = plan_to(s.world.grid, s.agent, blocked_cells(s, Actor::Agent),
                                       [&](const AgentPose& q) { return contact_pose(s, q); });
            return act_with(r.reachable ? r.first : Primitive::NoOp);
        }
    }
    return std::nullopt;
}

void OraclePolicy::reset(const EnvState& s, std::uint64_t) {
    eat_pose_.reset();
    if (s.params.env_type != EnvType::AdversarialPeer) return;
    // Eat from the apple side the peer sees from the fewest orientations.
    const Grid& g = s.world.grid;
    const Position peer = s.peer->pose.pos;
    int best_seen = std::numeric_limits<int>::max();
    int best_cost = std::numeric_limits<int>::max();
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x) {
            const WorldObject* o = g.object_at({x, y});
            if (o == nullptr || o->kind != ObjectKind::Apple || o->state != obj_state::kFresh) continue;
            for (Direction d : {Direction::East, Direction::South, Direction::West, Direction::North}) {
                const AgentPose pose{step_toward({x, y}, opposite(d)), d};
                if (!g.agent_can_enter(pose.pos) || pose.pos == peer) continue;
                const PathStep r = plan_to(g, s.agent, {peer}, [&](const AgentPose& q) { return q == pose; });
                if (!r.reachable) continue;
                int seen = 0;
                for (Direction pd : {Direction::East, Direction::South, Direction::West, Direction::North})
                    seen += sees(g, {peer, pd}, pose.pos) ? 1 : 0;
                if (seen < best_seen || (seen == best_seen && r.cost < best_cost)) {
                    best_seen = seen;
                    best_cost = r.cost;
                    eat_pose_ = pose;
                }
            }
        }
}

AgentAction OraclePolicy::act(const EnvState& s) {
    if (auto a = intro_action(s)) return *a;
    switch (s.params.env_type) {
        case EnvType::AdversarialPeer: {
            if (!eat_pose_) return act_with(Primitive::NoOp);
            if (s.agent == *eat_pose_) return act_with(peer_sees_agent(s) ? Primitive::NoOp : Primitive::Toggle);
            const PathStep r = plan_to(s.world.grid, s.agent, blocked_cells(s, Actor::Agent),
                                       [&](const AgentPose& q) { return q == *eat_pose_; });
            return act_with(r.reachable ? r.first : Primitive::NoOp);
        }
        case EnvType::InformationSeeking:
            if (s.params.help && s.peer) return act_with(script_step(s, Actor::Agent, Plan{}));
            [[fallthrough]];
        case EnvType::Collaboration: return act_with(script_step(s, Actor::Agent, s.agent_plan));
    }
    return act_with(Primitive::NoOp);
}

void GuesserPolicy::reset(const EnvState& s, std::uint64_t seed) {
    if (s.params.env_type != EnvType::InformationSeeking || s.params.n_objects != 2 || s.main_group < 0)
        throw ConfigError("the guesser needs a two-object information seeking environment");
    Rng rng(seed);
    guess_ = rng.uniform_int(0, 1);
}

AgentAction GuesserPolicy::act(const EnvState& s) {
    if (s.blocked) return act_with(Primitive::Done);
    if (auto a = intro_action(s)) return *a;
    Plan plan;
    plan.target = s.world.groups.at(static_cast<std::size_t>(s.main_group)).candidates.at(static_cast<std::size_t>(guess_));
    return act_with(script_step(s, Actor::Agent, plan));
}

void RandomPolicy::reset(const EnvState&, std::uint64_t seed) { rng_ = Rng(seed); }

AgentAction RandomPolicy::act(const EnvState&) {
    if (text_mode_) return act_with(kTextActions[rng_.index(kTextActions.size())]);
    AgentAction a = act_with(static_cast<Primitive>(rng_.index(kPrimitiveCount)));
    if (rng_.bernoulli(kRandomSpeechProbability))
        a.utterance = Utterance{rng_.uniform_int(0, kTemplateCount - 1), rng_.uniform_int(0, kNounCount - 1)};
    return a;
}

std::unique_ptr<Policy> make_policy(std::string_view name) {
    if (name == "oracle") return std::make_unique<OraclePolicy>();
    if (name == "guesser") return std::make_unique<GuesserPolicy>();
    if (name == "random") return std::make_unique<RandomPolicy>(false);
    if (name == "random-text") return std::make_unique<RandomPolicy>(true);
    throw ConfigError("unknown policy '" + std::string(name) + "' (expected oracle, guesser, random, random-text)");
}

}  // namespace socialai
