#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "socialai/grid.hpp"
#include "socialai/lang.hpp"
#include "socialai/params.hpp"
#include "socialai/rng.hpp"

namespace socialai {

inline constexpr int kMaxSteps = 80;
inline constexpr std::uint8_t kPeerPointAction = 6;

enum class Actor : std::uint8_t { Agent, Peer };

// Objects of the same kind among which exactly one is usable. Using another
// candidate blocks the whole group for the rest of the episode.
struct ChoiceGroup {
    std::vector<Position> candidates;
    std::optional<int> correct;      // unset while another group has not decided it
    bool any_correct = false;        // the first candidate used becomes the correct one
    std::optional<int> decides;      // group whose correct candidate takes the color used here
    std::optional<int> resolved;
    std::optional<Actor> resolved_by;
    bool blocked = false;

    friend bool operator==(const ChoiceGroup&, const ChoiceGroup&) = default;
};

// Generator at `source` turns each platform into a fresh apple when activated.
struct Trigger {
    Position source;
    std::vector<Position> platforms;
    friend bool operator==(const Trigger&, const Trigger&) = default;
};

struct World {
    Grid grid;
    std::vector<ChoiceGroup> groups;
    std::vector<Trigger> triggers;
    friend bool operator==(const World&, const World&) = default;
};

// What a scripted actor is trying to achieve.
struct Plan {
    std::optional<Position> target;        // object to operate
    std::optional<int> target_group;       // operate this group's correct candidate
    std::optional<Position> marble_dest;   // roll the marble until it rests here
    std::optional<AgentPose> wait_pose;    // where to stand while nothing can be done yet
    bool may_eat = true;
    friend bool operator==(const Plan&, const Plan&) = default;
};

enum class PeerPhase : std::uint8_t {
    None,
    WaitIntro,
    Pointing,
    LanguageColor,
    LanguageFeedback,
    Demonstrating,
    Helping,
    RoleScript,
    Patrol,
    Done,
};

std::string_view peer_phase_name(PeerPhase p);

struct PeerState {
    AgentPose pose;
    Color color = Color::Purple;
    std::uint8_t kind_social = 0;  // 0 cooperative, 1 competitive
    PeerPhase phase = PeerPhase::None;
    std::optional<Direction> point_dir;
    std::uint8_t last_action = 0;
    int timer = 0;
    int stage = 0;
    bool color_heard = false;
    bool idle = false;  // navigation target unreachable this tick
    Plan plan;

    friend bool operator==(const PeerState&, const PeerState&) = default;
};

struct AgentAction {
    Primitive primitive = Primitive::NoOp;
    std::optional<Utterance> utterance;
    friend bool operator==(const AgentAction&, const AgentAction&) = default;
};

struct StepInfo {
    bool success = false;
    bool blocked = false;
    bool intro_satisfied = false;
    PeerPhase peer_phase = PeerPhase::None;
    bool seen = false;       // peer currently sees the agent
    bool peer_idle = false;
    friend bool operator==(const StepInfo&, const StepInfo&) = default;
};

struct StepResult {
    double reward = 0.0;
    bool done = false;
    StepInfo info;
};

struct PeerUtterance {
    int step = 0;
    std::string text;
    bool heard = false;
    bool misleading = false;
};

struct EnvState {
    EnvParams params;
    std::uint64_t seed = 0;
    World world;
    World initial_world;
    AgentPose agent;
    std::optional<PeerState> peer;
    Plan agent_plan;  // intended solution; scripted agents read it
    int main_group = -1;
    std::vector<Position> reserved;  // cells scripted actors should not idle on

    int step = 0;
    bool success = false;
    bool blocked = false;
    bool done = false;
    bool intro_satisfied = false;
    bool eaten_while_seen = false;
    bool agent_touched = false;  // agent operated a mechanism
    int peer_meals = 0;
    std::optional<Actor> marble_pusher;

    Dialogue dialogue;                       // what the agent has heard or said
    std::vector<PeerUtterance> peer_log;     // everything the peer uttered
    Rng rng;                                 // stream for stochastic peer behaviour
};

// Builds the layout for `params`; deterministic in (params, seed).
EnvState build_env(const EnvParams& params, std::uint64_t seed);

double success_reward(int step);

bool eye_contact(const EnvState& s);
bool peer_sees_agent(const EnvState& s);
PeerAppearance peer_appearance(const PeerState& peer, Direction viewer);

// Applies one primitive for an actor, including object effects.
void apply_primitive(EnvState& s, Actor who, Primitive a);
// Records a peer utterance; it reaches the agent only if the peer is in view.
void peer_say(EnvState& s, std::string text, bool misleading = false);

class Env {
public:
    Env(const EnvParams& params, std::uint64_t seed);
    explicit Env(EnvState state) : s_(std::move(state)) {}

    const EnvState& state() const { return s_; }
    EnvState& mutable_state() { return s_; }

    // Throws StateError once the episode is over.
    StepResult step(const AgentAction& action);

    View view() const;
    StepInfo info() const;
    bool done() const { return s_.done; }

private:
    void update_intro(const std::optional<std::string>& said);

    EnvState s_;
};

View agent_view(const EnvState& s);

// FNV-1a over the view bytes and the dialogue; used for replay checks.
std::uint64_t observation_hash(const EnvState& s);

}  // namespace socialai
