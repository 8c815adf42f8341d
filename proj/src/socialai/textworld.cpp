#include "socialai/textworld.hpp"

#include <array>
#include <cstdlib>
#include <stdexcept>

namespace socialai {

namespace {

constexpr std::array<std::string_view, kPrimitiveCount> kActionText = {"no_op",        "turn left", "turn right",
                                                                       "move forward", "toggle",    "done"};

std::string side(int lateral) { return lateral < 0 ? "left" : "right"; }

std::string state_word(const ObjectAppearance& o) {
    switch (o.kind) {
        case ObjectKind::LockableBox:
            if (o.state == obj_state::kOpen) return "open";
            if (o.state == obj_state::kLocked) return "locked";
            return "closed";
        case ObjectKind::Door:
        case ObjectKind::RemoteDoor: return o.state == obj_state::kOpen ? "open" : "closed";
        case ObjectKind::Lever: return o.state == obj_state::kActivated ? "activated" : "unactivated";
        case ObjectKind::AppleGenerator:
        case ObjectKind::MarbleGenerator: return "round";
        default: return "";
    }
}

}  // namespace

std::string phrase_relpos(int forward, int lateral) {
    if (forward < 0 || (forward == 0 && lateral == 0)) throw std::invalid_argument("no phrase for the agent's own cell");
    const int l = std::abs(lateral);
    if (forward >= 1 && lateral != 0)
        return std::to_string(forward) + " steps in front of you and " + std::to_string(l) + " steps to the " + side(lateral);
    if (forward >= 2) return std::to_string(forward) + " steps in front of you ";
    if (forward == 1) return "Right in front of you ";
    if (l >= 2) return " " + std::to_string(l) + " steps to the " + side(lateral);
    return "Just to the " + side(lateral) + " of you";
}

bool describable(const CellEncoding& enc) {
    switch (enc[0]) {
        case 0:
        case static_cast<std::uint8_t>(ObjectKind::Wall):
        case static_cast<std::uint8_t>(ObjectKind::Fence):
        case static_cast<std::uint8_t>(ObjectKind::Occluder): return false;
        default: return true;
    }
}

std::string describe_cell(const CellEncoding& enc) {
    const CellContent c = decode(enc);
    if (std::holds_alternative<std::monostate>(c)) throw std::invalid_argument("empty cell has no description");
    if (std::holds_alternative<PeerAppearance>(c)) return "a caretaker";
    const auto& o = std::get<ObjectAppearance>(c);
    std::string out = "a ";
    if (const std::string w = state_word(o); !w.empty()) out += w + " ";
    out += std::string(color_name(o.color)) + " " + std::string(kind_name(o.kind));
    return out;
}

std::string render_obs(const View& view, const std::optional<std::string>& heard) {
    std::string out = "Obs : ";
    bool first = true;
    for (int row = 0; row < kViewSize; ++row) {
        for (int col = 0; col < kViewSize; ++col) {
            const CellEncoding& e = view[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
            if (!describable(e)) continue;
            const int forward = kViewSize - 1 - row;
            const int lateral = col - kViewSize / 2;
            if (forward == 0 && lateral == 0) continue;
            if (!first) out += "\n";
            first = false;
            out += phrase_relpos(forward, lateral) + " there is " + describe_cell(e);
            if (e[0] != kPeerTypeId) out += " ";
        }
    }
    if (heard) out += "\nCaretaker says:  " + *heard + " ";
    return out;
}

std::string render_obs(const EnvState& s) { return render_obs(agent_view(s), s.dialogue.last_from(Speaker::Peer)); }

std::string render_ascii(const EnvState& s) {
    constexpr std::array<char, 4> kArrows = {'>', 'v', '<', '^'};
    const Grid& g = s.world.grid;
    std::string out;
    for (int y = 0; y < g.height(); ++y) {
        for (int x = 0; x < g.width(); ++x) {
            const Position p{x, y};
            std::string cell = "  ";
            if (p == s.agent.pos) {
                cell = {'A', kArrows[static_cast<std::size_t>(s.agent.dir)]};
            } else if (s.peer && p == s.peer->pose.pos) {
                cell = {'P', kArrows[static_cast<std::size_t>(s.peer->pose.dir)]};
            } else if (g.marble_at(p)) {
                cell = {'M', g.marble()->momentum ? '*' : 'o'};
            } else if (const WorldObject* o = g.object_at(p)) {
                const char c = color_name(o->color)[0];
                switch (o->kind) {
                    case ObjectKind::Wall: cell = "##"; break;
                    case ObjectKind::Fence: cell = "||"; break;
                    case ObjectKind::Occluder: cell = "OO"; break;
                    case ObjectKind::Door: cell = {o->state == obj_state::kOpen ? 'd' : 'D', c}; break;
                    case ObjectKind::RemoteDoor: cell = {o->state == obj_state::kOpen ? 'r' : 'R', c}; break;
                    case ObjectKind::LockableBox:
                        cell = {o->state == obj_state::kOpen ? 'b' : (o->state == obj_state::kLocked ? 'L' : 'B'), c};
                        break;
                    case ObjectKind::Switch: cell = {'S', c}; break;
                    case ObjectKind::Lever: cell = {o->state == obj_state::kActivated ? 'v' : 'V', c}; break;
                    case ObjectKind::Apple: cell = {'a', o->state == obj_state::kFresh ? '@' : '.'}; break;
                    case ObjectKind::AppleGenerator: cell = {o->state == obj_state::kActivated ? 'g' : 'G', c}; break;
                    case ObjectKind::MarbleGenerator: cell = {o->state == obj_state::kActivated ? 'm' : 'N', c}; break;
                    case ObjectKind::Platform: cell = "__"; break;
                    case ObjectKind::Marble: cell = "Mo"; break;
                }
            }
            out += cell;
        }
        out += "\n";
    }
    return out;
}

std::string_view action_text(Primitive a) { return kActionText.at(static_cast<std::size_t>(a)); }

std::optional<Primitive> action_from_text(std::string_view text) {
    for (std::size_t i = 0; i < kActionText.size(); ++i)
        if (kActionText[i] == text) return static_cast<Primitive>(i);
    return std::nullopt;
}

void TranscriptWriter::begin(const EnvState& s) {
    lines_.assign({"New episode.", render_obs(s)});
    success_ = false;
}

void TranscriptWriter::step(Primitive a, const EnvState& after) {
    lines_.push_back("Act : " + std::string(action_text(a)));
    lines_.push_back(render_obs(after));
    success_ = after.success;
}

std::string TranscriptWriter::str() const {
    std::string out;
    for (const auto& l : lines_) out += l + "\n";
    if (success_) out += "Success!\n";
    return out;
}

}  // namespace socialai
