#include "socialai/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace socialai {

namespace {

constexpr std::array<std::string_view, kColorCount> kColorNames = {"red", "green", "blue", "purple",
                                                                    "yellow", "grey", "brown"};

bool contains(std::span<const Position> cells, Position p) {
    return std::find(cells.begin(), cells.end(), p) != cells.end();
}

}  // namespace

std::string_view direction_name(Direction d) {
    switch (d) {
        case Direction::East: return "east";
        case Direction::South: return "south";
        case Direction::West: return "west";
        case Direction::North: return "north";
    }
    return "?";
}

std::optional<Direction> axis_direction(Position from, Position to) {
    if (from == to) return std::nullopt;
    if (from.y == to.y) return to.x > from.x ? Direction::East : Direction::West;
    if (from.x == to.x) return to.y > from.y ? Direction::South : Direction::North;
    return std::nullopt;
}

std::string_view color_name(Color c) { return kColorNames.at(static_cast<std::size_t>(c)); }

std::optional<Color> color_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kColorNames.size(); ++i)
        if (kColorNames[i] == name) return static_cast<Color>(i);
    return std::nullopt;
}

std::string_view kind_name(ObjectKind k) {
    switch (k) {
        case ObjectKind::Wall: return "wall";
        case ObjectKind::Fence: return "fence";
        case ObjectKind::Occluder: return "occluder";
        case ObjectKind::Door: return "door";
        case ObjectKind::RemoteDoor: return "remotedoor";
        case ObjectKind::LockableBox: return "lockablebox";
        case ObjectKind::Switch: return "switch";
        case ObjectKind::Lever: return "lever";
        case ObjectKind::Apple: return "apple";
        case ObjectKind::AppleGenerator: return "applegenerator";
        case ObjectKind::Marble: return "marble";
        case ObjectKind::MarbleGenerator: return "marblegenerator";
        case ObjectKind::Platform: return "platform";
    }
    return "?";
}

WorldObject make_wall() { return WorldObject{ObjectKind::Wall, Color::Grey, 0, std::nullopt, false}; }

WorldObject make_object(ObjectKind kind, Color color, std::uint8_t state) {
    return WorldObject{kind, color, state, std::nullopt, false};
}

WorldObject make_apple() { return WorldObject{ObjectKind::Apple, Color::Red, obj_state::kFresh, std::nullopt, false}; }

bool agent_passable(const WorldObject& o) {
    return (o.kind == ObjectKind::Door || o.kind == ObjectKind::RemoteDoor) && o.state == obj_state::kOpen;
}

bool marble_passable(const WorldObject& o) { return o.kind == ObjectKind::Fence || agent_passable(o); }

bool transparent(const WorldObject& o) {
    switch (o.kind) {
        case ObjectKind::Wall:
        case ObjectKind::Occluder: return false;
        case ObjectKind::Door:
        case ObjectKind::RemoteDoor: return o.state == obj_state::kOpen;
        default: return true;
    }
}

// ---------------------------------------------------------------------------

Grid::Grid(int width, int height) : width_(width), height_(height), cells_(static_cast<std::size_t>(width * height)) {
    if (width < 3 || height < 3) throw std::invalid_argument("grid must be at least 3x3");
    for (int x = 0; x < width; ++x) {
        set({x, 0}, make_wall());
        set({x, height - 1}, make_wall());
    }
    for (int y = 0; y < height; ++y) {
        set({0, y}, make_wall());
        set({width - 1, y}, make_wall());
    }
}

const std::optional<WorldObject>& Grid::at(Position p) const {
    if (!in_bounds(p)) throw std::out_of_range("grid position out of range");
    return cells_[static_cast<std::size_t>(p.y * width_ + p.x)];
}

WorldObject* Grid::object_at(Position p) {
    if (!in_bounds(p)) return nullptr;
    auto& c = cells_[static_cast<std::size_t>(p.y * width_ + p.x)];
    return c ? &*c : nullptr;
}

const WorldObject* Grid::object_at(Position p) const {
    if (!in_bounds(p)) return nullptr;
    const auto& c = cells_[static_cast<std::size_t>(p.y * width_ + p.x)];
    return c ? &*c : nullptr;
}

void Grid::set(Position p, WorldObject obj) {
    if (!in_bounds(p)) throw std::out_of_range("grid position out of range");
    cells_[static_cast<std::size_t>(p.y * width_ + p.x)] = std::move(obj);
}

void Grid::clear(Position p) {
    if (!in_bounds(p)) throw std::out_of_range("grid position out of range");
    cells_[static_cast<std::size_t>(p.y * width_ + p.x)].reset();
}

bool Grid::agent_can_enter(Position p) const {
    if (!in_bounds(p) || marble_at(p)) return false;
    const WorldObject* o = object_at(p);
    return o == nullptr || agent_passable(*o);
}

bool Grid::opaque(Position p) const {
    if (!in_bounds(p)) return true;
    const WorldObject* o = object_at(p);
    return o != nullptr && !transparent(*o);
}

// ---------------------------------------------------------------------------

RelDir relative_to_viewer(Direction viewer, Direction d) {
    switch ((static_cast<int>(d) - static_cast<int>(viewer) + 4) % 4) {
        case 0: return RelDir::Away;
        case 1: return RelDir::Right;
        case 2: return RelDir::Toward;
        default: return RelDir::Left;
    }
}

CellEncoding encode(const CellContent& c) {
    CellEncoding e{};
    if (const auto* o = std::get_if<ObjectAppearance>(&c)) {
        e[0] = static_cast<std::uint8_t>(o->kind);
        e[1] = static_cast<std::uint8_t>(o->color);
        e[2] = o->state;
    } else if (const auto* p = std::get_if<PeerAppearance>(&c)) {
        e[0] = kPeerTypeId;
        e[1] = static_cast<std::uint8_t>(p->color);
        e[2] = p->kind_social;
        e[3] = static_cast<std::uint8_t>(p->gaze);
        e[4] = static_cast<std::uint8_t>(p->point);
        e[5] = p->last_action;
    }
    return e;
}

CellEncoding encode(const WorldObject& o) { return encode(CellContent{ObjectAppearance{o.kind, o.color, o.state}}); }

CellEncoding encode(const Marble& m) {
    return encode(CellContent{ObjectAppearance{ObjectKind::Marble, m.color,
                                               m.momentum ? obj_state::kRolling : obj_state::kResting}});
}

CellContent decode(const CellEncoding& e) {
    if (e[0] == 0) {
        if (std::any_of(e.begin() + 1, e.end(), [](std::uint8_t v) { return v != 0; }))
            throw std::invalid_argument("empty cell with non-zero channels");
        return std::monostate{};
    }
    if (e[1] >= kColorCount) throw std::invalid_argument("unknown color id " + std::to_string(e[1]));
    if (e[0] == kPeerTypeId) {
        if (e[3] > 4 || e[4] > 4) throw std::invalid_argument("bad relative direction");
        return PeerAppearance{static_cast<Color>(e[1]), e[2], static_cast<RelDir>(e[3]), static_cast<RelDir>(e[4]), e[5]};
    }
    if (e[0] > static_cast<std::uint8_t>(ObjectKind::Platform))
        throw std::invalid_argument("unknown type id " + std::to_string(e[0]));
    return ObjectAppearance{static_cast<ObjectKind>(e[0]), static_cast<Color>(e[1]), e[2]};
}

// ---------------------------------------------------------------------------

Position view_to_world(const AgentPose& pose, int row, int col) {
    const int forward = kViewSize - 1 - row;
    const int lateral = col - kViewSize / 2;
    const Position f = offset(pose.dir);
    const Position r = offset(turn_right(pose.dir));
    return {pose.pos.x + f.x * forward + r.x * lateral, pose.pos.y + f.y * forward + r.y * lateral};
}

std::pair<int, int> world_to_frame(const AgentPose& pose, Position p) {
    const Position f = offset(pose.dir);
    const Position r = offset(turn_right(pose.dir));
    const int dx = p.x - pose.pos.x;
    const int dy = p.y - pose.pos.y;
    return {dx * f.x + dy * f.y, dx * r.x + dy * r.y};
}

bool in_view_rect(const AgentPose& pose, Position p) {
    const auto [forward, lateral] = world_to_frame(pose, p);
    return forward >= 0 && forward < kViewSize && std::abs(lateral) <= kViewSize / 2;
}

bool line_of_sight(const Grid& grid, Position a, Position b) {
    // Bresenham walk from a to b over the strictly intermediate cells.
    int x = a.x, y = a.y;
    const int dx = std::abs(b.x - a.x), dy = -std::abs(b.y - a.y);
    const int sx = a.x < b.x ? 1 : -1, sy = a.y < b.y ? 1 : -1;
    int err = dx + dy;
    while (true) {
        if (x == b.x && y == b.y) return true;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y += sy;
        }
        if (x == b.x && y == b.y) return true;
        if (grid.opaque({x, y})) return false;
    }
}

bool sees(const Grid& grid, const AgentPose& pose, Position target) {
    if (!in_view_rect(pose, target)) return false;
    if (target == pose.pos) return true;
    return line_of_sight(grid, pose.pos, target);
}

View field_of_view(const Grid& grid, const AgentPose& pose, std::span<const ActorMark> actors) {
    View view{};
    for (int row = 0; row < kViewSize; ++row) {
        for (int col = 0; col < kViewSize; ++col) {
            const Position p = view_to_world(pose, row, col);
            CellEncoding& cell = view[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
            if (p == pose.pos) continue;
            if (!line_of_sight(grid, pose.pos, p)) continue;  // hidden
            if (!grid.in_bounds(p)) {
                cell = encode(make_wall());
                continue;
            }
            if (auto it = std::find_if(actors.begin(), actors.end(), [&](const ActorMark& a) { return a.pos == p; });
                it != actors.end()) {
                cell = it->enc;
            } else if (grid.marble_at(p)) {
                cell = encode(*grid.marble());
            } else if (const WorldObject* o = grid.object_at(p)) {
                cell = encode(*o);
            }
        }
    }
    return view;
}

// ---------------------------------------------------------------------------

MarbleOutcome push_marble(Grid& grid, Direction dir, std::span<const Position> occupied) {
    auto& marble = grid.marble();
    if (!marble) return {};
    const Position next = step_toward(marble->pos, dir);
    if (!grid.in_bounds(next) || contains(occupied, next)) return {MarbleEvent::Stopped, {}};
    const WorldObject* o = grid.object_at(next);
    if (o != nullptr && o->kind == ObjectKind::MarbleGenerator) {
        marble->momentum.reset();
        return {MarbleEvent::GeneratorHit, next};
    }
    if (o == nullptr || marble_passable(*o)) {
        marble->momentum = dir;
        return {MarbleEvent::Moved, {}};
    }
    return {MarbleEvent::Stopped, {}};
}

MarbleOutcome advance_marble(Grid& grid, std::span<const Position> occupied) {
    auto& marble = grid.marble();
    if (!marble || !marble->momentum) return {};
    const Direction dir = *marble->momentum;
    const Position next = step_toward(marble->pos, dir);
    const WorldObject* o = grid.in_bounds(next) ? grid.object_at(next) : nullptr;
    if (grid.in_bounds(next) && !contains(occupied, next)) {
        if (o != nullptr && o->kind == ObjectKind::MarbleGenerator) {
            marble->momentum.reset();
            return {MarbleEvent::GeneratorHit, next};
        }
        if (o == nullptr || marble_passable(*o)) {
            marble->pos = next;
            // Contact with a generator directly ahead is resolved on the next tick.
            return {MarbleEvent::Moved, {}};
        }
    }
    marble->momentum.reset();
    return {MarbleEvent::Stopped, {}};
}

MoveOutcome step_move(Grid& grid, const AgentPose& pose, Primitive action, std::span<const Position> occupied) {
    MoveOutcome out;
    out.pose = pose;
    switch (action) {
        case Primitive::TurnLeft: out.pose.dir = turn_left(pose.dir); break;
        case Primitive::TurnRight: out.pose.dir = turn_right(pose.dir); break;
        case Primitive::Forward: {
            const Position target = pose.front();
            if (grid.marble_at(target)) {
                out.pushed = true;
                out.marble = push_marble(grid, pose.dir, occupied);
            } else if (grid.agent_can_enter(target) && !contains(occupied, target)) {
                out.pose.pos = target;
            } else if (grid.object_at(target) != nullptr) {
                out.bumped = target;
            }
            break;
        }
        default: break;
    }
    return out;
}

ToggleEffect toggle(Grid& grid, const AgentPose& pose) { return toggle_at(grid, pose.front()); }

ToggleEffect toggle_at(Grid& grid, Position p) {
    WorldObject* o = grid.object_at(p);
    if (o == nullptr) return {ToggleKind::None, p};
    switch (o->kind) {
        case ObjectKind::LockableBox:
            if (o->state != obj_state::kClosed) break;
            if (o->holds_apple) {
                grid.set(p, make_apple());
                return {ToggleKind::AppleRevealed, p};
            }
            o->state = obj_state::kOpen;
            return {ToggleKind::BoxOpened, p};
        case ObjectKind::Switch: {
            if (!o->link) break;
            WorldObject* box = grid.object_at(*o->link);
            if (box == nullptr || box->kind != ObjectKind::LockableBox || box->state == obj_state::kOpen) break;
            box->state = box->state == obj_state::kLocked ? obj_state::kClosed : obj_state::kLocked;
            o->state = o->state == obj_state::kActivated ? obj_state::kUnactivated : obj_state::kActivated;
            return {ToggleKind::SwitchToggled, p};
        }
        case ObjectKind::Lever: {
            if (o->state == obj_state::kActivated) break;
            o->state = obj_state::kActivated;
            if (o->link) {
                if (WorldObject* door = grid.object_at(*o->link); door != nullptr && door->kind == ObjectKind::RemoteDoor)
                    door->state = obj_state::kOpen;
            }
            return {ToggleKind::LeverActivated, p};
        }
        case ObjectKind::Door:
            if (o->state != obj_state::kClosed) break;
            o->state = obj_state::kOpen;
            return {ToggleKind::DoorOpened, p};
        case ObjectKind::Apple:
            if (o->state != obj_state::kFresh) break;
            o->state = obj_state::kEaten;
            o->color = Color::Yellow;
            return {ToggleKind::AppleEaten, p};
        default: break;
    }
    return {ToggleKind::None, p};
}

bool activate_generator(Grid& grid, Position p) {
    WorldObject* o = grid.object_at(p);
    if (o == nullptr || (o->kind != ObjectKind::AppleGenerator && o->kind != ObjectKind::MarbleGenerator)) return false;
    if (o->state == obj_state::kActivated) return false;
    o->state = obj_state::kActivated;
    return true;
}

}  // namespace socialai
