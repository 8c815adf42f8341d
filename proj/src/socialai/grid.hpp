#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace socialai {

// Clockwise order; turning is a cyclic permutation of these four values.
enum class Direction : std::uint8_t { East = 0, South = 1, West = 2, North = 3 };

constexpr Direction turn_left(Direction d) { return static_cast<Direction>((static_cast<int>(d) + 3) % 4); }
constexpr Direction turn_right(Direction d) { return static_cast<Direction>((static_cast<int>(d) + 1) % 4); }
constexpr Direction opposite(Direction d) { return static_cast<Direction>((static_cast<int>(d) + 2) % 4); }

std::string_view direction_name(Direction d);

struct Position {
    int x = 0;
    int y = 0;

    friend constexpr bool operator==(Position, Position) = default;
    friend constexpr auto operator<=>(Position, Position) = default;
};

constexpr Position offset(Direction d) {
    switch (d) {
        case Direction::East: return {1, 0};
        case Direction::South: return {0, 1};
        case Direction::West: return {-1, 0};
        case Direction::North: return {0, -1};
    }
    return {0, 0};
}

constexpr Position step_toward(Position p, Direction d, int n = 1) {
    const Position o = offset(d);
    return {p.x + o.x * n, p.y + o.y * n};
}

constexpr int manhattan(Position a, Position b) {
    return (a.x > b.x ? a.x - b.x : b.x - a.x) + (a.y > b.y ? a.y - b.y : b.y - a.y);
}

constexpr int chebyshev(Position a, Position b) {
    const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
    const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
    return dx > dy ? dx : dy;
}

// Direction from a to b when they share a row or column.
std::optional<Direction> axis_direction(Position from, Position to);

struct AgentPose {
    Position pos;
    Direction dir = Direction::East;

    Position front() const { return step_toward(pos, dir); }
    friend bool operator==(const AgentPose&, const AgentPose&) = default;
};

enum class Color : std::uint8_t { Red = 0, Green, Blue, Purple, Yellow, Grey, Brown };
inline constexpr int kColorCount = 7;

std::string_view color_name(Color c);
std::optional<Color> color_from_name(std::string_view name);

enum class ObjectKind : std::uint8_t {
    Wall = 1,
    Fence,
    Occluder,
    Door,
    RemoteDoor,
    LockableBox,
    Switch,
    Lever,
    Apple,
    AppleGenerator,
    Marble,
    MarbleGenerator,
    Platform,
};
inline constexpr std::uint8_t kPeerTypeId = 14;
inline constexpr std::uint8_t kMaxTypeId = 14;

std::string_view kind_name(ObjectKind k);

// Small per-kind state values carried in the first state channel.
namespace obj_state {
inline constexpr std::uint8_t kClosed = 0, kOpen = 1, kLocked = 2;  // boxes, doors
inline constexpr std::uint8_t kUnactivated = 0, kActivated = 1;     // levers, switches, generators
inline constexpr std::uint8_t kFresh = 0, kEaten = 1;               // apples
inline constexpr std::uint8_t kResting = 0, kRolling = 1;           // marble
}  // namespace obj_state

struct WorldObject {
    ObjectKind kind = ObjectKind::Wall;
    Color color = Color::Grey;
    std::uint8_t state = 0;
    std::optional<Position> link;  // lever -> remote door, switch -> box
    bool holds_apple = false;      // boxes only; not observable

    friend bool operator==(const WorldObject&, const WorldObject&) = default;
};

WorldObject make_wall();
WorldObject make_object(ObjectKind kind, Color color, std::uint8_t state = 0);
WorldObject make_apple();

bool agent_passable(const WorldObject& o);
bool marble_passable(const WorldObject& o);
bool transparent(const WorldObject& o);

struct Marble {
    Position pos;
    Color color = Color::Green;
    std::optional<Direction> momentum;

    friend bool operator==(const Marble&, const Marble&) = default;
};

class Grid {
public:
    Grid() = default;
    // Allocates an empty room whose outer border is Wall.
    Grid(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    bool in_bounds(Position p) const { return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_; }

    const std::optional<WorldObject>& at(Position p) const;
    WorldObject* object_at(Position p);
    const WorldObject* object_at(Position p) const;
    void set(Position p, WorldObject obj);
    void clear(Position p);
    bool empty_at(Position p) const { return in_bounds(p) && !at(p).has_value() && !marble_at(p); }

    const std::optional<Marble>& marble() const { return marble_; }
    std::optional<Marble>& marble() { return marble_; }
    bool marble_at(Position p) const { return marble_ && marble_->pos == p; }

    // Floor or passable object, ignoring actors; the marble blocks.
    bool agent_can_enter(Position p) const;
    bool opaque(Position p) const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::optional<WorldObject>> cells_;
    std::optional<Marble> marble_;
};

// ---------------------------------------------------------------------------
// Cell encoding

inline constexpr int kViewSize = 7;
inline constexpr int kChannels = 8;

using CellEncoding = std::array<std::uint8_t, kChannels>;
using View = std::array<std::array<CellEncoding, kViewSize>, kViewSize>;  // [row][col], row 0 farthest

// Visible part of a plain object.
struct ObjectAppearance {
    ObjectKind kind = ObjectKind::Wall;
    Color color = Color::Grey;
    std::uint8_t state = 0;
    friend bool operator==(const ObjectAppearance&, const ObjectAppearance&) = default;
};

// Relative direction codes used for peer gaze and pointing in the viewer's frame.
enum class RelDir : std::uint8_t { None = 0, Left = 1, Right = 2, Toward = 3, Away = 4 };

RelDir relative_to_viewer(Direction viewer, Direction d);

struct PeerAppearance {
    Color color = Color::Purple;
    std::uint8_t kind_social = 0;  // 0 cooperative, 1 competitive
    RelDir gaze = RelDir::Toward;
    RelDir point = RelDir::None;
    std::uint8_t last_action = 0;
    friend bool operator==(const PeerAppearance&, const PeerAppearance&) = default;
};

using CellContent = std::variant<std::monostate, ObjectAppearance, PeerAppearance>;

CellEncoding encode(const CellContent& c);
CellEncoding encode(const WorldObject& o);
CellEncoding encode(const Marble& m);
// Throws std::invalid_argument on an unknown type id.
CellContent decode(const CellEncoding& e);

// An actor drawn on top of the grid in a rendered view.
struct ActorMark {
    Position pos;
    CellEncoding enc;
};

// ---------------------------------------------------------------------------
// Geometry and physics

// World cell seen at view (row, col) for the given pose.
Position view_to_world(const AgentPose& pose, int row, int col);
// (forward, lateral) of a world cell in the pose's frame.
std::pair<int, int> world_to_frame(const AgentPose& pose, Position p);
bool in_view_rect(const AgentPose& pose, Position p);

// True iff no opaque cell lies strictly between a and b on the discrete ray.
bool line_of_sight(const Grid& grid, Position a, Position b);

// Whether `target` is inside the 7x7 region in front of `pose` and not occluded.
bool sees(const Grid& grid, const AgentPose& pose, Position target);

View field_of_view(const Grid& grid, const AgentPose& pose, std::span<const ActorMark> actors = {});

enum class Primitive : std::uint8_t { NoOp = 0, TurnLeft = 1, TurnRight = 2, Forward = 3, Toggle = 4, Done = 5 };
inline constexpr int kPrimitiveCount = 6;

enum class MarbleEvent : std::uint8_t { None, Moved, Stopped, GeneratorHit };

struct MarbleOutcome {
    MarbleEvent event = MarbleEvent::None;
    Position generator;  // valid for GeneratorHit
};

struct MoveOutcome {
    AgentPose pose;
    bool pushed = false;             // forward into the marble
    std::optional<Position> bumped;  // forward blocked by an object at this cell
    MarbleOutcome marble;
};

// Turns and forward motion. `occupied` lists cells held by other actors.
MoveOutcome step_move(Grid& grid, const AgentPose& pose, Primitive action, std::span<const Position> occupied = {});

// Pushes the marble in `dir`: a marble-passable cell ahead gives it momentum,
// an adjacent MarbleGenerator activates on contact, anything else blocks it.
MarbleOutcome push_marble(Grid& grid, Direction dir, std::span<const Position> occupied = {});

// One tick of marble momentum.
MarbleOutcome advance_marble(Grid& grid, std::span<const Position> occupied = {});

enum class ToggleKind : std::uint8_t {
    None,
    BoxOpened,
    AppleRevealed,
    SwitchToggled,
    LeverActivated,
    DoorOpened,
    AppleEaten,
};

struct ToggleEffect {
    ToggleKind kind = ToggleKind::None;
    Position at;
};

// Raw object mechanics on the faced cell; rule gating lives in the env layer.
ToggleEffect toggle(Grid& grid, const AgentPose& pose);
ToggleEffect toggle_at(Grid& grid, Position p);

// Generators switch on when pushed (apple generators) or hit by the marble.
bool activate_generator(Grid& grid, Position p);

}  // namespace socialai
