#include <algorithm>
#include <array>
#include <deque>

#include "socialai/env.hpp"
#include "socialai/errors.hpp"
#include "socialai/peer.hpp"
#include "socialai/planner.hpp"

namespace socialai {

namespace {

constexpr int kInfoWidth = 10;
constexpr int kInfoHeight = 10;
constexpr int kCollabWidth = 14;
constexpr int kCollabHeight = 10;
constexpr int kFenceX = 7;
constexpr int kMaxAttempts = 2000;

constexpr std::array<Color, 6> kObjectColors = {Color::Red,    Color::Green,  Color::Blue,
                                                Color::Purple, Color::Yellow, Color::Brown};
constexpr std::array<Direction, 4> kDirections = {Direction::East, Direction::South, Direction::West,
                                                  Direction::North};

struct Region {
    int x0, x1, y0, y1;
    bool contains(Position p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
};

// Layout under construction; a failed placement rejects the whole attempt.
struct Builder {
    EnvState s;
    Rng& rng;
    std::vector<Position> needs_access;  // objects some actor must be able to stand next to
    std::vector<Position> must_reach;    // cells some actor must be able to stand on
    std::vector<Position> extra_origins; // reachability origins besides the actors
    bool failed = false;

    Builder(EnvState state, Rng& r) : s(std::move(state)), rng(r) {}

    Grid& grid() { return s.world.grid; }

    bool reserved(Position p) const { return is_reserved(s, p); }

    void reserve(Position p) {
        if (!reserved(p)) s.reserved.push_back(p);
    }

    std::optional<Position> free_cell(const Region& r, bool allow_reserved = false) {
        std::vector<Position> cells;
        for (int y = r.y0; y <= r.y1; ++y)
            for (int x = r.x0; x <= r.x1; ++x) {
                const Position p{x, y};
                if (grid().empty_at(p) && (allow_reserved || !reserved(p))) cells.push_back(p);
            }
        if (cells.empty()) {
            failed = true;
            return std::nullopt;
        }
        return cells[rng.index(cells.size())];
    }

    std::optional<Position> place(const Region& r, WorldObject o) {
        const auto p = free_cell(r);
        if (!p) return std::nullopt;
        grid().set(*p, o);
        needs_access.push_back(*p);
        return p;
    }

    std::vector<Color> colors(std::size_t n) {
        std::vector<Color> c(kObjectColors.begin(), kObjectColors.end());
        rng.shuffle(c);
        c.resize(n);
        return c;
    }

    AgentPose random_pose(Position p) { return {p, kDirections[rng.index(4)]}; }

    int add_group(ChoiceGroup g) {
        s.world.groups.push_back(std::move(g));
        return static_cast<int>(s.world.groups.size()) - 1;
    }
};

// Floor reachable from `start` through open doors only.
std::vector<bool> component(const Grid& g, Position start, const std::vector<Position>& blocked) {
    std::vector<bool> seen(static_cast<std::size_t>(g.width() * g.height()), false);
    auto id = [&](Position p) { return static_cast<std::size_t>(p.y * g.width() + p.x); };
    auto open = [&](Position p) {
        if (!g.in_bounds(p) || g.marble_at(p)) return false;
        if (std::find(blocked.begin(), blocked.end(), p) != blocked.end()) return false;
        const WorldObject* o = g.object_at(p);
        return o == nullptr || agent_passable(*o);
    };
    std::deque<Position> q{start};
    seen[id(start)] = true;
    while (!q.empty()) {
        const Position c = q.front();
        q.pop_front();
        for (Direction d : kDirections) {
            const Position n = step_toward(c, d);
            if (open(n) && !seen[id(n)]) {
                seen[id(n)] = true;
                q.push_back(n);
            }
        }
    }
    return seen;
}

bool check_access(const Builder& b) {
    const Grid& g = b.s.world.grid;
    std::vector<bool> reach(static_cast<std::size_t>(g.width() * g.height()), false);
    auto merge = [&](Position from, const std::vector<Position>& blocked) {
        const auto c = component(g, from, blocked);
        for (std::size_t i = 0; i < c.size(); ++i) reach[i] = reach[i] || c[i];
    };
    merge(b.s.agent.pos, {});
    if (b.s.peer) merge(b.s.peer->pose.pos, {});
    for (Position p : b.extra_origins) merge(p, {});
    auto at = [&](Position p) { return g.in_bounds(p) && reach[static_cast<std::size_t>(p.y * g.width() + p.x)]; };
    for (Position p : b.must_reach)
        if (!at(p)) return false;
    for (Position p : b.needs_access) {
        bool ok = false;
        for (Direction d : kDirections) ok = ok || at(step_toward(p, d));
        if (!ok) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Information seeking

// Alcove in the top row: item at (x,1) between walls, entrance at (x,2).
void alcove(Builder& b, int x, std::optional<WorldObject> item, WorldObject entrance) {
    Grid& g = b.grid();
    g.set({x - 1, 1}, make_wall());
    g.set({x + 1, 1}, make_wall());
    if (item) g.set({x, 1}, *item);
    g.set({x, 2}, entrance);
    b.reserve({x, 1});
    b.reserve({x, 2});
    b.reserve({x, 3});
    b.must_reach.push_back({x, 3});
}

// Marble with generators k cells away in distinct directions and free lanes.
bool place_marble_rig(Builder& b, const Region& r, const std::vector<Color>& colors, std::vector<Position>& gens) {
    Grid& g = b.grid();
    const auto m = b.free_cell(r);
    if (!m) return false;
    std::vector<Direction> dirs(kDirections.begin(), kDirections.end());
    b.rng.shuffle(dirs);
    std::vector<Position> lanes{*m};
    for (Direction d : dirs) {
        if (gens.size() == colors.size()) break;
        const int k = b.rng.uniform_int(2, 3);
        const Position gen = step_toward(*m, d, k);
        const Position push = step_toward(*m, opposite(d));
        if (!r.contains(gen) || !r.contains(push) || !g.empty_at(gen) || !g.empty_at(push)) continue;
        bool clear = true;
        for (int i = 1; i < k; ++i) clear = clear && g.empty_at(step_toward(*m, d, i));
        if (!clear) continue;
        g.set(gen, make_object(ObjectKind::MarbleGenerator, colors[gens.size()]));
        gens.push_back(gen);
        for (int i = 1; i < k; ++i) lanes.push_back(step_toward(*m, d, i));
        lanes.push_back(push);
        b.must_reach.push_back(push);
    }
    if (gens.size() != colors.size()) return false;
    g.marble() = Marble{*m, Color::Green, std::nullopt};
    for (Position p : lanes) b.reserve(p);
    for (Position p : gens) b.needs_access.push_back(p);
    return true;
}

void platform_with_triggers(Builder& b, const Region& r, const std::vector<Position>& sources) {
    const auto p = b.place(r, make_object(ObjectKind::Platform, Color::Grey));
    if (!p) return;
    for (Position src : sources) b.s.world.triggers.push_back({src, {*p}});
}

bool build_info(Builder& b) {
    const EnvParams& prm = b.s.params;
    const int n = prm.n_objects;
    const Region room{1, kInfoWidth - 2, 1, kInfoHeight - 2};
    Grid& g = b.grid();
    const auto cols = b.colors(static_cast<std::size_t>(n) + 1);
    const std::vector<Color> cand_colors(cols.begin(), cols.begin() + n);
    const int correct = b.rng.uniform_int(0, n - 1);
    ChoiceGroup grp;
    grp.correct = correct;

    switch (prm.problem) {
        case Problem::Boxes:
            for (int i = 0; i < n; ++i) {
                WorldObject box = make_object(ObjectKind::LockableBox, cand_colors[i], obj_state::kClosed);
                box.holds_apple = i == correct;
                const auto p = b.place(room, box);
                if (!p) return false;
                grp.candidates.push_back(*p);
            }
            break;
        case Problem::Switches: {
            WorldObject box = make_object(ObjectKind::LockableBox, cols[static_cast<std::size_t>(n)], obj_state::kLocked);
            box.holds_apple = true;
            const auto bp = b.place(room, box);
            if (!bp) return false;
            for (int i = 0; i < n; ++i) {
                WorldObject sw = make_object(ObjectKind::Switch, cand_colors[i]);
                sw.link = *bp;
                const auto p = b.place(room, sw);
                if (!p) return false;
                grp.candidates.push_back(*p);
            }
            break;
        }
        case Problem::Levers: {
            const int x = b.rng.uniform_int(2, kInfoWidth - 3);
            alcove(b, x, make_apple(), make_object(ObjectKind::RemoteDoor, cols[static_cast<std::size_t>(n)]));
            for (int i = 0; i < n; ++i) {
                WorldObject lever = make_object(ObjectKind::Lever, cand_colors[i]);
                lever.link = Position{x, 2};
                const auto p = b.place(room, lever);
                if (!p) return false;
                grp.candidates.push_back(*p);
            }
            break;
        }
        case Problem::Doors: {
            std::vector<int> xs;
            for (int tries = 0; static_cast<int>(xs.size()) < n && tries < 50; ++tries) {
                const int x = b.rng.uniform_int(2, kInfoWidth - 3);
                if (std::all_of(xs.begin(), xs.end(), [&](int o) { return std::abs(o - x) >= 2; })) xs.push_back(x);
            }
            if (static_cast<int>(xs.size()) < n) return false;
            for (int i = 0; i < n; ++i) {
                std::optional<WorldObject> item;
                if (i == correct) item = make_apple();
                alcove(b, xs[static_cast<std::size_t>(i)], item,
                       make_object(ObjectKind::Door, cand_colors[i], obj_state::kClosed));
                grp.candidates.push_back({xs[static_cast<std::size_t>(i)], 2});
            }
            break;
        }
        case Problem::Generators: {
            for (int i = 0; i < n; ++i) {
                const auto p = b.place(room, make_object(ObjectKind::AppleGenerator, cand_colors[i]));
                if (!p) return false;
                grp.candidates.push_back(*p);
            }
            platform_with_triggers(b, room, grp.candidates);
            break;
        }
        case Problem::Marble: {
            std::vector<Position> gens;
            if (!place_marble_rig(b, room, cand_colors, gens)) return false;
            grp.candidates = gens;
            platform_with_triggers(b, room, gens);
            break;
        }
        default: throw ConfigError("unsupported InformationSeeking problem");
    }
    if (b.failed) return false;
    b.s.main_group = b.add_group(grp);
    b.s.agent_plan.target_group = b.s.main_group;

    const auto ap = b.free_cell(room);
    if (!ap) return false;
    b.s.agent = b.random_pose(*ap);
    if (prm.peer) {
        const auto pp = b.free_cell(room);
        if (!pp || *pp == *ap) return false;
        PeerState peer;
        peer.pose = b.random_pose(*pp);
        b.s.peer = peer;
    }
    if (!check_access(b)) return false;

    if (b.s.peer) {
        // Somewhere to make eye contact from, and somewhere to point from.
        const Position pp = b.s.peer->pose.pos;
        if (!component(g, b.s.agent.pos, {})[static_cast<std::size_t>(pp.y * g.width() + pp.x)]) return false;
        const auto reach = component(g, b.s.agent.pos, {pp});
        bool contact = false;
        for (Direction d : kDirections)
            for (Position c = step_toward(b.s.peer->pose.pos, d); g.in_bounds(c) && !contact; c = step_toward(c, d)) {
                if (g.opaque(c) || (g.object_at(c) != nullptr && !agent_passable(*g.object_at(c)))) break;
                contact = reach[static_cast<std::size_t>(c.y * g.width() + c.x)];
            }
        if (!contact) return false;
        if (prm.cue == Cue::Pointing && !prm.help) {
            const auto peer_reach = component(g, b.s.peer->pose.pos, {});
            const auto cells = pointing_cells(b.s, b.s.main_group);
            if (std::none_of(cells.begin(), cells.end(), [&](const auto& cd) {
                    return peer_reach[static_cast<std::size_t>(cd.first.y * g.width() + cd.first.x)];
                }))
                return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Collaboration

const Region kLeft{1, kFenceX - 1, 1, kCollabHeight - 2};
const Region kRight{kFenceX + 1, kCollabWidth - 2, 1, kCollabHeight - 2};

struct RolePlans {
    Plan first;   // left side
    Plan second;  // right side
};

bool build_lever_door(Builder& b, RolePlans& plans, bool pre_done) {
    Grid& g = b.grid();
    const int x = b.rng.uniform_int(kRight.x0 + 1, kRight.x1 - 1);
    const auto cols = b.colors(3);
    const Position gen{x, 1};
    const Position door{x, 2};
    g.set({x - 1, 1}, make_wall());
    g.set({x + 1, 1}, make_wall());
    g.set(gen, make_object(ObjectKind::AppleGenerator, cols[0]));
    g.set(door, make_object(ObjectKind::RemoteDoor, cols[1], pre_done ? obj_state::kOpen : obj_state::kClosed));
    for (Position p : {gen, door, Position{x, 3}}) b.reserve(p);
    b.must_reach.push_back({x, 3});

    WorldObject lever = make_object(ObjectKind::Lever, cols[2], pre_done ? obj_state::kActivated : obj_state::kUnactivated);
    lever.link = door;
    const auto lp = b.place(kLeft, lever);
    if (!lp) return false;
    const auto left_platform = b.place(kLeft, make_object(ObjectKind::Platform, Color::Grey));
    const auto right_platform = b.place(kRight, make_object(ObjectKind::Platform, Color::Grey));
    if (!left_platform || !right_platform) return false;
    b.s.world.triggers.push_back({gen, {*left_platform, *right_platform}});

    plans.first.target = *lp;
    plans.second.target = gen;
    plans.second.wait_pose = AgentPose{{x, 3}, Direction::North};
    return true;
}

bool build_marble_push(Builder& b, RolePlans& plans, bool pre_done) {
    Grid& g = b.grid();
    const int xd = b.rng.uniform_int(kRight.x0 + 1, kRight.x1 - 1);
    const auto cols = b.colors(2);
    constexpr int kWallY = 4;
    for (int x = kRight.x0; x <= kRight.x1; ++x)
        if (x != xd) g.set({x, kWallY}, make_wall());
    const Position door{xd, kWallY};
    const Position gen{xd, 2};
    g.set(door, make_object(ObjectKind::RemoteDoor, cols[0], pre_done ? obj_state::kOpen : obj_state::kClosed));
    g.set(gen, make_object(ObjectKind::MarbleGenerator, cols[1]));
    g.marble() = Marble{{xd, 6}, Color::Green, std::nullopt};
    for (int y = 3; y <= 7; ++y) b.reserve({xd, y});
    b.must_reach.push_back({xd, 7});

    WorldObject lever = make_object(ObjectKind::Lever, cols[0], pre_done ? obj_state::kActivated : obj_state::kUnactivated);
    lever.link = door;
    const auto lp = b.place(kLeft, lever);
    if (!lp) return false;
    const auto left_platform = b.place(kLeft, make_object(ObjectKind::Platform, Color::Grey));
    const auto right_platform = b.place({kRight.x0, kRight.x1, kWallY + 1, kRight.y1}, make_object(ObjectKind::Platform, Color::Grey));
    if (!left_platform || !right_platform) return false;
    b.s.world.triggers.push_back({gen, {*left_platform, *right_platform}});

    plans.first.target = *lp;
    plans.second.target = gen;
    plans.second.wait_pose = AgentPose{{xd, 7}, Direction::North};
    return true;
}

bool build_marble_pass(Builder& b, RolePlans& plans, bool pre_done) {
    Grid& g = b.grid();
    const int r = b.rng.uniform_int(3, kCollabHeight - 3);
    const int xm = b.rng.uniform_int(kLeft.x0 + 1, kLeft.x1 - 1);
    const Position rest{kRight.x1, r};
    const Position gen{kRight.x1, 1};
    g.set(gen, make_object(ObjectKind::MarbleGenerator, b.colors(1)[0]));
    g.marble() = Marble{pre_done ? rest : Position{xm, r}, Color::Green, std::nullopt};
    for (int x = xm - 1; x <= kRight.x1; ++x) b.reserve({x, r});
    for (int y = 2; y <= r + 1; ++y) b.reserve({kRight.x1, y});
    if (!pre_done) b.must_reach.push_back({xm - 1, r});
    b.must_reach.push_back({kRight.x1, r + 1});

    const auto left_platform = b.place(kLeft, make_object(ObjectKind::Platform, Color::Grey));
    const auto right_platform = b.place(kRight, make_object(ObjectKind::Platform, Color::Grey));
    if (!left_platform || !right_platform) return false;
    b.s.world.triggers.push_back({gen, {*left_platform, *right_platform}});
    // The push cell must stay reachable once the marble rests in front of it.
    const Position lane_end{kRight.x1 - 1, r};
    if (!component(g, {kRight.x1, r + 1}, {rest})[static_cast<std::size_t>(lane_end.y * g.width() + lane_end.x)])
        return false;

    plans.first.marble_dest = rest;
    plans.second.target = gen;
    plans.second.wait_pose = AgentPose{{kRight.x1, r + 1}, Direction::North};
    return true;
}

// Left side: two boxes, both with apples; the one opened first picks the
// color of the object to use on the right side.
bool build_color_match(Builder& b, RolePlans& plans, bool asocial, bool agent_first) {
    Grid& g = b.grid();
    const auto cols = b.colors(3);
    ChoiceGroup left;
    left.any_correct = true;
    for (int i = 0; i < 2; ++i) {
        WorldObject box = make_object(ObjectKind::LockableBox, cols[static_cast<std::size_t>(i)], obj_state::kClosed);
        box.holds_apple = true;
        const auto p = b.place(kLeft, box);
        if (!p) return false;
        left.candidates.push_back(*p);
    }

    ChoiceGroup right;
    switch (b.s.params.problem) {
        case Problem::Boxes:
            for (int i = 0; i < 2; ++i) {
                WorldObject box = make_object(ObjectKind::LockableBox, cols[static_cast<std::size_t>(i)], obj_state::kClosed);
                box.holds_apple = true;
                const auto p = b.place(kRight, box);
                if (!p) return false;
                right.candidates.push_back(*p);
            }
            break;
        case Problem::Switches: {
            WorldObject box = make_object(ObjectKind::LockableBox, cols[2], obj_state::kLocked);
            box.holds_apple = true;
            const auto bp = b.place(kRight, box);
            if (!bp) return false;
            for (int i = 0; i < 2; ++i) {
                WorldObject sw = make_object(ObjectKind::Switch, cols[static_cast<std::size_t>(i)]);
                sw.link = *bp;
                const auto p = b.place(kRight, sw);
                if (!p) return false;
                right.candidates.push_back(*p);
            }
            break;
        }
        case Problem::Generators:
            for (int i = 0; i < 2; ++i) {
                const auto p = b.place(kRight, make_object(ObjectKind::AppleGenerator, cols[static_cast<std::size_t>(i)]));
                if (!p) return false;
                right.candidates.push_back(*p);
            }
            platform_with_triggers(b, kRight, right.candidates);
            break;
        case Problem::Marble: {
            std::vector<Position> gens;
            if (!place_marble_rig(b, kRight, {cols[0], cols[1]}, gens)) return false;
            right.candidates = gens;
            platform_with_triggers(b, kRight, gens);
            break;
        }
        default: throw ConfigError("unsupported color-matching problem");
    }
    if (b.failed) return false;

    const int li = b.add_group(left);
    right.correct.reset();
    const int ri = b.add_group(right);
    b.s.world.groups[static_cast<std::size_t>(li)].decides = ri;
    b.s.main_group = ri;

    if (asocial) {
        // The box side is already done: one box stands open and empty.
        const int pick = b.rng.uniform_int(0, 1);
        auto& lg = b.s.world.groups[static_cast<std::size_t>(li)];
        WorldObject* box = g.object_at(lg.candidates[static_cast<std::size_t>(pick)]);
        box->state = obj_state::kOpen;
        box->holds_apple = false;
        lg.correct = pick;
        lg.resolved = pick;
        auto& rg = b.s.world.groups[static_cast<std::size_t>(ri)];
        for (std::size_t i = 0; i < rg.candidates.size(); ++i)
            if (g.object_at(rg.candidates[i])->color == box->color) rg.correct = static_cast<int>(i);
    } else {
        const int pick = agent_first ? 0 : b.rng.uniform_int(0, 1);
        plans.first.target = b.s.world.groups[static_cast<std::size_t>(li)].candidates[static_cast<std::size_t>(pick)];
    }
    plans.second.target_group = ri;
    return true;
}

bool build_collab(Builder& b) {
    const EnvParams& prm = b.s.params;
    const bool asocial = prm.version == Version::Asocial;
    const bool agent_first = !asocial && prm.role == Role::A;
    b.grid() = Grid(kCollabWidth, kCollabHeight);
    for (int y = 1; y < kCollabHeight - 1; ++y) b.grid().set({kFenceX, y}, make_object(ObjectKind::Fence, Color::Grey));

    RolePlans plans;
    bool ok = false;
    switch (prm.problem) {
        case Problem::LeverDoor: ok = build_lever_door(b, plans, asocial); break;
        case Problem::MarblePush: ok = build_marble_push(b, plans, asocial); break;
        case Problem::MarblePass: ok = build_marble_pass(b, plans, asocial); break;
        default: ok = build_color_match(b, plans, asocial, agent_first); break;
    }
    if (!ok || b.failed) return false;

    const auto lp = b.free_cell(kLeft);
    const auto rp = b.free_cell(kRight);
    if (!lp || !rp) return false;
    if (agent_first) {
        b.s.agent = b.random_pose(*lp);
        b.s.agent_plan = plans.first;
    } else {
        b.s.agent = b.random_pose(*rp);
        b.s.agent_plan = plans.second;
    }
    if (asocial) {
        b.extra_origins.push_back(*lp);
    } else {
        PeerState peer;
        peer.pose = b.random_pose(agent_first ? *rp : *lp);
        peer.plan = agent_first ? plans.second : plans.first;
        b.s.peer = peer;
    }
    return check_access(b);
}

// ---------------------------------------------------------------------------
// Adversarial peer

int seen_orientations(const Grid& g, Position peer, Position cell) {
    int n = 0;
    for (Direction d : kDirections) n += sees(g, {peer, d}, cell) ? 1 : 0;
    return n;
}

bool build_adversarial(Builder& b) {
    const Region room{1, kInfoWidth - 2, 1, kInfoHeight - 2};
    Grid& g = b.grid();
    const auto apple = b.place(room, make_apple());
    if (!apple) return false;
    for (int i = 0; i < b.s.params.obstacles; ++i)
        if (!b.place(room, make_object(ObjectKind::Occluder, Color::Grey))) return false;
    b.needs_access.resize(1);

    std::vector<Position> peer_cells;
    for (int y = room.y0; y <= room.y1; ++y)
        for (int x = room.x0; x <= room.x1; ++x)
            if (g.empty_at({x, y}) && chebyshev({x, y}, *apple) >= 2) peer_cells.push_back({x, y});
    if (peer_cells.empty()) return false;
    PeerState peer;
    peer.pose = b.random_pose(peer_cells[b.rng.index(peer_cells.size())]);
    peer.kind_social = 1;
    b.s.peer = peer;

    const auto ap = b.free_cell(room);
    if (!ap || *ap == peer.pose.pos) return false;
    b.s.agent = b.random_pose(*ap);
    if (!check_access(b)) return false;

    const auto reach = component(g, b.s.agent.pos, {peer.pose.pos});
    for (Direction d : kDirections) {
        const Position c = step_toward(*apple, d);
        if (!g.in_bounds(c) || !reach[static_cast<std::size_t>(c.y * g.width() + c.x)]) continue;
        if (seen_orientations(g, peer.pose.pos, c) <= 2) return true;
    }
    return false;
}

}  // namespace

EnvState build_env(const EnvParams& params, std::uint64_t seed) {
    validate(params);
    Rng layout_rng(seed);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        EnvState base;
        base.params = params;
        base.seed = seed;
        base.world.grid = Grid(kInfoWidth, kInfoHeight);
        Builder b(std::move(base), layout_rng);
        bool ok = false;
        switch (params.env_type) {
            case EnvType::InformationSeeking: ok = build_info(b); break;
            case EnvType::Collaboration: ok = build_collab(b); break;
            case EnvType::AdversarialPeer: ok = build_adversarial(b); break;
        }
        if (!ok || b.failed) continue;

        EnvState s = std::move(b.s);
        s.initial_world = s.world;
        s.rng = Rng(seed).fork(1);
        if (!s.peer || s.params.env_type != EnvType::InformationSeeking) s.intro_satisfied = true;
        else if (s.params.intro == Intro::No) s.intro_satisfied = true;
        else if (s.params.intro == Intro::EyeContact) s.intro_satisfied = eye_contact(s);
        peer_reset(s);
        return s;
    }
    throw StateError("no valid layout found for " + describe(params));
}

}  // namespace socialai
