#include "socialai/planner.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

namespace socialai {

namespace {

bool contains(const std::vector<Position>& v, Position p) { return std::find(v.begin(), v.end(), p) != v.end(); }

std::optional<Primitive> approach_do(const EnvState& s, Actor who, const std::vector<Position>& blocked, Position target,
                                     Primitive final_action) {
    const PathStep r = plan_to(s.world.grid, actor_pose(s, who), blocked,
                               [&](const AgentPose& q) { return q.front() == target; });
    if (!r.reachable) return std::nullopt;
    return r.cost == 0 ? final_action : r.first;
}

std::optional<Primitive> push_from(const EnvState& s, Actor who, const std::vector<Position>& blocked, Position marble,
                                   Direction d) {
    const AgentPose push{step_toward(marble, opposite(d)), d};
    const PathStep r =
        plan_to(s.world.grid, actor_pose(s, who), blocked, [&](const AgentPose& q) { return q == push; });
    if (!r.reachable) return std::nullopt;
    return r.cost == 0 ? Primitive::Forward : r.first;
}

bool lane_clear(const EnvState& s, Actor who, Position from, Position to, bool include_end) {
    const auto d = axis_direction(from, to);
    if (!d) return false;
    const Grid& g = s.world.grid;
    const Position other = who == Actor::Agent ? (s.peer ? s.peer->pose.pos : Position{-1, -1}) : s.agent.pos;
    for (Position c = step_toward(from, *d);; c = step_toward(c, *d)) {
        if (c == to && !include_end) return true;
        if (!g.in_bounds(c) || c == other) return false;
        const WorldObject* o = g.object_at(c);
        if (o != nullptr && !marble_passable(*o)) return false;
        if (c == to) return true;
    }
}

std::optional<Primitive> operate_step(const EnvState& s, Actor who, const Plan& plan,
                                      const std::vector<Position>& blocked) {
    const Grid& g = s.world.grid;
    if (plan.marble_dest) {
        const auto& m = g.marble();
        if (!m) return std::nullopt;
        if (m->momentum) return Primitive::NoOp;
        if (m->pos == *plan.marble_dest) return std::nullopt;
        const auto d = axis_direction(m->pos, *plan.marble_dest);
        if (!d || !lane_clear(s, who, m->pos, *plan.marble_dest, true)) return std::nullopt;
        return push_from(s, who, blocked, m->pos, *d);
    }

    std::optional<Position> target = plan.target;
    if (plan.target_group) {
        const auto& grp = s.world.groups.at(static_cast<std::size_t>(*plan.target_group));
        if (grp.blocked) return std::nullopt;
        const auto idx = grp.resolved ? grp.resolved : grp.correct;
        if (!idx) return std::nullopt;
        target = grp.candidates.at(static_cast<std::size_t>(*idx));
    }
    if (!target) return std::nullopt;
    const WorldObject* o = g.object_at(*target);
    if (o == nullptr) return std::nullopt;

    switch (o->kind) {
        case ObjectKind::LockableBox:
            if (o->state == obj_state::kClosed) return approach_do(s, who, blocked, *target, Primitive::Toggle);
            return std::nullopt;
        case ObjectKind::Switch: {
            if (!o->link) return std::nullopt;
            const WorldObject* box = g.object_at(*o->link);
            if (box == nullptr || box->kind != ObjectKind::LockableBox) return std::nullopt;
            if (box->state == obj_state::kLocked) return approach_do(s, who, blocked, *target, Primitive::Toggle);
            if (box->state == obj_state::kClosed) return approach_do(s, who, blocked, *o->link, Primitive::Toggle);
            return std::nullopt;
        }
        case ObjectKind::Lever:
            if (o->state == obj_state::kUnactivated) return approach_do(s, who, blocked, *target, Primitive::Toggle);
            return std::nullopt;
        case ObjectKind::Door:
            if (o->state == obj_state::kClosed) return approach_do(s, who, blocked, *target, Primitive::Toggle);
            return std::nullopt;
        case ObjectKind::AppleGenerator:
            if (o->state == obj_state::kUnactivated) return approach_do(s, who, blocked, *target, Primitive::Forward);
            return std::nullopt;
        case ObjectKind::MarbleGenerator: {
            if (o->state != obj_state::kUnactivated) return std::nullopt;
            const auto& m = g.marble();
            if (!m) return std::nullopt;
            if (m->momentum) return Primitive::NoOp;
            const auto d = axis_direction(m->pos, *target);
            if (!d || !lane_clear(s, who, m->pos, *target, false)) return std::nullopt;
            return push_from(s, who, blocked, m->pos, *d);
        }
        default: return std::nullopt;
    }
}

}  // namespace

namespace {

struct Reach {
    int floor = 0;
    int objects = 0;  // usable objects next to the reachable floor
    friend bool operator==(const Reach&, const Reach&) = default;
};

bool scenery(const WorldObject* o) {
    return o == nullptr || o->kind == ObjectKind::Wall || o->kind == ObjectKind::Fence || o->kind == ObjectKind::Occluder;
}

Reach reach_from(const Grid& g, Position from, std::optional<Position> blocked) {
    std::vector<bool> seen(static_cast<std::size_t>(g.width() * g.height()), false);
    std::vector<bool> touched(seen.size(), false);
    auto id = [&](Position p) { return static_cast<std::size_t>(p.y * g.width() + p.x); };
    std::vector<Position> stack{from};
    seen[id(from)] = true;
    Reach r;
    while (!stack.empty()) {
        const Position c = stack.back();
        stack.pop_back();
        ++r.floor;
        for (Direction d : {Direction::East, Direction::South, Direction::West, Direction::North}) {
            const Position q = step_toward(c, d);
            if (!g.in_bounds(q) || (blocked && q == *blocked)) continue;
            if (!g.agent_can_enter(q)) {
                if ((!scenery(g.object_at(q)) || g.marble_at(q)) && !touched[id(q)]) {
                    touched[id(q)] = true;
                    ++r.objects;
                }
                continue;
            }
            if (seen[id(q)]) continue;
            seen[id(q)] = true;
            stack.push_back(q);
        }
    }
    return r;
}

}  // namespace

bool obstructs(const EnvState& s, Actor other, Position c) {
    const Position from = actor_pose(s, other).pos;
    const Grid& g = s.world.grid;
    if (c == from || !g.agent_can_enter(c)) return false;
    const Reach free = reach_from(g, from, std::nullopt);
    const Reach with = reach_from(g, from, c);
    return with.floor < free.floor - 1 || with.objects < free.objects;
}

bool obstructs_agent(const EnvState& s, Position c) { return obstructs(s, Actor::Agent, c); }

bool is_reserved(const EnvState& s, Position p) { return contains(s.reserved, p); }

const AgentPose& actor_pose(const EnvState& s, Actor who) { return who == Actor::Agent ? s.agent : s.peer->pose; }

PathStep plan_to(const Grid& grid, const AgentPose& start, const std::vector<Position>& blocked, const PoseGoal& goal) {
    PathStep out;
    if (goal(start)) {
        out.reachable = true;
        out.goal = start;
        return out;
    }
    const int w = grid.width();
    const int h = grid.height();
    auto index = [&](const AgentPose& p) {
        return (static_cast<std::size_t>(p.pos.y * w + p.pos.x) << 2) | static_cast<std::size_t>(p.dir);
    };
    std::vector<std::int16_t> dist(static_cast<std::size_t>(w * h * 4), -1);
    std::vector<Primitive> first(dist.size(), Primitive::NoOp);
    std::vector<AgentPose> queue;
    queue.reserve(dist.size());
    queue.push_back(start);
    dist[index(start)] = 0;
    constexpr std::array<Primitive, 3> kMoves = {Primitive::Forward, Primitive::TurnLeft, Primitive::TurnRight};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const AgentPose cur = queue[head];
        const std::size_t ci = index(cur);
        for (Primitive a : kMoves) {
            AgentPose next = cur;
            if (a == Primitive::Forward) {
                const Position f = cur.front();
                if (!grid.agent_can_enter(f) || contains(blocked, f)) continue;
                next.pos = f;
            } else {
                next.dir = a == Primitive::TurnLeft ? turn_left(cur.dir) : turn_right(cur.dir);
            }
            const std::size_t ni = index(next);
            if (dist[ni] >= 0) continue;
            dist[ni] = static_cast<std::int16_t>(dist[ci] + 1);
            first[ni] = head == 0 ? a : first[ci];
            if (goal(next)) {
                out.reachable = true;
                out.first = first[ni];
                out.cost = dist[ni];
                out.goal = next;
                return out;
            }
            queue.push_back(next);
        }
    }
    return out;
}

std::vector<Position> blocked_cells(const EnvState& s, Actor who) {
    std::vector<Position> out;
    if (who == Actor::Peer) out.push_back(s.agent.pos);
    else if (s.peer) out.push_back(s.peer->pose.pos);
    const auto& m = s.world.grid.marble();
    if (m && m->momentum) {
        const Grid& g = s.world.grid;
        for (Position c = step_toward(m->pos, *m->momentum); g.in_bounds(c); c = step_toward(c, *m->momentum)) {
            const WorldObject* o = g.object_at(c);
            if (o != nullptr && !marble_passable(*o)) break;
            out.push_back(c);
        }
    }
    return out;
}

Primitive move_to_cell(const EnvState& s, Actor who, const std::function<bool(Position)>& ok) {
    const PathStep r = plan_to(s.world.grid, actor_pose(s, who), blocked_cells(s, who),
                               [&](const AgentPose& q) { return ok(q.pos); });
    return r.reachable ? r.first : Primitive::NoOp;
}

Primitive wait_step(const EnvState& s, Actor who, const std::optional<AgentPose>& wait_pose) {
    const AgentPose& pose = actor_pose(s, who);
    if (wait_pose) {
        if (pose == *wait_pose) return Primitive::NoOp;
        const PathStep r = plan_to(s.world.grid, pose, blocked_cells(s, who),
                                   [&](const AgentPose& q) { return q == *wait_pose; });
        if (r.reachable) return r.first;
    }
    const auto lane = blocked_cells(s, who);
    auto clear = [&](Position p) { return !is_reserved(s, p) && !contains(lane, p); };
    const Actor other = who == Actor::Agent ? Actor::Peer : Actor::Agent;
    auto roomy = [&](Position p) {
        if (!clear(p)) return false;
        if (s.peer && obstructs(s, other, p)) return false;
        for (Direction d : {Direction::East, Direction::South, Direction::West, Direction::North})
            if (is_reserved(s, step_toward(p, d))) return false;
        return true;
    };
    if (roomy(pose.pos)) return Primitive::NoOp;
    const PathStep r = plan_to(s.world.grid, pose, lane, [&](const AgentPose& q) { return roomy(q.pos); });
    if (r.reachable) return r.first;
    if (!clear(pose.pos)) return move_to_cell(s, who, clear);
    return Primitive::NoOp;
}

Primitive script_step(const EnvState& s, Actor who, const Plan& plan) {
    const auto blocked = blocked_cells(s, who);
    if (plan.may_eat) {
        const Grid& g = s.world.grid;
        const PathStep r = plan_to(g, actor_pose(s, who), blocked, [&](const AgentPose& q) {
            const WorldObject* o = g.object_at(q.front());
            return o != nullptr && o->kind == ObjectKind::Apple && o->state == obj_state::kFresh;
        });
        if (r.reachable) return r.cost == 0 ? Primitive::Toggle : r.first;
    }
    if (auto a = operate_step(s, who, plan, blocked)) return *a;
    return wait_step(s, who, plan.wait_pose);
}

Primitive turn_toward(const AgentPose& from, Position target) {
    const int dx = target.x - from.pos.x;
    const int dy = target.y - from.pos.y;
    if (dx == 0 && dy == 0) return Primitive::NoOp;
    Direction want;
    if (std::abs(dx) >= std::abs(dy)) want = dx > 0 ? Direction::East : Direction::West;
    else want = dy > 0 ? Direction::South : Direction::North;
    if (from.dir == want) return Primitive::NoOp;
    if (turn_left(from.dir) == want) return Primitive::TurnLeft;
    return Primitive::TurnRight;
}

bool apple_accessible_to_agent(const EnvState& s) {
    const Grid& g = s.world.grid;
    return plan_to(g, s.agent, {}, [&](const AgentPose& q) {
               const WorldObject* o = g.object_at(q.front());
               return o != nullptr && o->kind == ObjectKind::Apple && o->state == obj_state::kFresh;
           }).reachable;
}

std::vector<std::pair<Position, Direction>> pointing_cells(const EnvState& s, int group) {
    std::vector<std::pair<Position, Direction>> out;
    const auto& grp = s.world.groups.at(static_cast<std::size_t>(group));
    if (!grp.correct) return out;
    const Position target = grp.candidates.at(static_cast<std::size_t>(*grp.correct));
    const Grid& g = s.world.grid;
    for (int y = 1; y < g.height() - 1; ++y) {
        for (int x = 1; x < g.width() - 1; ++x) {
            const Position c{x, y};
            if (!g.empty_at(c) || is_reserved(s, c)) continue;
            const auto d = axis_direction(c, target);
            if (!d || manhattan(c, target) < 2) continue;
            bool ok = true;
            for (Position p = step_toward(c, *d); p != target; p = step_toward(p, *d))
                if (!g.empty_at(p)) ok = false;
            for (Position p = step_toward(target, *d); ok && g.in_bounds(p); p = step_toward(p, *d))
                if (contains(grp.candidates, p)) ok = false;
            if (ok) out.emplace_back(c, *d);
        }
    }
    return out;
}

}  // namespace socialai
