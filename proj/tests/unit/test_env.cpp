#include <doctest.h>

#include "helpers.hpp"
#include "socialai/env.hpp"
#include "socialai/errors.hpp"
#include "socialai/peer.hpp"
#include "socialai/policies.hpp"

using namespace socialai;

namespace {

AgentAction act(Primitive p) { return AgentAction{p, std::nullopt}; }

AgentAction say(int t, int n) { return AgentAction{Primitive::NoOp, Utterance{t, n}}; }

EnvParams boxes_params(Cue cue, Intro intro = Intro::No) {
    EnvParams p;
    p.problem = Problem::Boxes;
    p.n_objects = 2;
    p.cue = cue;
    p.intro = intro;
    return p;
}

// bare_state with a peer at `pos` facing `dir` that never acts.
EnvState with_idle_peer(EnvState s, Position pos, Direction dir) {
    s.params.peer = true;
    s.params.version = Version::Social;
    PeerState peer;
    peer.pose = {pos, dir};
    peer.phase = PeerPhase::None;
    s.peer = peer;
    return s;
}

// Two boxes at (3,1) and (3,3); the first is the usable one.
EnvState two_box_state() {
    EnvState s = test::bare_state(6, 6);
    s.world.grid.set({3, 1}, test::box_with_apple(Color::Red));
    s.world.grid.set({3, 3}, test::box_with_apple(Color::Blue));
    ChoiceGroup g;
    g.candidates = {{3, 1}, {3, 3}};
    g.correct = 0;
    s.world.groups.push_back(g);
    s.main_group = 0;
    s.agent = {{2, 2}, Direction::North};
    s.initial_world = s.world;
    return s;
}

}  // namespace

TEST_CASE("success reward schedule") {
    CHECK(success_reward(0) == doctest::Approx(1.0));
    CHECK(success_reward(20) == doctest::Approx(0.775));
    CHECK(success_reward(kMaxSteps) == doctest::Approx(0.1));
    for (int t = 1; t <= kMaxSteps; ++t) CHECK(success_reward(t) < success_reward(t - 1));
}

TEST_CASE("layouts are deterministic in parameters and seed") {
    const EnvParams p = boxes_params(Cue::Pointing, Intro::EyeContact);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const EnvState a = build_env(p, seed);
        const EnvState b = build_env(p, seed);
        CHECK(a.world == b.world);
        CHECK(a.agent == b.agent);
        CHECK(a.peer == b.peer);
        CHECK(observation_hash(a) == observation_hash(b));
    }
    CHECK_FALSE(build_env(p, 1).world == build_env(p, 2).world);
}

TEST_CASE("an episode times out after the step limit with no reward") {
    Env env(test::bare_state(6, 6));
    StepResult r;
    for (int i = 0; i < kMaxSteps; ++i) {
        REQUIRE_FALSE(env.done());
        r = env.step(act(Primitive::NoOp));
        CHECK(r.reward == 0.0);
    }
    CHECK(r.done);
    CHECK(env.state().step == kMaxSteps);
    CHECK_THROWS_AS(env.step(act(Primitive::NoOp)), StateError);
}

TEST_CASE("the done action ends the episode unrewarded") {
    Env env(test::bare_state(6, 6));
    const StepResult r = env.step(act(Primitive::Done));
    CHECK(r.done);
    CHECK(r.reward == 0.0);
    CHECK_FALSE(r.info.success);
}

TEST_CASE("eating an apple succeeds with the scheduled reward") {
    EnvState s = test::bare_state(6, 6);
    s.world.grid.set({2, 1}, make_apple());
    Env env(s);
    env.step(act(Primitive::NoOp));
    const StepResult r = env.step(act(Primitive::Toggle));
    CHECK(r.done);
    CHECK(r.info.success);
    CHECK(r.reward == doctest::Approx(success_reward(2)));
}

TEST_CASE("eye contact requires mutual facing on a clear axis") {
    EnvState s = with_idle_peer(test::bare_state(8, 6), {4, 1}, Direction::West);
    CHECK(eye_contact(s));
    s.peer->pose.dir = Direction::North;
    CHECK_FALSE(eye_contact(s));
    s.peer->pose.dir = Direction::West;
    s.agent.dir = Direction::South;
    CHECK_FALSE(eye_contact(s));
    s.agent.dir = Direction::East;
    s.world.grid.set({3, 1}, make_wall());
    CHECK_FALSE(eye_contact(s));
    s.world.grid.clear({3, 1});
    s.peer->pose.pos = {4, 2};
    CHECK_FALSE(eye_contact(s));
}

TEST_CASE("introduction predicates") {
    const EnvState base = with_idle_peer(test::bare_state(8, 6), {4, 1}, Direction::West);
    auto fresh = [&](Intro intro, bool facing) {
        EnvState s = base;
        s.params.intro = intro;
        s.intro_satisfied = false;
        if (!facing) s.peer->pose.dir = Direction::North;
        return Env(s);
    };
    SUBCASE("ask") {
        Env env = fresh(Intro::Ask, false);
        env.step(say(0, 1));
        CHECK_FALSE(env.state().intro_satisfied);
        env.step(say(1, 1));
        CHECK_FALSE(env.state().intro_satisfied);
        env.step(say(1, 0));
        CHECK(env.state().intro_satisfied);
    }
    SUBCASE("eye contact") {
        Env env = fresh(Intro::EyeContact, true);
        env.step(act(Primitive::NoOp));
        CHECK(env.state().intro_satisfied);
        Env away = fresh(Intro::EyeContact, false);
        away.step(act(Primitive::NoOp));
        CHECK_FALSE(away.state().intro_satisfied);
    }
    SUBCASE("ask with eye contact needs both at once") {
        Env env = fresh(Intro::AskEyeContact, false);
        env.step(say(1, 0));
        CHECK_FALSE(env.state().intro_satisfied);
        Env both = fresh(Intro::AskEyeContact, true);
        both.step(act(Primitive::NoOp));
        CHECK_FALSE(both.state().intro_satisfied);
        both.step(say(1, 0));
        CHECK(both.state().intro_satisfied);
    }
    SUBCASE("intro satisfaction is sticky") {
        Env env = fresh(Intro::Ask, false);
        env.step(say(1, 0));
        env.step(act(Primitive::NoOp));
        env.step(say(0, 0));
        CHECK(env.state().intro_satisfied);
    }
}

TEST_CASE("using the wrong candidate blocks the group for the episode") {
    Env env(two_box_state());
    env.step(act(Primitive::TurnRight));  // East, facing (3,2): empty
    env.step(act(Primitive::TurnRight));  // South
    env.step(act(Primitive::Forward));    // (2,3)
    env.step(act(Primitive::TurnLeft));   // East, facing the blue box
    const StepResult r = env.step(act(Primitive::Toggle));
    CHECK(r.info.blocked);
    CHECK(env.state().world.grid.object_at({3, 3})->state == obj_state::kClosed);
    // The right box no longer opens either.
    env.step(act(Primitive::TurnLeft));
    env.step(act(Primitive::Forward));
    env.step(act(Primitive::Forward));
    env.step(act(Primitive::TurnRight));
    env.step(act(Primitive::Toggle));
    env.step(act(Primitive::Toggle));
    CHECK(env.state().world.grid.object_at({3, 1})->kind == ObjectKind::LockableBox);
    CHECK_FALSE(env.state().success);
}

TEST_CASE("the right candidate opens and its apple can be eaten") {
    Env env(two_box_state());
    env.step(act(Primitive::Forward));  // (2,1)
    env.step(act(Primitive::TurnRight));
    env.step(act(Primitive::Toggle));
    CHECK(env.state().world.grid.object_at({3, 1})->kind == ObjectKind::Apple);
    const StepResult r = env.step(act(Primitive::Toggle));
    CHECK(r.info.success);
    CHECK_FALSE(r.info.blocked);
    CHECK(r.reward == doctest::Approx(success_reward(4)));
}

TEST_CASE("adversarial peer: eating in its sight ends the episode unrewarded") {
    EnvState s = with_idle_peer(test::bare_state(8, 6), {5, 1}, Direction::West);
    s.params.env_type = EnvType::AdversarialPeer;
    s.world.grid.set({2, 1}, make_apple());
    s.world.grid.set({2, 3}, make_apple());
    SUBCASE("seen") {
        Env env(s);
        const StepResult r = env.step(act(Primitive::Toggle));
        CHECK(r.done);
        CHECK(r.reward == 0.0);
        CHECK_FALSE(r.info.success);
        CHECK(env.state().eaten_while_seen);
    }
    SUBCASE("unseen") {
        s.peer->pose.dir = Direction::East;
        Env env(s);
        const StepResult r = env.step(act(Primitive::Toggle));
        CHECK(r.info.success);
        CHECK(r.reward > 0.0);
    }
}

TEST_CASE("demonstrations: bumping into the object before the demonstration blocks it") {
    EnvState s = with_idle_peer(two_box_state(), {1, 4}, Direction::North);
    s.params.cue = Cue::Imitation;
    s.agent = {{2, 1}, Direction::East};
    Env env(s);
    const StepResult r = env.step(act(Primitive::Forward));
    CHECK(r.info.blocked);
}

TEST_CASE("demonstrations restore the initial world after the peer eats") {
    const EnvParams p = boxes_params(Cue::Imitation);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        CAPTURE(seed);
        Env env(p, seed);
        bool ate = false, restored = false;
        while (!env.done()) {
            env.step(act(Primitive::NoOp));
            const EnvState& st = env.state();
            if (st.peer_meals > 0) ate = true;
            if (ate && st.world == st.initial_world) restored = true;
        }
        CHECK(ate);
        CHECK(restored);
        CHECK_FALSE(env.state().blocked);
    }
}

TEST_CASE("the oracle solves sampled configurations") {
    OraclePolicy oracle;
    for (Cue cue : {Cue::Pointing, Cue::LanguageColor, Cue::LanguageFeedback, Cue::Imitation}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Env env(boxes_params(cue, Intro::AskEyeContact), seed);
            oracle.reset(env.state(), seed);
            while (!env.done()) env.step(oracle.act(env.state()));
            CHECK(env.state().success);
        }
    }
}

TEST_CASE("info mirrors state") {
    Env env(boxes_params(Cue::Pointing), 3);
    const StepResult r = env.step(act(Primitive::NoOp));
    CHECK(r.info == env.info());
    CHECK(r.info.seen == peer_sees_agent(env.state()));
}
