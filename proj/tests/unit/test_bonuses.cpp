#include <doctest.h>

#include <cmath>

#include "socialai/bonuses.hpp"
#include "socialai/errors.hpp"
#include "socialai/rng.hpp"

using namespace socialai;

TEST_CASE("cbl values at the reference points") {
    EpisodicCounts c;
    const BonusParams p;
    CHECK(c.cbl_bonus("red", p) == doctest::Approx(0.761594).epsilon(1e-6));
    CHECK(c.utterance_count("red") == 1);
    CHECK(c.cbl_bonus("red", p) == doctest::Approx(std::tanh(0.25)));
    CHECK(c.cbl_bonus("blue", BonusParams{1.0, 0.5, 2.0}) == doctest::Approx(0.462117).epsilon(1e-6));
    CHECK(c.cbl_bonus("green", BonusParams{2.0, 1.0, 2.0}) == doctest::Approx(2 * 0.761594).epsilon(1e-6));
}

TEST_CASE("cb sums over unique encodings in the view") {
    EpisodicCounts c;
    const BonusParams p;
    View v{};
    CHECK(c.cb_bonus(v, p) == doctest::Approx(std::tanh(1.0)));
    v[2][3] = CellEncoding{9, 0, 0, 0, 0, 0, 0, 0};
    v[4][1] = CellEncoding{9, 0, 0, 0, 0, 0, 0, 0};
    // One unseen encoding counts once even if it appears twice; the empty cell has N=1.
    CHECK(c.cb_bonus(v, p) == doctest::Approx(std::tanh(1.0 + 0.25)));
    CHECK(c.encoding_count(CellEncoding{}) == 2);
    EpisodicCounts d;
    CHECK(d.cb_bonus(v, p) == doctest::Approx(0.964028).epsilon(1e-6));
}

TEST_CASE("bonus parameters are validated") {
    CHECK_NOTHROW(validate(BonusParams{}));
    CHECK_THROWS_AS(validate(BonusParams{0.0, 1.0, 2.0}), ConfigError);
    CHECK_THROWS_AS(validate(BonusParams{1.0, -1.0, 2.0}), ConfigError);
    CHECK_THROWS_AS(validate(BonusParams{1.0, 1.0, NAN}), ConfigError);
    CHECK_THROWS_AS(validate(BonusParams{INFINITY, 1.0, 2.0}), ConfigError);
}

TEST_CASE("bonus kind names") {
    for (BonusKind k : {BonusKind::None, BonusKind::CB, BonusKind::CBL})
        CHECK(bonus_kind_from_name(bonus_kind_name(k)) == k);
    CHECK_THROWS_AS(bonus_kind_from_name("rnd"), ConfigError);
}

TEST_CASE("repeated utterances: bounded and strictly decreasing") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const BonusParams p{0.1 + rng.uniform01() * 3, 0.1 + rng.uniform01() * 3, 0.5 + rng.uniform01() * 3};
        EpisodicCounts c;
        double prev = INFINITY;
        for (int i = 0; i < 30; ++i) {
            const double b = c.cbl_bonus("same", p);
            CHECK(b > 0.0);
            CHECK(b < p.T);
            CHECK(b < prev);
            prev = b;
        }
    }
}

TEST_CASE("cleared counts start over") {
    EpisodicCounts c;
    const BonusParams p;
    const double first = c.cbl_bonus("u", p);
    c.cbl_bonus("u", p);
    c.clear();
    CHECK(c.cbl_bonus("u", p) == first);
}

TEST_CASE("step bonus reads only new peer entries") {
    Dialogue d;
    d.append(Speaker::Peer, "red", 0);
    d.append(Speaker::Agent, "Help please", 1);
    d.append(Speaker::Peer, "blue", 1);
    EpisodicCounts c;
    const BonusParams p;
    const View v{};
    CHECK(step_bonus(BonusKind::None, c, v, d, 0, p) == 0.0);
    CHECK(step_bonus(BonusKind::CBL, c, v, d, 1, p) == doctest::Approx(std::tanh(1.0)));
    CHECK(step_bonus(BonusKind::CBL, c, v, d, 0, p) == doctest::Approx(std::tanh(1.0) + std::tanh(0.25)));
    CHECK(step_bonus(BonusKind::CBL, c, v, d, 3, p) == 0.0);
}
