#include <doctest.h>

#include <filesystem>
#include <map>
#include <set>

#include "helpers.hpp"
#include "socialai/errors.hpp"
#include "socialai/param_tree.hpp"

using namespace socialai;

namespace {

const char* kSmall = R"({"param": "Env_type", "values": [
  {"value": "InformationSeeking", "params": [
    {"param": "Problem", "values": [{"value": "Boxes"}, {"value": "Doors"}]},
    {"param": "Peer", "values": [{"value": "Y", "params": [{"param": "N", "values": [{"value": "2"}]}]},
                                 {"value": "N", "params": [{"param": "N", "values": [{"value": "1"}]}]}]}]}]})";

}  // namespace

TEST_CASE("single-chain tree yields its unique parameter set") {
    const auto t = ParamTree::parse(R"({"param": "A", "values": [{"value": "x", "params": [{"param": "B", "values": [{"value": "y"}]}]}]})");
    Rng rng(1);
    for (int i = 0; i < 20; ++i) CHECK(t.sample(rng) == ParamSet{{"A", "x"}, {"B", "y"}});
}

TEST_CASE("sampling descends through every child of the chosen value") {
    const auto t = ParamTree::parse(kSmall);
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const ParamSet s = t.sample(rng);
        REQUIRE(s.size() == 4);
        CHECK(s[0].first == "Env_type");
        CHECK(s[1].first == "Problem");
        CHECK(s[2].first == "Peer");
        CHECK(s[3] == std::pair<std::string, std::string>{"N", s[2].second == "Y" ? "2" : "1"});
    }
}

TEST_CASE("enumeration covers exactly the sampled sets") {
    const auto t = ParamTree::parse(kSmall);
    const auto all = t.enumerate();
    CHECK(all.size() == 4);
    std::set<ParamSet> seen;
    Rng rng(5);
    for (int i = 0; i < 400; ++i) seen.insert(t.sample(rng));
    CHECK(seen == std::set<ParamSet>(all.begin(), all.end()));
}

TEST_CASE("same seed gives the same sample") {
    const auto t = ParamTree::parse(kSmall);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng a(seed), b(seed);
        CHECK(t.sample(a) == t.sample(b));
    }
}

TEST_CASE("malformed trees are rejected with a path") {
    CHECK_THROWS_AS(ParamTree::parse("{"), ConfigError);
    CHECK_THROWS_AS(ParamTree::parse(R"({"param": "A", "values": []})"), ConfigError);
    CHECK_THROWS_AS(ParamTree::parse(R"({"param": "A", "values": [{"value": "x", "weight": -1}]})"), ConfigError);
    CHECK_THROWS_AS(ParamTree::parse(R"({"param": "A", "values": [{"value": "x", "weight": 0}]})"), ConfigError);
    CHECK_THROWS_AS(ParamTree::parse(R"({"param": "A", "values": [{"value": "x", "params": [{"param": "A", "values": [{"value": "y"}]}]}]})"),
                    ConfigError);
    try {
        ParamTree::parse(R"({"param": "A", "values": [{"value": "x", "params": [{"param": "B", "values": []}]}]})");
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("A/x/B") != std::string::npos);
    }
}

TEST_CASE("set_weights changes the distribution") {
    auto t = ParamTree::parse(kSmall);
    CHECK_THROWS_AS(t.set_weights("Env_type/InformationSeeking/Problem", {1.0}), ConfigError);
    CHECK_THROWS_AS(t.set_weights("Env_type/Nope/Problem", {1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(t.set_weights("Env_type/InformationSeeking/Problem", {-1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(t.set_weights("Env_type/InformationSeeking/Problem", {0.0, 0.0}), ConfigError);
    t.set_weights("Env_type/InformationSeeking/Problem", {1.0, 0.0});
    Rng rng(9);
    for (int i = 0; i < 500; ++i) CHECK(t.sample(rng)[1].second == "Boxes");
    t.set_weights("Env_type/InformationSeeking/Problem", {1.0, 1.0});
    int boxes = 0;
    for (int i = 0; i < 4000; ++i) boxes += t.sample(rng)[1].second == "Boxes" ? 1 : 0;
    CHECK(boxes == doctest::Approx(2000).epsilon(0.06));
}

TEST_CASE("json round trip") {
    const auto t = ParamTree::parse(kSmall);
    const auto u = ParamTree::parse(t.to_json());
    CHECK(u.enumerate() == t.enumerate());
}

TEST_CASE("every shipped tree loads and every reachable set is a valid environment") {
    int trees = 0;
    for (const auto& e : std::filesystem::directory_iterator(test::data_dir() + "/trees")) {
        ++trees;
        CAPTURE(e.path().string());
        const auto t = ParamTree::load(e.path().string());
        for (const auto& ps : t.enumerate()) CHECK_NOTHROW(params_from_set(ps));
    }
    CHECK(trees >= 9);
}

TEST_CASE("shipped tree shapes") {
    const auto dir = test::data_dir() + "/trees/";
    auto count = [&](const char* name) { return ParamTree::load(dir + name).enumerate().size(); };
    CHECK(count("pointing_train.json") == 6);
    CHECK(count("pointing_test.json") == 1);
    CHECK(count("rr_role_b_group.json") == 13);
    CHECK(count("rr_asocial_group.json") == 13);
    CHECK(count("scaf_4.json") == 24);
    CHECK(count("scaf_8.json") == 48);
    CHECK(count("scaf_test.json") == 6);
    const auto test_sets = ParamTree::load(dir + "pointing_test.json").enumerate();
    const EnvParams p = params_from_set(test_sets.front());
    CHECK(p.problem == Problem::Doors);
    CHECK(p.cue == Cue::Pointing);
    CHECK(p.intro == Intro::EyeContact);
}

TEST_CASE("parameter sets convert to and from environment parameters") {
    CHECK_THROWS_AS(params_from_set({{"Problem", "Boxes"}}), ConfigError);
    CHECK_THROWS_AS(params_from_set({{"Env_type", "InformationSeeking"}, {"Problem", "Marble"}, {"Color", "Y"}}), ConfigError);
    CHECK_THROWS_AS(params_from_set({{"Env_type", "InformationSeeking"}, {"Problem", "LeverDoor"}}), ConfigError);
    CHECK_THROWS_AS(params_from_set({{"Env_type", "InformationSeeking"}, {"Problem", "Boxes"}, {"N", "2"}, {"Peer", "N"}}),
                    ConfigError);
    const EnvParams asocial = params_from_set({{"Env_type", "InformationSeeking"}, {"Problem", "Doors"}, {"Version", "Asocial"}});
    CHECK_FALSE(asocial.peer);
    CHECK(asocial.n_objects == 1);
    const EnvParams collab = params_from_set({{"Env_type", "Collaboration"}, {"Problem", "MarblePass"}, {"Version", "Social"}, {"Role", "B"}});
    CHECK(collab.role == Role::B);
    CHECK(collab.peer);
    CHECK(params_from_set(params_to_set(collab)) == collab);
}
