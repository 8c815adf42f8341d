#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace socialai {

// Sampled assignment, in sampling order.
using ParamSet = std::vector<std::pair<std::string, std::string>>;

enum class EnvType : std::uint8_t { InformationSeeking, Collaboration, AdversarialPeer };

enum class Problem : std::uint8_t {
    Boxes,
    Switches,
    Marble,
    Generators,
    Doors,
    Levers,
    LeverDoor,
    MarblePush,
    MarblePass,
    None,
};

enum class Intro : std::uint8_t { No, EyeContact, Ask, AskEyeContact };
enum class Cue : std::uint8_t { Pointing, LanguageColor, LanguageFeedback, Imitation };
enum class Role : std::uint8_t { A, B };
enum class Version : std::uint8_t { Social, Asocial };

struct EnvParams {
    EnvType env_type = EnvType::InformationSeeking;
    Problem problem = Problem::Boxes;
    int n_objects = 2;
    bool peer = true;
    Intro intro = Intro::No;
    Cue cue = Cue::Pointing;
    bool help = false;
    Role role = Role::A;
    Version version = Version::Social;
    int obstacles = 0;
    bool misleading_cues = false;

    friend bool operator==(const EnvParams&, const EnvParams&) = default;
};

inline constexpr int kSomeObstacles = 4;

std::string_view env_type_name(EnvType t);
std::string_view problem_name(Problem p);
std::string_view intro_name(Intro i);
std::string_view cue_name(Cue c);

// Raises ConfigError on unknown names or inconsistent combinations.
EnvParams params_from_set(const ParamSet& set);
ParamSet params_to_set(const EnvParams& p);
void validate(const EnvParams& p);

bool is_color_collab(Problem p);

// Human-readable one-line summary such as "InformationSeeking/Boxes/N=2/...".
std::string describe(const EnvParams& p);

}  // namespace socialai
