#include "socialai/params.hpp"

#include <map>
#include <optional>
#include <sstream>

#include "socialai/errors.hpp"

namespace socialai {

namespace {

template <typename E>
struct NameTable {
    std::vector<std::pair<std::string_view, E>> entries;

    E parse(std::string_view param, std::string_view value) const {
        for (const auto& [name, e] : entries)
            if (name == value) return e;
        throw ConfigError("unknown value '" + std::string(value) + "' for parameter " + std::string(param));
    }
    std::string_view name(E e) const {
        for (const auto& [n, v] : entries)
            if (v == e) return n;
        return "?";
    }
};

const NameTable<EnvType> kEnvTypes{{{"InformationSeeking", EnvType::InformationSeeking},
                                    {"Collaboration", EnvType::Collaboration},
                                    {"AdversarialPeer", EnvType::AdversarialPeer}}};

const NameTable<Problem> kProblems{{{"Boxes", Problem::Boxes},
                                    {"Switches", Problem::Switches},
                                    {"Marble", Problem::Marble},
                                    {"Generators", Problem::Generators},
                                    {"Doors", Problem::Doors},
                                    {"Levers", Problem::Levers},
                                    {"LeverDoor", Problem::LeverDoor},
                                    {"DoorLever", Problem::LeverDoor},
                                    {"MarblePush", Problem::MarblePush},
                                    {"MarblePass", Problem::MarblePass}}};

const NameTable<Intro> kIntros{{{"No", Intro::No},
                                {"Eye_contact", Intro::EyeContact},
                                {"Ask", Intro::Ask},
                                {"Ask_Eye_contact", Intro::AskEyeContact}}};

const NameTable<Cue> kCues{{{"Pointing", Cue::Pointing},
                            {"Language_Color", Cue::LanguageColor},
                            {"Language_Feedback", Cue::LanguageFeedback},
                            {"Imitation", Cue::Imitation}}};

bool parse_yes_no(std::string_view param, std::string_view v) {
    if (v == "Y") return true;
    if (v == "N") return false;
    throw ConfigError("parameter " + std::string(param) + " expects Y or N, got '" + std::string(v) + "'");
}

bool is_info_problem(Problem p) {
    switch (p) {
        case Problem::Boxes:
        case Problem::Switches:
        case Problem::Marble:
        case Problem::Generators:
        case Problem::Doors:
        case Problem::Levers: return true;
        default: return false;
    }
}

}  // namespace

std::string_view env_type_name(EnvType t) { return kEnvTypes.name(t); }
std::string_view problem_name(Problem p) { return p == Problem::None ? "None" : kProblems.name(p); }
std::string_view intro_name(Intro i) { return kIntros.name(i); }
std::string_view cue_name(Cue c) { return kCues.name(c); }

bool is_color_collab(Problem p) {
    return p == Problem::Boxes || p == Problem::Switches || p == Problem::Generators || p == Problem::Marble;
}

EnvParams params_from_set(const ParamSet& set) {
    std::map<std::string, std::string, std::less<>> kv;
    for (const auto& [k, v] : set)
        if (!kv.emplace(k, v).second) throw ConfigError("parameter " + k + " assigned twice");

    auto take = [&](std::string_view key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    EnvParams p;
    const auto type = take("Env_type");
    if (!type) throw ConfigError("missing parameter Env_type");
    p.env_type = kEnvTypes.parse("Env_type", *type);

    if (auto v = take("Problem")) p.problem = kProblems.parse("Problem", *v);
    else if (p.env_type != EnvType::AdversarialPeer) throw ConfigError("missing parameter Problem");
    if (p.env_type == EnvType::AdversarialPeer) p.problem = Problem::None;

    if (auto v = take("N")) {
        if (*v == "1") p.n_objects = 1;
        else if (*v == "2") p.n_objects = 2;
        else throw ConfigError("parameter N expects 1 or 2, got '" + *v + "'");
    }
    if (auto v = take("Peer")) p.peer = parse_yes_no("Peer", *v);
    if (auto v = take("Introductory_sequence")) p.intro = kIntros.parse("Introductory_sequence", *v);
    if (auto v = take("Cue_type")) p.cue = kCues.parse("Cue_type", *v);
    if (auto v = take("Help")) p.help = parse_yes_no("Help", *v);
    if (auto v = take("Role")) {
        if (*v == "A") p.role = Role::A;
        else if (*v == "B") p.role = Role::B;
        else throw ConfigError("parameter Role expects A or B, got '" + *v + "'");
    }
    if (auto v = take("Version")) {
        if (*v == "Social") p.version = Version::Social;
        else if (*v == "Asocial") p.version = Version::Asocial;
        else throw ConfigError("parameter Version expects Social or Asocial, got '" + *v + "'");
    }
    if (auto v = take("Obstacles")) {
        if (*v == "No") p.obstacles = 0;
        else if (*v == "Some") p.obstacles = kSomeObstacles;
        else throw ConfigError("parameter Obstacles expects No or Some, got '" + *v + "'");
    }
    if (auto v = take("Misleading_cues")) p.misleading_cues = parse_yes_no("Misleading_cues", *v);
    if (!kv.empty()) throw ConfigError("unknown parameter " + kv.begin()->first);

    if (p.env_type == EnvType::InformationSeeking && p.version == Version::Asocial) {
        p.n_objects = 1;
        p.peer = false;
    }
    if (p.env_type == EnvType::Collaboration) {
        p.peer = p.version == Version::Social;
        p.n_objects = 1;
    }
    if (p.env_type == EnvType::AdversarialPeer) {
        p.peer = true;
        p.n_objects = 1;
    }
    validate(p);
    return p;
}

void validate(const EnvParams& p) {
    switch (p.env_type) {
        case EnvType::InformationSeeking:
            if (!is_info_problem(p.problem))
                throw ConfigError("problem " + std::string(problem_name(p.problem)) + " is not an InformationSeeking problem");
            if (p.n_objects != 1 && p.n_objects != 2) throw ConfigError("N must be 1 or 2");
            if (!p.peer && p.n_objects != 1) throw ConfigError("N=2 requires a peer to tell the objects apart");
            if (p.version == Version::Asocial && (p.peer || p.n_objects != 1))
                throw ConfigError("asocial version has no peer and a single object");
            if (p.misleading_cues && !p.peer) throw ConfigError("misleading cues require a peer");
            break;
        case EnvType::Collaboration:
            if (p.problem != Problem::LeverDoor && p.problem != Problem::MarblePush && p.problem != Problem::MarblePass &&
                !is_color_collab(p.problem))
                throw ConfigError("problem " + std::string(problem_name(p.problem)) + " is not a Collaboration problem");
            if (p.peer != (p.version == Version::Social)) throw ConfigError("collaboration peer presence must follow Version");
            break;
        case EnvType::AdversarialPeer:
            if (p.problem != Problem::None) throw ConfigError("AdversarialPeer takes no Problem");
            if (p.obstacles < 0 || p.obstacles > 12) throw ConfigError("obstacle count out of range");
            break;
    }
}

ParamSet params_to_set(const EnvParams& p) {
    ParamSet s;
    s.emplace_back("Env_type", std::string(env_type_name(p.env_type)));
    auto yn = [](bool b) { return std::string(b ? "Y" : "N"); };
    switch (p.env_type) {
        case EnvType::InformationSeeking:
            s.emplace_back("Problem", std::string(problem_name(p.problem)));
            s.emplace_back("N", std::to_string(p.n_objects));
            s.emplace_back("Peer", yn(p.peer));
            if (p.peer) {
                s.emplace_back("Introductory_sequence", std::string(intro_name(p.intro)));
                s.emplace_back("Help", yn(p.help));
                if (!p.help) s.emplace_back("Cue_type", std::string(cue_name(p.cue)));
                if (p.misleading_cues) s.emplace_back("Misleading_cues", "Y");
            }
            break;
        case EnvType::Collaboration:
            s.emplace_back("Problem", std::string(problem_name(p.problem)));
            s.emplace_back("Version", p.version == Version::Social ? "Social" : "Asocial");
            if (p.version == Version::Social) s.emplace_back("Role", p.role == Role::A ? "A" : "B");
            break;
        case EnvType::AdversarialPeer: s.emplace_back("Obstacles", p.obstacles > 0 ? "Some" : "No"); break;
    }
    return s;
}

std::string describe(const EnvParams& p) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : params_to_set(p)) {
        if (!first) os << ' ';
        first = false;
        os << k << '=' << v;
    }
    return os.str();
}

}  // namespace socialai
