#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace socialai {

inline constexpr std::array<std::string_view, 4> kTemplates = {"Where is <noun>", "Help <noun>", "Close <noun>",
                                                                "How are <noun>"};

inline constexpr std::array<std::string_view, 16> kNouns = {
    "please",     "the exit",   "the wall",  "you",         "the ceiling", "the window", "the entrance", "the closet",
    "the drawer", "the fridge", "the floor", "the lamp", "the trash can", "the chair",  "the bed",      "the sofa"};

inline constexpr int kTemplateCount = static_cast<int>(kTemplates.size());
inline constexpr int kNounCount = static_cast<int>(kNouns.size());
inline constexpr int kHelpTemplate = 1;
inline constexpr int kPleaseNoun = 0;

struct Utterance {
    int template_index = 0;
    int noun_index = 0;
    friend bool operator==(const Utterance&, const Utterance&) = default;
};

// Throws std::out_of_range on bad indices.
std::string render_utterance(int template_index, int noun_index);
inline std::string render_utterance(const Utterance& u) { return render_utterance(u.template_index, u.noun_index); }

bool is_help_request(std::string_view text);

enum class Speaker { Agent, Peer };

struct DialogueEntry {
    Speaker speaker = Speaker::Agent;
    std::string text;
    int step = 0;
    friend bool operator==(const DialogueEntry&, const DialogueEntry&) = default;
};

class Dialogue {
public:
    void append(Speaker speaker, std::string text, int step);
    const std::vector<DialogueEntry>& entries() const { return entries_; }
    std::optional<std::string> last_from(Speaker speaker) const;
    bool empty() const { return entries_.empty(); }
    void clear() { entries_.clear(); }

    friend bool operator==(const Dialogue&, const Dialogue&) = default;

private:
    std::vector<DialogueEntry> entries_;
};

}  // namespace socialai
