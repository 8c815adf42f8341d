#include "socialai/lang.hpp"

#include <stdexcept>

namespace socialai {

std::string render_utterance(int template_index, int noun_index) {
    if (template_index < 0 || template_index >= kTemplateCount) throw std::out_of_range("template index out of range");
    if (noun_index < 0 || noun_index >= kNounCount) throw std::out_of_range("noun index out of range");
    std::string text(kTemplates[static_cast<std::size_t>(template_index)]);
    const auto at = text.find("<noun>");
    text.replace(at, 6, kNouns[static_cast<std::size_t>(noun_index)]);
    return text;
}

bool is_help_request(std::string_view text) { return text == render_utterance(kHelpTemplate, kPleaseNoun); }

void Dialogue::append(Speaker speaker, std::string text, int step) {
    if (!entries_.empty() && step < entries_.back().step) throw std::logic_error("dialogue entries must be chronological");
    entries_.push_back({speaker, std::move(text), step});
}

std::optional<std::string> Dialogue::last_from(Speaker speaker) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
        if (it->speaker == speaker) return it->text;
    return std::nullopt;
}

}  // namespace socialai
