#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "socialai/env.hpp"

namespace socialai {

// Position phrase for a cell `forward` ahead and `lateral` to the right
// (negative = left). Throws std::invalid_argument for the agent's own cell.
std::string phrase_relpos(int forward, int lateral);

// "a closed green lockablebox", "a caretaker", ... Throws std::invalid_argument
// for empty cells and unknown type ids.
std::string describe_cell(const CellEncoding& enc);

// Walls, fences and occluders are scenery and are not described.
bool describable(const CellEncoding& enc);

// One "{phrase} there is {description}" line per visible cell, far rows first,
// then left to right; followed by the last heard peer utterance if any.
std::string render_obs(const View& view, const std::optional<std::string>& heard);
std::string render_obs(const EnvState& s);

// Two characters per cell: a kind glyph and a color or state glyph; the agent
// is drawn as "A" and the peer as "P" followed by a facing arrow.
std::string render_ascii(const EnvState& s);

std::string_view action_text(Primitive a);
std::optional<Primitive> action_from_text(std::string_view text);

// Episode transcript: "New episode.", alternating Obs/Act lines, "Success!".
class TranscriptWriter {
public:
    void begin(const EnvState& s);
    void step(Primitive a, const EnvState& after);
    std::string str() const;

private:
    std::vector<std::string> lines_;
    bool success_ = false;
};

}  // namespace socialai
