#pragma once

#include "socialai/env.hpp"

namespace socialai {

enum class FeedbackBand { Hot, Warm, Medium, Cold };

// Manhattan distance bands: Hot <= 1, Warm <= 2, Medium <= 4, Cold otherwise.
FeedbackBand feedback_band(int distance);
std::string_view feedback_word(FeedbackBand b);

// Sets the peer's starting phase and emits its step-0 utterance.
void peer_reset(EnvState& s);

// The peer's part of one environment tick.
void peer_tick(EnvState& s);

}  // namespace socialai
