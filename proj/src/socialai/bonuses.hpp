#pragma once

#include <map>
#include <string>
#include <string_view>

#include "socialai/grid.hpp"
#include "socialai/lang.hpp"

namespace socialai {

enum class BonusKind { None, CB, CBL };

// "none", "cb" or "cbl"; throws ConfigError otherwise.
BonusKind bonus_kind_from_name(std::string_view name);
std::string_view bonus_kind_name(BonusKind k);

struct BonusParams {
    double T = 1.0;
    double C = 1.0;
    double M = 2.0;
};

// Throws ConfigError unless all of T, C, M are finite and strictly positive.
void validate(const BonusParams& p);

// Per-episode visit counts; create a fresh one at every episode start.
class EpisodicCounts {
public:
    int utterance_count(const std::string& u) const;
    int encoding_count(const CellEncoding& e) const;

    // T * tanh(C / (N + 1)^M) with N counted before this observation.
    double cbl_bonus(const std::string& utterance, const BonusParams& p);
    // T * tanh(sum over unique encodings e of C / (N(e) + 1)^M).
    double cb_bonus(const View& view, const BonusParams& p);

    void clear();

private:
    std::map<std::string, int> utterances_;
    std::map<CellEncoding, int> encodings_;
};

// Bonus for one step: cb scores the view after the step, cbl sums over the peer
// utterances appended to the dialogue from index `heard_before` on.
double step_bonus(BonusKind kind, EpisodicCounts& counts, const View& view, const Dialogue& dialogue,
                  std::size_t heard_before, const BonusParams& p);

}  // namespace socialai
