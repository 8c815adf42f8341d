#include "socialai/bonuses.hpp"

#include <cmath>
#include <set>

#include "socialai/errors.hpp"

namespace socialai {

namespace {

double term(int n, const BonusParams& p) { return p.C / std::pow(static_cast<double>(n) + 1.0, p.M); }

}  // namespace

BonusKind bonus_kind_from_name(std::string_view name) {
    if (name == "none") return BonusKind::None;
    if (name == "cb") return BonusKind::CB;
    if (name == "cbl") return BonusKind::CBL;
    throw ConfigError("unknown bonus '" + std::string(name) + "' (expected none, cb, cbl)");
}

std::string_view bonus_kind_name(BonusKind k) {
    switch (k) {
        case BonusKind::CB: return "cb";
        case BonusKind::CBL: return "cbl";
        case BonusKind::None: break;
    }
    return "none";
}

void validate(const BonusParams& p) {
    for (double v : {p.T, p.C, p.M})
        if (!std::isfinite(v) || v <= 0.0) throw ConfigError("bonus parameters T, C and M must be finite and positive");
}

int EpisodicCounts::utterance_count(const std::string& u) const {
    auto it = utterances_.find(u);
    return it == utterances_.end() ? 0 : it->second;
}

int EpisodicCounts::encoding_count(const CellEncoding& e) const {
    auto it = encodings_.find(e);
    return it == encodings_.end() ? 0 : it->second;
}

double EpisodicCounts::cbl_bonus(const std::string& utterance, const BonusParams& p) {
    int& n = utterances_[utterance];
    const double r = p.T * std::tanh(term(n, p));
    ++n;
    return r;
}

double EpisodicCounts::cb_bonus(const View& view, const BonusParams& p) {
    std::set<CellEncoding> unique;
    for (const auto& row : view)
        for (const auto& cell : row) unique.insert(cell);
    double sum = 0.0;
    for (const auto& e : unique) sum += term(encoding_count(e), p);
    for (const auto& e : unique) ++encodings_[e];
    return p.T * std::tanh(sum);
}

void EpisodicCounts::clear() {
    utterances_.clear();
    encodings_.clear();
}

double step_bonus(BonusKind kind, EpisodicCounts& counts, const View& view, const Dialogue& dialogue,
                  std::size_t heard_before, const BonusParams& p) {
    if (kind == BonusKind::CB) return counts.cb_bonus(view, p);
    double b = 0.0;
    if (kind == BonusKind::CBL) {
        const auto& entries = dialogue.entries();
        for (std::size_t i = heard_before; i < entries.size(); ++i)
            if (entries[i].speaker == Speaker::Peer) b += counts.cbl_bonus(entries[i].text, p);
    }
    return b;
}

}  // namespace socialai
