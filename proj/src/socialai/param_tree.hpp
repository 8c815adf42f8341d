#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "socialai/params.hpp"
#include "socialai/rng.hpp"

namespace socialai {

struct ValueNode;

struct ParamNode {
    std::string name;
    std::vector<ValueNode> values;
};

struct ValueNode {
    std::string name;
    double weight = 1.0;
    std::vector<ParamNode> params;
};

// Alternating parameter/value tree. Sampling picks one value per parameter
// node (weight / total) and then descends through every child parameter.
class ParamTree {
public:
    explicit ParamTree(ParamNode root);

    // Schema: {"param": name, "values": [{"value": name, "weight": w?, "params": [node...]?}]}.
    // Throws ConfigError with a path-qualified message.
    static ParamTree parse(std::string_view json_text);
    static ParamTree load(const std::string& path);

    std::string to_json() const;

    ParamSet sample(Rng& rng) const;

    // `path` alternates parameter and value names from the root and ends on a
    // parameter, e.g. "Env_type/InformationSeeking/Problem".
    void set_weights(std::string_view path, const std::vector<double>& weights);

    // Every ParamSet reachable by some combination of choices.
    std::vector<ParamSet> enumerate() const;

    const ParamNode& root() const { return root_; }

private:
    ParamNode root_;
};

}  // namespace socialai
