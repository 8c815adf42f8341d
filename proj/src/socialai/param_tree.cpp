#include "socialai/param_tree.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "socialai/errors.hpp"

namespace socialai {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void check_weights(const ParamNode& node, const std::string& where) {
    double total = 0.0;
    for (const auto& v : node.values) {
        if (!std::isfinite(v.weight) || v.weight < 0.0)
            throw ConfigError(where + "/" + v.name + ": weight must be a finite non-negative number");
        total += v.weight;
    }
    if (!(total > 0.0)) throw ConfigError(where + ": weights must not all be zero");
}

void validate_node(const ParamNode& node, std::set<std::string>& on_path, const std::string& where) {
    if (node.name.empty()) throw ConfigError(where + ": parameter name is empty");
    if (node.values.empty()) throw ConfigError(where + ": parameter " + node.name + " has no values");
    if (!on_path.insert(node.name).second)
        throw ConfigError(where + ": parameter " + node.name + " repeated along a path");
    std::set<std::string> seen;
    for (const auto& v : node.values) {
        if (v.name.empty()) throw ConfigError(where + ": empty value name");
        if (!seen.insert(v.name).second) throw ConfigError(where + ": duplicate value " + v.name);
        std::set<std::string> siblings;
        for (const auto& child : v.params) {
            if (!siblings.insert(child.name).second)
                throw ConfigError(where + "/" + v.name + ": parameter " + child.name + " listed twice");
            validate_node(child, on_path, where + "/" + v.name + "/" + child.name);
        }
    }
    check_weights(node, where);
    on_path.erase(node.name);
}

ParamNode parse_param(const json& j, const std::string& where);

ValueNode parse_value(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": value node must be an object");
    for (const auto& [key, _] : j.items())
        if (key != "value" && key != "weight" && key != "params")
            throw ConfigError(where + ": unexpected key '" + key + "' in value node");
    ValueNode v;
    if (!j.contains("value") || !j["value"].is_string()) throw ConfigError(where + ": value node needs a string 'value'");
    v.name = j["value"].get<std::string>();
    const std::string here = where + "/" + v.name;
    if (j.contains("weight")) {
        if (!j["weight"].is_number()) throw ConfigError(here + ": weight must be a number");
        v.weight = j["weight"].get<double>();
        if (v.weight < 0.0) throw ConfigError(here + ": negative weight");
    }
    if (j.contains("params")) {
        if (!j["params"].is_array()) throw ConfigError(here + ": 'params' must be an array");
        for (const auto& child : j["params"]) {
            const std::string name = child.is_object() && child.contains("param") && child["param"].is_string()
                                         ? child["param"].get<std::string>()
                                         : std::string("?");
            v.params.push_back(parse_param(child, here + "/" + name));
        }
    }
    return v;
}

ParamNode parse_param(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": parameter node must be an object");
    for (const auto& [key, _] : j.items())
        if (key != "param" && key != "values") throw ConfigError(where + ": unexpected key '" + key + "' in parameter node");
    ParamNode p;
    if (!j.contains("param") || !j["param"].is_string()) throw ConfigError(where + ": parameter node needs a string 'param'");
    p.name = j["param"].get<std::string>();
    if (!j.contains("values") || !j["values"].is_array() || j["values"].empty())
        throw ConfigError(where + ": parameter " + p.name + " needs a non-empty 'values' array");
    for (const auto& v : j["values"]) p.values.push_back(parse_value(v, where));
    return p;
}

ordered_json to_json_node(const ParamNode& p) {
    ordered_json values = ordered_json::array();
    for (const auto& v : p.values) {
        ordered_json jv;
        jv["value"] = v.name;
        if (v.weight != 1.0) jv["weight"] = v.weight;
        if (!v.params.empty()) {
            ordered_json children = ordered_json::array();
            for (const auto& c : v.params) children.push_back(to_json_node(c));
            jv["params"] = std::move(children);
        }
        values.push_back(std::move(jv));
    }
    ordered_json out;
    out["param"] = p.name;
    out["values"] = std::move(values);
    return out;
}

void sample_node(const ParamNode& node, Rng& rng, ParamSet& out) {
    double total = 0.0;
    for (const auto& v : node.values) total += v.weight;
    const double u = rng.uniform01() * total;
    double acc = 0.0;
    const ValueNode* chosen = nullptr;
    for (const auto& v : node.values) {
        if (v.weight <= 0.0) continue;
        acc += v.weight;
        chosen = &v;
        if (u < acc) break;
    }
    out.emplace_back(node.name, chosen->name);
    for (const auto& child : chosen->params) sample_node(child, rng, out);
}

std::vector<ParamSet> enumerate_node(const ParamNode& node);

std::vector<ParamSet> enumerate_value(const ParamNode& node, const ValueNode& v) {
    std::vector<ParamSet> acc{{{node.name, v.name}}};
    for (const auto& child : v.params) {
        std::vector<ParamSet> next;
        const auto sub = enumerate_node(child);
        for (const auto& prefix : acc)
            for (const auto& s : sub) {
                ParamSet merged = prefix;
                merged.insert(merged.end(), s.begin(), s.end());
                next.push_back(std::move(merged));
            }
        acc = std::move(next);
    }
    return acc;
}

std::vector<ParamSet> enumerate_node(const ParamNode& node) {
    std::vector<ParamSet> out;
    for (const auto& v : node.values) {
        auto sets = enumerate_value(node, v);
        out.insert(out.end(), sets.begin(), sets.end());
    }
    return out;
}

}  // namespace

ParamTree::ParamTree(ParamNode root) : root_(std::move(root)) {
    std::set<std::string> on_path;
    validate_node(root_, on_path, root_.name.empty() ? std::string("?") : root_.name);
}

ParamTree ParamTree::parse(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("tree config is not valid JSON: ") + e.what());
    }
    const std::string root_name =
        j.is_object() && j.contains("param") && j["param"].is_string() ? j["param"].get<std::string>() : "?";
    return ParamTree(parse_param(j, root_name));
}

ParamTree ParamTree::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open tree config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string ParamTree::to_json() const { return to_json_node(root_).dump(2); }

ParamSet ParamTree::sample(Rng& rng) const {
    ParamSet out;
    sample_node(root_, rng, out);
    return out;
}

void ParamTree::set_weights(std::string_view path, const std::vector<double>& weights) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : path) {
        if (c == '/') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    if (parts.size() % 2 == 0) throw ConfigError("weight path must end on a parameter name: " + std::string(path));

    ParamNode* node = &root_;
    if (parts[0] != node->name) throw ConfigError("weight path not found: " + std::string(path));
    for (std::size_t i = 1; i + 1 < parts.size(); i += 2) {
        ValueNode* value = nullptr;
        for (auto& v : node->values)
            if (v.name == parts[i]) value = &v;
        if (value == nullptr) throw ConfigError("weight path not found: " + std::string(path));
        ParamNode* next = nullptr;
        for (auto& p : value->params)
            if (p.name == parts[i + 1]) next = &p;
        if (next == nullptr) throw ConfigError("weight path not found: " + std::string(path));
        node = next;
    }
    if (weights.size() != node->values.size())
        throw ConfigError("expected " + std::to_string(node->values.size()) + " weights for " + std::string(path) + ", got " +
                          std::to_string(weights.size()));
    ParamNode candidate = *node;
    for (std::size_t i = 0; i < weights.size(); ++i) candidate.values[i].weight = weights[i];
    check_weights(candidate, std::string(path));
    *node = std::move(candidate);
}

std::vector<ParamSet> ParamTree::enumerate() const { return enumerate_node(root_); }

}  // namespace socialai
