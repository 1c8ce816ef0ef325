#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gts/tree.hpp"

namespace gts {

// Canonical tree text: {"eval":E,"color":C,"children":[...]} with exactly this
// key order, compact, no id/ref. Structurally equal trees serialize to
// identical bytes.
inline nlohmann::ordered_json to_json(const NodePtr& u) {
    nlohmann::ordered_json j;
    j["eval"] = u->eval();
    j["color"] = to_int(u->color());
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : u->children()) arr.push_back(to_json(c));
    j["children"] = std::move(arr);
    return j;
}

inline std::string serialize(const NodePtr& u) { return to_json(u).dump(); }

namespace detail {

inline NodePtr node_from_json(const nlohmann::json& j, const std::string& path,
                              std::map<std::string, NodePtr>& labels) {
    if (!j.is_object()) throw ParseError("at " + path + ": expected an object");
    if (j.contains("ref")) {
        if (!j["ref"].is_string()) throw ParseError("at " + path + ": \"ref\" must be a string");
        const std::string label = j["ref"].get<std::string>();
        auto it = labels.find(label);
        if (it == labels.end()) {
            throw ParseError("at " + path + ": \"ref\" to undefined label \"" + label +
                             "\" (labels must be defined earlier in document order)");
        }
        if (j.size() != 1) throw ParseError("at " + path + ": a \"ref\" object may not carry other fields");
        return it->second;
    }
    for (const auto& key : {"eval", "color", "children"}) {
        if (!j.contains(key)) throw ParseError("at " + path + ": missing field \"" + std::string(key) + "\"");
    }
    if (!j["eval"].is_number_integer()) throw ParseError("at " + path + ": \"eval\" must be an integer");
    const std::int64_t eval = j["eval"].get<std::int64_t>();
    if (eval > max_eval() || eval < -max_eval()) {
        throw ParseError("at " + path + ": eval " + std::to_string(eval) + " out of range, |eval| <= " +
                         std::to_string(max_eval()));
    }
    if (!j["color"].is_number_integer()) throw ParseError("at " + path + ": \"color\" must be 1 or -1");
    const int color_num = j["color"].get<int>();
    if (color_num != 1 && color_num != -1) {
        throw ParseError("at " + path + ": \"color\" must be 1 or -1, got " + std::to_string(color_num));
    }
    if (!j["children"].is_array()) throw ParseError("at " + path + ": \"children\" must be an array");

    std::vector<NodePtr> children;
    children.reserve(j["children"].size());
    for (std::size_t i = 0; i < j["children"].size(); ++i) {
        children.push_back(node_from_json(j["children"][i], path + "/children/" + std::to_string(i), labels));
    }
    auto node = make_node(static_cast<int>(eval), color_num == 1 ? Color::Max : Color::Min, std::move(children));
    if (j.contains("id")) {
        if (!j["id"].is_string()) throw ParseError("at " + path + ": \"id\" must be a string");
        const std::string label = j["id"].get<std::string>();
        if (labels.count(label)) throw ParseError("at " + path + ": duplicate label \"" + label + "\"");
        labels.emplace(label, node);
    }
    return node;
}

}  // namespace detail

inline NodePtr node_from_json(const nlohmann::json& j) {
    std::map<std::string, NodePtr> labels;
    return detail::node_from_json(j, "", labels);
}

inline NodePtr parse(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("syntax error at byte ") + std::to_string(e.byte) + ": " + e.what());
    }
    return node_from_json(j);
}

}  // namespace gts
