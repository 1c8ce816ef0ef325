#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gts/alphabeta.hpp"
#include "gts/serialize.hpp"
#include "gts/tree.hpp"

namespace gts {

enum class Flag { Exact, Lowerbound, Upperbound };

inline std::string to_string(Flag f) {
    switch (f) {
        case Flag::Exact: return "exact";
        case Flag::Lowerbound: return "lowerbound";
        case Flag::Upperbound: return "upperbound";
    }
    return "?";
}

inline Flag flag_from_string(const std::string& s) {
    if (s == "exact") return Flag::Exact;
    if (s == "lowerbound") return Flag::Lowerbound;
    if (s == "upperbound") return Flag::Upperbound;
    throw ParseError("unknown flag \"" + s + "\"");
}

struct TableEntry {
    int value;
    int depth;
    Flag flag;

    bool operator==(const TableEntry&) const = default;
};

struct NodeKeyHash {
    std::size_t operator()(const NodePtr& n) const { return static_cast<std::size_t>(n->fingerprint()); }
};

struct NodeKeyEq {
    bool operator()(const NodePtr& a, const NodePtr& b) const { return structurally_equal(a, b); }
};

// Keys are structural: equal trees index the same entry. Tables are plain
// values, passed in and returned, so call schedules and perturbation points
// stay explicit.
using TranspositionTable = std::unordered_map<NodePtr, TableEntry, NodeKeyHash, NodeKeyEq>;

struct SearchResult {
    int value;
    TranspositionTable table;
};

// Appendix-style variation switches for the TTW search.
struct HybridOptions {
    bool failsoft_propagation = false;    // Fishburn propagation, alpha not folded into the loop
    bool current_alpha_flags = false;     // classify flags against current alpha, not alpha0
    bool depth_preserving_updates = false;  // keep deeper existing entries

    // Test-only: with current_alpha_flags, classify Upperbound before
    // Lowerbound. The cases are then not mutually exclusive and beta-cutoff
    // values get mislabeled.
    bool swapped_flag_order = false;

    bool operator==(const HybridOptions&) const = default;
};

// Debug hook, invoked after every loop iteration of every recursive TTW call
// with (node, 1-based child index, running value, alpha0, beta, depth).
// Exponential checks hang off this in tests; release callers pass nullptr.
using TtwIterationObserver =
    std::function<void(const NodePtr&, std::size_t, int, int, int, int)>;

namespace detail {

inline int ttw_rec(const NodePtr& u, int alpha0, int beta, int depth, TranspositionTable& T,
                   const HybridOptions& opts, const TtwIterationObserver* obs = nullptr) {
    int alpha = alpha0;
    auto it = T.find(u);
    if (it != T.end()) {
        const TableEntry& t = it->second;
        if (t.depth >= depth) {
            if (t.flag == Flag::Exact) return t.value;
            if (t.flag == Flag::Lowerbound && t.value >= beta) return t.value;
            if (t.flag == Flag::Upperbound && t.value <= alpha) return t.value;
        }
    }
    if (depth == 0 || u->is_leaf()) return to_int(u->color()) * u->eval();

    int value = -infinity();
    std::size_t i = 0;
    for (const auto& v : u->children()) {
        value = std::max(value, -ttw_rec(v, -beta, -std::max(alpha, value), depth - 1, T, opts, obs));
        if (!opts.failsoft_propagation) alpha = std::max(alpha, value);
        ++i;
        if (obs) (*obs)(u, i, value, alpha0, beta, depth);
        if ((opts.failsoft_propagation ? value : alpha) >= beta) break;
    }

    Flag flag;
    if (opts.current_alpha_flags) {
        if (opts.swapped_flag_order) {
            if (value <= alpha) flag = Flag::Upperbound;
            else if (value >= beta) flag = Flag::Lowerbound;
            else flag = Flag::Exact;
        } else {
            if (value >= beta) flag = Flag::Lowerbound;
            else if (value <= alpha) flag = Flag::Upperbound;
            else flag = Flag::Exact;
        }
    } else {
        if (value <= alpha0) flag = Flag::Upperbound;
        else if (value >= beta) flag = Flag::Lowerbound;
        else flag = Flag::Exact;
    }
    if (!opts.depth_preserving_updates || !T.count(u) || T.find(u)->second.depth <= depth) {
        T[u] = TableEntry{value, depth, flag};
    }
    return value;
}

inline int ttm_rec(const NodePtr& u, int alpha, int beta, int depth, TranspositionTable& T) {
    auto it = T.find(u);
    if (it != T.end()) {
        const TableEntry& t = it->second;
        if (t.depth >= depth) {
            if (t.flag == Flag::Exact) return t.value;
            if (t.flag == Flag::Lowerbound) alpha = std::max(alpha, t.value);
            else if (t.flag == Flag::Upperbound) beta = std::min(beta, t.value);
            if (alpha >= beta) return t.value;
        }
    }
    if (depth == 0 || u->is_leaf()) return to_int(u->color()) * u->eval();

    int value = -infinity();
    for (const auto& v : u->children()) {
        value = std::max(value, -ttm_rec(v, -beta, -std::max(alpha, value), depth - 1, T));
        if (value >= beta) break;
    }

    Flag flag = Flag::Exact;
    if (value <= alpha) flag = Flag::Upperbound;
    if (value >= beta) flag = Flag::Lowerbound;
    if (!T.count(u) || T.find(u)->second.depth <= depth) {
        T[u] = TableEntry{value, depth, flag};
    }
    return value;
}

}  // namespace detail

inline SearchResult negamax_ttw_hybrid(const NodePtr& u, const Window& w, int depth, TranspositionTable T,
                                       const HybridOptions& opts,
                                       const TtwIterationObserver* obs = nullptr) {
    require_strict(w);
    require_turn_based(u);
    if (depth < 0) throw ContractError("depth must be non-negative");
    const int value = detail::ttw_rec(u, w.alpha, w.beta, depth, T, opts, obs);
    return SearchResult{value, std::move(T)};
}

inline SearchResult negamax_ttw(const NodePtr& u, const Window& w, int depth, TranspositionTable T) {
    return negamax_ttw_hybrid(u, w, depth, std::move(T), HybridOptions{});
}

inline SearchResult negamax_ttm(const NodePtr& u, const Window& w, int depth, TranspositionTable T) {
    require_strict(w);
    require_turn_based(u);
    if (depth < 0) throw ContractError("depth must be non-negative");
    const int value = detail::ttm_rec(u, w.alpha, w.beta, depth, T);
    return SearchResult{value, std::move(T)};
}

// Models hash-table eviction between calls: drops a random subset of entries.
// Removal trivially preserves per-entry validity.
inline TranspositionTable perturb_table(const TranspositionTable& T, std::uint64_t seed) {
    std::vector<NodePtr> keys;
    keys.reserve(T.size());
    for (const auto& [k, v] : T) keys.push_back(k);
    std::sort(keys.begin(), keys.end(),
              [](const NodePtr& a, const NodePtr& b) { return a->fingerprint() < b->fingerprint(); });
    std::mt19937_64 rng(seed);
    TranspositionTable out;
    for (const auto& k : keys) {
        if (rng() % 2 == 0) out.emplace(k, T.find(k)->second);
    }
    return out;
}

// Snapshot: array of {tree, value, depth, flag}, sorted by tree fingerprint.
inline nlohmann::ordered_json table_to_json(const TranspositionTable& T) {
    std::vector<NodePtr> keys;
    keys.reserve(T.size());
    for (const auto& [k, v] : T) keys.push_back(k);
    std::sort(keys.begin(), keys.end(),
              [](const NodePtr& a, const NodePtr& b) { return a->fingerprint() < b->fingerprint(); });
    auto arr = nlohmann::ordered_json::array();
    for (const auto& k : keys) {
        const TableEntry& t = T.find(k)->second;
        nlohmann::ordered_json rec;
        rec["tree"] = serialize(k);
        rec["value"] = t.value;
        rec["depth"] = t.depth;
        rec["flag"] = to_string(t.flag);
        arr.push_back(std::move(rec));
    }
    return arr;
}

inline TranspositionTable table_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("table snapshot must be an array");
    TranspositionTable T;
    for (const auto& rec : j) {
        NodePtr tree = parse(rec.at("tree").get<std::string>());
        T[tree] = TableEntry{rec.at("value").get<int>(), rec.at("depth").get<int>(),
                             flag_from_string(rec.at("flag").get<std::string>())};
    }
    return T;
}

}  // namespace gts
