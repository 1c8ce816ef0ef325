#pragma once

#include <algorithm>

#include "gts/tree.hpp"

namespace gts {

// Executable specification: the recursive minimax definition.
inline int minimax_spec(const NodePtr& u) {
    if (u->is_leaf()) return u->eval();
    bool first = true;
    int best = 0;
    for (const auto& v : u->children()) {
        const int m = minimax_spec(v);
        if (first) {
            best = m;
            first = false;
        } else {
            best = u->color() == Color::Min ? std::min(best, m) : std::max(best, m);
        }
    }
    return best;
}

// Imperative form with +-infinity loop sentinels.
inline int minimax_alg(const NodePtr& u) {
    if (u->is_leaf()) return u->eval();
    if (u->color() == Color::Min) {
        int value = infinity();
        for (const auto& v : u->children()) value = std::min(value, minimax_alg(v));
        return value;
    }
    int value = -infinity();
    for (const auto& v : u->children()) value = std::max(value, minimax_alg(v));
    return value;
}

namespace detail {

inline int negamax_spec_unchecked(const NodePtr& u) {
    if (u->is_leaf()) return to_int(u->color()) * u->eval();
    bool first = true;
    int best = 0;
    for (const auto& v : u->children()) {
        const int m = -negamax_spec_unchecked(v);
        best = first ? m : std::max(best, m);
        first = false;
    }
    return best;
}

}  // namespace detail

inline int negamax_spec(const NodePtr& u) {
    require_turn_based(u);
    return detail::negamax_spec_unchecked(u);
}

inline int negamax_alg(const NodePtr& u) {
    require_turn_based(u);
    struct Rec {
        static int run(const NodePtr& u) {
            if (u->is_leaf()) return to_int(u->color()) * u->eval();
            int value = -infinity();
            for (const auto& v : u->children()) value = std::max(value, -run(v));
            return value;
        }
    };
    return Rec::run(u);
}

inline int minimax_depth(const NodePtr& u, int d) { return minimax_spec(truncate(u, d)); }

inline int negamax_depth(const NodePtr& u, int d) { return negamax_spec(truncate(u, d)); }

}  // namespace gts
