#pragma once

#include <algorithm>

#include "gts/reference.hpp"
#include "gts/tree.hpp"

namespace gts {

struct Window {
    int alpha;
    int beta;
};

inline void require_strict(const Window& w) {
    if (!(w.alpha < w.beta)) throw ContractError("alpha-beta window must satisfy alpha < beta");
}

inline Window full_window() { return Window{-infinity() + 1, infinity()}; }

// x is acceptable as an approximation of the exact value e within (alpha, beta):
// either both fail low, or both agree strictly inside the window, or both fail high.
inline bool is_ab_result(int x, int e, const Window& w) {
    return (e <= x && x <= w.alpha) || (w.alpha < e && e == x && x < w.beta) || (w.beta <= x && x <= e);
}

inline bool is_negamax_ab_result(int x, const NodePtr& u, const Window& w) {
    return is_ab_result(x, negamax_spec(u), w);
}

// Negamax over the first i children only (1 <= i <= |children|).
inline int pnm(const NodePtr& u, std::size_t i) {
    require_turn_based(u);
    if (i < 1 || i > u->children().size()) throw ContractError("pnm: child index out of range");
    int best = -detail::negamax_spec_unchecked(u->children()[0]);
    for (std::size_t j = 1; j < i; ++j) {
        best = std::max(best, -detail::negamax_spec_unchecked(u->children()[j]));
    }
    return best;
}

inline bool is_partial_negamax_ab_result(int x, const NodePtr& u, std::size_t i, const Window& w) {
    return is_ab_result(x, pnm(u, i), w);
}

namespace detail {

inline int failsoft_rec(const NodePtr& u, int alpha, int beta, int depth) {
    if (depth == 0 || u->is_leaf()) return to_int(u->color()) * u->eval();
    int value = -infinity();
    for (const auto& v : u->children()) {
        value = std::max(value, -failsoft_rec(v, -beta, -std::max(alpha, value), depth - 1));
        if (value >= beta) break;
    }
    return value;
}

inline int failhard_rec(const NodePtr& u, int alpha, int beta, int depth) {
    if (depth == 0 || u->is_leaf()) {
        return std::clamp(to_int(u->color()) * u->eval(), alpha, beta);
    }
    for (const auto& v : u->children()) {
        const int score = -failhard_rec(v, -beta, -alpha, depth - 1);
        if (score >= beta) return beta;
        alpha = std::max(alpha, score);
    }
    return alpha;
}

}  // namespace detail

// Fail-soft alpha-beta: the returned value may fall outside the window and then
// bounds the true value from the failing side.
inline int alphabeta_failsoft(const NodePtr& u, const Window& w, int depth) {
    require_strict(w);
    require_turn_based(u);
    return detail::failsoft_rec(u, w.alpha, w.beta, depth);
}

// Fail-hard alpha-beta: the returned value is clamped into [alpha, beta].
inline int alphabeta_failhard(const NodePtr& u, const Window& w, int depth) {
    require_strict(w);
    require_turn_based(u);
    return detail::failhard_rec(u, w.alpha, w.beta, depth);
}

}  // namespace gts
