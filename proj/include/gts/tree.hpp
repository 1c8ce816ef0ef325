#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gts {

// Search values live in [-infinity(), +infinity()]; the bound is symmetric so
// negation never leaves the domain. Leaf evaluations are further restricted to
// |eval| <= max_eval() so the -infinity loop sentinel can never be a legal
// evaluation.
inline int& infinity_ref() {
    static int value = 1 << 20;
    return value;
}

inline int infinity() { return infinity_ref(); }
inline int max_eval() { return infinity() - 1; }

// Trees deeper than this raise ResourceError instead of exhausting the stack.
inline constexpr int kMaxTreeHeight = 4096;

struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Color : int { Max = 1, Min = -1 };

inline int to_int(Color c) { return static_cast<int>(c); }
inline Color opponent(Color c) { return c == Color::Max ? Color::Min : Color::Max; }

class Node;
using NodePtr = std::shared_ptr<const Node>;

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

// Immutable game tree node. Children are shared, never mutated; a NodePtr is a
// plain value that may move freely between threads. Fingerprint, height and
// node count are computed bottom-up at construction.
class Node {
public:
    Node(int eval, Color color, std::vector<NodePtr> children)
        : eval_(eval), color_(color), children_(std::move(children)) {
        std::uint64_t h = detail::mix64(static_cast<std::uint64_t>(static_cast<std::int64_t>(eval_)));
        h = detail::mix64(h ^ static_cast<std::uint64_t>(to_int(color_) + 2));
        height_ = 0;
        node_count_ = 1;
        for (const auto& c : children_) {
            h = detail::mix64(h * 0x100000001b3ULL ^ c->fingerprint());
            height_ = std::max(height_, c->height() + 1);
            node_count_ += c->node_count();
        }
        fingerprint_ = h;
    }

    int eval() const { return eval_; }
    Color color() const { return color_; }
    const std::vector<NodePtr>& children() const { return children_; }
    bool is_leaf() const { return children_.empty(); }

    std::uint64_t fingerprint() const { return fingerprint_; }
    int height() const { return height_; }
    std::uint64_t node_count() const { return node_count_; }

private:
    int eval_;
    Color color_;
    std::vector<NodePtr> children_;
    std::uint64_t fingerprint_ = 0;
    int height_ = 0;
    std::uint64_t node_count_ = 1;
};

inline NodePtr make_node(int eval, Color color, std::vector<NodePtr> children = {}) {
    if (eval > max_eval() || eval < -max_eval()) {
        throw ContractError("node eval " + std::to_string(eval) + " out of range, |eval| must be <= " +
                            std::to_string(max_eval()));
    }
    for (const auto& c : children) {
        if (!c) throw ContractError("null child node");
    }
    auto n = std::make_shared<const Node>(eval, color, std::move(children));
    if (n->height() > kMaxTreeHeight) {
        throw ResourceError("tree height exceeds limit " + std::to_string(kMaxTreeHeight));
    }
    return n;
}

inline NodePtr make_leaf(int eval, Color color) { return make_node(eval, color, {}); }

inline std::uint64_t node_count(const NodePtr& u) { return u->node_count(); }
inline int height(const NodePtr& u) { return u->height(); }

inline bool structurally_equal(const NodePtr& a, const NodePtr& b) {
    if (a.get() == b.get()) return true;
    if (a->fingerprint() != b->fingerprint()) return false;
    if (a->eval() != b->eval() || a->color() != b->color()) return false;
    if (a->children().size() != b->children().size()) return false;
    for (std::size_t i = 0; i < a->children().size(); ++i) {
        if (!structurally_equal(a->children()[i], b->children()[i])) return false;
    }
    return true;
}

// Truncation to distance d from the root; nodes at distance exactly d lose
// their children.
inline NodePtr truncate(const NodePtr& u, int d) {
    if (d >= u->height()) return u;
    if (d == 0) return make_node(u->eval(), u->color(), {});
    std::vector<NodePtr> kept;
    kept.reserve(u->children().size());
    for (const auto& c : u->children()) kept.push_back(truncate(c, d - 1));
    return make_node(u->eval(), u->color(), std::move(kept));
}

inline bool is_turn_based(const NodePtr& u) {
    for (const auto& c : u->children()) {
        if (c->color() != opponent(u->color())) return false;
        if (!is_turn_based(c)) return false;
    }
    return true;
}

inline void require_turn_based(const NodePtr& u) {
    if (!is_turn_based(u)) throw ContractError("tree is not turn-based");
}

}  // namespace gts
