#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "gts/tree.hpp"

namespace gts {

namespace detail {

inline void count_fingerprints(const NodePtr& u, std::map<std::uint64_t, int>& acc) {
    ++acc[u->fingerprint()];
    for (const auto& c : u->children()) count_fingerprints(c, acc);
}

}  // namespace detail

// Graphviz rendering: white Max nodes, gray Min nodes, subtrees occurring more
// than once drawn with a double border, nodes beyond the horizon depth dotted.
inline std::string to_dot(const NodePtr& root, std::optional<int> horizon = std::nullopt) {
    std::map<std::uint64_t, int> occurrences;
    detail::count_fingerprints(root, occurrences);

    std::ostringstream os;
    os << "digraph gametree {\n";
    os << "  node [shape=circle, style=filled, fontname=\"Helvetica\"];\n";
    int next_id = 0;
    // Nodes are emitted per occurrence (the tree is a value, duplication is
    // structural), so ids are pre-order indices.
    std::function<int(const NodePtr&, int)> emit = [&](const NodePtr& u, int depth) -> int {
        const int id = next_id++;
        os << "  n" << id << " [label=\"" << u->eval() << "\""
           << ", fillcolor=" << (u->color() == Color::Max ? "\"white\"" : "\"gray80\"");
        if (occurrences[u->fingerprint()] > 1) os << ", peripheries=2";
        if (horizon && depth > *horizon) os << ", style=\"filled,dotted\"";
        os << "];\n";
        for (const auto& c : u->children()) {
            const int cid = emit(c, depth + 1);
            os << "  n" << id << " -> n" << cid << ";\n";
        }
        return id;
    };
    emit(root, 0);
    os << "}\n";
    return os.str();
}

}  // namespace gts
