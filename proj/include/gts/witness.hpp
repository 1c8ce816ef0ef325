#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "gts/alphabeta.hpp"
#include "gts/reference.hpp"
#include "gts/serialize.hpp"
#include "gts/tree.hpp"
#include "gts/tt.hpp"

namespace gts {

inline constexpr std::uint64_t kDefaultGuard = 100000;

// Outcome of deciding an existential over all-or-none expansions.
// satisfied=false is only a refutation when exhausted=true; a guard-exceeded
// run answers "unknown".
struct WitnessReport {
    bool satisfied = false;
    std::optional<NodePtr> witness;
    std::uint64_t expansions_examined = 0;
    bool exhausted = false;

    enum class Verdict { Satisfied, Refuted, Unknown };
    Verdict verdict() const {
        if (satisfied) return Verdict::Satisfied;
        return exhausted ? Verdict::Refuted : Verdict::Unknown;
    }
};

inline std::string to_string(WitnessReport::Verdict v) {
    switch (v) {
        case WitnessReport::Verdict::Satisfied: return "satisfied";
        case WitnessReport::Verdict::Refuted: return "refuted";
        case WitnessReport::Verdict::Unknown: return "unknown";
    }
    return "?";
}

// All-or-none expansion: u' agrees with u at the root; above the horizon the
// child lists correspond exactly; at and below the horizon each node keeps
// either all of its children from u or none.
inline bool is_aon_expansion(const NodePtr& u_prime, const NodePtr& u, int d) {
    if (u_prime->eval() != u->eval() || u_prime->color() != u->color()) return false;
    const auto& c = u->children();
    const auto& cp = u_prime->children();
    if (d == 0 && cp.empty()) return true;
    if (cp.size() != c.size()) return false;
    const int dn = d > 0 ? d - 1 : 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!is_aon_expansion(cp[i], c[i], dn)) return false;
    }
    return true;
}

namespace detail {

// Visits every all-or-none expansion of (u, d), children left to right,
// stop-choice before expand-choice. The visitor returns false to abort.
inline bool for_each_aon_expansion(const NodePtr& u, int d,
                                   const std::function<bool(const NodePtr&)>& fn) {
    if (u->is_leaf()) return fn(u);
    std::function<bool(std::size_t, std::vector<NodePtr>&)> product =
        [&](std::size_t idx, std::vector<NodePtr>& acc) -> bool {
        if (idx == u->children().size()) {
            return fn(make_node(u->eval(), u->color(), acc));
        }
        const int dn = d > 0 ? d - 1 : 0;
        return for_each_aon_expansion(u->children()[idx], dn, [&](const NodePtr& c) {
            acc.push_back(c);
            const bool cont = product(idx + 1, acc);
            acc.pop_back();
            return cont;
        });
    };
    if (d == 0) {
        if (!fn(make_node(u->eval(), u->color(), {}))) return false;
    }
    std::vector<NodePtr> acc;
    acc.reserve(u->children().size());
    return product(0, acc);
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    if (a != 0 && b > cap / a) return cap;
    return a * b;
}

}  // namespace detail

// Independent product-formula count of all-or-none expansions (saturating).
inline std::uint64_t count_aon_expansions(const NodePtr& u, int d) {
    if (u->is_leaf()) return 1;
    std::uint64_t prod = 1;
    const int dn = d > 0 ? d - 1 : 0;
    for (const auto& c : u->children()) prod = detail::sat_mul(prod, count_aon_expansions(c, dn));
    if (d == 0) {
        if (prod == std::numeric_limits<std::uint64_t>::max()) return prod;
        return 1 + prod;
    }
    return prod;
}

struct EnumerationResult {
    std::vector<NodePtr> expansions;
    bool exhausted = false;  // false means the guard cut the stream short
};

inline EnumerationResult enumerate_aon_expansions(const NodePtr& u, int d, std::uint64_t guard = kDefaultGuard) {
    if (guard < 1) throw ContractError("expansion guard must be >= 1");
    EnumerationResult out;
    out.exhausted = detail::for_each_aon_expansion(u, d, [&](const NodePtr& e) {
        if (out.expansions.size() == guard) return false;
        out.expansions.push_back(e);
        return true;
    });
    return out;
}

namespace detail {

// Decides exists u': is_aon_expansion(u', u, d) && pred(u') under a guard.
inline WitnessReport find_witness(const NodePtr& u, int d, std::uint64_t guard,
                                  const std::function<bool(const NodePtr&)>& pred) {
    WitnessReport report;
    report.exhausted = for_each_aon_expansion(u, d, [&](const NodePtr& e) {
        if (report.expansions_examined == guard) return false;
        ++report.expansions_examined;
        if (pred(e)) {
            report.satisfied = true;
            report.witness = e;
            return false;
        }
        return true;
    });
    if (report.satisfied) report.exhausted = false;
    return report;
}

}  // namespace detail

// Decides the witness-based correctness criterion for a returned value:
// some all-or-none expansion's negamax value must make x acceptable in w.
inline WitnessReport check_negamax_tt_result(int x, const NodePtr& u, const Window& w, int d,
                                             std::uint64_t guard = kDefaultGuard) {
    require_turn_based(u);
    return detail::find_witness(u, d, guard, [&](const NodePtr& e) {
        return is_ab_result(x, detail::negamax_spec_unchecked(e), w);
    });
}

// Table-entry validity: some expansion at the entry's depth must bound the
// stored value on the side its flag claims.
inline WitnessReport check_valid_table_entry(const TableEntry& t, const NodePtr& u,
                                             std::uint64_t guard = kDefaultGuard) {
    require_turn_based(u);
    return detail::find_witness(u, t.depth, guard, [&](const NodePtr& e) {
        const int nm = detail::negamax_spec_unchecked(e);
        switch (t.flag) {
            case Flag::Upperbound: return nm <= t.value;
            case Flag::Exact: return nm == t.value;
            case Flag::Lowerbound: return nm >= t.value;
        }
        return false;
    });
}

inline std::vector<std::pair<NodePtr, WitnessReport>> check_valid_table(const TranspositionTable& T,
                                                                        std::uint64_t guard = kDefaultGuard) {
    std::vector<NodePtr> keys;
    keys.reserve(T.size());
    for (const auto& [k, v] : T) keys.push_back(k);
    std::sort(keys.begin(), keys.end(),
              [](const NodePtr& a, const NodePtr& b) { return a->fingerprint() < b->fingerprint(); });
    std::vector<std::pair<NodePtr, WitnessReport>> out;
    out.reserve(keys.size());
    for (const auto& k : keys) {
        out.emplace_back(k, check_valid_table_entry(T.find(k)->second, k, guard));
    }
    return out;
}

struct ValueSetResult {
    std::set<int> values;
    std::uint64_t expansions_examined = 0;
    bool exhausted = false;
};

// Negamax values over all expansions, deduplicated.
inline ValueSetResult witness_value_set(const NodePtr& u, int d, std::uint64_t guard = kDefaultGuard) {
    require_turn_based(u);
    ValueSetResult out;
    out.exhausted = detail::for_each_aon_expansion(u, d, [&](const NodePtr& e) {
        if (out.expansions_examined == guard) return false;
        ++out.expansions_examined;
        out.values.insert(detail::negamax_spec_unchecked(e));
        return true;
    });
    return out;
}

inline nlohmann::ordered_json report_to_json(const WitnessReport& r) {
    nlohmann::ordered_json j;
    j["verdict"] = to_string(r.verdict());
    if (r.witness) j["witness"] = serialize(*r.witness);
    j["expansions_examined"] = r.expansions_examined;
    j["exhausted"] = r.exhausted;
    return j;
}

// Debug-mode replay of the TTW loop invariant: after iteration i there is an
// expansion u' with is_partial_negamax_ab_result(value, u', i, alpha0, beta).
// Exponential; only run when the expansion count fits under the guard.
inline TtwIterationObserver make_ghost_invariant_observer(std::uint64_t guard = kDefaultGuard) {
    return [guard](const NodePtr& u, std::size_t i, int value, int alpha0, int beta, int depth) {
        if (count_aon_expansions(u, depth) > guard) return;
        WitnessReport r = detail::find_witness(u, depth, guard, [&](const NodePtr& e) {
            return is_ab_result(value, pnm(e, i), Window{alpha0, beta});
        });
        if (r.verdict() == WitnessReport::Verdict::Refuted) {
            throw ContractError("ghost loop invariant violated at iteration " + std::to_string(i));
        }
    };
}

}  // namespace gts
