#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gts/generator.hpp"
#include "gts/serialize.hpp"
#include "gts/tree.hpp"
#include "gts/tt.hpp"
#include "gts/witness.hpp"

namespace gts {

struct AlgorithmId {
    enum class Kind { Ttw, Ttm, TtwHybrid, Failsoft, Failhard };
    Kind kind = Kind::Ttw;
    HybridOptions opts{};

    bool uses_table() const {
        return kind == Kind::Ttw || kind == Kind::Ttm || kind == Kind::TtwHybrid;
    }
    bool operator==(const AlgorithmId&) const = default;
};

inline std::string to_string(const AlgorithmId& a) {
    switch (a.kind) {
        case AlgorithmId::Kind::Ttw: return "ttw";
        case AlgorithmId::Kind::Ttm: return "ttm";
        case AlgorithmId::Kind::Failsoft: return "failsoft";
        case AlgorithmId::Kind::Failhard: return "failhard";
        case AlgorithmId::Kind::TtwHybrid: {
            std::string s = "hybrid:";
            s += a.opts.failsoft_propagation ? '1' : '0';
            s += a.opts.current_alpha_flags ? '1' : '0';
            s += a.opts.depth_preserving_updates ? '1' : '0';
            if (a.opts.swapped_flag_order) s += '1';
            return s;
        }
    }
    return "?";
}

inline AlgorithmId algorithm_from_string(const std::string& s) {
    if (s == "ttw") return {AlgorithmId::Kind::Ttw, {}};
    if (s == "ttm") return {AlgorithmId::Kind::Ttm, {}};
    if (s == "failsoft") return {AlgorithmId::Kind::Failsoft, {}};
    if (s == "failhard") return {AlgorithmId::Kind::Failhard, {}};
    if (s.rfind("hybrid:", 0) == 0) {
        const std::string bits = s.substr(7);
        if (bits.size() != 3 && bits.size() != 4) {
            throw ParseError("hybrid algorithm needs 3 or 4 option bits, e.g. hybrid:110");
        }
        for (char c : bits) {
            if (c != '0' && c != '1') throw ParseError("hybrid option bits must be 0 or 1");
        }
        HybridOptions o;
        o.failsoft_propagation = bits[0] == '1';
        o.current_alpha_flags = bits[1] == '1';
        o.depth_preserving_updates = bits[2] == '1';
        o.swapped_flag_order = bits.size() == 4 && bits[3] == '1';
        return {AlgorithmId::Kind::TtwHybrid, o};
    }
    throw ParseError("unknown algorithm \"" + s +
                     "\" (expected ttw, ttm, failsoft, failhard, or hybrid:<bits>)");
}

struct Call {
    Window window;
    int depth;
    std::optional<std::uint64_t> perturb_seed;  // applied to the table before this call
};

using CallSchedule = std::vector<Call>;

struct Violation {
    enum class Kind { Result, Table };

    NodePtr tree;
    CallSchedule schedule;
    AlgorithmId algorithm;
    int observed = 0;
    WitnessReport report;
    Kind kind = Kind::Result;
    std::size_t call_index = 0;
    std::optional<NodePtr> entry_key;   // table kind only
    std::optional<TableEntry> entry;    // table kind only
};

struct ReplayOutcome {
    std::optional<Violation> violation;
    std::uint64_t unknown_checks = 0;
    std::vector<int> values;  // value returned by each executed call
};

// Runs the schedule, threading the table, and checks the returned value and
// every stored entry after each call. Stops at the first refuted check.
// Unknown (guard-exceeded) verdicts are counted, never treated as violations.
inline ReplayOutcome run_schedule(const NodePtr& tree, const CallSchedule& schedule,
                                  const AlgorithmId& alg, std::uint64_t guard = kDefaultGuard) {
    ReplayOutcome out;
    TranspositionTable T;
    for (std::size_t ci = 0; ci < schedule.size(); ++ci) {
        const Call& call = schedule[ci];
        if (call.perturb_seed && alg.uses_table()) T = perturb_table(T, *call.perturb_seed);
        int value = 0;
        switch (alg.kind) {
            case AlgorithmId::Kind::Ttw: {
                auto r = negamax_ttw(tree, call.window, call.depth, std::move(T));
                value = r.value;
                T = std::move(r.table);
                break;
            }
            case AlgorithmId::Kind::Ttm: {
                auto r = negamax_ttm(tree, call.window, call.depth, std::move(T));
                value = r.value;
                T = std::move(r.table);
                break;
            }
            case AlgorithmId::Kind::TtwHybrid: {
                auto r = negamax_ttw_hybrid(tree, call.window, call.depth, std::move(T), alg.opts);
                value = r.value;
                T = std::move(r.table);
                break;
            }
            case AlgorithmId::Kind::Failsoft:
                value = alphabeta_failsoft(tree, call.window, call.depth);
                break;
            case AlgorithmId::Kind::Failhard:
                value = alphabeta_failhard(tree, call.window, call.depth);
                break;
        }
        out.values.push_back(value);

        if (alg.uses_table()) {
            WitnessReport r = check_negamax_tt_result(value, tree, call.window, call.depth, guard);
            if (r.verdict() == WitnessReport::Verdict::Unknown) ++out.unknown_checks;
            if (r.verdict() == WitnessReport::Verdict::Refuted) {
                out.violation = Violation{tree, schedule, alg, value, r, Violation::Kind::Result, ci, {}, {}};
                return out;
            }
            for (auto& [key, er] : check_valid_table(T, guard)) {
                if (er.verdict() == WitnessReport::Verdict::Unknown) ++out.unknown_checks;
                if (er.verdict() == WitnessReport::Verdict::Refuted) {
                    const TableEntry entry = T.find(key)->second;
                    out.violation = Violation{tree,  schedule, alg, entry.value, er, Violation::Kind::Table,
                                              ci,    key,      entry};
                    return out;
                }
            }
        } else {
            if (!is_negamax_ab_result(value, truncate(tree, call.depth), call.window)) {
                WitnessReport r;
                r.exhausted = true;  // the alpha-beta oracle is exact
                out.violation = Violation{tree, schedule, alg, value, r, Violation::Kind::Result, ci, {}, {}};
                return out;
            }
        }
    }
    return out;
}

namespace detail {

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 0x51ed2701));
}

// Windows are sampled near actual search values so cutoffs and bound reuse
// trigger; uniform windows over the full bounded range almost never prune.
inline CallSchedule gen_schedule(const NodePtr& tree, std::mt19937_64& rng) {
    std::vector<int> anchors;
    const int h = height(tree);
    for (int d = 0; d <= h; ++d) anchors.push_back(negamax_depth(tree, d));
    std::uniform_int_distribution<std::size_t> pick(0, anchors.size() - 1);
    std::uniform_int_distribution<int> offset(-2, 2);
    std::uniform_int_distribution<int> width(1, 5);
    std::uniform_int_distribution<int> depth_dist(0, h + 1);
    std::uniform_int_distribution<int> ncalls_dist(1, 3);

    CallSchedule schedule;
    const int n = ncalls_dist(rng);
    for (int i = 0; i < n; ++i) {
        const int alpha = anchors[pick(rng)] + offset(rng);
        Call c;
        c.window = Window{alpha, alpha + width(rng)};
        c.depth = depth_dist(rng);
        if (i > 0 && rng() % 2 == 0) c.perturb_seed = rng();
        schedule.push_back(c);
    }
    return schedule;
}

}  // namespace detail

struct FuzzResult {
    std::vector<Violation> violations;
    std::uint64_t trials = 0;
    std::uint64_t unknown_checks = 0;
    std::uint64_t trials_with_unknown = 0;
};

inline FuzzResult fuzz(const AlgorithmId& alg, const GeneratorConfig& cfg, std::uint64_t trials,
                       std::uint64_t guard = kDefaultGuard, bool stop_at_first = false) {
    cfg.validate();
    FuzzResult out;
    for (std::uint64_t t = 0; t < trials; ++t) {
        ++out.trials;
        GeneratorConfig tc = cfg;
        tc.seed = detail::derive_seed(cfg.seed, t);
        NodePtr tree = gen_tree(tc);
        std::mt19937_64 rng(detail::mix64(tc.seed));
        CallSchedule schedule = detail::gen_schedule(tree, rng);
        ReplayOutcome r = run_schedule(tree, schedule, alg, guard);
        out.unknown_checks += r.unknown_checks;
        if (r.unknown_checks > 0) ++out.trials_with_unknown;
        if (r.violation) {
            out.violations.push_back(std::move(*r.violation));
            if (stop_at_first) break;
        }
    }
    return out;
}

// Directed search for the Marsland violation pattern: the same subtree is
// searched twice, deeper first with a narrow window that stores a lower bound,
// then shallower with a wider window that reuses it.
inline std::optional<Violation> find_ttm_counterexample(std::uint64_t budget, std::uint64_t seed = 1,
                                                        std::uint64_t guard = kDefaultGuard) {
    if (budget < 1) throw ContractError("budget must be >= 1");
    const AlgorithmId ttm{AlgorithmId::Kind::Ttm, {}};
    const std::uint64_t pattern_budget = budget - budget / 4;

    for (std::uint64_t t = 0; t < pattern_budget; ++t) {
        const std::uint64_t s = detail::derive_seed(seed, t);
        std::mt19937_64 rng(s);
        GeneratorConfig cfg;
        cfg.max_depth = 2 + static_cast<int>(rng() % 3);
        cfg.branching_min = 1;
        cfg.branching_max = 3;
        cfg.eval_lo = -6;
        cfg.eval_hi = 6;
        cfg.turn_based = true;
        cfg.duplicate_probability = 0.3;
        cfg.max_nodes = 40;
        cfg.seed = rng();
        NodePtr v = gen_tree(cfg);
        const int h = height(v);
        if (h < 2) continue;

        const int alpha = static_cast<int>(rng() % 3) - 1;
        const int beta_narrow = alpha + 1 + static_cast<int>(rng() % 2);
        const int beta_wide = beta_narrow + 1 + static_cast<int>(rng() % 3);
        const int d_deep = h + static_cast<int>(rng() % 2);
        const int d_shallow = 1 + static_cast<int>(rng() % (h - 1));

        CallSchedule schedule{
            Call{Window{alpha, beta_narrow}, d_deep, {}},
            Call{Window{alpha, beta_wide}, d_shallow, {}},
        };

        // Require the deep call to leave a lower bound for the root.
        auto first = negamax_ttm(v, schedule[0].window, schedule[0].depth, {});
        auto it = first.table.find(v);
        if (it == first.table.end() || it->second.flag != Flag::Lowerbound) continue;

        ReplayOutcome r = run_schedule(v, schedule, ttm, guard);
        if (r.violation) return r.violation;
    }

    GeneratorConfig cfg;
    cfg.max_depth = 4;
    cfg.eval_lo = -8;
    cfg.eval_hi = 8;
    cfg.duplicate_probability = 0.4;
    cfg.max_nodes = 60;
    cfg.seed = detail::derive_seed(seed, 0xfa11bacc);
    FuzzResult fr = fuzz(ttm, cfg, budget - pattern_budget, guard, /*stop_at_first=*/true);
    if (!fr.violations.empty()) return fr.violations.front();
    return std::nullopt;
}

namespace detail {

inline NodePtr drop_child_everywhere(const NodePtr& u, const NodePtr& target) {
    std::vector<NodePtr> children;
    for (const auto& c : u->children()) {
        if (structurally_equal(c, target)) continue;
        children.push_back(drop_child_everywhere(c, target));
    }
    return make_node(u->eval(), u->color(), std::move(children));
}

inline NodePtr replace_subtree_by_leaf(const NodePtr& u, const NodePtr& target) {
    if (structurally_equal(u, target)) return make_node(u->eval(), u->color(), {});
    std::vector<NodePtr> children;
    for (const auto& c : u->children()) children.push_back(replace_subtree_by_leaf(c, target));
    return make_node(u->eval(), u->color(), std::move(children));
}

inline NodePtr map_eval(const NodePtr& u, int from, int to) {
    std::vector<NodePtr> children;
    for (const auto& c : u->children()) children.push_back(map_eval(c, from, to));
    return make_node(u->eval() == from ? to : u->eval(), u->color(), std::move(children));
}

inline void collect_subtrees(const NodePtr& u, std::map<std::uint64_t, NodePtr>& acc) {
    acc.emplace(u->fingerprint(), u);
    for (const auto& c : u->children()) collect_subtrees(c, acc);
}

inline void collect_evals(const NodePtr& u, std::set<int>& acc) {
    acc.insert(u->eval());
    for (const auto& c : u->children()) collect_evals(c, acc);
}

}  // namespace detail

// Greedy reduction to a fixpoint; a step is kept iff the reduced input still
// produces a violation of the same kind.
inline Violation shrink(const Violation& v, std::uint64_t guard = kDefaultGuard) {
    Violation best = v;
    auto try_adopt = [&](const NodePtr& tree, const CallSchedule& schedule) -> bool {
        ReplayOutcome r = run_schedule(tree, schedule, best.algorithm, guard);
        if (r.violation && r.violation->kind == best.kind) {
            best = std::move(*r.violation);
            return true;
        }
        return false;
    };

    bool changed = true;
    while (changed) {
        changed = false;

        if (best.schedule.size() > 1) {
            for (std::size_t i = 0; i < best.schedule.size(); ++i) {
                CallSchedule s = best.schedule;
                s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
                if (try_adopt(best.tree, s)) {
                    changed = true;
                    break;
                }
            }
            if (changed) continue;
        }

        std::map<std::uint64_t, NodePtr> subs;
        detail::collect_subtrees(best.tree, subs);
        for (const auto& [fp, s] : subs) {
            if (fp == best.tree->fingerprint()) continue;
            if (try_adopt(detail::drop_child_everywhere(best.tree, s), best.schedule)) {
                changed = true;
                break;
            }
        }
        if (changed) continue;

        for (const auto& [fp, s] : subs) {
            if (s->is_leaf()) continue;
            if (try_adopt(detail::replace_subtree_by_leaf(best.tree, s), best.schedule)) {
                changed = true;
                break;
            }
        }
        if (changed) continue;

        std::set<int> evals;
        detail::collect_evals(best.tree, evals);
        for (int e : evals) {
            if (e == 0) continue;
            if (try_adopt(detail::map_eval(best.tree, e, e / 2), best.schedule)) {
                changed = true;
                break;
            }
        }
    }
    return best;
}

inline nlohmann::ordered_json violation_to_json(const Violation& v) {
    nlohmann::ordered_json j;
    j["tree"] = serialize(v.tree);
    j["algorithm"] = to_string(v.algorithm);
    j["kind"] = v.kind == Violation::Kind::Result ? "result" : "table";
    auto sched = nlohmann::ordered_json::array();
    for (const auto& c : v.schedule) {
        nlohmann::ordered_json cj;
        cj["alpha"] = c.window.alpha;
        cj["beta"] = c.window.beta;
        cj["depth"] = c.depth;
        if (c.perturb_seed) cj["perturb_seed"] = *c.perturb_seed;
        sched.push_back(std::move(cj));
    }
    j["schedule"] = std::move(sched);
    j["observed"] = v.observed;
    j["call_index"] = v.call_index;
    j["verdict"] = to_string(v.report.verdict());
    j["expansions_examined"] = v.report.expansions_examined;
    if (v.entry_key) {
        nlohmann::ordered_json ej;
        ej["tree"] = serialize(*v.entry_key);
        ej["value"] = v.entry->value;
        ej["depth"] = v.entry->depth;
        ej["flag"] = to_string(v.entry->flag);
        j["entry"] = std::move(ej);
    }
    return j;
}

inline Violation violation_from_json(const nlohmann::json& j) {
    Violation v;
    v.tree = parse(j.at("tree").get<std::string>());
    v.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "result") v.kind = Violation::Kind::Result;
    else if (kind == "table") v.kind = Violation::Kind::Table;
    else throw ParseError("violation kind must be \"result\" or \"table\"");
    for (const auto& cj : j.at("schedule")) {
        Call c;
        c.window = Window{cj.at("alpha").get<int>(), cj.at("beta").get<int>()};
        c.depth = cj.at("depth").get<int>();
        if (cj.contains("perturb_seed")) c.perturb_seed = cj["perturb_seed"].get<std::uint64_t>();
        v.schedule.push_back(c);
    }
    v.observed = j.at("observed").get<int>();
    v.call_index = j.value("call_index", std::size_t{0});
    if (j.contains("entry")) {
        const auto& ej = j["entry"];
        v.entry_key = parse(ej.at("tree").get<std::string>());
        v.entry = TableEntry{ej.at("value").get<int>(), ej.at("depth").get<int>(),
                             flag_from_string(ej.at("flag").get<std::string>())};
    }
    return v;
}

}  // namespace gts
