#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gts/tree.hpp"

namespace gts {

struct GeneratorConfig {
    int max_depth = 4;
    int branching_min = 1;
    int branching_max = 3;
    int eval_lo = -100;
    int eval_hi = 100;
    bool turn_based = true;
    double duplicate_probability = 0.0;
    std::uint64_t max_nodes = 500;
    std::uint64_t seed = 0;

    void validate() const {
        if (eval_lo > eval_hi) throw ContractError("generator: eval_lo > eval_hi");
        if (eval_lo < -max_eval() || eval_hi > max_eval()) throw ContractError("generator: eval range exceeds |MAX_EVAL|");
        if (branching_min > branching_max || branching_min < 0) throw ContractError("generator: bad branching range");
        if (max_depth < 0) throw ContractError("generator: max_depth < 0");
        if (max_nodes < 1) throw ContractError("generator: max_nodes < 1");
        if (duplicate_probability < 0.0 || duplicate_probability > 1.0) {
            throw ContractError("generator: duplicate_probability outside [0,1]");
        }
    }
};

namespace detail {

class TreeGen {
public:
    TreeGen(const GeneratorConfig& cfg, std::uint64_t seed) : cfg_(cfg), rng_(seed) {}

    NodePtr root() {
        budget_ = cfg_.max_nodes;
        NodePtr r = gen(cfg_.max_depth, pick_color());
        return r;
    }

private:
    Color pick_color() {
        return rng_() % 2 == 0 ? Color::Max : Color::Min;
    }

    int pick_eval() {
        std::uniform_int_distribution<int> d(cfg_.eval_lo, cfg_.eval_hi);
        return d(rng_);
    }

    bool coin(double p) {
        std::uniform_real_distribution<double> d(0.0, 1.0);
        return d(rng_) < p;
    }

    // Duplicate an earlier subtree of matching color that fits the remaining
    // depth, so structurally equal positions recur and the table gets hits.
    NodePtr find_duplicate(int depth_left, Color color) {
        std::vector<const NodePtr*> fits;
        for (const auto& p : pool_) {
            if (p->color() == color && p->height() <= depth_left) fits.push_back(&p);
        }
        if (fits.empty()) return nullptr;
        std::uniform_int_distribution<std::size_t> d(0, fits.size() - 1);
        return *fits[d(rng_)];
    }

    NodePtr gen(int depth_left, Color color) {
        if (budget_ > 0) --budget_;
        int n_children = 0;
        if (depth_left > 0 && budget_ > 0) {
            std::uniform_int_distribution<int> d(cfg_.branching_min, cfg_.branching_max);
            n_children = d(rng_);
            if (static_cast<std::uint64_t>(n_children) > budget_) {
                n_children = static_cast<int>(budget_);
            }
        }
        std::vector<NodePtr> children;
        children.reserve(n_children);
        for (int i = 0; i < n_children; ++i) {
            if (budget_ == 0) break;
            const Color child_color = cfg_.turn_based ? opponent(color) : pick_color();
            NodePtr child;
            if (coin(cfg_.duplicate_probability)) {
                NodePtr dup = find_duplicate(depth_left - 1, child_color);
                if (dup && dup->node_count() <= budget_) {
                    child = dup;
                    budget_ -= dup->node_count();
                }
            }
            if (!child) {
                child = gen(depth_left - 1, child_color);
                pool_.push_back(child);
            }
            children.push_back(std::move(child));
        }
        return make_node(pick_eval(), color, std::move(children));
    }

    const GeneratorConfig& cfg_;
    std::mt19937_64 rng_;
    std::vector<NodePtr> pool_;
    std::uint64_t budget_ = 0;
};

}  // namespace detail

inline NodePtr gen_tree(const GeneratorConfig& cfg) {
    cfg.validate();
    return detail::TreeGen(cfg, cfg.seed).root();
}

}  // namespace gts
