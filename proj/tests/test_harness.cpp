#include <catch_amalgamated.hpp>

#include "gts/fuzz.hpp"
#include "gts/generator.hpp"

using namespace gts;

namespace {

bool has_equal_siblings(const NodePtr& u) {
    const auto& c = u->children();
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            if (structurally_equal(c[i], c[j])) return true;
        }
    }
    for (const auto& child : c) {
        if (has_equal_siblings(child)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("gen_tree is deterministic and respects the config") {
    GeneratorConfig cfg;
    cfg.seed = 42;
    cfg.duplicate_probability = 0.3;
    NodePtr a = gen_tree(cfg);
    NodePtr b = gen_tree(cfg);
    CHECK(structurally_equal(a, b));

    for (std::uint64_t s = 0; s < 50; ++s) {
        GeneratorConfig c2;
        c2.seed = s;
        c2.max_depth = 3;
        c2.max_nodes = 25;
        c2.eval_lo = -5;
        c2.eval_hi = 5;
        NodePtr t = gen_tree(c2);
        CHECK(is_turn_based(t));
        CHECK(height(t) <= 3);
        CHECK(node_count(t) <= 25);
        std::set<int> evals;
        detail::collect_evals(t, evals);
        CHECK(*evals.begin() >= -5);
        CHECK(*evals.rbegin() <= 5);
    }
}

TEST_CASE("gen_tree rejects unsatisfiable configs") {
    GeneratorConfig cfg;
    cfg.max_nodes = 0;
    CHECK_THROWS_AS(gen_tree(cfg), ContractError);
    GeneratorConfig cfg2;
    cfg2.eval_lo = 5;
    cfg2.eval_hi = -5;
    CHECK_THROWS_AS(gen_tree(cfg2), ContractError);
    GeneratorConfig cfg3;
    cfg3.duplicate_probability = 1.5;
    CHECK_THROWS_AS(gen_tree(cfg3), ContractError);
}

TEST_CASE("duplication induces structurally equal siblings") {
    int with_dups = 0;
    for (std::uint64_t s = 0; s < 30; ++s) {
        GeneratorConfig cfg;
        cfg.seed = s;
        cfg.branching_min = 2;
        cfg.branching_max = 3;
        cfg.duplicate_probability = 1.0;
        NodePtr t = gen_tree(cfg);
        if (has_equal_siblings(t)) ++with_dups;
    }
    CHECK(with_dups >= 25);
}

TEST_CASE("algorithm identifiers round-trip") {
    for (const char* name : {"ttw", "ttm", "failsoft", "failhard", "hybrid:101", "hybrid:1101"}) {
        CHECK(to_string(algorithm_from_string(name)) == name);
    }
    CHECK_THROWS_AS(algorithm_from_string("alphazero"), ParseError);
    CHECK_THROWS_AS(algorithm_from_string("hybrid:12"), ParseError);
}

TEST_CASE("fuzz finds nothing wrong with sound algorithms") {
    GeneratorConfig cfg;
    cfg.seed = 5;
    cfg.max_depth = 3;
    cfg.max_nodes = 40;
    cfg.eval_lo = -10;
    cfg.eval_hi = 10;
    cfg.duplicate_probability = 0.4;
    for (const char* name : {"ttw", "failsoft", "failhard"}) {
        FuzzResult r = fuzz(algorithm_from_string(name), cfg, 300, 20000);
        INFO(name);
        CHECK(r.violations.empty());
    }
}

TEST_CASE("fuzz is deterministic in the master seed") {
    GeneratorConfig cfg;
    cfg.seed = 77;
    cfg.max_depth = 3;
    cfg.max_nodes = 30;
    cfg.eval_lo = -6;
    cfg.eval_hi = 6;
    cfg.duplicate_probability = 0.4;
    AlgorithmId ttm = algorithm_from_string("ttm");
    FuzzResult a = fuzz(ttm, cfg, 400, 20000);
    FuzzResult b = fuzz(ttm, cfg, 400, 20000);
    REQUIRE(a.violations.size() == b.violations.size());
    for (std::size_t i = 0; i < a.violations.size(); ++i) {
        CHECK(violation_to_json(a.violations[i]).dump() == violation_to_json(b.violations[i]).dump());
    }
}

TEST_CASE("violations replay to the identical outcome") {
    auto v = find_ttm_counterexample(20000, 1, 20000);
    REQUIRE(v.has_value());
    auto r = run_schedule(v->tree, v->schedule, v->algorithm, 20000);
    REQUIRE(r.violation.has_value());
    CHECK(r.violation->observed == v->observed);
    CHECK(r.violation->kind == v->kind);
    CHECK(r.violation->call_index == v->call_index);

    // serialization round-trip preserves the reproduction
    auto back = violation_from_json(violation_to_json(*v));
    auto r2 = run_schedule(back.tree, back.schedule, back.algorithm, 20000);
    REQUIRE(r2.violation.has_value());
    CHECK(r2.violation->observed == v->observed);
}

TEST_CASE("shrink keeps the violation and reaches a fixpoint") {
    auto v = find_ttm_counterexample(20000, 2, 20000);
    REQUIRE(v.has_value());
    Violation s = shrink(*v, 20000);
    CHECK(node_count(s.tree) <= node_count(v->tree));
    CHECK(s.schedule.size() <= v->schedule.size());

    auto r = run_schedule(s.tree, s.schedule, s.algorithm, 20000);
    REQUIRE(r.violation.has_value());
    CHECK(r.violation->kind == s.kind);

    Violation s2 = shrink(s, 20000);
    CHECK(node_count(s2.tree) == node_count(s.tree));
    CHECK(s2.schedule.size() == s.schedule.size());
}
