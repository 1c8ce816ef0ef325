#include <catch_amalgamated.hpp>

#include "gts/generator.hpp"
#include "gts/reference.hpp"

using namespace gts;

namespace {

NodePtr random_tree(std::uint64_t seed, bool turn_based = true) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.turn_based = turn_based;
    return gen_tree(cfg);
}

}  // namespace

TEST_CASE("minimax_spec base cases") {
    CHECK(minimax_spec(make_leaf(7, Color::Min)) == 7);
    NodePtr maxr = make_node(0, Color::Max, {make_leaf(3, Color::Min), make_leaf(5, Color::Min)});
    CHECK(minimax_spec(maxr) == 5);
    NodePtr minr = make_node(0, Color::Min, {make_leaf(3, Color::Max), make_leaf(5, Color::Max)});
    CHECK(minimax_spec(minr) == 3);
}

TEST_CASE("minimax_alg equals minimax_spec") {
    CHECK(minimax_alg(make_leaf(7, Color::Max)) == 7);
    NodePtr minr = make_node(0, Color::Min, {make_leaf(3, Color::Max), make_leaf(5, Color::Max)});
    CHECK(minimax_alg(minr) == 3);
    for (std::uint64_t s = 0; s < 300; ++s) {
        NodePtr u = random_tree(s, s % 2 == 0);
        CHECK(minimax_alg(u) == minimax_spec(u));
    }
}

TEST_CASE("negamax_spec base cases and sign identity") {
    CHECK(negamax_spec(make_leaf(7, Color::Min)) == -7);
    NodePtr maxr = make_node(0, Color::Max, {make_leaf(3, Color::Min), make_leaf(5, Color::Min)});
    CHECK(negamax_spec(maxr) == 5);
    for (std::uint64_t s = 0; s < 300; ++s) {
        NodePtr u = random_tree(s);
        CHECK(negamax_spec(u) == to_int(u->color()) * minimax_spec(u));
    }
}

TEST_CASE("negamax requires a turn-based tree") {
    NodePtr bad = make_node(0, Color::Max, {make_leaf(1, Color::Max)});
    CHECK_THROWS_AS(negamax_spec(bad), ContractError);
    CHECK_THROWS_AS(negamax_alg(bad), ContractError);
    CHECK_THROWS_AS(negamax_depth(bad, 1), ContractError);
}

TEST_CASE("negamax_alg equals negamax_spec") {
    CHECK(negamax_alg(make_leaf(7, Color::Max)) == 7);
    CHECK(negamax_alg(make_leaf(7, Color::Min)) == -7);
    for (std::uint64_t s = 0; s < 300; ++s) {
        NodePtr u = random_tree(s);
        CHECK(negamax_alg(u) == negamax_spec(u));
    }
}

TEST_CASE("depth-limited composition") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        NodePtr u = random_tree(s);
        const int h = height(u);
        CHECK(negamax_depth(u, 0) == to_int(u->color()) * u->eval());
        CHECK(negamax_depth(u, h) == negamax_spec(u));
        CHECK(negamax_depth(u, h + 2) == negamax_spec(u));
        for (int d = 0; d <= h; ++d) {
            CHECK(minimax_depth(u, d) == minimax_spec(truncate(u, d)));
            CHECK(negamax_depth(u, d) == negamax_spec(truncate(u, d)));
        }
    }
}

TEST_CASE("too-deep trees raise a resource error") {
    NodePtr chain = make_leaf(0, Color::Max);
    try {
        for (int i = 0; i < kMaxTreeHeight + 10; ++i) {
            chain = make_node(0, chain->color() == Color::Max ? Color::Min : Color::Max, {chain});
        }
        FAIL("expected ResourceError");
    } catch (const ResourceError&) {
        SUCCEED();
    }
}
