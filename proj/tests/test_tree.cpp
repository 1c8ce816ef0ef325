#include <catch_amalgamated.hpp>

#include "gts/generator.hpp"
#include "gts/serialize.hpp"
#include "gts/tree.hpp"

using namespace gts;

namespace {

NodePtr random_tree(std::uint64_t seed, bool turn_based = true, double dup = 0.0) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.turn_based = turn_based;
    cfg.duplicate_probability = dup;
    return gen_tree(cfg);
}

}  // namespace

TEST_CASE("make_node constructs exactly the given fields") {
    NodePtr leaf = make_leaf(7, Color::Max);
    CHECK(leaf->eval() == 7);
    CHECK(leaf->color() == Color::Max);
    CHECK(leaf->is_leaf());

    NodePtr t = make_node(0, Color::Min, {make_leaf(3, Color::Max), make_leaf(5, Color::Max)});
    REQUIRE(t->children().size() == 2);
    CHECK(t->children()[0]->eval() == 3);
    CHECK(t->children()[1]->eval() == 5);
}

TEST_CASE("make_node rejects out-of-range evaluations") {
    CHECK_THROWS_AS(make_leaf(infinity() + 1, Color::Max), ContractError);
    CHECK_THROWS_AS(make_leaf(infinity(), Color::Max), ContractError);
    CHECK_THROWS_AS(make_leaf(-infinity(), Color::Min), ContractError);
    CHECK_NOTHROW(make_leaf(max_eval(), Color::Max));
}

TEST_CASE("truncate") {
    NodePtr leaf = make_leaf(4, Color::Max);
    CHECK(structurally_equal(truncate(leaf, 5), leaf));

    NodePtr t = make_node(
        0, Color::Max,
        {make_node(1, Color::Min, {make_leaf(2, Color::Max)}), make_leaf(3, Color::Min)});

    NodePtr t0 = truncate(t, 0);
    CHECK(t0->is_leaf());
    CHECK(t0->eval() == 0);
    CHECK(t0->color() == Color::Max);

    NodePtr t1 = truncate(t, 1);
    REQUIRE(t1->children().size() == 2);
    CHECK(t1->children()[0]->is_leaf());  // grandchild removed
    CHECK(structurally_equal(truncate(t, 2), t));
}

TEST_CASE("truncate properties on random trees") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        NodePtr u = random_tree(s);
        const int h = height(u);
        CHECK(structurally_equal(truncate(u, h), u));
        CHECK(structurally_equal(truncate(u, h + 3), u));
        for (int d = 0; d <= h; ++d) {
            CHECK(height(truncate(u, d)) <= d);
            for (int e = 0; e <= h; ++e) {
                CHECK(structurally_equal(truncate(truncate(u, d), e), truncate(u, std::min(d, e))));
            }
        }
    }
}

TEST_CASE("is_turn_based") {
    CHECK(is_turn_based(make_leaf(1, Color::Max)));
    NodePtr bad = make_node(0, Color::Max, {make_leaf(1, Color::Max)});
    CHECK_FALSE(is_turn_based(bad));
    NodePtr good = make_node(
        0, Color::Max,
        {make_node(1, Color::Min, {make_leaf(2, Color::Max)}), make_leaf(3, Color::Min)});
    CHECK(is_turn_based(good));
    for (std::uint64_t s = 0; s < 20; ++s) {
        CHECK(is_turn_based(random_tree(s, true)));
    }
}

TEST_CASE("structurally_equal") {
    CHECK(structurally_equal(make_leaf(3, Color::Max), make_leaf(3, Color::Max)));
    CHECK_FALSE(structurally_equal(make_leaf(3, Color::Max), make_leaf(3, Color::Min)));
    CHECK_FALSE(structurally_equal(make_leaf(3, Color::Max), make_leaf(4, Color::Max)));

    NodePtr ab = make_node(0, Color::Max, {make_leaf(1, Color::Min), make_leaf(2, Color::Min)});
    NodePtr ba = make_node(0, Color::Max, {make_leaf(2, Color::Min), make_leaf(1, Color::Min)});
    CHECK_FALSE(structurally_equal(ab, ba));  // child order is part of structure
}

TEST_CASE("fingerprint discriminates in random corpora") {
    std::vector<NodePtr> trees;
    for (std::uint64_t s = 0; s < 200; ++s) trees.push_back(random_tree(s, s % 2 == 0, 0.2));
    for (std::size_t i = 0; i < trees.size(); ++i) {
        for (std::size_t j = i + 1; j < trees.size(); ++j) {
            if (trees[i]->fingerprint() == trees[j]->fingerprint()) {
                CHECK(structurally_equal(trees[i], trees[j]));
            } else {
                CHECK_FALSE(structurally_equal(trees[i], trees[j]));
            }
        }
    }
}

TEST_CASE("node_count and height") {
    NodePtr leaf = make_leaf(9, Color::Min);
    CHECK(node_count(leaf) == 1);
    CHECK(height(leaf) == 0);

    NodePtr t = make_node(0, Color::Max, {make_leaf(1, Color::Min), make_leaf(2, Color::Min)});
    CHECK(node_count(t) == 3);
    CHECK(height(t) == 1);

    // shared subtrees are counted per occurrence
    NodePtr shared = make_leaf(5, Color::Min);
    NodePtr dup = make_node(0, Color::Max, {shared, shared});
    CHECK(node_count(dup) == 3);
}

TEST_CASE("serialize canonical form") {
    NodePtr leaf = make_leaf(7, Color::Max);
    CHECK(serialize(leaf) == R"({"eval":7,"color":1,"children":[]})");
    CHECK(structurally_equal(parse(serialize(leaf)), leaf));
}

TEST_CASE("parse supports id/ref sharing") {
    const std::string text = R"({
        "eval": 0, "color": 1, "children": [
            {"id": "v", "eval": 1, "color": -1, "children": [{"eval": 2, "color": 1, "children": []}]},
            {"ref": "v"}
        ]
    })";
    NodePtr t = parse(text);
    REQUIRE(t->children().size() == 2);
    CHECK(structurally_equal(t->children()[0], t->children()[1]));
    // canonical output expands the reference and drops labels
    const std::string canon = serialize(t);
    CHECK(canon.find("ref") == std::string::npos);
    CHECK(canon.find("id") == std::string::npos);
    CHECK(structurally_equal(parse(canon), t));
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_AS(parse(R"({"eval":1,"color":2,"children":[]})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"eval":1,"children":[]})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"eval":1,"color":1)"), ParseError);
    CHECK_THROWS_AS(parse(R"({"ref":"nope"})"), ParseError);
    // forward references are rejected
    CHECK_THROWS_AS(parse(R"({"eval":0,"color":1,"children":[{"ref":"x"},
        {"id":"x","eval":1,"color":-1,"children":[]}]})"),
                    ParseError);
    // out-of-range eval
    CHECK_THROWS_AS(parse(R"({"eval":1048576,"color":1,"children":[]})"), ParseError);
    // syntax errors carry a byte position
    try {
        parse("{\"eval\": }");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
}

TEST_CASE("round-trip on random trees") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        NodePtr u = random_tree(s, s % 2 == 0, 0.3);
        CHECK(structurally_equal(parse(serialize(u)), u));
        CHECK(serialize(parse(serialize(u))) == serialize(u));
    }
}
