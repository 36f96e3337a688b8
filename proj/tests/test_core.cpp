#include "oracle.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace dtree;

namespace {

const Session S1;

std::vector<Tree> small_trees(int edges, int cap = 1)
{
    return enumerate_trees(edges, MultiIndex{cap}, {0}, MultiIndex{cap});
}

std::set<Tree> grow_by_leaves(int max_edges, const Session& s, const MultiIndex& edge_cap, const MultiIndex& node_cap)
{
    std::vector<MultiIndex> nodes = oracle::box(node_cap);
    std::vector<Edge> labels;
    for (int k = 0; k < static_cast<int>(s.kinds.size()); ++k)
        for (auto& i : oracle::box(edge_cap)) labels.push_back(Edge{k, i});
    std::set<Tree> all, layer;
    for (auto& n : nodes) layer.insert(Tree(n));
    all = layer;
    for (int e = 1; e <= max_edges; ++e) {
        std::set<Tree> next;
        for (auto& t : layer) {
            oracle::LTree f = oracle::label(t);
            for (int v = 0; v < f.size(); ++v)
                for (auto& a : labels)
                    for (auto& n : nodes) next.insert(oracle::build(oracle::attach(f, v, a, Tree(n))));
        }
        all.insert(next.begin(), next.end());
        layer = std::move(next);
    }
    return all;
}

} // namespace

TEST(MultiIndex, BinomialsAndPartialSubtraction)
{
    MultiIndex n{3, 2}, k{1, 2};
    EXPECT_EQ(mbinomial(n, k), Integer(3));
    EXPECT_EQ(mfactorial(n), Integer(12));
    EXPECT_FALSE(checked_sub(k, n).has_value());
    EXPECT_EQ(*checked_sub(n, k), (MultiIndex{2, 0}));
    EXPECT_EQ(multinomial(MultiIndex{4}, std::vector<MultiIndex>{MultiIndex{1}, MultiIndex{2}}), Integer(12));
}

TEST(Trees, UnlabelledCountsMatchRootedTreeNumbers)
{
    // rooted unlabelled trees on 1..5 vertices
    const size_t expected[] = {1, 1, 2, 4, 9};
    auto trees = small_trees(4, 0);
    for (int e = 0; e <= 4; ++e) {
        size_t n = std::count_if(trees.begin(), trees.end(), [&](const Tree& t) { return t.edges() == static_cast<size_t>(e); });
        EXPECT_EQ(n, expected[e]) << "edges " << e;
    }
}

TEST(Trees, EnumerationMatchesLeafGrowth)
{
    Session s2 = Session::with_kinds({"t", "u"}, 2);
    MultiIndex cap{1, 0};
    auto listed = enumerate_trees(2, cap, {0, 1}, cap);
    std::set<Tree> got(listed.begin(), listed.end());
    EXPECT_EQ(got.size(), listed.size());
    EXPECT_EQ(got, grow_by_leaves(2, s2, cap, cap));

    auto one = small_trees(3);
    EXPECT_EQ(std::set<Tree>(one.begin(), one.end()), grow_by_leaves(3, S1, MultiIndex{1}, MultiIndex{1}));
}

TEST(Trees, ChildOrderIsIrrelevant)
{
    Tree a = parse_tree("X^(0)[(t,(1))->X^(1),(t,(0))->X^(0)[(t,(0))->X^(1)]]", S1);
    Tree b = parse_tree("X^(0)[(t,(0))->X^(0)[(t,(0))->X^(1)],(t,(1))->X^(1)]", S1);
    EXPECT_EQ(a, b);
    EXPECT_EQ(hash_value(a), hash_value(b));
    EXPECT_EQ(a.edges(), 3u);
}

TEST(Trees, FormatParseRoundTrip)
{
    for (auto& t : small_trees(3)) {
        EXPECT_EQ(parse_tree(format(t, S1), S1), t);
        EXPECT_EQ(tree_from_json(to_json(t, S1), S1), t);
    }
}

TEST(Trees, SymmetryFactorMatchesAutomorphismCount)
{
    for (auto& t : small_trees(4, 2)) {
        if (t.edges() > 4) continue;
        ASSERT_EQ(symmetry_factor(t), oracle::symmetry(t)) << format(t, S1);
    }
    Tree star = parse_tree("X^(2)[(t,(1))->X^(0),(t,(1))->X^(0),(t,(1))->X^(0)]", S1);
    EXPECT_EQ(symmetry_factor(star), Integer(2 * 6));
}

TEST(Trees, ForestSymmetryAndUnit)
{
    Tree x = parse_tree("X^(1)", S1);
    Forest f(std::vector<Tree>{x, x, Tree(MultiIndex{0})});
    EXPECT_EQ(f.size(), 2u);
    EXPECT_EQ(symmetry_factor(f), Integer(2));
    EXPECT_TRUE(Forest(Tree(MultiIndex{0})).empty());
}

TEST(Parsing, LinearCombinationsAndErrors)
{
    auto x = parse_trees("2*X^(1) - 1/3*X^(0)[(t,(0))->X^(0)] + X^(1)", S1);
    EXPECT_EQ(x.coeff(parse_tree("X^(1)", S1)), Rational(3));
    EXPECT_EQ(x.coeff(parse_tree("X^(0)[(t,(0))->X^(0)]", S1)), Rational(-1, 3));
    EXPECT_THROW(parse_tree("X^(1,0)", S1), ParseError);
    EXPECT_THROW(parse_tree("X^(1)[(u,(0))->X^(0)]", S1), ParseError);
    EXPECT_THROW(parse_tree("X^(1) junk", S1), ParseError);
}

TEST(Config, JsonSessionIsValidated)
{
    auto c = config_from_json(json::parse(R"({"dimension": 2, "scaling": [2, 1],
        "kinds": [{"name": "t", "degree": "3/2"}, {"name": "u"}], "budget": 3,
        "enumeration": {"max_edges": 1, "node_cap": [1, 0]}})"));
    EXPECT_EQ(c.session.dim, 2);
    EXPECT_EQ(c.session.kinds[0].degree, Rational(3, 2));
    EXPECT_EQ(c.budget, 3);
    EXPECT_EQ(c.node_cap, (MultiIndex{1, 0}));
    EXPECT_THROW(config_from_json(json::parse(R"({"dimension": 2, "scaling": [1]})")), std::invalid_argument);
    EXPECT_THROW(config_from_json(json::parse(R"({"kinds": [{"name": "t"}, {"name": "t"}]})")), std::invalid_argument);
}
