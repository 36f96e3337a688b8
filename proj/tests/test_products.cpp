#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace dtree;

namespace {

const Session S1;

std::vector<Tree> basis(int edges, int cap)
{
    return enumerate_trees(edges, MultiIndex{cap}, {0}, MultiIndex{cap});
}

Edge E(int i)
{
    return Edge{0, MultiIndex{i}};
}

// Classical insertion on undecorated trees: v is replaced by σ and each child
// branch of v is re-hung on any vertex of σ.
LinComb<Tree> naive_insertion(const Tree& s, const Tree& t)
{
    oracle::LTree f = oracle::label(t);
    LinComb<Tree> out;
    for (int v = 0; v < f.size(); ++v) {
        std::vector<int> kids;
        for (int u = 0; u < f.size(); ++u)
            if (f.parent[u] == v) kids.push_back(u);
        oracle::LTree ls = oracle::label(s);
        size_t m = kids.size();
        size_t combos = 1;
        for (size_t i = 0; i < m; ++i) combos *= static_cast<size_t>(ls.size());
        for (size_t code = 0; code < combos; ++code) {
            // rebuild t with σ in place of v
            oracle::LTree g;
            std::vector<int> map(static_cast<size_t>(f.size()), -1);
            std::function<void(int, int)> copy = [&](int u, int at) {
                int w;
                if (u == v) {
                    std::vector<int> smap(static_cast<size_t>(ls.size()));
                    for (int x = 0; x < ls.size(); ++x)
                        smap[static_cast<size_t>(x)] =
                            g.add(x == 0 ? at : smap[static_cast<size_t>(ls.parent[x])], ls.node[x], x == 0 ? f.edge[u] : ls.edge[x]);
                    size_t c = code;
                    for (int k : kids) {
                        int target = smap[c % static_cast<size_t>(ls.size())];
                        c /= static_cast<size_t>(ls.size());
                        copy(k, target);
                    }
                    return;
                }
                w = g.add(at, f.node[u], f.edge[u]);
                for (int k = 0; k < f.size(); ++k)
                    if (f.parent[k] == u) copy(k, w);
            };
            copy(0, -1);
            out.add(oracle::build(g), 1);
        }
    }
    return out;
}

} // namespace

TEST(Grafting, MatchesVertexByVertexAttachment)
{
    auto b = basis(2, 2);
    for (auto& s : b)
        for (auto& t : b) {
            if (s.edges() + t.edges() > 2) continue;
            for (int a = 0; a <= 2; ++a) {
                ASSERT_EQ(graft(s, E(a), t), oracle::graft(s, E(a), t)) << format(s, S1) << " | " << format(t, S1);
                ASSERT_EQ(deformed_graft(s, E(a), t), oracle::deformed_graft(s, E(a), t))
                    << format(s, S1) << " | " << format(t, S1);
            }
        }
}

TEST(Grafting, SingleVertexSite)
{
    Tree t = parse_tree("X^(1)[(t,(0))->X^(1)]", S1);
    Tree s = parse_tree("X^(0)", S1);
    EXPECT_EQ(graft(s, E(1), t, 0), parse_trees("X^(1)[(t,(0))->X^(1),(t,(1))->X^(0)]", S1));
    EXPECT_EQ(deformed_graft(s, E(1), t, 1),
              parse_trees("X^(1)[(t,(0))->X^(1)[(t,(1))->X^(0)]] + X^(1)[(t,(0))->X^(0)[(t,(0))->X^(0)]]", S1));
    EXPECT_THROW(graft(s, E(1), t, 5), std::out_of_range);
}

TEST(Grafting, PreLieOnSmallBasis)
{
    auto b = basis(1, 1);
    for (int a = 0; a <= 1; ++a) {
        auto plain = check_prelie([&](const Tree& x, const Tree& y) { return graft(x, E(a), y); }, b, 3);
        EXPECT_TRUE(plain.ok);
        auto deformed = check_prelie([&](const Tree& x, const Tree& y) { return deformed_graft(x, E(a), y); }, b, 3);
        EXPECT_TRUE(deformed.ok);
        EXPECT_GT(deformed.triples, 0u);
    }
}

TEST(Theta, MatchesRecursiveDefinition)
{
    for (auto& t : basis(3, 2)) ASSERT_EQ(theta(t), oracle::theta(t)) << format(t, S1);
}

TEST(Theta, InverseRoundTrip)
{
    for (auto& t : basis(2, 2)) {
        LinComb<Tree> x(t);
        ASSERT_EQ(theta(theta_inverse(x)), x);
        ASSERT_EQ(theta_inverse(theta(x)), x);
    }
}

TEST(Theta, LeavesAreFixed)
{
    for (int k = 0; k < 4; ++k) EXPECT_EQ(theta(Tree(MultiIndex{k})), LinComb<Tree>(Tree(MultiIndex{k})));
}

TEST(Plugging, MatchesNaiveRootMerge)
{
    auto b = basis(2, 2);
    for (auto& s : b)
        for (auto& t : b) {
            if (s.edges() + t.edges() > 3) continue;
            ASSERT_EQ(plug(s, t), oracle::plug(s, t)) << format(s, S1) << " | " << format(t, S1);
            ASSERT_EQ(deformed_plug(s, t), oracle::deformed_plug(s, t)) << format(s, S1) << " | " << format(t, S1);
        }
}

TEST(Plugging, RootAndNonRootSplit)
{
    auto b = basis(2, 1);
    for (auto& s : b)
        for (auto& t : b) {
            if (s.edges() + t.edges() > 3) continue;
            for (bool d : {false, true}) {
                LinComb<Tree> x(s), y(t);
                ASSERT_EQ(plug(x, y, d, Site::root()) + plug(x, y, d, Site::nonroot()), plug(x, y, d));
            }
        }
}

TEST(Insertion, UndecoratedMatchesClassicalDefinition)
{
    auto b = basis(3, 0);
    for (auto& s : b)
        for (auto& t : b) {
            if (s.edges() + t.edges() > 3) continue;
            ASSERT_EQ(insert(s, t, false), naive_insertion(s, t)) << format(s, S1) << " | " << format(t, S1);
        }
}

TEST(Insertion, PreLieOnSmallBasis)
{
    auto b = basis(1, 1);
    for (bool d : {false, true}) {
        auto r = check_prelie([&](const Tree& x, const Tree& y) { return insert(x, y, d); }, b, 2);
        EXPECT_TRUE(r.ok) << (d ? "deformed" : "plain");
    }
}
