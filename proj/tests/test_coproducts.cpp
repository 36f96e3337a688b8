#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace dtree;

namespace {

const Session S1;

std::vector<Tree> basis(int edges, int cap)
{
    return enumerate_trees(edges, MultiIndex{cap}, {0}, MultiIndex{cap});
}

template <class A, class B, class C, class In>
Tensor3<A, B, C> below_budget(const Tensor3<A, B, C>& x, const In& in, const Coproducts& cp)
{
    return x.filter([&](const std::tuple<A, B, C>& t) { return cp.excess(t, in) <= cp.budget(); });
}

} // namespace

TEST(Coproducts, DeformedButcherAtZeroBudgetIsAdmissibleCuts)
{
    Coproducts cp(S1, 0);
    for (auto& t : basis(3, 1)) ASSERT_EQ(cp.dck_bar(t), oracle::admissible_cuts(t)) << format(t, S1);
}

TEST(Coproducts, PolynomialLegsOfAPlantedStick)
{
    Coproducts cp(S1, 2);
    Tree leaf(MultiIndex{0});
    Tree stick = parse_tree("X^(0)[(t,(0))->X^(0)]", S1);
    Planted p{Edge{0, MultiIndex{0}}, stick};
    // I(stick) ⊗ 1 + 1 ⊗ I(stick) + Σ_ℓ (1/ℓ!) I_ℓ(•) ⊗ I(X^ℓ)
    Tensor<PlantedForest, PlantedForest> want;
    want.add({PlantedForest(p), PlantedForest{}}, 1);
    want.add({PlantedForest{}, PlantedForest(p)}, 1);
    for (int l = 0; l <= 2; ++l) {
        Planted cut{Edge{0, MultiIndex{l}}, leaf};
        Planted rest{Edge{0, MultiIndex{0}}, Tree(MultiIndex{l})};
        want.add({PlantedForest(cut), PlantedForest(rest)}, Rational(1) / Rational(oracle::fact(l)));
    }
    EXPECT_EQ(cp.dck(p), want);
}

TEST(Coproducts, DeformedButcherIsCoassociativeBelowBudget)
{
    Coproducts cp(S1, 2);
    for (auto& p : enumerate_planted(2, MultiIndex{1}, {0}, MultiIndex{1})) {
        PlantedForest f(p);
        Tensor3<PlantedForest, PlantedForest, PlantedForest> left, right;
        for (auto& [lr, c] : cp.dck(f)) {
            for (auto& [ab, e] : cp.dck(lr.first)) left.add({ab.first, ab.second, lr.second}, c * e);
            for (auto& [ab, e] : cp.dck(lr.second)) right.add({lr.first, ab.first, ab.second}, c * e);
        }
        ASSERT_EQ(below_budget(left, f, cp), below_budget(right, f, cp)) << format(f, S1);
    }
}

TEST(Coproducts, CounitOnTreeCoproducts)
{
    Coproducts cp(S1, 2);
    Tree unit(MultiIndex{0});
    for (auto& t : basis(2, 1)) {
        Tensor<Tree, Tree> right_unit;
        for (auto& [lr, c] : cp.delta2(t))
            if (lr.first == unit) right_unit.add(lr, c);
        EXPECT_EQ(right_unit, (Tensor<Tree, Tree>({unit, t}))) << format(t, S1);

        LinComb<Tree> from_d1;
        for (auto& [lr, c] : cp.delta1(t))
            if (lr.first.empty()) from_d1.add(lr.second, c);
        EXPECT_EQ(from_d1, LinComb<Tree>(t)) << format(t, S1);
    }
}

TEST(Antipode, ConvolutionVanishesOnNonEmptyForests)
{
    Coproducts cp(S1, 2);
    for (auto kind : {AntipodeKind::DCK, AntipodeKind::NA}) {
        Antipode s(cp, kind);
        for (auto& p : enumerate_planted(2, MultiIndex{1}, {0}, MultiIndex{1})) {
            auto [l, r] = s.convolutions(PlantedForest(p));
            ASSERT_TRUE(l.empty()) << format(p, S1);
            ASSERT_TRUE(r.empty()) << format(p, S1);
        }
    }
}

TEST(Pairing, SymmetryFactorWeights)
{
    Tree t = parse_tree("X^(1)[(t,(0))->X^(0),(t,(0))->X^(0)]", S1);
    EXPECT_EQ(pairing(LinComb<Tree>(t), 3 * LinComb<Tree>(t)), Rational(6));
    EXPECT_EQ(pairing(LinComb<Tree>(t), LinComb<Tree>(Tree(MultiIndex{1}))), Rational(0));
}
