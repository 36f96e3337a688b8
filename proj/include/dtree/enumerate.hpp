#pragma once

// Exhaustive small-instance bases for the identity checks.

#include "tree.hpp"

#include <functional>
#include <set>
#include <vector>

namespace dtree {

// All edge labels with kind in kinds and index <= cap (kind-major order).
inline std::vector<Edge> edge_labels(const std::vector<int>& kinds, const MultiIndex& cap)
{
    std::vector<Edge> out;
    for (int k : kinds) for_each_below(cap, [&](const MultiIndex& i) { out.push_back(Edge{k, i}); });
    return out;
}

// Every tree with at most max_edges edges, node indices <= node_cap and edge
// labels from the given kinds with index <= edge_cap. Sorted by edge count,
// then canonical order.
inline std::vector<Tree> enumerate_trees(int max_edges, const MultiIndex& edge_cap, const std::vector<int>& kinds,
                                         const MultiIndex& node_cap)
{
    std::vector<Edge> labels = edge_labels(kinds, edge_cap);
    std::vector<MultiIndex> roots;
    for_each_below(node_cap, [&](const MultiIndex& n) { roots.push_back(n); });

    std::vector<std::vector<Tree>> by_edges(static_cast<size_t>(max_edges) + 1);
    std::vector<std::pair<int, Branch>> branches; // (size, branch), size = 1 + subtree edges

    for (int e = 0; e <= max_edges; ++e) {
        if (e >= 1)
            for (const Tree& t : by_edges[static_cast<size_t>(e - 1)])
                for (const Edge& a : labels) branches.push_back({e, Branch{a, t}});

        std::vector<Tree>& out = by_edges[static_cast<size_t>(e)];
        std::vector<Branch> chosen;
        std::function<void(size_t, int)> pick = [&](size_t from, int left) {
            if (left == 0) {
                for (auto& n : roots) out.push_back(make_tree(n, chosen));
                return;
            }
            for (size_t i = from; i < branches.size(); ++i) {
                if (branches[i].first > left) continue;
                chosen.push_back(branches[i].second);
                pick(i, left - branches[i].first);
                chosen.pop_back();
            }
        };
        pick(0, e);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }

    std::vector<Tree> all;
    for (auto& v : by_edges) all.insert(all.end(), v.begin(), v.end());
    return all;
}

// I_a(τ) for every label a and every basis tree τ with at most max_edges - 1 edges.
inline std::vector<Planted> enumerate_planted(int max_edges, const MultiIndex& edge_cap, const std::vector<int>& kinds,
                                              const MultiIndex& node_cap)
{
    std::vector<Planted> out;
    if (max_edges < 1) return out;
    for (const Tree& t : enumerate_trees(max_edges - 1, edge_cap, kinds, node_cap))
        for (const Edge& a : edge_labels(kinds, edge_cap)) out.push_back(Planted{a, t});
    std::sort(out.begin(), out.end());
    return out;
}

// All monomials of at most max_items factors taken from basis (units skipped),
// with total edge count at most max_edges. Includes the empty monomial.
template <class B>
std::vector<Multiset<B>> enumerate_monomials(const std::vector<B>& basis, int max_items, int max_edges)
{
    std::set<Multiset<B>> seen;
    std::vector<B> chosen;
    std::function<void(size_t, int)> rec = [&](size_t from, int edges_left) {
        seen.insert(Multiset<B>(chosen));
        if (static_cast<int>(chosen.size()) == max_items) return;
        for (size_t i = from; i < basis.size(); ++i) {
            int e = static_cast<int>(basis[i].edges());
            if (e > edges_left || is_unit_item(basis[i])) continue;
            chosen.push_back(basis[i]);
            rec(i, edges_left - e);
            chosen.pop_back();
        }
    };
    rec(0, max_edges);
    return {seen.begin(), seen.end()};
}

} // namespace dtree
