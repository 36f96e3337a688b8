#pragma once

// Identity suites, one per acceptance criterion. Every check is exact rational
// equality over an enumerated basis; failures carry a formatted witness.

#include "applications.hpp"
#include "enumerate.hpp"
#include "io.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace dtree {

struct CheckResult {
    std::string name;
    bool ok = true;
    size_t cases = 0;
    std::string witness;
    double seconds = 0;
};

struct SuiteReport {
    std::string suite;
    int criterion = 0;
    std::string title;
    std::vector<CheckResult> checks;
    double seconds = 0;

    bool ok() const
    {
        for (auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

// Enumeration bounds and budget shared by the suites.
struct DeskScale {
    Session s;
    int max_edges = 2;
    MultiIndex node_cap{1};
    MultiIndex edge_cap{1};
    long budget = 2;

    static DeskScale from(const Config& c)
    {
        return {c.session, c.max_edges, c.node_cap, c.edge_cap, c.budget};
    }

    std::vector<int> kinds() const
    {
        std::vector<int> k;
        for (size_t i = 0; i < s.kinds.size(); ++i) k.push_back(static_cast<int>(i));
        return k;
    }
    std::vector<Tree> trees(int e) const { return enumerate_trees(e, edge_cap, kinds(), node_cap); }
    std::vector<Planted> planted(int e) const { return enumerate_planted(e, edge_cap, kinds(), node_cap); }
    std::vector<Edge> labels() const { return edge_labels(kinds(), edge_cap); }
    std::string fmt(const Tree& t) const { return format(t, s); }
};

// Accumulates cases of one check and keeps the first failure.
class Tally {
public:
    explicit Tally(std::string name) : start_(std::chrono::steady_clock::now()) { r_.name = std::move(name); }

    bool expect(bool good, const std::function<std::string()>& witness)
    {
        ++r_.cases;
        if (!good && r_.ok) {
            r_.ok = false;
            r_.witness = witness();
        }
        return good;
    }
    void fail(const std::string& w)
    {
        if (r_.ok) {
            r_.ok = false;
            r_.witness = w;
        }
    }
    bool ok() const { return r_.ok; }
    CheckResult result() const
    {
        CheckResult r = r_;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return r;
    }

private:
    CheckResult r_;
    std::chrono::steady_clock::time_point start_;
};

namespace detail {

template <class B>
std::string diff_witness(const LinComb<B>& l, const LinComb<B>& r, const Session& s)
{
    return "lhs = " + format(l, s) + " ; rhs = " + format(r, s);
}

inline std::vector<Forest> forests(const DeskScale& ds, int max_items, int max_edges)
{
    return enumerate_monomials(ds.trees(max_edges), max_items, max_edges);
}

inline std::vector<PlantedForest> planted_forests(const DeskScale& ds, int max_items, int max_edges)
{
    return enumerate_monomials(ds.planted(max_edges), max_items, max_edges);
}

template <class X>
X tensor_filter(const X& x, long bound, const std::function<long(const typename X::basis_type&)>& excess)
{
    return x.filter([&](const typename X::basis_type& b) { return excess(b) <= bound; });
}

} // namespace detail

// ---- criterion 1 ------------------------------------------------------------------------------

inline SuiteReport suite_prelie(const DeskScale& ds)
{
    SuiteReport rep{"prelie", 1, "multi-pre-Lie and pre-Lie axioms", {}, 0};
    auto basis = ds.trees(ds.max_edges);
    auto labels = ds.labels();

    // Triples of three trees with max_edges edges each are skipped; they dominate the cost.
    const size_t mpl_cap = static_cast<size_t>(3 * ds.max_edges - 1);
    for (bool deformed : {false, true}) {
        Tally t(std::string(deformed ? "multi-pre-Lie axiom for deformed grafting" : "multi-pre-Lie axiom for grafting") +
                " (total edges <= " + std::to_string(mpl_cap) + ")");
        InternedAlgebra<Tree, long long> alg([&](int op, const Tree& x, const Tree& y) {
            const Edge& a = labels[static_cast<size_t>(op)];
            return deformed ? deformed_graft(x, a, y) : graft(x, a, y);
        });
        std::vector<int> ids;
        for (auto& x : basis) ids.push_back(alg.id(x));
        alg.pin();
        const int nl = static_cast<int>(labels.size());
        const int np = static_cast<int>(basis.size()) * nl;
        // pairs (x, a) enumerated as p = x * nl + a
        for (size_t z = 0; z < basis.size() && t.ok(); ++z, alg.clear_scratch())
            for (int p = 0; p < np; ++p)
                for (int q = p + 1; q < np; ++q) {
                    int x = ids[static_cast<size_t>(p / nl)], a = p % nl;
                    int y = ids[static_cast<size_t>(q / nl)], b = q % nl;
                    if (basis[static_cast<size_t>(p / nl)].edges() + basis[static_cast<size_t>(q / nl)].edges() +
                            basis[z].edges() > mpl_cap)
                        continue;
                    bool ok = alg.associator(a, x, b, y, ids[z]) == alg.associator(b, y, a, x, ids[z]);
                    t.expect(ok, [&] {
                        return "x=" + ds.fmt(alg.item(x)) + " a=" + format(labels[static_cast<size_t>(a)], ds.s) +
                               " y=" + ds.fmt(alg.item(y)) + " b=" + format(labels[static_cast<size_t>(b)], ds.s) +
                               " z=" + ds.fmt(basis[z]);
                    });
                }
        rep.checks.push_back(t.result());
    }

    auto prelie = [&](const std::string& name, auto prod, std::optional<size_t> cap) {
        Tally t(name);
        auto r = check_prelie(prod, basis, cap);
        for (size_t i = 0; i < r.triples; ++i) t.expect(true, {});
        if (!r.ok) {
            auto& [x, y, z] = *r.counterexample;
            t.fail("x=" + ds.fmt(x) + " y=" + ds.fmt(y) + " z=" + ds.fmt(z));
        }
        rep.checks.push_back(t.result());
    };
    // Insertion triples are capped by total edge count; nested insertions grow too fast otherwise.
    const auto cap = static_cast<size_t>(ds.max_edges + 1);
    prelie("pre-Lie axiom for plugging", [](const Tree& a, const Tree& b) { return plug(a, b); }, std::nullopt);
    prelie("pre-Lie axiom for deformed plugging", [](const Tree& a, const Tree& b) { return deformed_plug(a, b); },
           std::nullopt);
    prelie("pre-Lie axiom for insertion (total edges <= " + std::to_string(cap) + ")",
           [](const Tree& a, const Tree& b) { return insert(a, b, false); }, cap);
    prelie("pre-Lie axiom for deformed insertion (total edges <= " + std::to_string(cap) + ")",
           [](const Tree& a, const Tree& b) { return insert(a, b, true); }, cap);
    return rep;
}

// ---- criterion 2 ------------------------------------------------------------------------------

inline SuiteReport suite_theta(const DeskScale& ds)
{
    SuiteReport rep{"theta", 2, "Theta intertwines grafting and deformed grafting", {}, 0};
    auto basis = ds.trees(ds.max_edges);
    {
        Tally t("Theta(s graft_a t) = Theta(s) deformed_graft_a Theta(t)");
        for (auto& x : basis)
            for (auto& y : basis)
                for (auto& a : ds.labels()) {
                    auto l = theta(graft(x, a, y));
                    auto r = graft(theta(x), a, theta(y), true);
                    t.expect(l == r, [&] { return ds.fmt(x) + " , " + ds.fmt(y) + " : " + detail::diff_witness(l, r, ds.s); });
                }
        rep.checks.push_back(t.result());
    }
    auto bigger = ds.trees(ds.max_edges + 1);
    {
        Tally t("Theta round trip");
        for (auto& x : bigger) {
            LinComb<Tree> id(x);
            t.expect(theta_inverse(theta(id)) == id && theta(theta_inverse(id)) == id, [&] { return ds.fmt(x); });
        }
        rep.checks.push_back(t.result());
    }
    {
        Tally t("Theta(s) - s has strictly lower grading");
        for (auto& x : bigger) {
            auto d = theta(x) - LinComb<Tree>(x);
            bool ok = true;
            for (auto& [u, c] : d) ok = ok && grading(u, ds.s.scaling) < grading(x, ds.s.scaling);
            t.expect(ok, [&] { return ds.fmt(x); });
        }
        rep.checks.push_back(t.result());
    }
    {
        Tally t("deformed grafting minus grafting has strictly lower grading");
        for (auto& x : basis)
            for (auto& y : basis)
                for (auto& a : ds.labels()) {
                    auto d = deformed_graft(x, a, y) - graft(x, a, y);
                    long g = grading(x, ds.s.scaling) + grading(y, ds.s.scaling) + ds.s.grade(a.idx);
                    bool ok = true;
                    for (auto& [u, c] : d) ok = ok && grading(u, ds.s.scaling) < g;
                    t.expect(ok, [&] { return ds.fmt(x) + " , " + ds.fmt(y); });
                }
        rep.checks.push_back(t.result());
    }
    return rep;
}

// ---- criterion 3 ------------------------------------------------------------------------------

namespace detail {

// For each pair (l, r) with product P: for every target in support(P) ∪ candidates,
// compares <P, target> with <l ⊗ r, Δ target>.
template <class L, class R, class T, class Prod, class Delta, class Cands>
void duality_pairs(Tally& t, const std::vector<L>& lefts, const std::vector<R>& rights, int max_edges, Prod&& prod,
                   Delta&& delta, Cands&& candidates, const std::function<std::string(const L&, const R&, const T&)>& show)
{
    // Memoized coproducts are referenced, others are computed once per target.
    using D = decltype(delta(std::declval<const T&>()));
    using Stored = std::conditional_t<std::is_reference_v<D>, const std::remove_reference_t<D>*, D>;
    std::map<T, Stored> dcache;
    auto lookup = [&](const T& x) -> const std::remove_reference_t<D>& {
        auto it = dcache.find(x);
        if constexpr (std::is_reference_v<D>) {
            if (it == dcache.end()) it = dcache.emplace(x, &delta(x)).first;
            return *it->second;
        } else {
            if (it == dcache.end()) it = dcache.emplace(x, delta(x)).first;
            return it->second;
        }
    };
    for (auto& l : lefts)
        for (auto& r : rights) {
            if (static_cast<int>(l.edges() + r.edges()) > max_edges) continue;
            LinComb<T> p = prod(l, r);
            std::set<T> targets;
            for (auto& [x, c] : p) targets.insert(x);
            for (auto& x : candidates(static_cast<int>(l.edges() + r.edges()))) targets.insert(x);
            const Rational sl = Rational(symmetry_factor(l) * symmetry_factor(r));
            for (auto& x : targets) {
                Rational lhs = p.coeff(x) * Rational(symmetry_factor(x));
                Rational rhs = lookup(x).coeff({l, r}) * sl;
                t.expect(lhs == rhs, [&] { return show(l, r, x) + " : " + to_string(lhs) + " vs " + to_string(rhs); });
            }
        }
}

inline Tree forest_to_tree(const Forest& f, const Session& s)
{
    return f.empty() ? Tree(s.zero()) : f.items.front();
}

} // namespace detail

inline SuiteReport suite_duality(const DeskScale& ds)
{
    SuiteReport rep{"duality", 3, "products are dual to the deformed coproducts", {}, 0};
    const int top = ds.max_edges + 1;
    // Budget large enough for every pair: the ℓ-excess of a matching term is at most grading(l) + grading(r).
    const long budget = static_cast<long>(top) * ds.s.grade(ds.edge_cap);

    std::map<int, std::vector<Tree>> trees_by_edges;
    for (auto& x : ds.trees(top)) trees_by_edges[static_cast<int>(x.edges())].push_back(x);
    std::map<int, std::vector<Planted>> planted_by_edges;
    for (auto& x : ds.planted(top)) planted_by_edges[static_cast<int>(x.edges())].push_back(x);
    auto tree_cands = [&](int e) -> const std::vector<Tree>& { return trees_by_edges[e]; };
    auto trees = ds.trees(top);
    auto forests = detail::forests(ds, 2, top);
    auto planted = ds.planted(top);
    auto pforests = detail::planted_forests(ds, 2, top);
    auto show_tt = [&](const Forest& l, const Tree& r, const Tree& x) {
        return format(l, ds.s) + " ⊗ " + ds.fmt(r) + " vs " + ds.fmt(x);
    };

    {
        Tally t("planted star_0 bullet dual to the deformed BCK coproduct");
        Coproducts cp(ds.s, budget);
        auto& go = planted_structure(true);
        detail::duality_pairs<PlantedForest, PlantedForest, PlantedForest>(
            t, pforests, [&] {
                std::vector<PlantedForest> v;
                for (auto& p : planted) v.emplace_back(p);
                return v;
            }(),
            top, [&](const PlantedForest& l, const PlantedForest& r) { return go.bullet(l, r); },
            [&](const PlantedForest& x) { return cp.dck(x); },
            [&](int e) {
                std::vector<PlantedForest> v;
                for (auto& p : planted_by_edges[e]) v.emplace_back(p);
                return v;
            },
            [&](const PlantedForest& l, const PlantedForest& r, const PlantedForest& x) {
                return format(l, ds.s) + " ⊗ " + format(r, ds.s) + " vs " + format(x, ds.s);
            });
        rep.checks.push_back(t.result());
    }
    {
        Tally t("planted multi-grafting dual to the reduced deformed BCK coproduct");
        Coproducts cp(ds.s, budget);
        detail::duality_pairs<PlantedForest, Tree, Tree>(
            t, pforests, trees, top,
            [&](const PlantedForest& l, const Tree& r) { return to_trees(multi_graft_flat(l.items, to_flat(r), true)); },
            [&](const Tree& x) -> const auto& { return cp.dck_bar(x); }, tree_cands,
            [&](const PlantedForest& l, const Tree& r, const Tree& x) {
                return format(l, ds.s) + " ⊗ " + ds.fmt(r) + " vs " + ds.fmt(x);
            });
        rep.checks.push_back(t.result());
    }
    {
        Tally t("deformed plugging of forests dual to Delta_2");
        Coproducts cp(ds.s, budget);
        detail::duality_pairs<Forest, Tree, Tree>(
            t, forests, trees, top, [&](const Forest& l, const Tree& r) { return place(l, r, true); },
            [&](const Tree& x) -> const auto& { return cp.delta2_forest(x); }, tree_cands, show_tt);
        rep.checks.push_back(t.result());
    }
    {
        Tally t("non-root deformed plugging of forests dual to the reduced Delta_DP");
        Coproducts cp(ds.s, budget);
        detail::duality_pairs<Forest, Tree, Tree>(
            t, forests, trees, top, [&](const Forest& l, const Tree& r) { return place(l, r, true, Site::nonroot()); },
            [&](const Tree& x) { return cp.delta_dp_bar(x); }, tree_cands, show_tt);
        rep.checks.push_back(t.result());
    }
    {
        Tally t("deformed insertion of forests dual to Delta_1");
        Coproducts cp(ds.s, budget);
        detail::TreeProduct ins = [](const Tree& a, const Tree& b) { return insert(a, b, true); };
        detail::duality_pairs<Forest, Tree, Tree>(
            t, forests, trees, top,
            [&](const Forest& l, const Tree& r) { return detail::forest_act(l.items, LinComb<Tree>(r), ins); },
            [&](const Tree& x) -> const auto& { return cp.delta1(x); }, tree_cands, show_tt);
        rep.checks.push_back(t.result());
    }
    {
        Tally t("non-root deformed insertion of forests dual to Delta_circ");
        Coproducts cp(ds.s, budget);
        detail::duality_pairs<Forest, Tree, Tree>(
            t, forests, trees, top, [&](const Forest& l, const Tree& r) { return insert_forest_nonroot(l, r, true); },
            [&](const Tree& x) -> const auto& { return cp.delta_circ(x); }, tree_cands, show_tt);
        rep.checks.push_back(t.result());
    }
    return rep;
}

// ---- criterion 4 ------------------------------------------------------------------------------

// C(π_* k, ℓ̃) = Σ_{π_* ℓ = ℓ̃} C(k, ℓ) for maps π : S -> S̃.
inline SuiteReport suite_chu_vandermonde(int max_set = 3, int max_value = 3)
{
    SuiteReport rep{"chu-vandermonde", 4, "Chu-Vandermonde identity by brute force", {}, 0};
    Tally t("Chu-Vandermonde over all maps with |S| <= " + std::to_string(max_set));
    // Pascal triangle, independent of the library binomial used on the other side.
    const int top = max_set * max_value;
    std::vector<std::vector<long long>> pascal(static_cast<size_t>(top + 1));
    for (int n = 0; n <= top; ++n) {
        pascal[static_cast<size_t>(n)].assign(static_cast<size_t>(n + 1), 1);
        for (int k = 1; k < n; ++k)
            pascal[static_cast<size_t>(n)][static_cast<size_t>(k)] =
                pascal[static_cast<size_t>(n - 1)][static_cast<size_t>(k - 1)] + pascal[static_cast<size_t>(n - 1)][static_cast<size_t>(k)];
    }
    auto choose = [&](int n, int k) -> long long {
        return (k < 0 || k > n) ? 0 : pascal[static_cast<size_t>(n)][static_cast<size_t>(k)];
    };
    auto tuples = [](int len, int base, const std::function<void(const std::vector<int>&)>& f) {
        std::vector<int> v(static_cast<size_t>(len), 0);
        for (;;) {
            f(v);
            int i = 0;
            while (i < len && ++v[static_cast<size_t>(i)] == base) v[static_cast<size_t>(i++)] = 0;
            if (i == len) return;
        }
    };
    for (int ns = 1; ns <= max_set; ++ns)
        for (int nt = 1; nt <= max_set; ++nt)
            tuples(ns, nt, [&](const std::vector<int>& pi) {
                tuples(ns, max_value + 1, [&](const std::vector<int>& k) {
                    std::vector<int> pk(static_cast<size_t>(nt), 0);
                    for (int s = 0; s < ns; ++s) pk[static_cast<size_t>(pi[static_cast<size_t>(s)])] += k[static_cast<size_t>(s)];
                    std::map<std::vector<int>, long long> rhs;
                    tuples(ns, max_value + 1, [&](const std::vector<int>& l) {
                        long long c = 1;
                        for (int s = 0; s < ns; ++s) c *= choose(k[static_cast<size_t>(s)], l[static_cast<size_t>(s)]);
                        if (c == 0) return;
                        std::vector<int> pl(static_cast<size_t>(nt), 0);
                        for (int s = 0; s < ns; ++s) pl[static_cast<size_t>(pi[static_cast<size_t>(s)])] += l[static_cast<size_t>(s)];
                        rhs[pl] += c;
                    });
                    tuples(nt, max_value + 1, [&](const std::vector<int>& lt) {
                        Integer lhs = 1;
                        for (int s = 0; s < nt; ++s) lhs *= binomial(pk[static_cast<size_t>(s)], lt[static_cast<size_t>(s)]);
                        auto it = rhs.find(lt);
                        long long r = it == rhs.end() ? 0 : it->second;
                        t.expect(lhs == Integer(static_cast<long>(r)), [&] { return "|S|=" + std::to_string(ns) + " |S~|=" + std::to_string(nt); });
                    });
                });
            });
    rep.checks.push_back(t.result());
    return rep;
}

// ---- criterion 5 ------------------------------------------------------------------------------

inline SuiteReport suite_not_commute(const DeskScale& ds)
{
    SuiteReport rep{"not-commute", 5, "root plugging symmetries", {}, 0};
    auto basis = ds.trees(ds.max_edges);
    Tally a("plugging at the root is symmetric");
    Tally b("tilde plugging at the root is symmetric");
    Tally c("Theta transports root plugging to tilde root plugging");
    Tally w("deformed root plugging has an asymmetry witness");
    std::string witness;
    size_t asym = 0;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i; j < basis.size(); ++j) {
            auto& x = basis[i];
            auto& y = basis[j];
            a.expect(plug(x, y, Site::root()) == plug(y, x, Site::root()), [&] { return ds.fmt(x) + " , " + ds.fmt(y); });
            b.expect(tilde_plug(x, y) == tilde_plug(y, x), [&] { return ds.fmt(x) + " , " + ds.fmt(y); });
            auto lhs = theta(plug(x, y, Site::root()));
            auto rhs = bilin(theta(x), theta(y), [](const Tree& u, const Tree& v) { return tilde_plug(u, v); });
            c.expect(lhs == rhs, [&] { return ds.fmt(x) + " , " + ds.fmt(y); });
            if (!(deformed_plug(x, y, Site::root()) == deformed_plug(y, x, Site::root()))) {
                if (asym++ == 0) witness = ds.fmt(x) + " , " + ds.fmt(y);
            }
        }
    w.expect(asym > 0, [] { return std::string("no asymmetric pair found"); });
    rep.checks = {a.result(), b.result(), c.result(), w.result()};
    rep.checks.back().witness = asym ? "first witness " + witness + " (" + std::to_string(asym) + " asymmetric pairs)" : rep.checks.back().witness;
    return rep;
}

// ---- criterion 6 ------------------------------------------------------------------------------

inline SuiteReport suite_insertion_poly(const DeskScale& ds)
{
    SuiteReport rep{"insertion-poly", 6, "polynomial insertion and the plugging/grafting link", {}, 0};
    auto basis = ds.trees(ds.max_edges);
    {
        Tally t("deformed plugging at v = uparrow of tilde plugging of the root-cleared tree");
        for (auto& x : basis)
            for (auto& y : basis)
                for (int v = 0; v < static_cast<int>(y.vertices()); ++v) {
                    auto l = deformed_plug(x, y, Site::at(v));
                    auto r = plug_via_uparrow(x, y, v);
                    t.expect(l == r, [&] { return ds.fmt(x) + " , " + ds.fmt(y) + " v=" + std::to_string(v); });
                }
        rep.checks.push_back(t.result());
    }
    {
        Tally t("planted star_2 equals the split uparrow of multi-grafting");
        for (auto& x : basis)
            for (auto& y : basis)
                for (auto& b : ds.labels())
                    t.expect(link_identity_check(x, y, b), [&] { return ds.fmt(x) + " , " + ds.fmt(y); });
        rep.checks.push_back(t.result());
    }
    for (bool deformed : {false, true}) {
        Tally t(deformed ? "Guin-Oudom bullet equals distinct-vertex placement (deformed)"
                         : "Guin-Oudom bullet equals distinct-vertex placement");
        auto& go = plugging_structure(deformed);
        for (auto& f : detail::forests(ds, 2, ds.max_edges))
            for (auto& y : basis) {
                if (y.is_unit()) continue;
                LinComb<Tree> l;
                for (auto& [m, c] : go.bullet(f, Forest(y))) l.add(detail::forest_to_tree(m, ds.s), c);
                auto r = place(f, y, deformed);
                t.expect(l == r, [&] { return format(f, ds.s) + " , " + ds.fmt(y); });
            }
        rep.checks.push_back(t.result());
    }
    return rep;
}

// ---- criterion 7 ------------------------------------------------------------------------------

inline SuiteReport suite_associativity(const DeskScale& ds)
{
    SuiteReport rep{"associativity", 7, "associativity, coassociativity and K compatibility", {}, 0};
    const int top = ds.max_edges + 1;
    Coproducts cp(ds.s, ds.budget);
    const auto& sc = ds.s.scaling;

    auto triples = [&](const auto& items, auto&& f) {
        for (auto& x : items)
            for (auto& y : items) {
                if (static_cast<int>(x.edges() + y.edges()) > top) continue;
                for (auto& z : items)
                    if (static_cast<int>(x.edges() + y.edges() + z.edges()) <= top) f(x, y, z);
            }
    };
    {
        Tally t("star_0 is associative");
        auto& go = planted_structure(true);
        triples(detail::planted_forests(ds, 2, top), [&](const PlantedForest& x, const PlantedForest& y, const PlantedForest& z) {
            LinComb<PlantedForest> X(x), Y(y), Z(z);
            t.expect(go.star(go.star(X, Y), Z) == go.star(X, go.star(Y, Z)),
                     [&] { return format(x, ds.s) + " , " + format(y, ds.s) + " , " + format(z, ds.s); });
        });
        rep.checks.push_back(t.result());
    }
    {
        Tally t("star_1 is associative");
        auto& go = insertion_structure(true);
        triples(detail::forests(ds, 2, top), [&](const Forest& x, const Forest& y, const Forest& z) {
            LinComb<Forest> X(x), Y(y), Z(z);
            t.expect(go.star(go.star(X, Y), Z) == go.star(X, go.star(Y, Z)),
                     [&] { return format(x, ds.s) + " , " + format(y, ds.s) + " , " + format(z, ds.s); });
        });
        rep.checks.push_back(t.result());
    }
    {
        Tally t("star_2 is associative");
        auto& go = plugging_structure(true);
        triples(detail::forests(ds, 2, top), [&](const Forest& x, const Forest& y, const Forest& z) {
            LinComb<Forest> X(x), Y(y), Z(z);
            t.expect(go.star(go.star(X, Y), Z) == go.star(X, go.star(Y, Z)),
                     [&] { return format(x, ds.s) + " , " + format(y, ds.s) + " , " + format(z, ds.s); });
        });
        rep.checks.push_back(t.result());
    }
    {
        Tally t("star_2 on trees is associative");
        triples(ds.trees(top), [&](const Tree& x, const Tree& y, const Tree& z) {
            LinComb<Tree> X(x), Y(y), Z(z);
            t.expect(star_plug(star_plug(X, Y, true), Z, true) == star_plug(X, star_plug(Y, Z, true), true),
                     [&] { return ds.fmt(x) + " , " + ds.fmt(y) + " , " + ds.fmt(z); });
        });
        rep.checks.push_back(t.result());
    }
    auto basis = ds.trees(ds.max_edges);
    {
        Tally t("Delta_DCK is coassociative up to budget");
        for (auto& p : ds.planted(ds.max_edges)) {
            PlantedForest f(p);
            Tensor3<PlantedForest, PlantedForest, PlantedForest> l, r;
            for (auto& [ab, c] : cp.dck(f)) {
                for (auto& [xy, e] : cp.dck(ab.first)) l.add({xy.first, xy.second, ab.second}, c * e);
                for (auto& [xy, e] : cp.dck(ab.second)) r.add({ab.first, xy.first, xy.second}, c * e);
            }
            auto cut = [&](const auto& x) { return x.filter([&](const auto& b) { return cp.excess(b, f) <= cp.budget(); }); };
            t.expect(cut(l) == cut(r), [&] { return format(f, ds.s); });
        }
        rep.checks.push_back(t.result());
    }
    {
        Tally t("Delta_2 is coassociative up to budget");
        for (auto& x : basis) {
            Tensor3<Tree, Tree, Tree> l, r;
            for (auto& [ab, c] : cp.delta2(x)) {
                for (auto& [uv, e] : cp.delta2(ab.first)) l.add({uv.first, uv.second, ab.second}, c * e);
                for (auto& [uv, e] : cp.delta2(ab.second)) r.add({ab.first, uv.first, uv.second}, c * e);
            }
            auto cut = [&](const auto& y) { return y.filter([&](const auto& b) { return cp.excess(b, x) <= cp.budget(); }); };
            t.expect(cut(l) == cut(r), [&] { return ds.fmt(x); });
        }
        rep.checks.push_back(t.result());
    }
    {
        Tally t("Delta_1 is coassociative up to budget");
        for (auto& x : basis) {
            Tensor3<Forest, Forest, Tree> l, r;
            for (auto& [ab, c] : cp.delta1(x)) {
                for (auto& [uv, e] : cp.delta1(ab.first)) l.add({uv.first, uv.second, ab.second}, c * e);
                for (auto& [uv, e] : cp.delta1(ab.second)) r.add({ab.first, uv.first, uv.second}, c * e);
            }
            auto cut = [&](const auto& y) { return y.filter([&](const auto& b) { return cp.excess(b, x) <= cp.budget(); }); };
            t.expect(cut(l) == cut(r), [&] { return ds.fmt(x); });
        }
        rep.checks.push_back(t.result());
    }
    {
        Tally t("Delta_2 K = (K x K) Delta_2 on forests");
        for (auto& f : detail::forests(ds, 2, top)) {
            Tree k = merge_roots(f, ds.s.dim);
            Tensor<Tree, Tree> l = cp.delta2(k), r;
            for (auto& [ab, c] : cp.delta2_forest(f))
                r.add({merge_roots(ab.first, ds.s.dim), merge_roots(ab.second, ds.s.dim)}, c);
            auto cut = [&](const Tensor<Tree, Tree>& y) {
                return y.filter([&](const std::pair<Tree, Tree>& b) { return grading(b, sc) - grading(f, sc) <= cp.budget(); });
            };
            t.expect(cut(l) == cut(r), [&] { return format(f, ds.s) + " : " + detail::diff_witness(cut(l), cut(r), ds.s); });
        }
        rep.checks.push_back(t.result());
    }
    {
        Tally t("(K x id) Delta_2 on S(T) = Delta_2 on T");
        for (auto& x : basis) {
            Tensor<Tree, Tree> l;
            for (auto& [ab, c] : cp.delta2_forest(x)) l.add({merge_roots(ab.first, ds.s.dim), ab.second}, c);
            t.expect(l == cp.delta2(x), [&] { return ds.fmt(x); });
        }
        rep.checks.push_back(t.result());
    }
    {
        Tally t("K* is adjoint to K for the symmetry-factor pairing");
        auto fs = detail::forests(ds, 2, top);
        for (auto& x : ds.trees(top)) {
            const auto& ks = split_blocks(x);
            const Rational sx(symmetry_factor(x));
            std::set<Forest> targets(fs.begin(), fs.end());
            for (auto& [f, c] : ks) targets.insert(f);
            for (auto& f : targets) {
                Rational lhs = ks.coeff(f) * Rational(symmetry_factor(f));
                Rational rhs = merge_roots(f, ds.s.dim) == x ? sx : Rational(0);
                t.expect(lhs == rhs, [&] { return ds.fmt(x) + " vs " + format(f, ds.s); });
            }
        }
        rep.checks.push_back(t.result());
    }
    return rep;
}

// ---- criterion 8 ------------------------------------------------------------------------------

inline SuiteReport suite_cointeraction(const DeskScale& ds, int edges = 1)
{
    SuiteReport rep{"cointeraction", 8, "cointeraction of insertion with grafting and plugging", {}, 0};
    auto small = ds.trees(edges);
    for (auto kind : {CointeractionKind::Graft, CointeractionKind::Plug})
        for (bool deformed : {true, false}) {
            std::string name = std::string(deformed ? "deformed " : "classical ") +
                               (kind == CointeractionKind::Graft ? "grafting cointeraction" : "plugging cointeraction");
            Tally t(name);
            std::vector<Edge> labels = kind == CointeractionKind::Graft ? ds.labels() : std::vector<Edge>{Edge{0, ds.s.zero()}};
            for (auto& tau : small)
                for (auto& t1 : small)
                    for (auto& t2 : small)
                        for (auto& a : labels) {
                            auto [l, r] = cointeraction_sides(kind, Forest(tau), t1, t2, a, deformed);
                            t.expect(l == r, [&] {
                                return "tau=" + ds.fmt(tau) + " t1=" + ds.fmt(t1) + " t2=" + ds.fmt(t2) + " a=" + format(a, ds.s);
                            });
                        }
            rep.checks.push_back(t.result());
        }
    return rep;
}

// ---- criterion 9 ------------------------------------------------------------------------------

inline SuiteReport suite_applications(const DeskScale& ds)
{
    SuiteReport rep{"applications", 9, "numerical-analysis and regularity-structure identities", {}, 0};
    Coproducts cp(ds.s, ds.budget);
    auto da = DegreeAssignment::from(ds.s);
    auto basis = ds.trees(ds.max_edges);
    auto pforests = detail::planted_forests(ds, 2, ds.max_edges);
    {
        Tally t("Delta_NA recursion = flip Delta_DCK");
        for (auto& f : pforests)
            t.expect(delta_na_direct(f, cp) == delta_na(f, cp, da), [&] { return format(f, ds.s); });
        for (auto& x : basis)
            t.expect(delta_na_bar_direct(x, cp) == delta_na_bar(x, cp, da), [&] { return ds.fmt(x); });
        rep.checks.push_back(t.result());
    }
    {
        Tally t("Delta_RC recursion = flip Delta_2");
        for (auto& x : basis) t.expect(delta_rc_direct(x, cp) == flip(cp.delta2(x)), [&] { return ds.fmt(x); });
        rep.checks.push_back(t.result());
    }
    {
        Tally t("Delta_RN = Delta_1");
        for (auto& x : basis) t.expect(delta_rn(x, cp) == cp.delta1(x), [&] { return ds.fmt(x); });
        rep.checks.push_back(t.result());
    }
    {
        Tally t("antipode identities for Delta_NA and Delta_DCK within budget");
        for (auto kind : {AntipodeKind::NA, AntipodeKind::DCK}) {
            Antipode s(cp, kind);
            for (auto& f : pforests) {
                auto [l, r] = s.convolutions(f);
                LinComb<PlantedForest> unit;
                if (f.empty()) unit.add(PlantedForest{}, 1);
                t.expect(l == unit && r == unit,
                         [&] { return format(f, ds.s) + " : " + format(l, ds.s) + " ; " + format(r, ds.s); });
            }
        }
        rep.checks.push_back(t.result());
    }
    {
        Tally t("R compatibility for R = id");
        auto r = check_R_compat([](const Tree& x) { return LinComb<Tree>(x); }, basis, cp);
        for (size_t i = 0; i < r.checked; ++i) t.expect(true, {});
        if (!r.ok) t.fail(ds.fmt(*r.counterexample));
        rep.checks.push_back(t.result());
    }
    {
        Tally t("renormalisation map cointeraction for R = id and R = 2 id");
        for (int k : {1, 2}) {
            auto r = check_M_cointeraction([k](const Tree& x) { return LinComb<Tree>(x, k); }, basis, cp);
            for (size_t i = 0; i < r.checked; ++i) t.expect(true, {});
            if (!r.ok) t.fail("R = " + std::to_string(k) + " id at " + ds.fmt(*r.counterexample));
        }
        rep.checks.push_back(t.result());
    }
    {
        Tally t("Delta_RC and Delta_RN are in cointeraction");
        for (auto& x : basis) {
            auto [l, r] = rc_rn_sides(x, cp);
            t.expect(l == r, [&] { return ds.fmt(x); });
        }
        rep.checks.push_back(t.result());
    }
    return rep;
}

// ---- criterion 10 -----------------------------------------------------------------------------

// Worked examples with concrete decorations (d+1 = 1, one edge kind t) and their hand expansions.
inline SuiteReport suite_displays()
{
    SuiteReport rep{"displays", 10, "worked examples match their hand expansions", {}, 0};
    Session s;
    auto T = [&](const std::string& x) { return parse_tree(x, s); };
    auto L = [&](const std::string& x) { return parse_trees(x, s); };
    auto P = [&](const std::string& x) { return parse_planted(x, s); };
    auto E = [&](int i) { return Edge{0, MultiIndex{i}}; };
    auto add = [&](const std::string& name, const auto& got, const auto& want) {
        Tally t(name);
        t.expect(got == want, [&] { return "got " + format(got, s) + " ; expected " + format(want, s); });
        rep.checks.push_back(t.result());
    };

    // •α ↷^a (γ -b- β) with α = 1, a = (t,1), γ = 0, b = (t,0), β = 1.
    add("grafting example", graft(T("X^(1)"), E(1), T("X^(0)[(t,(0))->X^(1)]")),
        L("X^(0)[(t,(1))->X^(1),(t,(0))->X^(1)] + X^(0)[(t,(0))->X^(1)[(t,(1))->X^(1)]]"));

    // Same shape, deformed, with α = 0, a = (t,2), γ = 2, b = (t,0), β = 1.
    add("deformed grafting example", deformed_graft(T("X^(0)"), E(2), T("X^(2)[(t,(0))->X^(1)]")),
        L("X^(2)[(t,(2))->X^(0),(t,(0))->X^(1)] + X^(2)[(t,(0))->X^(1)[(t,(2))->X^(0)]]"
          " + 2*X^(1)[(t,(1))->X^(0),(t,(0))->X^(1)] + X^(0)[(t,(0))->X^(0),(t,(0))->X^(1)]"
          " + X^(2)[(t,(0))->X^(0)[(t,(1))->X^(0)]]"));

    // I_a(•α) ↷ I_b(•β) with a = (t,1), α = 1, b = (t,0), β = 1.
    Planted pa{E(1), T("X^(1)")}, pb{E(0), T("X^(1)")};
    add("planted grafting example", planted_graft(pa, pb, false), P("(t,(0))->X^(1)[(t,(1))->X^(1)]"));
    add("planted deformed grafting example", planted_graft(pa, pb, true),
        P("(t,(0))->X^(1)[(t,(1))->X^(1)] + (t,(0))->X^(0)[(t,(0))->X^(1)]"));

    // cherry X^ω[a->•α, b->•β] plugged into X^δ[c->•γ] with ω = 0, α = 0, β = 1, a = b = (t,1), δ = 2, γ = 1, c = (t,0).
    Tree cherry = T("X^(0)[(t,(1))->X^(0),(t,(1))->X^(1)]");
    Tree stick = T("X^(2)[(t,(0))->X^(1)]");
    add("plugging example", plug(cherry, stick),
        L("X^(2)[(t,(0))->X^(1),(t,(1))->X^(0),(t,(1))->X^(1)] + X^(2)[(t,(0))->X^(1)[(t,(1))->X^(0),(t,(1))->X^(1)]]"));
    add("deformed plugging example", deformed_plug(cherry, stick),
        L("X^(2)[(t,(0))->X^(1),(t,(1))->X^(0),(t,(1))->X^(1)]"
          " + 2*X^(1)[(t,(0))->X^(1),(t,(0))->X^(0),(t,(1))->X^(1)]"
          " + 2*X^(1)[(t,(0))->X^(1),(t,(1))->X^(0),(t,(0))->X^(1)]"
          " + 2*X^(0)[(t,(0))->X^(1),(t,(0))->X^(0),(t,(0))->X^(1)]"
          " + X^(2)[(t,(0))->X^(1)[(t,(1))->X^(0),(t,(1))->X^(1)]]"
          " + X^(2)[(t,(0))->X^(0)[(t,(0))->X^(0),(t,(1))->X^(1)]]"
          " + X^(2)[(t,(0))->X^(0)[(t,(1))->X^(0),(t,(0))->X^(1)]]"));

    // σ = X^δ[b->•β, c->•γ], τ = X^ω[a->•α] with δ = 1, b = (t,1), c = (t,0), β = γ = 0, ω = 1, a = (t,0), α = 1.
    add("star_2 example", star_plug(T("X^(1)[(t,(1))->X^(0),(t,(0))->X^(0)]"), T("X^(1)[(t,(0))->X^(1)]"), true),
        L("X^(2)[(t,(0))->X^(0),(t,(1))->X^(0),(t,(0))->X^(1)] + X^(1)[(t,(0))->X^(0),(t,(0))->X^(0),(t,(0))->X^(1)]"
          " + X^(1)[(t,(0))->X^(0),(t,(1))->X^(0),(t,(0))->X^(2)] + X^(0)[(t,(0))->X^(0),(t,(0))->X^(0),(t,(0))->X^(2)]"
          " + X^(1)[(t,(0))->X^(2)[(t,(0))->X^(0),(t,(1))->X^(0)]] + X^(1)[(t,(0))->X^(1)[(t,(0))->X^(0),(t,(0))->X^(0)]]"
          " + X^(2)[(t,(0))->X^(1)[(t,(0))->X^(0),(t,(1))->X^(0)]] + X^(2)[(t,(0))->X^(0)[(t,(0))->X^(0),(t,(0))->X^(0)]]"
          " + X^(1)[(t,(0))->X^(2)[(t,(0))->X^(0)],(t,(1))->X^(0)] + X^(0)[(t,(0))->X^(2)[(t,(0))->X^(0)],(t,(0))->X^(0)]"
          " + X^(2)[(t,(0))->X^(1)[(t,(0))->X^(0)],(t,(1))->X^(0)] + 2*X^(1)[(t,(0))->X^(1)[(t,(0))->X^(0)],(t,(0))->X^(0)]"
          " + X^(2)[(t,(0))->X^(1)[(t,(1))->X^(0)],(t,(0))->X^(0)] + X^(2)[(t,(0))->X^(0)[(t,(0))->X^(0)],(t,(0))->X^(0)]"
          " + X^(1)[(t,(0))->X^(2)[(t,(1))->X^(0)],(t,(0))->X^(0)]"));
    return rep;
}

// ---- registry ---------------------------------------------------------------------------------

struct SuiteInfo {
    std::string name;
    int criterion;
    std::function<SuiteReport(const DeskScale&)> run;
};

inline const std::vector<SuiteInfo>& suites()
{
    static const std::vector<SuiteInfo> all{
        {"prelie", 1, suite_prelie},
        {"theta", 2, suite_theta},
        {"duality", 3, suite_duality},
        {"chu-vandermonde", 4, [](const DeskScale&) { return suite_chu_vandermonde(); }},
        {"not-commute", 5, suite_not_commute},
        {"insertion-poly", 6, suite_insertion_poly},
        {"associativity", 7, suite_associativity},
        {"cointeraction", 8, [](const DeskScale& d) { return suite_cointeraction(d); }},
        {"applications", 9, suite_applications},
        {"displays", 10, [](const DeskScale&) { return suite_displays(); }},
    };
    return all;
}

inline SuiteReport run_suite(const SuiteInfo& info, const DeskScale& ds)
{
    auto start = std::chrono::steady_clock::now();
    SuiteReport r = info.run(ds);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

} // namespace dtree
