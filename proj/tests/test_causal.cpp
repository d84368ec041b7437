#include <gtest/gtest.h>

#include "cckit/causal.hpp"
#include "cckit/generators.hpp"
#include "cckit/subdivision.hpp"

using namespace cckit;

namespace {

VertexSet range(Vertex lo, Vertex hi) {
    VertexSet out;
    for (Vertex v = lo; v < hi; ++v) out.push_back(v);
    return out;
}

Complex bottom_of_cylinder(const Complex& k, int n) { return restriction(k, range(0, static_cast<Vertex>(n))); }

std::size_t max_preimage(const CcMap& m) {
    std::size_t best = 0;
    for (const auto& p : preimages(m)) best = std::max(best, p.size());
    return best;
}

// Stellar subdivision of the edge {0, 1} of the tetrahedron boundary, midpoint 4.
Complex stellar_tetra() {
    return gen::simplicial_closure({{0, 2, 4}, {1, 2, 4}, {0, 3, 4}, {1, 3, 4}, {0, 2, 3}, {1, 2, 3}});
}

CcMap stellar_map() {
    ComplexPtr s = share(stellar_tetra());
    ComplexPtr t = share(gen::simplex_boundary(3));
    return map_by_cells(s, t, [](const Cell& c) {
        Cell out;
        for (Vertex v : c) {
            if (v == 4) {
                out.push_back(0);
                out.push_back(1);
            } else {
                out.push_back(v);
            }
        }
        return normalized(out);
    });
}

// Identity semi-sequence with M = T = B.
SemiSequence identity_semi(const ComplexPtr& k) { return make_semi(identity_collapse(k), identity_reduction(k)); }

}  // namespace

TEST(Reduction, IdentityIsBoth) {
    for (int n = 3; n <= 6; ++n) {
        ComplexPtr c = share(gen::cycle(n));
        EXPECT_TRUE(check_reduction(identity_map(c)).ok());
        EXPECT_TRUE(check_collapse(identity_map(c)).ok());
    }
    ComplexPtr t = share(gen::torus_cell());
    EXPECT_TRUE(check_reduction(identity_map(t)).ok());
}

TEST(Reduction, BarycentricProjection) {
    for (const Complex& k : {gen::cycle(3), gen::cycle(5), gen::simplex_boundary(3), gen::path(2), gen::grid(2, 2)}) {
        Bdiv b = barycentric(k);
        auto rep = check_reduction(b.rho);
        EXPECT_TRUE(rep.ok()) << (rep.ok() ? "" : rep.violations.front().what);
    }
}

TEST(Reduction, DualIsCollapse) {
    for (const Complex& k : {gen::cycle(4), gen::simplex_boundary(3), gen::prism(gen::cycle(3))}) {
        ComplexPtr p = share(boundary(k).empty() ? k : boundary(k));
        Reduction r = certify_reduction(barycentric(p).rho);
        Collapse c = dual_of_reduction(r);
        EXPECT_TRUE(check_collapse(c.map()).ok());
        Reduction back = dual_of_collapse(c);
        EXPECT_TRUE(is_isomorphic(*back.source(), *r.source()));
        EXPECT_TRUE(is_isomorphic(*back.target(), *r.target()));
        EXPECT_EQ(detail::map_profile(back.map()), detail::map_profile(r.map()));
    }
}

TEST(Reduction, DualNeedsClassB) {
    Reduction r = certify_reduction(barycentric(gen::path(2)).rho);
    try {
        dual_of_reduction(r);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotInB);
    }
}

TEST(Reduction, Composition) {
    Bdiv b1 = barycentric(gen::cycle(3));
    Bdiv b2 = barycentric(b1.complex);
    Reduction r = compose_reductions(certify_reduction(b2.rho), certify_reduction(b1.rho));
    EXPECT_EQ(r.source()->count_rank(0), 12u);
    EXPECT_TRUE(check_reduction(r.map()).ok());
    Bdiv s1 = barycentric(gen::simplex_boundary(3));
    Bdiv s2 = barycentric(s1.complex);
    EXPECT_NO_THROW(compose_reductions(certify_reduction(s2.rho), certify_reduction(s1.rho)));
    EXPECT_THROW(compose_reductions(certify_reduction(s1.rho), certify_reduction(b1.rho)), Error);
}

TEST(Reduction, StellarSubdivision) {
    CcMap s = stellar_map();
    auto rep = check_reduction(s);
    EXPECT_TRUE(rep.ok()) << (rep.ok() ? "" : rep.violations.front().what);
    EXPECT_FALSE(check_collapse(s).ok());
}

// Path 0-1-2 onto an edge, squeezing 0, 1 and 01 into one end.
TEST(Reduction, ManyVertexPreimages) {
    ComplexPtr j = share(gen::path(2));
    ComplexPtr k = share(build_complex({{{10}, 0}, {{11}, 0}, {{10, 11}, 1}}));
    CcMap m = map_by_cells(j, k, [](const Cell& c) -> Cell {
        if (c == Cell{2}) return {11};
        if (c == Cell{1, 2}) return {10, 11};
        return {10};
    });
    auto rep = check_reduction(m);
    EXPECT_TRUE(rep.has("r1"));
}

// Star with three leaves onto an edge; the center has three cofaces over its image.
TEST(Reduction, BranchedPreimage) {
    ComplexPtr j = share(build_complex({{{0}, 0}, {{1}, 0}, {{2}, 0}, {{3}, 0}, {{0, 1}, 1}, {{0, 2}, 1}, {{0, 3}, 1}}));
    ComplexPtr k = share(build_complex({{{10}, 0}, {{11}, 0}, {{10, 11}, 1}}));
    CcMap m = map_by_cells(j, k, [](const Cell& c) -> Cell {
        if (c == Cell{1}) return {10};
        if (c == Cell{2}) return {11};
        return {10, 11};
    });
    auto rep = check_reduction(m);
    EXPECT_TRUE(rep.has("r4"));
    EXPECT_FALSE(rep.has("r1"));
}

TEST(Reduction, NotOrderPreserving) {
    ComplexPtr j = share(gen::cycle(4));
    CcMap m = identity_map(j);
    std::swap(m.image[0], m.image[1]);
    EXPECT_TRUE(check_reduction(m).has("order"));
    EXPECT_THROW(certify_reduction(m), Error);
}

TEST(Transition, PrismEnd) {
    for (int n = 3; n <= 6; ++n) {
        Complex k = gen::prism(gen::cycle(n));
        Complex j = bottom_of_cylinder(k, n);
        Transition t = transition(k, j);
        EXPECT_EQ(t.complex, j);
        EXPECT_TRUE(t.ambiguous_rank.empty());
        EXPECT_TRUE(check_uniform(k, j).ok());
    }
}

TEST(Uniform, SimplicialPairs) {
    // Fan around 0 and a triangulated annulus.
    std::vector<std::pair<Complex, Complex>> pairs;
    for (int n = 3; n <= 6; ++n) {
        std::vector<Cell> tops;
        for (int i = 1; i <= n; ++i) tops.push_back({0, static_cast<Vertex>(i), static_cast<Vertex>(i % n + 1)});
        Complex fan = gen::simplicial_closure(tops);
        pairs.emplace_back(fan, restriction(fan, range(1, static_cast<Vertex>(n + 1))));
    }
    for (int n = 3; n <= 6; ++n) {
        std::vector<Cell> tops;
        for (int i = 0; i < n; ++i) {
            Vertex a = static_cast<Vertex>(i), b = static_cast<Vertex>((i + 1) % n);
            tops.push_back({a, b, static_cast<Vertex>(a + n)});
            tops.push_back({b, static_cast<Vertex>(a + n), static_cast<Vertex>(b + n)});
        }
        Complex ann = gen::simplicial_closure(tops);
        pairs.emplace_back(ann, restriction(ann, range(0, static_cast<Vertex>(n))));
        pairs.emplace_back(ann, restriction(ann, range(static_cast<Vertex>(n), static_cast<Vertex>(2 * n))));
    }
    for (const auto& [k, j] : pairs) {
        auto rep = check_uniform(k, j);
        EXPECT_TRUE(rep.ok()) << (rep.ok() ? "" : rep.failures.front().what);
        EXPECT_TRUE(is_isomorphic(rep.transition.complex, j));
    }
}

TEST(Uniform, ImpureIntersection) {
    std::vector<std::pair<Cell, int>> cells{{{0, 1, 2, 3, 4}, 2}};
    for (Vertex v = 0; v < 5; ++v) {
        cells.push_back({{v}, 0});
        cells.push_back({normalized({v, static_cast<Vertex>((v + 1) % 5)}), 1});
    }
    Complex k = build_complex(cells);
    Complex j = build_complex({{{0}, 0}, {{1}, 0}, {{0, 1}, 1}, {{3}, 0}});
    auto rep = check_uniform(k, j);
    EXPECT_TRUE(rep.has("pure-intersection"));
    EXPECT_EQ(rep.failures.front().code, ErrorCode::NotPure);
}

TEST(Uniform, Degenerate) {
    Complex k = gen::simplex(2);
    auto rep = check_uniform(k, boundary(k));
    EXPECT_TRUE(rep.has("non-degenerate"));
}

TEST(CanonicalMaps, CylinderIsTrivial) {
    for (int n = 3; n <= 6; ++n) {
        Complex k = gen::cylinder(n, 1);
        Complex j = bottom_of_cylinder(k, n);
        CanonicalMaps cm = canonical_maps(k, j);
        EXPECT_EQ(*cm.transition, j);
        EXPECT_EQ(max_preimage(cm.rho.map()), 1u);
        EXPECT_EQ(max_preimage(cm.pi.map()), 1u);
        EXPECT_TRUE(is_isomorphic(*cm.midsection, j));
    }
}

TEST(CanonicalMaps, Preconditions) {
    Complex k = gen::cylinder(4, 2);
    EXPECT_THROW(canonical_maps(k, restriction(k, range(4, 8))), Error);  // middle ring
    EXPECT_THROW(canonical_maps(k, restriction(k, {0})), Error);
    Complex g = gen::grid(2, 2);
    EXPECT_NO_THROW(canonical_maps(g, boundary(g)));
}

TEST(PullBack, BarycentricEnd) {
    for (int n = 3; n <= 5; ++n) {
        Complex k = gen::cylinder(n, 1);
        Complex jp = bottom_of_cylinder(k, n);
        Reduction rho = certify_reduction(barycentric(jp).rho);
        PullBack pb = pull_back_boundary(k, rho);
        EXPECT_EQ(pb.complex.count_rank(2), static_cast<std::size_t>(n));
        EXPECT_EQ(pb.complex.count_rank(0), static_cast<std::size_t>(3 * n));
        auto comps = boundary_components(pb.complex);
        ASSERT_EQ(comps.size(), 2u);
        CanonicalMaps cm = canonical_maps(pb.complex, *rho.source());
        EXPECT_GT(max_preimage(cm.rho.map()), 1u);
        EXPECT_TRUE(check_cobordism(pb.complex, *rho.source()).ok());
    }
}

TEST(PullBack, IdentityChangesNothing) {
    Complex k = gen::cylinder(5, 2);
    ComplexPtr j = share(bottom_of_cylinder(k, 5));
    EXPECT_EQ(pull_back_boundary(k, identity_reduction(j)).complex, k);
}

TEST(Compatibility, DualitySwapsSides) {
    // rho compatible with pi iff dual(pi) compatible with dual(rho).
    for (int n = 3; n <= 5; ++n) {
        Complex k = gen::cylinder(n, 1);
        CanonicalMaps cm = canonical_maps(k, bottom_of_cylinder(k, n));
        EXPECT_TRUE(check_compatible(cm.rho.map(), cm.pi.map()));
        Reduction dr = dual_of_collapse(cm.pi);
        Collapse dc = dual_of_reduction(cm.rho);
        EXPECT_TRUE(check_compatible(dr.map(), dc.map()));
    }
    Complex k = gen::cylinder(4, 1);
    Complex jp = bottom_of_cylinder(k, 4);
    Reduction rho = certify_reduction(barycentric(jp).rho);
    Complex kp = pull_back_boundary(k, rho).complex;
    CanonicalMaps cm = canonical_maps(kp, *rho.source());
    EXPECT_TRUE(check_compatible(cm.rho.map(), cm.pi.map()));
    EXPECT_TRUE(check_compatible(dual_of_collapse(cm.pi).map(), dual_of_reduction(cm.rho).map()));
}

TEST(Compatibility, StellarAgainstBarycentric) {
    // Both maps have several preimages over the edge {0, 1}.
    Reduction b = certify_reduction(barycentric(gen::simplex_boundary(3)).rho);
    Reduction s = certify_reduction(stellar_map());
    auto rep = check_compatible(b.map(), s.map());
    EXPECT_FALSE(rep);
    EXPECT_EQ(rep.clause, "single preimage");
    Collapse c = dual_of_reduction(s);
    Reduction bd = certify_reduction(barycentric(c.target()).rho);
    EXPECT_THROW(make_semi(c, bd), Error);
}

TEST(Orthogonality, DualIsReflective) {
    for (int n = 3; n <= 5; ++n) {
        ComplexPtr c = share(gen::cycle(n));
        CcMap id = identity_map(c);
        EXPECT_TRUE(check_orthogonal(id, id));
        EXPECT_TRUE(check_reflective(dual_map(id), dual_map(id)));
    }
    CcMap s = stellar_map();
    CcMap id = identity_map(s.source);
    bool orth = static_cast<bool>(check_orthogonal(s, id));
    bool refl = static_cast<bool>(check_reflective(dual_map(s), dual_map(id)));
    EXPECT_EQ(orth, refl);
}

TEST(Augmented, IdentityOnCycle) {
    for (int n = 3; n <= 6; ++n) {
        ComplexPtr m = share(gen::cycle(n));
        ComplexPtr a = share(gen::cycle(n));
        ComplexPtr b = share(relabel(*a, [n](Vertex v) { return v + static_cast<Vertex>(n); }));
        CcMap pj = identity_map(m);
        pj.target = a;
        CcMap pl = transport_map(identity_map(m), m, [](Vertex v) { return v; }, b,
                                 [n](Vertex v) { return v + static_cast<Vertex>(n); });
        Augmented aug = augmented_poset(pj, pl);
        std::size_t squares = 0;
        for (auto& [c, r] : aug.cells) squares += r == 2;
        EXPECT_EQ(squares, static_cast<std::size_t>(n));
        EXPECT_THROW(augmented_poset(pj, pj), Error);
    }
}

TEST(Slice, IdentitySequenceGivesCylinder) {
    for (int n = 3; n <= 6; ++n) {
        ComplexPtr c = share(gen::cycle(n));
        SliceSequence seq = make_slice_sequence(identity_semi(c), identity_semi(c));
        Slice s = slice_from_sequence(seq);
        EXPECT_TRUE(is_isomorphic(s.s, gen::cylinder(n, 1)));
        SliceSequence back = sequence_from_slice(s.s, s.j);
        EXPECT_TRUE(is_isomorphic(back.j.m(), *c));
        EXPECT_EQ(max_preimage(back.j.pi.map()), 1u);
        EXPECT_EQ(max_preimage(back.l.rho.map()), 1u);
    }
}

TEST(Slice, RoundTrips) {
    std::vector<std::pair<Complex, Complex>> slices;
    for (int n = 3; n <= 5; ++n) {
        Complex k = gen::cylinder(n, 1);
        slices.emplace_back(k, bottom_of_cylinder(k, n));
        Reduction rho = certify_reduction(barycentric(bottom_of_cylinder(k, n)).rho);
        slices.emplace_back(pull_back_boundary(k, rho).complex, *rho.source());
    }
    Complex pr = gen::prism(gen::simplex_boundary(3));
    slices.emplace_back(pr, removed_components(pr, {0}));
    for (const auto& [s, j] : slices) {
        ASSERT_TRUE(check_slice(s, j).empty());
        SliceSequence seq = sequence_from_slice(s, j);
        Slice again = slice_from_sequence(seq);
        std::map<Vertex, int> la, lb;
        for (Vertex v : s.vertices()) la[v] = j.contains(Cell{v}) ? 1 : 0;
        for (Vertex v : again.s.vertices()) lb[v] = again.j.contains(Cell{v}) ? 1 : 0;
        EXPECT_TRUE(find_isomorphism(s, again.s, la, lb).has_value());
        SliceSequence seq2 = sequence_from_slice(again.s, again.j);
        EXPECT_TRUE(detail::semi_equivalent(seq.j, seq2.j));
        EXPECT_TRUE(detail::semi_equivalent(seq.l, seq2.l));
    }
}

TEST(Slice, NotASlice) {
    Complex k = gen::cylinder(4, 2);
    EXPECT_FALSE(check_slice(k, bottom_of_cylinder(k, 4)).empty());  // interior vertices
    Complex g = gen::grid(2, 2);
    EXPECT_FALSE(check_slice(g, boundary(g)).empty());
}

TEST(Slice, IncompatiblePullBack) {
    // M = dual of the stellar subdivision, collapsing onto the tetrahedron boundary dual.
    Collapse pj = dual_of_reduction(certify_reduction(stellar_map()));
    ComplexPtr m = pj.source();
    SliceSequence seq = make_slice_sequence(make_semi(pj, identity_reduction(pj.target())), identity_semi(m));
    Slice s = slice_from_sequence(seq);
    EXPECT_TRUE(check_slice(s.s, s.j).empty());
    Reduction b = certify_reduction(barycentric(s.j).rho);
    try {
        pull_back_boundary(s.s, b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CompatibilityFailed);
    }
}

TEST(Union, CylindersStack) {
    for (int n = 3; n <= 5; ++n) {
        Complex k = gen::cylinder(n, 1);
        Complex top = restriction(k, range(static_cast<Vertex>(n), static_cast<Vertex>(2 * n)));
        Complex u = glue(k, top, k, bottom_of_cylinder(k, n));
        EXPECT_TRUE(is_isomorphic(u, gen::cylinder(n, 2)));
        EXPECT_TRUE(check_cobordism(u, bottom_of_cylinder(u, n)).ok());
    }
}

TEST(Union, EdgesMeetAtVertex) {
    Complex e = gen::path(1);
    Complex u = glue(e, restriction(e, {1}), e, restriction(e, {0}));
    EXPECT_TRUE(is_isomorphic(u, gen::path(2)));
}

TEST(Union, AlongBarycentricInterface) {
    // K meets I through the projection bdiv(C_4) -> C_4, H already ends in I.
    Complex k = gen::cylinder(4, 1);
    Complex top = restriction(k, range(4, 8));
    Reduction rj = certify_reduction(barycentric(top).rho);
    ComplexPtr i = rj.source();
    Complex c = gen::cylinder(8, 1);
    Reduction iso = certify_reduction(vertex_induced(i, share(bottom_of_cylinder(c, 8)), *find_isomorphism(*i, bottom_of_cylinder(c, 8))));
    Complex h = pull_back_boundary(c, iso).complex;
    Complex u = union_along(k, rj, h, identity_reduction(i));
    EXPECT_EQ(u.count_rank(2), 12u);
    EXPECT_EQ(boundary_components(u).size(), 2u);
    EXPECT_THROW(union_along(k, rj, k, certify_reduction(barycentric(bottom_of_cylinder(k, 4)).rho)), Error);
}

TEST(Union, MismatchedInterfaces) {
    Complex k = gen::cylinder(4, 1);
    Complex h = gen::cylinder(5, 1);
    EXPECT_THROW(glue(k, restriction(k, range(4, 8)), h, bottom_of_cylinder(h, 5)), Error);
}

TEST(Causal, Decomposition) {
    Complex k = gen::cylinder(4, 3);
    CausalDecomposition d = decompose_causal(k, bottom_of_cylinder(k, 4));
    EXPECT_EQ(d.interfaces.size(), 4u);
    EXPECT_EQ(d.slices.size(), 3u);
    StateSequence q = causal_sequence(d);
    EXPECT_EQ(q.states.size(), 5u);
    EXPECT_EQ(q.states.front().kind, StateKind::Out);
    EXPECT_EQ(q.states[1].kind, StateKind::In);
}

class Braket : public ::testing::Test {
protected:
    void SetUp() override {
        Complex k = gen::cylinder(3, 2);
        Complex jp = bottom_of_cylinder(k, 3);
        Reduction rho = certify_reduction(barycentric(jp).rho);
        Complex kp = pull_back_boundary(k, rho).complex;
        q = causal_sequence(decompose_causal(kp, *rho.source()));
    }
    StateSequence q;
};

TEST_F(Braket, Valid) { EXPECT_TRUE(check_sequence(q).empty()); }

TEST_F(Braket, TimeReversalIsInvolution) {
    StateSequence t = functor_T(q);
    EXPECT_TRUE(check_sequence(t).empty());
    StateSequence tt = functor_T(t);
    ASSERT_EQ(tt.states.size(), q.states.size());
    for (std::size_t i = 0; i < q.states.size(); ++i) EXPECT_TRUE(same_state(tt.states[i], q.states[i]));
}

TEST_F(Braket, ParityUpToIsomorphism) {
    StateSequence p = functor_P(q);
    EXPECT_TRUE(check_sequence(p).empty());
    EXPECT_EQ(p.states.front().kind, StateKind::In);
    EXPECT_TRUE(equivalent(functor_P(p), q));
    EXPECT_FALSE(equivalent(p, q));
}

TEST_F(Braket, ChargeConjugation) {
    StateSequence c = functor_C(q);
    EXPECT_TRUE(check_sequence(c).empty());
    EXPECT_TRUE(equivalent(functor_C(c), q));
    EXPECT_TRUE(equivalent(c, functor_T(functor_P(q))));
}

TEST_F(Braket, CompositionAndIdentity) {
    StateSequence first{{q.states[0], q.states[1], q.states[2]}};
    StateSequence second{{q.states[2]}};
    for (std::size_t i = 3; i < q.states.size(); ++i) second.states.push_back(q.states[i]);
    StateSequence whole = compose_sequences(first, second);
    ASSERT_EQ(whole.states.size(), q.states.size());
    for (std::size_t i = 0; i < q.states.size(); ++i) EXPECT_TRUE(same_state(whole.states[i], q.states[i]));
    StateSequence same = compose_sequences(identity_sequence(q.image()), q);
    EXPECT_EQ(same.states.size(), q.states.size());
    EXPECT_THROW(compose_sequences(second, first), Error);
}

TEST_F(Braket, BrokenAdjacency) {
    StateSequence bad = q;
    std::swap(bad.states[0], bad.states[1]);
    EXPECT_FALSE(check_sequence(bad).empty());
    EXPECT_THROW(make_sequence(bad.states), Error);
}

TEST_F(Braket, WorkedDualIdentity) {
    // C(<J,M,L| |M,L,M'>) = <dual M', dual L, dual M| |dual L, dual M, dual J>.
    StateSequence s{{q.states[0], q.states[1]}};
    const State& b = s.states[0];
    const State& k = s.states[1];
    StateSequence c = functor_C(s);
    ASSERT_EQ(c.states.size(), 2u);
    EXPECT_EQ(c.states[0].kind, StateKind::Out);
    EXPECT_EQ(c.states[1].kind, StateKind::In);
    auto d = [](const Complex& x) { return dual(x); };
    auto l0 = c.states[0].labels();
    EXPECT_TRUE(is_isomorphic(*l0[0], d(*k.labels()[2])));
    EXPECT_TRUE(is_isomorphic(*l0[1], d(*k.labels()[1])));
    EXPECT_TRUE(is_isomorphic(*l0[2], d(*k.labels()[0])));
    auto l1 = c.states[1].labels();
    EXPECT_TRUE(is_isomorphic(*l1[0], d(*b.labels()[2])));
    EXPECT_TRUE(is_isomorphic(*l1[1], d(*b.labels()[1])));
    EXPECT_TRUE(is_isomorphic(*l1[2], d(*b.labels()[0])));
}

TEST(Reduction, DualOfIdentity) {
    ComplexPtr c = share(gen::simplex_boundary(3));
    Collapse d = dual_of_reduction(identity_reduction(c));
    EXPECT_EQ(max_preimage(d.map()), 1u);
    EXPECT_TRUE(is_isomorphic(*d.source(), *c));
}

TEST(Reduction, MutualReductionsAreIsomorphisms) {
    ComplexPtr a = share(gen::cycle(5));
    ComplexPtr b = share(relabel(*a, [](Vertex v) { return 4 - v; }));
    auto f = find_isomorphism(*a, *b);
    ASSERT_TRUE(f);
    VertexMap inv;
    for (auto [x, y] : *f) inv[y] = x;
    Reduction ab = certify_reduction(vertex_induced(a, b, *f));
    Reduction ba = certify_reduction(vertex_induced(b, a, inv));
    EXPECT_TRUE(is_isomorphic(*ab.source(), *ba.source()));
    // bdiv(C_5) reduces to C_5 but not the other way: vertex counts differ.
    EXPECT_FALSE(is_isomorphic(*barycentric(*a).complex, *a));
}

TEST(Union, GlueThenDecompose) {
    for (int n = 3; n <= 5; ++n) {
        Complex k = gen::cylinder(n, 1);
        Complex top = restriction(k, range(static_cast<Vertex>(n), static_cast<Vertex>(2 * n)));
        Complex u = glue(k, top, k, bottom_of_cylinder(k, n));
        Complex j = bottom_of_cylinder(u, n);
        EXPECT_TRUE(check_cobordism(u, j).ok());
        CausalDecomposition d = decompose_causal(u, j);
        ASSERT_EQ(d.slices.size(), 2u);
        for (const Complex& s : d.slices) EXPECT_TRUE(is_isomorphic(s, k));
        EXPECT_TRUE(check_sequence(causal_sequence(d)).empty());
    }
}
