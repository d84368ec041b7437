#include <gtest/gtest.h>

#include "cckit/generators.hpp"
#include "cckit/shell.hpp"

using namespace cckit;

namespace {

Complex pinched_spheres_cell() {
    auto ranked = gen::simplicial_closure({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 4, 5}, {0, 4, 6}, {0, 5, 6}, {4, 5, 6}})
                      .ranked_cells();
    ranked.emplace_back(Cell{0, 1, 2, 3, 4, 5, 6}, 3);
    return build_complex(ranked);
}

}  // namespace

TEST(Shelling, SimplexBoundaries) {
    for (int r = 2; r <= 4; ++r) {
        Complex k = gen::simplex_boundary(r);
        auto s = find_shelling(k);
        ASSERT_TRUE(s) << r;
        EXPECT_TRUE(verify_shelling(k, *s));
        EXPECT_EQ(s->order.size(), static_cast<std::size_t>(r + 1));
    }
}

TEST(Shelling, OpenComplexes) {
    for (const Complex& k : {gen::simplex(3), gen::grid(3, 3), gen::path(4), gen::prism(gen::simplex(2)), gen::bitetra()}) {
        auto s = find_shelling(k);
        ASSERT_TRUE(s);
        EXPECT_TRUE(verify_shelling(k, *s));
    }
}

TEST(Shelling, Failures) {
    EXPECT_FALSE(find_shelling(gen::triangulated_torus(3, 3)));
    EXPECT_FALSE(find_shelling(boundary(gen::torus_cell())));
    EXPECT_FALSE(find_shelling(gen::torus_cell()));
    // two triangles on one vertex: the second meets the first in a point
    EXPECT_FALSE(find_shelling(gen::simplicial_closure({{0, 1, 2}, {0, 3, 4}})));
    EXPECT_FALSE(find_shelling(gen::simplicial_closure({{0, 1}, {2, 3}})));
    // an annulus closes up on its last square along two disjoint edges
    EXPECT_FALSE(find_shelling(gen::cylinder(4, 1)));
    // two points do not form a shellable 0-complex
    EXPECT_FALSE(find_shelling(gen::simplex_boundary(1)));
    // three triangles in a ring, each meeting the next in a vertex
    EXPECT_FALSE(find_shelling(gen::simplicial_closure({{0, 1, 2}, {2, 3, 4}, {4, 5, 0}})));
}

TEST(Shelling, RejectsSingular) {
    EXPECT_THROW(find_shelling(gen::simplicial_closure({{0, 1}, {0, 2}, {0, 3}})), Error);
}

TEST(Shelling, CertificateTamperingIsCaught) {
    Complex k = gen::simplex_boundary(3);
    auto s = find_shelling(k);
    ASSERT_TRUE(s);
    Shelling bad = *s;
    bad.order.pop_back();
    EXPECT_FALSE(verify_shelling(k, bad));
    Complex g = gen::grid(1, 3);
    auto t = find_shelling(g);
    ASSERT_TRUE(t);
    Shelling swapped = *t;
    // squares 0 and 2 of a 1x3 strip are disjoint, so starting 0,2 is illegal
    std::vector<Cell> order = swapped.order;
    std::sort(order.begin(), order.end());
    swapped.order = {order[0], order[2], order[1]};
    EXPECT_FALSE(verify_shelling(g, swapped));
}

TEST(EulerPoincare, ShellableCorpus) {
    for (const Complex& k : {gen::simplex_boundary(2), gen::simplex_boundary(3), gen::simplex_boundary(4), gen::simplex(3),
                             gen::grid(2, 3), gen::path(5), gen::cycle(6), boundary(gen::prism(gen::simplex(2)))}) {
        auto e = check_euler_poincare(k);
        EXPECT_TRUE(e.consistent) << e.chi << " vs " << e.expected;
    }
    EXPECT_THROW(check_euler_poincare(gen::triangulated_torus(3, 3)), Error);
}

TEST(TwoShelling, DualsOfSimplicialSpheres) {
    // for simple complexes a 2-shelling exists exactly when the dual is shellable
    for (const Complex& k : {gen::simplex_boundary(3), gen::simplex_boundary(4), gen::triangulated_torus(3, 3)}) {
        Complex d = dual(k);
        auto two = find_2_shelling(d);
        bool shellable = find_shelling(k).has_value();
        EXPECT_EQ(two.has_value(), shellable);
        if (two) {
            EXPECT_TRUE(verify_2_shelling(d, *two));
        }
    }
}

TEST(TwoShelling, RejectsLowRank) { EXPECT_THROW(find_2_shelling(gen::simplex_boundary(2)), Error); }

TEST(TwoShelling, VerifierRejectsGaps) {
    Complex sq = gen::grid(1, 1);
    EXPECT_FALSE(verify_2_shelling(sq, {{0, 3, 1, 2}}));
    EXPECT_TRUE(verify_2_shelling(sq, {{0, 1, 3, 2}}));
}

TEST(Polytope, Examples) {
    EXPECT_TRUE(is_polytope(gen::simplex(3)).polytope);
    EXPECT_TRUE(is_polytope(gen::grid(1, 1)).polytope);
    EXPECT_FALSE(is_polytope(gen::grid(1, 2)).polytope);
    auto bad = is_polytope(pinched_spheres_cell());
    EXPECT_FALSE(bad.polytope);
    ASSERT_TRUE(bad.bad_section);
    EXPECT_EQ(bad.bad_section->first, Cell{0});
}

TEST(Polytope, CellsOfLocalSimpleComplexes) {
    for (const Complex& k : {dual(gen::simplex_boundary(4)), dual(gen::triangulated_torus(3, 3))}) {
        for (Id x = 0; x < k.size(); ++x) EXPECT_TRUE(is_polytope(subcomplex(k, k.cells_within(k.cell(x)))).polytope);
    }
}
