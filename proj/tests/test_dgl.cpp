#include "doctest.h"

#include <random>

#include "dgla/dgl.hpp"
#include "dgla/expr.hpp"

using namespace dgla;

namespace {

// four odd cells, four degree-4 cells, each boundary a length-3 bracket
DGL ladder_example(int cutoff) {
    GeneratorSet gens({{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1},
                       {"x", 4}, {"y", 4}, {"z", 4}, {"w", 4}});
    auto ctx = std::make_shared<FreeLieContext>(std::move(gens), cutoff);
    DGL out(ctx);
    out.set_differential("x", parse_lie_expr(*ctx, "[[b,a],c]"));
    out.set_differential("y", parse_lie_expr(*ctx, "[[b,a],d]"));
    out.set_differential("z", parse_lie_expr(*ctx, "[[d,c],a]"));
    out.set_differential("w", parse_lie_expr(*ctx, "[[d,c],b]"));
    return out;
}

}  // namespace

TEST_CASE("expression parser") {
    auto ctx = std::make_shared<FreeLieContext>(GeneratorSet({{"a", 1}, {"b", 2}}), 8);
    LieElement a = ctx->element_of_generator(0);
    LieElement b = ctx->element_of_generator(1);

    CHECK(parse_lie_expr(*ctx, "a") == a);
    CHECK(parse_lie_expr(*ctx, " 3/2 * a - a") == a.scaled(Rational(1) / 2));
    CHECK(parse_lie_expr(*ctx, "[a,b]") == ctx->bracket(a, b));
    CHECK(parse_lie_expr(*ctx, "[a,b] + [b,a]").is_zero());
    CHECK(parse_lie_expr(*ctx, "-a + 2*a") == a);
    CHECK(parse_lie_expr(*ctx, "[a,[a,b]] - 1*[a,[a,b]]").is_zero());

    CHECK_THROWS_AS(parse_lie_expr(*ctx, "q"), ExprError);
    CHECK_THROWS_AS(parse_lie_expr(*ctx, "[a,b"), ExprError);
    CHECK_THROWS_AS(parse_lie_expr(*ctx, "2a"), ExprError);
    CHECK_THROWS_AS(parse_lie_expr(*ctx, "a b"), ExprError);
    CHECK_THROWS_AS(parse_lie_expr(*ctx, "1/0 * a"), ExprError);
}

TEST_CASE("derivation extension") {
    DGL d = ladder_example(6);
    FreeLieContext& L = d.lie();

    // declared values come back
    CHECK(d.d(L.element_of_generator(L.generators().index_of("x"))) ==
          parse_lie_expr(L, "[[b,a],c]"));
    // brackets of cycles are cycles
    CHECK(d.d(parse_lie_expr(L, "[a,b]")).is_zero());
    // d([x,d]) = [[[b,a],c],d] since the odd generator d is a cycle
    CHECK(d.d(parse_lie_expr(L, "[x,d]")) == parse_lie_expr(L, "[[[b,a],c],d]"));
}

TEST_CASE("Leibniz rule on random homogeneous elements") {
    DGL dl = ladder_example(6);
    FreeLieContext& L = dl.lie();
    std::mt19937 rng(31);
    const auto& b2 = L.monomial_basis(2);
    const auto& b4 = L.monomial_basis(4);
    for (int trial = 0; trial < 25; ++trial) {
        LieElement u, v;
        u.add_term(b2[rng() % b2.size()], Rational((int)(rng() % 5) - 2));
        u.add_term(b2[rng() % b2.size()], Rational(1));
        v.add_term(b4[rng() % b4.size()], Rational((int)(rng() % 5) - 2));
        v.add_term(b4[rng() % b4.size()], Rational(1));
        LieElement lhs = dl.d(L.bracket(u, v));
        LieElement rhs = L.bracket(dl.d(u), v) + L.bracket(u, dl.d(v));  // |u| even
        CHECK(lhs == rhs);
    }
}

TEST_CASE("validate") {
    CHECK(sphere(2, "x", 6).validate().ok());
    CHECK(ladder_example(6).validate().ok());

    GeneratorSet gens({{"u", 3}, {"v", 2}, {"w", 1}});
    auto ctx = std::make_shared<FreeLieContext>(std::move(gens), 5);
    DGL bad(ctx);
    bad.set_differential("u", ctx->element_of_generator(1));
    bad.set_differential("v", ctx->element_of_generator(2));
    auto rep = bad.validate();
    REQUIRE(rep.issues.size() == 1);
    CHECK(rep.issues[0].generator == "u");
    CHECK(rep.issues[0].residue == "w");
}

TEST_CASE("differential degree checks") {
    auto ctx = std::make_shared<FreeLieContext>(GeneratorSet({{"a", 1}, {"b", 3}}), 6);
    DGL d(ctx);
    // degree-1 generators cannot hit degree 0
    CHECK_THROWS_AS(d.set_differential("a", ctx->element_of_generator(1)),
                    std::invalid_argument);
    // wrong degree
    CHECK_THROWS_AS(d.set_differential("b", ctx->element_of_generator(0)),
                    std::invalid_argument);
    d.set_differential("b", parse_lie_expr(*ctx, "[a,a]"));
    CHECK(d.validate().ok());
}

TEST_CASE("chain homology of spheres") {
    // even sphere: one class, nothing above it
    auto h2 = sphere(2, "x", 7).chain_homology(6);
    CHECK(h2.betti_table().dims == std::map<int, int>{{2, 1}});

    // odd sphere: the free Lie algebra on one odd class has [x,x] too
    auto h1 = sphere(1, "x", 7).chain_homology(6);
    CHECK(h1.betti_table().dims == std::map<int, int>{{1, 1}, {2, 1}});
}

TEST_CASE("disks are acyclic") {
    auto h = disk(3, "x", 7).chain_homology(6);
    CHECK(h.betti_table().dims.empty());
    auto h2 = disk(2, "x", 6).chain_homology(5);
    CHECK(h2.betti_table().dims.empty());
}

TEST_CASE("minimality") {
    CHECK(sphere(3, "x", 6).is_minimal());
    CHECK(ladder_example(6).is_minimal());
    CHECK(!disk(3, "x", 6).is_minimal());
}

TEST_CASE("disk boundary") {
    DGL b = boundary_of_disk(disk(3, "x", 6));
    REQUIRE(b.lie().generators().size() == 1);
    CHECK(b.lie().generators().at(0).name == "dx");
    CHECK(b.lie().generators().degree(0) == 2);
    CHECK(b.differential_on(0).is_zero());
}

TEST_CASE("coproduct") {
    DGL one = coproduct({sphere(2, "x", 6)}, 6);
    CHECK(one.lie().generators().size() == 1);

    DGL two = coproduct({sphere(2, "x", 6), sphere(2, "y", 6)}, 6);
    LieElement xy = parse_lie_expr(two.lie(), "[x,y]");
    CHECK(!two.lie().decompose(xy, 4).empty());

    // disk factor contributes nothing to homology
    DGL mix = coproduct({sphere(2, "x", 7), disk(4, "u", 7)}, 7);
    CHECK(mix.validate().ok());
    auto h = mix.chain_homology(5);
    CHECK(h.betti_table().dims == sphere(2, "x", 7).chain_homology(5).betti_table().dims);

    CHECK_THROWS_AS(coproduct({sphere(2, "x", 6), sphere(3, "x", 6)}, 6),
                    std::invalid_argument);
}

TEST_CASE("ladder example carries the degree-5 cycle") {
    DGL d = ladder_example(6);
    FreeLieContext& L = d.lie();
    LieElement zeta = parse_lie_expr(L, "[x,d] + [y,c] + [z,b] + [w,a]");
    CHECK(d.d(zeta).is_zero());

    auto h = d.chain_homology(5);
    const auto& h5 = h.by_degree.at(5);
    CHECK(h5.betti > 0);
    // the class is nonzero: zeta is not in the boundary span
    SparseVector zc = L.decompose(zeta, 5);
    SpanSolver solver((int)L.monomial_basis(5).size());
    for (auto& b : h5.boundary_coords) solver.add(b);
    CHECK(!solver.contains(zc));
}

TEST_CASE("bracket of cycle representatives is a cycle") {
    DGL d = ladder_example(6);
    auto h = d.chain_homology(4);
    std::vector<LieElement> reps;
    for (auto& [n, hd] : h.by_degree)
        for (auto& r : hd.representatives) reps.push_back(r);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20 && reps.size() >= 2; ++trial) {
        const LieElement& u = reps[rng() % reps.size()];
        const LieElement& v = reps[rng() % reps.size()];
        if (d.lie().element_degree(u) + d.lie().element_degree(v) > 5) continue;
        CHECK(d.d(d.lie().bracket(u, v)).is_zero());
    }
}

TEST_CASE("half-smash with a point is the identity") {
    DGL dk = disk(3, "x", 6);
    DGL hs = half_smash(dk, ss_point(), 6);
    const GeneratorSet& g = hs.lie().generators();
    REQUIRE(g.size() == 2);
    CHECK(g.at(0).name == "(x,*)");
    CHECK(g.degree(0) == 3);
    CHECK(g.at(1).name == "(dx,*)");
    // d(x,*) = (dx,*)
    const LieElement& v = hs.differential_on(0);
    REQUIRE(v.terms.size() == 1);
    CHECK(hs.lie().mon_gen(v.terms.begin()->first) == 1);
    CHECK(v.terms.begin()->second == 1);
    CHECK(hs.validate().ok());
}

TEST_CASE("half-smash of a sphere with the interval") {
    for (int k = 1; k <= 3; ++k) {
        DGL hs = half_smash(sphere(k, "x", 8), ss_interval(), 8);
        const GeneratorSet& g = hs.lie().generators();
        REQUIRE(g.size() == 3);
        int edge = g.index_of("(x,01)");
        int v0 = g.index_of("(x,0)"), v1 = g.index_of("(x,1)");
        REQUIRE(edge >= 0);
        CHECK(g.degree(edge) == k + 1);
        const LieElement& dv = hs.differential_on(edge);
        // d_0 drops vertex 0, so the i = 0 term lands on (x,1)
        SparseVector expect;
        LieElement want;
        want.add_term(hs.lie().leaf(v1), Rational(k % 2 == 0 ? 1 : -1));
        want.add_term(hs.lie().leaf(v0), Rational((k + 1) % 2 == 0 ? 1 : -1));
        CHECK(dv == want);
        CHECK(hs.validate().ok());
    }
}

TEST_CASE("half-smash square-zero across fixtures") {
    std::vector<DGL> ds;
    ds.push_back(disk(3, "x", 8));
    ds.push_back(coproduct({sphere(2, "x", 8), disk(2, "u", 8)}, 8));
    std::vector<FiniteSimplicialSet> ks = {ss_point(), ss_interval(), ss_triangle()};
    for (auto& d : ds)
        for (auto& k : ks) CHECK(half_smash(d, k, 8).validate().ok());
}

TEST_CASE("half-smash rejects non-linear differentials") {
    DGL d = ladder_example(6);
    CHECK_THROWS_AS(half_smash(d, ss_interval(), 6), std::invalid_argument);
}

TEST_CASE("simplicial set validation") {
    CHECK_NOTHROW(ss_point().validate());
    CHECK_NOTHROW(ss_interval().validate());
    CHECK_NOTHROW(ss_triangle().validate());
    FiniteSimplicialSet broken = ss_triangle();
    broken.faces[2][0] = {0, 1, 2};  // wrong faces: identities fail
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("homology requires headroom below the cutoff") {
    CHECK_THROWS_AS(sphere(2, "x", 4).chain_homology(4), std::domain_error);
}
