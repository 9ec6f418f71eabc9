#include "doctest.h"

#include <memory>

#include "dgla/expr.hpp"
#include "dgla/homology.hpp"

using namespace dgla;

namespace {

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

BigradedModel odd_abelian_model(int filtration_cutoff, int internal_cutoff) {
    GLPresentation p = presentation_of_free(GeneratorSet({{"a", 1}}),
                                            filtration_cutoff + internal_cutoff);
    p.relations.push_back(parse_lie_expr(*p.free_ctx, "[a,a]"));
    auto L = std::make_shared<PresentedLie>(std::move(p));
    return bigraded_model(L, filtration_cutoff, internal_cutoff);
}

int total_dim(const BigradedHomology& h) {
    int total = 0;
    for (auto& [st, d] : h.betti) total += d;
    return total;
}

}  // namespace

TEST_CASE("abelianization keeps one label per generator and the linear boundary") {
    GeneratorSet gens({{"a", 1}, {"b", 2}});
    auto ctx = std::make_shared<FreeLieContext>(std::move(gens), 6);
    DGL free_dgl(ctx);
    ChainComplexQ ab = abelianize(free_dgl, 5);
    CHECK(ab.dim(1) == 1);
    CHECK(ab.dim(2) == 1);
    CHECK(ab.dim(3) == 0);
    CHECK(ab.verify_square_zero());
    for (int t = 2; t <= 5; ++t) CHECK(rank(ab.boundary(t)) == 0);
}

TEST_CASE("abelianization of a disk is acyclic") {
    DGL d = disk(4, "x", 8);
    ChainComplexQ ab = abelianize(d, 5);
    CHECK(ab.dim(4) == 1);
    CHECK(ab.dim(3) == 1);
    CHECK(rank(ab.boundary(4)) == 1);
    CHECK(homology_at(ab, 3).betti == 0);
    CHECK(homology_at(ab, 4).betti == 0);
}

TEST_CASE("abelianization kills decomposable differential values") {
    DGL lad = ladder_example(6);
    ChainComplexQ ab = abelianize(lad, 5);
    CHECK(ab.dim(1) == 4);
    CHECK(ab.dim(4) == 4);
    // every differential value is a bracket of length three
    for (int t = 2; t <= 5; ++t) CHECK(rank(ab.boundary(t)) == 0);
}

TEST_CASE("bigraded homology of a free DGL is its generator span at level zero") {
    GeneratorSet gens({{"a", 2}, {"b", 3}});
    auto ctx = std::make_shared<FreeLieContext>(std::move(gens), 6);
    DGL d(ctx);
    BigradedHomology h = bigraded_homology(d, 1, 4);
    CHECK(h.dim(0, 2) == 1);
    CHECK(h.dim(0, 3) == 1);
    // brackets of generators are decomposable, hence invisible
    CHECK(h.dim(0, 4) == 0);
    for (int t = 1; t <= 4; ++t) CHECK(h.dim(1, t) == 0);
    CHECK(total_dim(h) == 2);
    CHECK(h.representatives.at({0, 2}).size() == 1);
}

TEST_CASE("bigraded homology of a disk vanishes everywhere") {
    DGL d = disk(4, "x", 8);
    BigradedHomology h = bigraded_homology(d, 1, 5);
    CHECK(h.betti.empty());
}

TEST_CASE("bigraded homology of the odd abelian model finds the relation class") {
    BigradedModel m = odd_abelian_model(2, 4);
    BigradedHomology h = bigraded_homology(m.model, 1, 3);
    CHECK(h.dim(0, 1) == 1);  // the target generator
    CHECK(h.dim(1, 2) == 1);  // the class of the relation killer
    CHECK(h.dim(0, 2) == 0);
    CHECK(h.dim(1, 1) == 0);
    CHECK(h.dim(1, 3) == 0);
}

TEST_CASE("canonical and minimal CW routes produce identical betti tables") {
    BigradedModel m = odd_abelian_model(2, 4);

    BigradedHomology cw = bigraded_homology(minimal_cw_resolution(m), 3);
    CHECK(cw.route == "minimal-cw");
    CHECK(cw.dim(0, 1) == 1);
    CHECK(cw.dim(1, 2) == 1);
    CHECK(cw.dim(2, 3) == 1);
    CHECK(total_dim(cw) == 3);

    CanonicalResolution w(m.model, 3, 4);
    BigradedHomology can = bigraded_homology(w, 2, 3);
    CHECK(can.route == "canonical");
    CHECK(can.betti == cw.betti);
}

TEST_CASE("cohomology via universal coefficients follows the stated convention") {
    DGL s = sphere(2, "a", 6);
    BigradedHomology h = bigraded_homology(s, 1, 4);
    GradedDimension m;
    m.dims[2] = 1;
    CohomologyTable c = cohomology(h, m, -3, 3);
    // H_{0,2} pairs with M_2 at t = 0
    CHECK(c.dim(0, 0) == 1);
    CHECK(c.dims.size() == 1);
    CHECK(c.convention == "H^s_t pairs H_{s,j} against coefficients M_{j+t}");

    GradedDimension zero;
    CHECK(cohomology(h, zero, -3, 3).dims.empty());
}

TEST_CASE("cohomology is additive in the coefficients") {
    BigradedModel bm = odd_abelian_model(2, 4);
    BigradedHomology h = bigraded_homology(bm.model, 1, 3);
    GradedDimension m1, m2, sum;
    m1.dims = {{1, 1}, {3, 2}};
    m2.dims = {{2, 1}};
    sum.dims = {{1, 1}, {2, 1}, {3, 2}};
    CohomologyTable c1 = cohomology(h, m1, -3, 3);
    CohomologyTable c2 = cohomology(h, m2, -3, 3);
    CohomologyTable cs = cohomology(h, sum, -3, 3);
    for (int s = 0; s <= 1; ++s)
        for (int t = -3; t <= 3; ++t)
            CHECK(cs.dim(s, t) == c1.dim(s, t) + c2.dim(s, t));
}

TEST_CASE("universal coefficients agrees with the direct dual computation") {
    BigradedModel bm = odd_abelian_model(2, 4);
    CanonicalResolution w(bm.model, 2, 4);
    BigradedHomology h = bigraded_homology(w, 1, 3);
    GradedDimension m;
    m.dims = {{1, 1}, {2, 1}, {3, 2}};
    CohomologyTable uct = cohomology(h, m, -3, 3);
    CohomologyTable direct = cohomology_direct(w, m, 1, 3, -3, 3);
    CHECK(uct.dims == direct.dims);
}

TEST_CASE("a coformal DGL compares as an equality with its coformal model") {
    DGL s = sphere(2, "a", 8);
    CoformalComparison cc = compare_with_coformal(s, 2, 5);
    CHECK(cc.monomorphism);
    CHECK(cc.notes.empty());
    CHECK(cc.input.betti == cc.coformal.betti);
    CHECK(cc.input.dim(0, 2) == 1);
    for (auto& [st, pairs] : cc.injection)
        CHECK((int)pairs.size() == cc.input.dim(st.first, st.second));
}

TEST_CASE("the four-cell ladder homology embeds into its coformal model's") {
    DGL lad = ladder_example(8);
    CoformalComparison cc = compare_with_coformal(lad, 2, 5);
    CHECK(cc.monomorphism);
    // dimension inequality at every computed spot, with a degreewise pairing
    for (auto& [st, d] : cc.input.betti) {
        CHECK(d <= cc.coformal.dim(st.first, st.second));
        CHECK((int)cc.injection.at(st).size() == d);
    }
    // the coformal model sees one class per model generator
    CHECK(cc.coformal.dim(0, 1) == 4);
    CHECK(cc.coformal.dim(1, 3) == 4);
    CHECK(cc.coformal.dim(2, 4) == 1);
    CHECK(cc.coformal.dim(0, 5) == 1);
    CHECK(total_dim(cc.coformal) == 10);
}
