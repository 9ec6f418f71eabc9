#ifndef DGLA_HOMOLOGY_HPP
#define DGLA_HOMOLOGY_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dgla/dgl.hpp"
#include "dgla/linalg.hpp"
#include "dgla/models.hpp"
#include "dgla/resolution.hpp"

namespace dgla {

// abelianization of a free DGL: the quotient by the span of all brackets.
// One basis label per generator (degrees 1..through); the induced boundary
// keeps only the bracket-length-1 terms of the differential.
ChainComplexQ abelianize(const DGL& d, int through);

// bigraded homology of a DGL computed from a free simplicial resolution:
// abelianize each level, take homology in the internal direction first,
// then Moore homology of the induced simplicial vector space of classes.
// betti maps (s, t) -> dimension (s = simplicial/resolution degree, t =
// internal degree); zero entries are omitted.
struct BigradedHomology {
    int simp_through = 0;
    int internal_through = 0;
    std::string route;  // "canonical" or "minimal-cw"
    std::map<std::pair<int, int>, int> betti;
    std::map<std::pair<int, int>, std::vector<std::string>> representatives;
    std::vector<std::string> notes;

    int dim(int s, int t) const;
};

// route via the canonical resolution: the abelian basis of level n is the
// full set of bracket generators of W_n.  Needs simp_through + 1 levels and
// internal degree internal_through + 1 inside the resolution's cutoffs
// (Moore homology at s looks one level up, internal homology at t one
// degree up).
BigradedHomology bigraded_homology(CanonicalResolution& w, int simp_through,
                                   int internal_through);

// route via the minimal CW sub-object: the abelian basis of level n is the
// set of nondegenerate cells of dimension n together with independent
// degeneracy images of lower cells, with coefficients extracted modulo the
// span of subalgebra products.  Exact in every simplicial degree: above the
// top cell dimension the sub-object is purely degenerate.
BigradedHomology bigraded_homology(const MinimalCWResolution& cw,
                                   int internal_through);

// convenience: canonical resolution of d with matching cutoffs (requires
// d's context cutoff >= internal_through + 1)
BigradedHomology bigraded_homology(const DGL& d, int simp_through,
                                   int internal_through);

// cohomology with coefficients in a graded vector space with zero
// differential.  The pairing convention between the internal grading and
// the coefficient grading is fixed and printed with every table.
struct CohomologyTable {
    int simp_through = 0;
    std::map<std::pair<int, int>, int> dims;  // (s, t); zeros omitted
    std::string convention =
        "H^s_t pairs H_{s,j} against coefficients M_{j+t}";

    int dim(int s, int t) const;
};

// universal-coefficients route over Q: dim H^s_t = sum_j dim H_{s,j} *
// dim M_{j+t}, with j running over 1..h.internal_through
CohomologyTable cohomology(const BigradedHomology& h,
                           const GradedDimension& coefficients, int t_min,
                           int t_max);

// independent route: dualize the abelianized resolution levelwise, take
// cohomology classes in the internal direction, then the cohomology of the
// (unnormalized) alternating-sum cochain complex across levels, and pair
// with the coefficients last
CohomologyTable cohomology_direct(CanonicalResolution& w,
                                  const GradedDimension& coefficients,
                                  int simp_through, int internal_through,
                                  int t_min, int t_max);

// comparison of the bigraded homology of a DGL (computed from the minimal
// CW resolution of its filtered model) against that of its coformal model
// (the same generators with only the filtration-lowering-by-one part of the
// differential).  The coformal dimensions dominate at every (s, t); the
// certificate pairs representative labels degreewise.
struct CoformalComparison {
    BigradedHomology input;
    BigradedHomology coformal;
    bool monomorphism = true;
    // (s, t) -> pairs (input label, coformal label), one per input class
    std::map<std::pair<int, int>,
             std::vector<std::pair<std::string, std::string>>>
        injection;
    std::vector<std::string> notes;
};

CoformalComparison compare_with_coformal(const DGL& d, int filtration_cutoff,
                                         int internal_cutoff);

}  // namespace dgla

#endif
