#ifndef DGLA_DGL_HPP
#define DGLA_DGL_HPP

#include <map>
#include <string>
#include <vector>

#include "dgla/lie.hpp"
#include "dgla/linalg.hpp"

namespace dgla {

struct ValidationIssue {
    std::string generator;
    std::string residue;  // printed value of the nonzero d(d(g))
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

// chain homology of the underlying complex, per degree
struct HomologyDegree {
    int betti = 0;
    std::vector<LieElement> representatives;
    // boundary subspace in monomial-basis coordinates of the degree
    std::vector<SparseVector> boundary_coords;
};

struct HomologyPresentation {
    int through = 0;
    std::map<int, HomologyDegree> by_degree;
    GradedDimension betti_table() const;
};

// Free differential graded Lie algebra: a free graded Lie context plus a
// degree -1 differential given on generators and extended as a derivation.
class DGL {
public:
    explicit DGL(LieContextPtr ctx);
    // empty algebra on no generators (useful as a placeholder field)
    DGL();

    const LieContextPtr& context() const { return ctx_; }
    FreeLieContext& lie() const { return *ctx_; }

    // value must be homogeneous of degree |gen| - 1; degree-1 generators must
    // map to zero (targets in degree 0 are not allowed)
    void set_differential(int gen_index, const LieElement& value);
    void set_differential(const std::string& gen_name, const LieElement& value);
    const LieElement& differential_on(int gen_index) const;

    // derivation extension of the generator differential
    LieElement d(const LieElement& e) const;
    const LieElement& d_monomial(MonId m) const;

    // checks d(d(g)) = 0 for every generator whose value stays under cutoff
    ValidationReport validate() const;

    // underlying chain complex on the bracket-monomial basis, degrees
    // 1..through; labels are bracketing strings
    ChainComplexQ chain_complex(int through) const;
    HomologyPresentation chain_homology(int through) const;

    // true iff every differential value has bracket length >= 2
    bool is_minimal() const;

private:
    LieContextPtr ctx_;
    std::map<int, LieElement> d_gen_;
    mutable std::map<MonId, LieElement> d_memo_;
    static const LieElement zero_;
};

DGL sphere(int k, const std::string& name, int cutoff);
// disk of top degree k+1: generators name (degree k+1) and "d" + name
// (degree k) with the evident differential
DGL disk(int k_plus_1, const std::string& name, int cutoff);
DGL boundary_of_disk(const DGL& dk);
// free product: union of generators with the combined differential; throws on
// duplicate names
DGL coproduct(const std::vector<DGL>& ds, int cutoff);

// finite simplicial set presented by nondegenerate simplices; faces may point
// to a nondegenerate simplex one dimension down or be marked degenerate (-1)
struct FiniteSimplicialSet {
    // names[m][s] is the label of the s-th nondegenerate m-simplex
    std::vector<std::vector<std::string>> names;
    // faces[m][s][i] for m >= 1, 0 <= i <= m; -1 means the face is degenerate
    std::vector<std::vector<std::vector<int>>> faces;
    int basepoint = 0;  // index into dimension 0

    int top_dim() const { return (int)names.size() - 1; }
    void validate() const;  // shape checks + d_i d_j = d_{j-1} d_i where visible
};

FiniteSimplicialSet ss_point();
FiniteSimplicialSet ss_interval();  // standard 1-simplex
FiniteSimplicialSet ss_triangle();  // standard 2-simplex

// generators (x, a) of degree |x| + dim(a), with
//   d'(x,a) = sum_i (-1)^{i + |x|} (x, d_i a) + (dx, a),
// degenerate faces contributing zero. Requires the differential of d to be
// generator-linear so that (-, a) extends it; throws otherwise.
DGL half_smash(const DGL& d, const FiniteSimplicialSet& k, int cutoff);

}  // namespace dgla

#endif
