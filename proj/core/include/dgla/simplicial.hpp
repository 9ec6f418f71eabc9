#ifndef DGLA_SIMPLICIAL_HPP
#define DGLA_SIMPLICIAL_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "dgla/lie.hpp"
#include "dgla/linalg.hpp"

namespace dgla {

// (p,q)-shuffle: complementary increasing sequences partitioning 0..p+q-1
struct Shuffle {
    std::vector<int> sigma;  // p entries
    std::vector<int> tau;    // q entries
    int eps = 0;             // p + sum_i (sigma_i - i), 1-based i
    int sign = 1;            // (-1)^eps
};

// all C(p+q,p) shuffles, sigma in lexicographic order
std::vector<Shuffle> shuffles(int p, int q);

// extend a generator-image map as a morphism of graded Lie algebras
LieElement apply_on_generators(const FreeLieContext& from, FreeLieContext& to,
                               const std::map<int, LieElement>& images,
                               const LieElement& e);

// Simplicial graded Lie algebra, degreewise free, faces and degeneracies
// given on generators and extended as Lie morphisms.
class SimplicialGradedLie {
public:
    SimplicialGradedLie(int simplicial_cutoff, int degree_cutoff);

    int simplicial_cutoff() const { return simp_cutoff_; }
    int degree_cutoff() const { return deg_cutoff_; }

    FreeLieContext& level(int n) const;
    const LieContextPtr& level_ptr(int n) const;

    int add_generator(int n, const std::string& name, int degree);

    // face d_i: level n -> n-1 (1 <= n, 0 <= i <= n)
    void set_face(int n, int i, int gen_index, const LieElement& value);
    // degeneracy s_j: level n -> n+1 (0 <= j <= n, n+1 <= cutoff)
    void set_degeneracy(int n, int j, int gen_index, const LieElement& value);

    LieElement face(int n, int i, const LieElement& e) const;
    LieElement degeneracy(int n, int j, const LieElement& e) const;

    // simplicial identities on all generators; returns human-readable issues
    std::vector<std::string> validate() const;

    // Eilenberg-Zilber bracket of x in dimension p and y in dimension q:
    //   sum over (p,q)-shuffles of (-1)^{eps + p|y|} [s_tau x, s_sigma y]
    LieElement shuffle_bracket(int p, const LieElement& x, int q,
                               const LieElement& y) const;

private:
    int simp_cutoff_, deg_cutoff_;
    std::vector<LieContextPtr> levels_;
    struct GenMap {
        std::map<int, LieElement> images;
        mutable std::map<MonId, LieElement> memo;
    };
    // faces_[n][i], degens_[n][j]
    std::vector<std::vector<GenMap>> faces_;
    std::vector<std::vector<GenMap>> degens_;

    LieElement apply_map(const GenMap& gm, int from_level, int to_level,
                         const LieElement& e) const;
};

// Moore complex C_{p,s} = intersection of Ker d_i (1 <= i <= p) in internal
// degree s, with boundary (-1)^s d_0
struct MooreComplex {
    int simp_cutoff = 0, deg_cutoff = 0;
    // basis of C_{p,s} as elements of level p
    std::map<std::pair<int, int>, std::vector<LieElement>> basis;
    // boundary in those bases: (p,s) block maps C_{p,s} -> C_{p-1,s}
    std::map<std::pair<int, int>, SparseMatrix> d;

    int dim(int p, int s) const;
    SparseMatrix boundary(int p, int s) const;
    // chain complex in the simplicial direction at fixed internal degree
    ChainComplexQ complex_at_internal_degree(int s) const;
};

MooreComplex moore(const SimplicialGradedLie& a);

// d_k(shuffle_bracket(x,y)) = 0 for 1 <= k <= p+q-1 whenever x, y are Moore
// chains; throws std::invalid_argument when the precondition fails
bool verify_inner_faces_vanish(const SimplicialGradedLie& a, int p, const LieElement& x,
                               int q, const LieElement& y);

// boundary law of the last face against the shuffle bracket, for y of
// internal degree t:
//   d_{p+q}(<<x,y>>) = (-1)^{q+t} <<d_p x, y>> + <<x, d_q y>>
// (the sign on the first term is forced by the (-1)^{eps+pt} convention;
// verified exhaustively for p,q <= 2 and mixed parities)
bool last_face_rule(const SimplicialGradedLie& a, int p, const LieElement& x, int q,
                    const LieElement& y);

// ---- Dold-Kan for graded vector spaces ----

// bigraded chain complex: homological (simplicial) degree n, internal degree s
struct BigradedComplex {
    std::map<std::pair<int, int>, std::vector<std::string>> labels;
    // d[{n,s}]: (n,s) -> (n-1,s)
    std::map<std::pair<int, int>, SparseMatrix> d;

    int dim(int n, int s) const;
    SparseMatrix boundary(int n, int s) const;
    bool operator==(const BigradedComplex& o) const;
};

struct SimplicialGradedVS {
    int simp_cutoff = 0;
    std::map<std::pair<int, int>, std::vector<std::string>> basis;  // (n,s)
    // face maps (n,i,s): (n,s) -> (n-1,s); degeneracies (n,j,s): -> (n+1,s)
    std::map<std::tuple<int, int, int>, SparseMatrix> face;
    std::map<std::tuple<int, int, int>, SparseMatrix> degeneracy;

    SparseMatrix face_at(int n, int i, int s) const;
    SparseMatrix degeneracy_at(int n, int j, int s) const;
    std::vector<std::string> validate() const;  // simplicial identities
};

// Dold-Kan inverse: summands s_J x for J a subset of {0..n-1}; inner faces
// vanish on the core so that normalize_N(gamma(c)) == c on the nose
SimplicialGradedVS gamma(const BigradedComplex& c, int simp_cutoff);
BigradedComplex normalize_N(const SimplicialGradedVS& a);

// ---- face multi-indices ----

// I = (i_1 < ... < i_s), 1 <= i_1, encoding d_I = d_{i_1} o ... o d_{i_s}
struct FaceMultiIndex {
    std::vector<int> entries;
};

// canonical strictly-increasing composition-order form of a face composite,
// rewriting adjacent d_a o d_b with a >= b to d_b o d_{a+1}
std::vector<int> canonical_face_composite(std::vector<int> ops);

// the unique kappa with d_kappa o d_{I omit j} = d_I (j is 1-based)
std::pair<int, FaceMultiIndex> kappa(const FaceMultiIndex& I, int j);

}  // namespace dgla

#endif
