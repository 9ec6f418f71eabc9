#ifndef DGLA_JACOBI_HPP
#define DGLA_JACOBI_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "dgla/dgl.hpp"
#include "dgla/lie.hpp"
#include "dgla/linalg.hpp"

namespace dgla {

// sign picked up when reordering a sequence of homogeneous slots
// (v_0, ..., v_{n-1}) into (v_{p[0]}, ..., v_{p[n-1]}): each inversion
// i < j with p[i] > p[j] contributes (-1)^{deg(v_{p[i]}) * deg(v_{p[j]}) + 1}.
// An adjacent swap of slots with degrees a, b therefore gives (-1)^{a*b + 1}.
int koszul_sign(const std::vector<int>& permutation,
                const std::vector<int>& degrees);

using NAId = int;

// exact homogeneous Q-linear combination of interned product trees
struct NAElement {
    std::map<NAId, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    NAElement& add_term(NAId m, const Rational& c);
    NAElement& operator+=(const NAElement& o);
    NAElement operator+(const NAElement& o) const;
    NAElement operator-(const NAElement& o) const;
    NAElement scaled(const Rational& c) const;
    bool operator==(const NAElement& o) const { return terms == o.terms; }
};

// in the quoted boundary formula for the quaternary bracketer, one ternary
// term repeats an argument where the surrounding symmetry suggests the
// missing fourth argument instead; both readings are implemented and the
// square-zero check selects between them
enum class Lambda4Variant {
    repeated_third_argument,   // third group reads l3([x,z], y, z)
    symmetric_arguments,       // third group reads l3([x,z], y, w)
};

// the variant that survives the square-zero gauntlet, used by default
inline constexpr Lambda4Variant kLambda4Default =
    Lambda4Variant::symmetric_arguments;

// Differential graded non-associative algebra, free as a graded-
// anticommutative (but non-associative) algebra on an ordered graded
// generator set: monomials are binary product trees over the generators,
// canonicalized node by node with the antisymmetry sign
// (u*v = (-1)^{|u||v|+1} v*u, so each node keeps its smaller factor on the
// left and a square u*u survives only in odd degree).  The differential is
// given on generators and extended as a derivation
// (d(x*y) = dx*y + (-1)^{|x|} x*dy); the orientation relation is stable
// under it.
//
// Generators carry a homological level: 0 for the underlying chain complex,
// 1 for ternary bracketers l3(...) whose boundary is the Jacobiator, 2 for
// quaternary bracketers l4(...).  Bracketer generators are interned on
// demand, one canonical representative per Koszul orbit of the argument
// tuple (arguments sorted by (degree, monomial string); a repeated adjacent
// argument of even degree forces the orbit to zero).
class DGNA {
public:
    explicit DGNA(int degree_cutoff);

    int degree_cutoff() const { return cutoff_; }
    int n_generators() const { return (int)gens_.size(); }
    const std::string& gen_name(int i) const { return gens_.at(i).name; }
    int gen_degree(int i) const { return gens_.at(i).degree; }
    int gen_level(int i) const { return gens_.at(i).level; }
    int add_generator(const std::string& name, int degree, int level = 0);

    // ---- monomials (interned canonical trees) ----
    NAId leaf(int gen_index);
    bool mon_is_leaf(NAId m) const { return mons_[m].gen >= 0; }
    int mon_gen(NAId m) const { return mons_[m].gen; }
    NAId mon_left(NAId m) const { return mons_[m].left; }
    NAId mon_right(NAId m) const { return mons_[m].right; }
    int mon_degree(NAId m) const { return mons_[m].degree; }
    std::string mon_string(NAId m) const;

    NAElement element_of_generator(int gen_index);
    int element_degree(const NAElement& e) const;  // 0 for zero element
    std::string to_string(const NAElement& e) const;

    // ---- products ----
    // bilinear canonicalized tree product
    NAElement product(const NAElement& a, const NAElement& b);
    // [a,b] = 1/2 (a*b + (-1)^{|a||b|+1} b*a); homogeneous arguments.  After
    // canonicalization the two summands coincide, so [a,b] = a*b exactly;
    // the two-summand form is kept as a self-check of the orientation sign.
    NAElement symmetrized(const NAElement& a, const NAElement& b);

    // ---- bracketer generators ----
    // multilinear with the Koszul sign action; interns the canonical orbit
    // representative (with its boundary) on first use.  The resulting
    // generator degree is the argument degree sum plus the level.
    NAElement lambda3(const NAElement& x, const NAElement& y,
                      const NAElement& z);
    NAElement lambda4(const NAElement& x, const NAElement& y,
                      const NAElement& z, const NAElement& w);

    Lambda4Variant lambda4_variant() const { return variant_; }
    void set_lambda4_variant(Lambda4Variant v) { variant_ = v; }

    // ---- differential ----
    // value must be homogeneous of degree |gen| - 1 (zero for degree-1 gens)
    void set_differential(int gen_index, const NAElement& value);
    void set_differential(const std::string& gen_name, const NAElement& value);
    const NAElement& differential_on(int gen_index) const;
    // derivation extension (non-const: interns the product trees it creates)
    NAElement d(const NAElement& e);
    const NAElement& d_monomial(NAId m);

    // d(d(g)) = 0 for every generator
    ValidationReport validate();

    // ---- bases / chain complex ----
    // all product trees of the degree, deterministic order: leaves first
    // (generator order), then nodes by left-degree, left index, right index
    const std::vector<NAId>& monomial_basis(int degree);
    SparseVector decompose(const NAElement& e, int degree);
    NAElement from_coordinates(const SparseVector& v, int degree);
    ChainComplexQ chain_complex(int through);

private:
    struct GenData {
        std::string name;
        int degree = 0;
        int level = 0;
    };
    struct MonData {
        int gen = -1;  // >= 0 for leaves
        NAId left = -1, right = -1;
        int degree = 0;
        std::string key;  // printed form; the fixed monomial order is
                          // (degree, key), independent of creation order
    };

    int cutoff_;
    Lambda4Variant variant_ = kLambda4Default;
    std::vector<GenData> gens_;
    std::map<std::string, int> gen_by_name_;
    std::vector<MonData> mons_;
    std::vector<NAId> leaf_ids_;
    std::map<std::pair<NAId, NAId>, NAId> node_ids_;
    std::map<int, NAElement> d_gen_;
    std::map<NAId, NAElement> d_memo_;
    std::map<int, std::vector<NAId>> basis_memo_;
    std::map<int, std::map<NAId, int>> basis_index_memo_;
    // canonical argument tuple -> bracketer generator index (-2: forced zero)
    std::map<std::vector<NAId>, int> lambda_gen_;
    static const NAElement zero_;

    // orientation-canonical product node; false if the node is forced to
    // zero (an even-degree square)
    NAId intern_node(NAId l, NAId r);
    bool canonical_node(NAId l, NAId r, NAId& out, int& sign);
    // (degree, key) order on monomials
    bool mon_less(NAId a, NAId b) const;
    // canonical orbit representative of a bracketer on monomial arguments;
    // returns the sign and fills the sorted tuple, or reports a forced zero
    bool canonical_tuple(std::vector<NAId>& args, int& sign) const;
    NAElement lambda_on_monomials(int level, std::vector<NAId> args);
    int ensure_lambda_generator(int level, const std::vector<NAId>& args);
};

// the Jacobiator [x,[y,z]] - [[x,y],z] + (-1)^{|y||z|} [[x,z],y] in the
// symmetrized product; homogeneous arguments, multilinear, no bracketer
// generators involved
NAElement lambda3_boundary(DGNA& a, const NAElement& x, const NAElement& y,
                           const NAElement& z);

// the eight-group boundary of the quaternary bracketer; mixes products with
// ternary bracketers and ternary bracketers on bracketed arguments, so l3
// generators are interned on demand
NAElement lambda4_boundary(DGNA& a, const NAElement& x, const NAElement& y,
                           const NAElement& z, const NAElement& w,
                           Lambda4Variant variant = kLambda4Default);

// true iff graded antisymmetry and the Jacobi identity hold on chain
// homology representatives modulo boundaries, for all argument tuples whose
// Jacobiator degree stays within `through`
bool is_jacobi(DGNA& a, int through);

// a free DGL included into the product world bracket-for-bracket stays a
// Lie algebra on the nose: the same identities checked on its homology
// representatives inside the Lie context
bool is_jacobi(const DGL& d, int through);

// free DGNA on the chain complex V (labels become generators, the boundary
// becomes the linear differential), with bracketer generators through the
// requested homological level:
//   level 0: no bracketers
//   level 1: ternary bracketers on all triples of level-0 monomials in range
//   level 2: additionally quaternary bracketers on all quadruples in range
// levels above 2 are rejected.  The result validates (square-zero checked
// on every generator).
DGNA free_jacobi_level(const ChainComplexQ& v, int level, int degree_cutoff);

}  // namespace dgla

#endif
