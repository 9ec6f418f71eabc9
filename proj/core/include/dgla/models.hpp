#ifndef DGLA_MODELS_HPP
#define DGLA_MODELS_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgla/dgl.hpp"
#include "dgla/lie.hpp"
#include "dgla/linalg.hpp"

namespace dgla {

// ---- graded Lie algebra targets ----

// generators-and-relations presentation; relations are homogeneous elements
// of the free algebra on the generators
struct GLPresentation {
    LieContextPtr free_ctx;
    std::vector<LieElement> relations;
};

GLPresentation presentation_of_free(GeneratorSet gens, int degree_cutoff);

// coordinate-level view of a finite-type graded Lie algebra; degrees
// 1..degree_cutoff, each with a deterministic ordered basis
class GradedLieAlgebra {
public:
    virtual ~GradedLieAlgebra() = default;
    virtual int degree_cutoff() const = 0;
    virtual int dim(int degree) const = 0;
    virtual std::string basis_label(int degree, int i) const = 0;
    // bracket of coordinate vectors, result in degree d1 + d2 coordinates
    virtual SparseVector bracket(int d1, const SparseVector& a, int d2,
                                 const SparseVector& b) const = 0;
};

// quotient of a free graded Lie algebra by the ideal its relations generate
class PresentedLie : public GradedLieAlgebra {
public:
    explicit PresentedLie(GLPresentation pres);

    int degree_cutoff() const override;
    int dim(int degree) const override;
    std::string basis_label(int degree, int i) const override;
    SparseVector bracket(int d1, const SparseVector& a, int d2,
                         const SparseVector& b) const override;

    // class of a free-algebra element, in quotient coordinates
    SparseVector project(const LieElement& e) const;
    // relations whose degree exceeds the cutoff cannot be applied
    const std::vector<std::string>& cutoff_notes() const { return notes_; }

private:
    GLPresentation pres_;
    struct DegreeData {
        SpanSolver ideal;               // over monomial-basis coordinates
        std::vector<MonId> quot_basis;  // non-pivot monomials, basis order
        std::map<MonId, int> quot_index;
    };
    mutable std::map<int, DegreeData> degs_;
    // independent ideal elements per degree, for closure under generator
    // brackets when filling degs_ on demand
    mutable std::map<int, std::vector<LieElement>> ideal_elems_;
    std::vector<std::string> notes_;

    DegreeData& degree_data(int d) const;
};

// chain homology of a free DGL viewed as a graded Lie algebra, with the
// bracket computed on cycle representatives
class HomologyLie : public GradedLieAlgebra {
public:
    // needs degree_cutoff < target's context cutoff (boundary headroom)
    HomologyLie(const DGL& target, int degree_cutoff);

    int degree_cutoff() const override { return cutoff_; }
    int dim(int degree) const override;
    std::string basis_label(int degree, int i) const override;
    SparseVector bracket(int d1, const SparseVector& a, int d2,
                         const SparseVector& b) const override;

    // cycle in the target realizing the coordinate vector
    LieElement representative(int degree, const SparseVector& coords) const;
    // homology class of a cycle; throws if z is not a cycle
    SparseVector class_of(const LieElement& z, int degree) const;

private:
    DGL target_;
    int cutoff_;
    struct DegreeData {
        std::vector<LieElement> reps;
        SpanSolver solver;  // boundaries first, then representatives
        int n_boundaries = 0;
    };
    std::map<int, DegreeData> degs_;
};

// ---- bigraded and filtered models ----

struct BigradedGen {
    int gen_index = 0;  // index in the model context
    std::string name;
    int filtration = 0;
    int internal_degree = 0;  // total degree = filtration + internal
};

// free bigraded model: generators adjoined stage by stage so that the
// structure map to the target induces an isomorphism in homology; the
// differential lowers filtration by exactly one and is decomposable
struct BigradedModel {
    DGL model;  // total-degree DGL (degree = filtration + internal)
    std::vector<BigradedGen> gens;
    std::shared_ptr<const GradedLieAlgebra> target;
    // filtration-0 generator index -> class in target coordinates
    std::map<int, SparseVector> structure_images;
    int filtration_cutoff = 0;
    int internal_cutoff = 0;
    std::vector<std::string> notes;  // cutoff-incompleteness reports

    int filtration_of(MonId m) const;
    // structure map on a total-degree-homogeneous element; lands in target
    // coordinates of the same degree (monomials touching filtration >= 1
    // generators map to zero)
    SparseVector structure_map(const LieElement& e) const;
};

BigradedModel bigraded_model(std::shared_ptr<const GradedLieAlgebra> target,
                             int filtration_cutoff, int internal_cutoff);

// independent re-check: d^2 = 0, decomposability, and column-wise exactness
// (H_0 of every internal-degree column is the target, higher H vanish)
std::vector<std::string> verify_bigraded(const BigradedModel& b);

DGL associated_dgl(const BigradedModel& b);

// perturbed model of a DGL: same generators as the bigraded model of its
// homology, differential D = d0 + d1 + ... with dr lowering filtration by r+1
struct FilteredModel {
    DGL model;  // differential = full D
    std::vector<BigradedGen> gens;
    DGL bigraded;  // same context, differential = d0 only
    DGL target;
    std::map<int, LieElement> psi;  // generator images in the target
    int filtration_cutoff = 0;
    int internal_cutoff = 0;
    std::vector<std::string> notes;

    // component of D(gen) lowering filtration by r+1 (r = 0 gives d0's value)
    LieElement perturbation(int gen_index, int r) const;
    bool coformal() const;  // all r >= 1 components vanish
};

// requires target context cutoff >= filtration_cutoff + internal_cutoff and
// > internal_cutoff (homology headroom); throws std::domain_error otherwise
FilteredModel filtered_model(const DGL& target, int filtration_cutoff,
                             int internal_cutoff);

struct ObstructionClass {
    std::string generator;
    int filtration = 0;
    int internal_degree = 0;
    std::string component;  // printed perturbation value
};

struct ObstructionReport {
    bool coformal = true;
    std::optional<int> first_order;  // n0 >= 2, absent when coformal
    std::vector<ObstructionClass> classes;
    // recorded convention: first nonzero perturbation d_r gives n0 = r + 1
    std::string convention =
        "n0 = r + 1 for the least r >= 1 with a nonzero perturbation "
        "component d_r";
};

ObstructionReport coformal_check(const DGL& target, int filtration_cutoff,
                                 int internal_cutoff);

// ---- morphisms and minimal models ----

struct DGLMorphism {
    DGL source, target;
    std::map<int, LieElement> images;  // source generator -> target element

    LieElement apply(const LieElement& e) const;
    bool is_chain_map() const;  // checked on generators within cutoffs
};

DGLMorphism identity_morphism(const DGL& d);

// true iff the induced map on chain homology is an isomorphism in every
// degree 1..through; throws std::invalid_argument on non-chain-map input
bool verify_quasi_iso(const DGLMorphism& m, int through);

struct MinimalModel {
    DGL model;
    DGLMorphism phi;  // quasi-isomorphism model -> input
    std::vector<std::string> notes;
};

// free DGL with decomposable differential quasi-isomorphic to d, built by
// generator adjunction through the given total degree (needs through + 1
// within d's cutoff); a DGL that is already minimal is returned as-is
MinimalModel minimal_model(const DGL& d, int through);

}  // namespace dgla

#endif
