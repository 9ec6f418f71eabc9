#ifndef DGLA_RESOLUTION_HPP
#define DGLA_RESOLUTION_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dgla/dgl.hpp"
#include "dgla/lie.hpp"
#include "dgla/models.hpp"
#include "dgla/simplicial.hpp"

namespace dgla {

// one bracket generator <m> of a resolution level; its payload is a basis
// monomial of the previous level (level 0: of the resolved DGL itself)
struct BracketGenerator {
    MonId payload = 0;
    bool sphere = false;  // payload is a cycle (recomputed, never trusted)
    std::string name;
};

// free DGL on one bracket generator <m> per basis monomial m of b through the
// cutoff, with d<m> = <d_B m> extended by linearity of < >; non-cycle payloads
// give disk pairs (<m>, <d_B m>), cycle payloads give spheres
struct ComonadF {
    DGL base;
    DGL algebra;
    std::vector<BracketGenerator> gens;

    // counit <m> -> m, extended as a morphism of Lie algebras
    LieElement counit(const LieElement& e) const;
    // the linear bracketing map b -> F(b)
    LieElement bracketize(const LieElement& e) const;
};

ComonadF comonad_F(const DGL& b, int degree_cutoff);

// Canonical free simplicial DGL resolution W_n = F^{n+1}(B).  Faces omit a
// pair of brackets (d_0<m> = m, d_i<m> = <d_{i-1} m>), degeneracies repeat one
// (s_0<m> = <<m>>, s_j<m> = <s_{j-1} m>), and the differential is d<m> = <dm>.
// Generators are created lazily: a generator's faces and differential are
// registered at creation (they only reach downward), degeneracy images on
// demand.  materialize_all() forces one generator per basis monomial of the
// previous level, which the Moore-complex checks need.
class CanonicalResolution {
public:
    CanonicalResolution(const DGL& b, int simplicial_cutoff, int degree_cutoff);

    const DGL& resolved() const { return base_; }
    int simplicial_cutoff() const { return simp_.simplicial_cutoff(); }
    int degree_cutoff() const { return simp_.degree_cutoff(); }

    const SimplicialGradedLie& simplicial() const { return simp_; }
    const DGL& level_dgl(int n) const;
    const std::vector<BracketGenerator>& generators(int n) const;

    // the linear bracketing map: an element of level n-1 (n >= 1; n == 0: of
    // the resolved DGL) into the generator span of level n
    LieElement bracketize(int n, const LieElement& e);
    // augmentation of level 0 down to the resolved DGL
    LieElement counit(const LieElement& e);

    LieElement face(int n, int i, const LieElement& e);
    LieElement degeneracy(int n, int j, const LieElement& e);
    LieElement differential(int n, const LieElement& e) const;
    LieElement shuffle_bracket(int p, const LieElement& x, int q, const LieElement& y);

    // enumerate every generator of every level through the cutoffs
    void materialize_all();

    // simplicial identities, d^2 = 0 per level, faces/degeneracies and the
    // augmentation commuting with the differentials; registers all pending
    // degeneracy images first
    std::vector<std::string> validate();

private:
    DGL base_;
    SimplicialGradedLie simp_;
    std::vector<DGL> level_dgls_;
    std::vector<std::vector<BracketGenerator>> gens_;
    std::vector<std::map<MonId, int>> gen_of_payload_;
    std::map<int, LieElement> counit_images_;
    // degeneracy images already registered, per level: (j, generator)
    std::vector<std::set<std::pair<int, int>>> degen_done_;

    int ensure_generator(int n, MonId payload);
    void ensure_degeneracy(int n, int j, int gen_index);
    void ensure_degeneracies_of(int n, const LieElement& e, int up_to_dim);
    void materialize_degeneracies();
};

// the embedding theta of a bigraded or filtered model into the canonical
// resolution of its own DGL, together with the ladder elements x^(s):
//   theta(x) = <theta(d0 x)> recursively (brackets via the shuffle bracket),
//   x^(s) in level n-s for a filtration-n generator x, x^(n) ~ <x>,
// each verified to satisfy d_{n-s}(x^(s)) = dW(x^(s+1)) and d_i(x^(s)) = 0
// for 0 < i < n-s before being handed out
class ThetaEmbedding {
public:
    ThetaEmbedding(std::shared_ptr<CanonicalResolution> w, DGL model,
                   std::vector<BigradedGen> gens,
                   std::map<int, std::vector<LieElement>> components);

    CanonicalResolution& resolution() { return *w_; }
    const std::shared_ptr<CanonicalResolution>& resolution_ptr() const { return w_; }
    const std::vector<BigradedGen>& generators() const { return gens_; }
    const DGL& model() const { return model_; }

    // x^(s) for the given generator; zero when s exceeds its filtration
    const LieElement& ladder(int gen_index, int s);
    // theta(x) = x^(0)
    const LieElement& theta_of_generator(int gen_index);
    // multiplicative extension on a filtration-homogeneous element
    LieElement theta(const LieElement& e);

private:
    std::shared_ptr<CanonicalResolution> w_;
    DGL model_;
    std::vector<BigradedGen> gens_;
    // perturbation components of the model differential per generator,
    // component r lowering filtration by r + 1
    std::map<int, std::vector<LieElement>> components_;
    std::map<std::pair<int, int>, LieElement> ladders_;
    std::set<int> verified_;
    static const LieElement zero_;

    int filtration_of_monomial(MonId m) const;
    LieElement theta_monomial(MonId m);
    void compute_generator(int gen_index);
    void verify_generator(int gen_index);
};

ThetaEmbedding theta(const BigradedModel& m, std::shared_ptr<CanonicalResolution> w);
ThetaEmbedding theta(const FilteredModel& m, std::shared_ptr<CanonicalResolution> w);

// a nondegenerate cell of the minimal CW sub-object: the sphere on x^(0)
// (r = 0) or the disk pair (top cell with boundary x^(r)) for r >= 1
struct CWCell {
    int gen_index = 0;
    int r = 0;
    int dimension = 0;        // simplicial dimension of x^(r)
    int internal_degree = 0;  // its internal degree in the resolution
    bool sphere = false;
    LieElement element;
};

// the sub-simplicial DGL of the canonical resolution generated by the cells
// below under degeneracies only; the bijection model generator <-> sphere
// cell is recorded in sphere_of_generator
struct MinimalCWResolution {
    std::shared_ptr<CanonicalResolution> w;
    ThetaEmbedding embedding;
    std::vector<CWCell> cells;
    std::map<std::string, int> sphere_of_generator;  // generator name -> cell
    std::vector<std::string> notes;

    int nondegenerate_spheres_in(int dimension) const;
};

MinimalCWResolution minimal_cw_resolution(const BigradedModel& m);
MinimalCWResolution minimal_cw_resolution(const FilteredModel& m);

// levelwise chain homology of the resolution as a simplicial graded vector
// space (faces and degeneracies induced on homology classes); materializes
// the resolution; needs through < degree cutoff
SimplicialGradedVS homology_levelwise(CanonicalResolution& w, int through);

// Moore homology dimension of a simplicial graded vector space at simplicial
// degree n, internal degree s (n = 0: the coequalizer of d_0, d_1)
int moore_homology_dim(const SimplicialGradedVS& a, int n, int s);

}  // namespace dgla

#endif
