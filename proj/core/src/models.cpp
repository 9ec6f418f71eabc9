#include "dgla/models.hpp"

#include <algorithm>
#include <stdexcept>

#include "dgla/simplicial.hpp"  // apply_on_generators

namespace dgla {

namespace {

SparseVector unit_vector(int i) {
    SparseVector v;
    v[i] = 1;
    return v;
}

// restrict full-basis coordinates to a sublist of basis positions; throws if
// support leaks outside the sublist
SparseVector restrict_coords(const SparseVector& full, const std::map<int, int>& pos_of,
                             const std::string& what) {
    SparseVector out;
    for (auto& [i, c] : full) {
        auto it = pos_of.find(i);
        if (it == pos_of.end())
            throw std::logic_error("coordinate outside the expected subspace in " + what);
        out[it->second] = c;
    }
    return out;
}

}  // namespace

// ---- PresentedLie ----

GLPresentation presentation_of_free(GeneratorSet gens, int degree_cutoff) {
    GLPresentation p;
    p.free_ctx = std::make_shared<FreeLieContext>(std::move(gens), degree_cutoff);
    return p;
}

PresentedLie::PresentedLie(GLPresentation pres) : pres_(std::move(pres)) {
    if (!pres_.free_ctx) throw std::invalid_argument("presentation needs a free context");
    for (auto& r : pres_.relations) {
        if (r.is_zero()) continue;
        int d = -1;
        for (auto& [m, c] : r.terms) {
            int md = pres_.free_ctx->mon_degree(m);
            if (d < 0) d = md;
            if (md != d)
                throw std::invalid_argument("relations must be homogeneous: " +
                                            pres_.free_ctx->to_string(r));
        }
        if (d > pres_.free_ctx->degree_cutoff())
            notes_.push_back("cutoff-incomplete: relation " + pres_.free_ctx->to_string(r) +
                             " has degree " + std::to_string(d) + " beyond the cutoff");
    }
}

int PresentedLie::degree_cutoff() const { return pres_.free_ctx->degree_cutoff(); }

PresentedLie::DegreeData& PresentedLie::degree_data(int d) const {
    if (d < 1 || d > degree_cutoff()) throw std::out_of_range("degree outside cutoff");
    auto it = degs_.find(d);
    if (it != degs_.end()) return it->second;

    FreeLieContext& ctx = *pres_.free_ctx;
    auto& ideal_elems = ideal_elems_;
    int from = degs_.empty() ? 1 : degs_.rbegin()->first + 1;
    for (int dd = from; dd <= d; ++dd) {
        const auto& basis = ctx.monomial_basis(dd);
        DegreeData data{SpanSolver((int)basis.size()), {}, {}};
        std::vector<LieElement> candidates;
        for (auto& r : pres_.relations)
            if (!r.is_zero() && ctx.element_degree(r) == dd) candidates.push_back(r);
        for (int g = 0; g < ctx.generators().size(); ++g) {
            int gd = ctx.generators().degree(g);
            if (dd - gd < 1) continue;
            LieElement ge = ctx.element_of_generator(g);
            for (auto& e : ideal_elems[dd - gd]) candidates.push_back(ctx.bracket(ge, e));
        }
        for (auto& e : candidates)
            if (data.ideal.add(ctx.decompose(e, dd))) ideal_elems[dd].push_back(e);
        std::vector<int> piv = data.ideal.pivots();
        std::vector<bool> is_piv(basis.size(), false);
        for (int p : piv) is_piv[p] = true;
        for (int i = 0; i < (int)basis.size(); ++i) {
            if (is_piv[i]) continue;
            data.quot_index[basis[i]] = (int)data.quot_basis.size();
            data.quot_basis.push_back(basis[i]);
        }
        degs_.emplace(dd, std::move(data));
    }
    return degs_.at(d);
}

int PresentedLie::dim(int degree) const { return (int)degree_data(degree).quot_basis.size(); }

std::string PresentedLie::basis_label(int degree, int i) const {
    return pres_.free_ctx->mon_string(degree_data(degree).quot_basis.at(i));
}

SparseVector PresentedLie::project(const LieElement& e) const {
    if (e.is_zero()) return {};
    int d = pres_.free_ctx->element_degree(e);
    const DegreeData& data = degree_data(d);
    SparseVector res = data.ideal.residual(pres_.free_ctx->decompose(e, d));
    // residual is supported off the ideal pivots, i.e. on the quotient basis
    const auto& basis = pres_.free_ctx->monomial_basis(d);
    SparseVector out;
    for (auto& [i, c] : res) out[data.quot_index.at(basis[i])] = c;
    return out;
}

SparseVector PresentedLie::bracket(int d1, const SparseVector& a, int d2,
                                   const SparseVector& b) const {
    const DegreeData& da = degree_data(d1);
    const DegreeData& db = degree_data(d2);
    LieElement ea, eb;
    for (auto& [i, c] : a) ea.add_term(da.quot_basis.at(i), c);
    for (auto& [i, c] : b) eb.add_term(db.quot_basis.at(i), c);
    return project(pres_.free_ctx->bracket(ea, eb));
}

// ---- HomologyLie ----

HomologyLie::HomologyLie(const DGL& target, int degree_cutoff)
    : target_(target), cutoff_(degree_cutoff) {
    HomologyPresentation h = target_.chain_homology(cutoff_);
    for (int n = 1; n <= cutoff_; ++n) {
        auto& hd = h.by_degree[n];
        DegreeData dd{hd.representatives,
                      SpanSolver((int)target_.lie().monomial_basis(n).size()), 0};
        for (auto& b : hd.boundary_coords) dd.solver.add(b);
        // offset into solve() coefficients, which are indexed by insertion
        // order (dependent boundary vectors included)
        dd.n_boundaries = (int)hd.boundary_coords.size();
        for (auto& r : dd.reps) dd.solver.add(target_.lie().decompose(r, n));
        degs_.emplace(n, std::move(dd));
    }
}

int HomologyLie::dim(int degree) const {
    auto it = degs_.find(degree);
    if (it == degs_.end()) throw std::out_of_range("degree outside cutoff");
    return (int)it->second.reps.size();
}

std::string HomologyLie::basis_label(int degree, int i) const {
    return target_.lie().to_string(degs_.at(degree).reps.at(i));
}

LieElement HomologyLie::representative(int degree, const SparseVector& coords) const {
    const DegreeData& dd = degs_.at(degree);
    LieElement out;
    for (auto& [i, c] : coords) out += dd.reps.at(i).scaled(c);
    return out;
}

SparseVector HomologyLie::class_of(const LieElement& z, int degree) const {
    if (z.is_zero()) return {};
    const DegreeData& dd = degs_.at(degree);
    auto sol = dd.solver.solve(target_.lie().decompose(z, degree));
    if (!sol) throw std::invalid_argument("class_of: element is not a cycle");
    SparseVector out;
    for (int i = dd.n_boundaries; i < (int)sol->size(); ++i)
        if ((*sol)[i] != 0) out[i - dd.n_boundaries] = (*sol)[i];
    return out;
}

SparseVector HomologyLie::bracket(int d1, const SparseVector& a, int d2,
                                  const SparseVector& b) const {
    if (d1 + d2 > cutoff_) throw std::domain_error("bracket degree beyond homology cutoff");
    LieElement z = target_.lie().bracket(representative(d1, a), representative(d2, b));
    return class_of(z, d1 + d2);
}

// ---- BigradedModel ----

int BigradedModel::filtration_of(MonId m) const {
    const FreeLieContext& ctx = model.lie();
    int f = 0;
    for (int g : ctx.mon_word(m)) f += gens.at(g).filtration;
    return f;
}

namespace {

SparseVector structure_eval(const BigradedModel& b, MonId m) {
    const FreeLieContext& ctx = b.model.lie();
    if (ctx.mon_is_leaf(m)) {
        int g = ctx.mon_gen(m);
        if (b.gens.at(g).filtration > 0) return {};
        return b.structure_images.at(g);
    }
    SparseVector l = structure_eval(b, ctx.mon_left(m));
    if (l.empty()) return {};
    SparseVector r = structure_eval(b, ctx.mon_right(m));
    if (r.empty()) return {};
    return b.target->bracket(ctx.mon_degree(ctx.mon_left(m)), l,
                             ctx.mon_degree(ctx.mon_right(m)), r);
}

}  // namespace

SparseVector BigradedModel::structure_map(const LieElement& e) const {
    SparseVector out;
    for (auto& [m, c] : e.terms) out = sv_add(out, sv_scale(c, structure_eval(*this, m)));
    return out;
}

namespace {

// monomials of the given total degree and exact filtration, with their
// positions in the full monomial basis
struct FilteredBasis {
    std::vector<MonId> mons;
    std::map<int, int> pos_of_full;  // full-basis index -> position here
};

FilteredBasis filtered_basis(const BigradedModel& b, int total, int filtration) {
    FilteredBasis out;
    if (total < 1) return out;
    const auto& basis = b.model.lie().monomial_basis(total);
    for (int i = 0; i < (int)basis.size(); ++i) {
        if (b.filtration_of(basis[i]) == filtration) {
            out.pos_of_full[i] = (int)out.mons.size();
            out.mons.push_back(basis[i]);
        }
    }
    return out;
}

}  // namespace

BigradedModel bigraded_model(std::shared_ptr<const GradedLieAlgebra> target,
                             int filtration_cutoff, int internal_cutoff) {
    if (!target) throw std::invalid_argument("null target");
    if (internal_cutoff > target->degree_cutoff())
        throw std::domain_error("internal cutoff exceeds the target's degree cutoff");
    if (filtration_cutoff < 1) throw std::invalid_argument("filtration cutoff must be >= 1");

    int total_cutoff = filtration_cutoff + internal_cutoff;
    auto ctx = std::make_shared<FreeLieContext>(GeneratorSet{}, total_cutoff);
    BigradedModel b{DGL(ctx), {}, target, {}, filtration_cutoff, internal_cutoff, {}};

    auto adjoin = [&](int filtration, int internal) {
        // deterministic systematic names: filtration, internal degree, counter
        int j = 0;
        for (auto& g : b.gens)
            if (g.filtration == filtration && g.internal_degree == internal) ++j;
        std::string name = "x" + std::to_string(filtration) + "_" + std::to_string(internal) +
                           "_" + std::to_string(j);
        int gi = ctx->add_generator(name, filtration + internal);
        b.gens.push_back({gi, name, filtration, internal});
        return gi;
    };

    // filtration 0: minimal generator lift (basis of target mod decomposables)
    for (int k = 1; k <= internal_cutoff; ++k) {
        SpanSolver dec(target->dim(k));
        for (int d1 = 1; d1 < k; ++d1) {
            int d2 = k - d1;
            for (int i = 0; i < target->dim(d1); ++i)
                for (int jj = 0; jj < target->dim(d2); ++jj)
                    dec.add(target->bracket(d1, unit_vector(i), d2, unit_vector(jj)));
        }
        for (int i = 0; i < target->dim(k); ++i) {
            if (dec.add(unit_vector(i))) {
                int gi = adjoin(0, k);
                b.structure_images[gi] = unit_vector(i);
            }
        }
    }

    // stage n kills the homology of the stage-n construction at filtration n,
    // internal degree ascending so earlier adjunctions feed later boundaries
    for (int n = 0; n < filtration_cutoff; ++n) {
        for (int k = 1; k <= internal_cutoff; ++k) {
            FilteredBasis an = filtered_basis(b, n + k, n);
            if (an.mons.empty()) continue;
            std::vector<SparseVector> cycles;
            if (n == 0) {
                SparseMatrix rho(target->dim(k), (int)an.mons.size());
                for (int c = 0; c < (int)an.mons.size(); ++c) {
                    LieElement e;
                    e.add_term(an.mons[c], Rational(1));
                    for (auto& [r, v] : b.structure_map(e)) rho.set(r, c, v);
                }
                cycles = kernel_basis(rho);
            } else {
                FilteredBasis below = filtered_basis(b, n + k - 1, n - 1);
                SparseMatrix dmat((int)below.mons.size(), (int)an.mons.size());
                for (int c = 0; c < (int)an.mons.size(); ++c) {
                    const LieElement& dv = b.model.d_monomial(an.mons[c]);
                    if (dv.is_zero()) continue;
                    SparseVector full = b.model.lie().decompose(dv, n + k - 1);
                    for (auto& [r, v] :
                         restrict_coords(full, below.pos_of_full, "stage boundary"))
                        dmat.set(r, c, v);
                }
                cycles = kernel_basis(dmat);
            }
            SpanSolver bnd((int)an.mons.size());
            FilteredBasis above = filtered_basis(b, n + 1 + k, n + 1);
            for (MonId m : above.mons) {
                const LieElement& dv = b.model.d_monomial(m);
                if (dv.is_zero()) continue;
                SparseVector full = b.model.lie().decompose(dv, n + k);
                bnd.add(restrict_coords(full, an.pos_of_full, "boundary span"));
            }
            for (auto& z : cycles) {
                if (!bnd.add(z)) continue;
                LieElement rep;
                for (auto& [i, c] : z) rep.add_term(an.mons.at(i), c);
                int gi = adjoin(n + 1, k);
                b.model.set_differential(gi, rep);
            }
        }
    }

    for (auto& g : b.gens) {
        if (g.filtration == filtration_cutoff) {
            b.notes.push_back(
                "cutoff-incomplete: generators adjoined at the filtration cutoff; "
                "homology above filtration " +
                std::to_string(filtration_cutoff - 1) + " is not killed");
            break;
        }
    }
    return b;
}

std::vector<std::string> verify_bigraded(const BigradedModel& b) {
    std::vector<std::string> issues;
    ValidationReport vr = b.model.validate();
    for (auto& i : vr.issues)
        issues.push_back("d^2 != 0 at generator " + i.generator + ": " + i.residue);
    if (!b.model.is_minimal()) issues.push_back("differential is not decomposable");

    for (int k = 1; k <= b.internal_cutoff; ++k) {
        // exactness of ... -> A_{1,k} -> A_{0,k} -> target_k -> 0
        for (int n = 0; n < b.filtration_cutoff; ++n) {
            FilteredBasis an = filtered_basis(b, n + k, n);
            std::vector<SparseVector> cycles;
            if (n == 0) {
                SparseMatrix rho(b.target->dim(k), (int)an.mons.size());
                for (int c = 0; c < (int)an.mons.size(); ++c) {
                    LieElement e;
                    e.add_term(an.mons[c], Rational(1));
                    for (auto& [r, v] : b.structure_map(e)) rho.set(r, c, v);
                }
                if (rank(rho) != b.target->dim(k))
                    issues.push_back("structure map not surjective at internal degree " +
                                     std::to_string(k));
                cycles = kernel_basis(rho);
            } else {
                FilteredBasis below = filtered_basis(b, n + k - 1, n - 1);
                SparseMatrix dmat((int)below.mons.size(), (int)an.mons.size());
                for (int c = 0; c < (int)an.mons.size(); ++c) {
                    const LieElement& dv = b.model.d_monomial(an.mons[c]);
                    if (dv.is_zero()) continue;
                    for (auto& [r, v] : restrict_coords(b.model.lie().decompose(dv, n + k - 1),
                                                        below.pos_of_full, "verify"))
                        dmat.set(r, c, v);
                }
                cycles = kernel_basis(dmat);
            }
            SpanSolver bnd((int)an.mons.size());
            FilteredBasis above = filtered_basis(b, n + 1 + k, n + 1);
            for (MonId m : above.mons) {
                const LieElement& dv = b.model.d_monomial(m);
                if (dv.is_zero()) continue;
                bnd.add(restrict_coords(b.model.lie().decompose(dv, n + k), an.pos_of_full,
                                        "verify boundary"));
            }
            for (auto& z : cycles) {
                if (!bnd.contains(z)) {
                    issues.push_back("homology not killed at filtration " + std::to_string(n) +
                                     ", internal degree " + std::to_string(k));
                    break;
                }
            }
            // boundaries must be cycles (chain map / d^2 seen columnwise)
            // covered by the d^2 and structure-map checks above
        }
    }
    return issues;
}

DGL associated_dgl(const BigradedModel& b) { return b.model; }

// ---- FilteredModel ----

LieElement FilteredModel::perturbation(int gen_index, int r) const {
    const LieElement& dv = model.differential_on(gen_index);
    int nf = gens.at(gen_index).filtration;
    LieElement out;
    for (auto& [m, c] : dv.terms) {
        int f = 0;
        for (int g : model.lie().mon_word(m)) f += gens.at(g).filtration;
        if (f == nf - 1 - r) out.add_term(m, c);
    }
    return out;
}

bool FilteredModel::coformal() const {
    for (auto& g : gens)
        for (int r = 1; r < g.filtration; ++r)
            if (!perturbation(g.gen_index, r).is_zero()) return false;
    return true;
}

FilteredModel filtered_model(const DGL& target, int filtration_cutoff, int internal_cutoff) {
    int tcut = target.lie().degree_cutoff();
    if (internal_cutoff >= tcut)
        throw std::domain_error(
            "filtered model needs homology headroom: raise the target cutoff above the "
            "internal cutoff");
    if (filtration_cutoff + internal_cutoff > tcut)
        throw std::domain_error(
            "filtered model needs target cutoff >= filtration cutoff + internal cutoff");

    auto H = std::make_shared<HomologyLie>(target, internal_cutoff);
    BigradedModel b = bigraded_model(H, filtration_cutoff, internal_cutoff);

    FilteredModel f{DGL(b.model.context()), b.gens,          b.model,
                    target,                 {},              filtration_cutoff,
                    internal_cutoff,        b.notes};

    // process by total degree ascending, then filtration descending
    std::vector<int> order;
    for (auto& g : f.gens) order.push_back(g.gen_index);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        const BigradedGen& a = f.gens.at(x);
        const BigradedGen& c = f.gens.at(y);
        int ta = a.filtration + a.internal_degree, tc = c.filtration + c.internal_degree;
        if (ta != tc) return ta < tc;
        if (a.filtration != c.filtration) return a.filtration > c.filtration;
        return x < y;
    });

    FreeLieContext& mctx = f.model.lie();
    FreeLieContext& tctx = target.lie();
    auto psi_apply = [&](const LieElement& e) {
        return apply_on_generators(mctx, tctx, f.psi, e);
    };

    for (int gi : order) {
        const BigradedGen& g = f.gens.at(gi);
        int n = g.filtration, k = g.internal_degree, total = n + k;
        if (n == 0) {
            f.psi[gi] = H->representative(k, b.structure_images.at(gi));
            continue;
        }
        LieElement d0x = b.model.differential_on(gi);
        // unknowns: a correction xi in filtration <= n-2 of total degree
        // total-1, and a target element bt of degree total, subject to
        //   D(d0x + xi) = 0   and   psi(d0x + xi) = d(bt)
        std::vector<MonId> xi_basis;
        for (int m2 = 0; m2 <= n - 2; ++m2) {
            FilteredBasis fb = filtered_basis(b, total - 1, m2);
            xi_basis.insert(xi_basis.end(), fb.mons.begin(), fb.mons.end());
        }
        const auto& tb = tctx.monomial_basis(total);
        int dim_m2 = total - 2 >= 1 ? (int)mctx.monomial_basis(total - 2).size() : 0;
        int dim_t1 = (int)tctx.monomial_basis(total - 1).size();
        auto stack = [&](const LieElement& model_part, const LieElement& target_part) {
            SparseVector v;
            if (!model_part.is_zero())
                for (auto& [i, c] : mctx.decompose(model_part, total - 2)) v[i] = c;
            if (!target_part.is_zero())
                for (auto& [i, c] : tctx.decompose(target_part, total - 1)) v[dim_m2 + i] = c;
            return v;
        };
        // target columns first: the deterministic solver then only brings in
        // correction terms when the target alone cannot absorb the goal, so
        // coformal inputs get identically zero perturbations
        std::vector<SparseVector> columns;
        for (MonId m : tb) {
            LieElement e;
            e.add_term(m, Rational(1));
            columns.push_back(stack(LieElement{}, target.d(e).scaled(Rational(-1))));
        }
        for (MonId m : xi_basis) {
            LieElement e;
            e.add_term(m, Rational(1));
            columns.push_back(stack(f.model.d(e), psi_apply(e)));
        }
        SparseVector goal =
            stack(f.model.d(d0x).scaled(Rational(-1)), psi_apply(d0x).scaled(Rational(-1)));
        auto sol = in_span(goal, columns, dim_m2 + dim_t1);
        if (!sol)
            throw std::logic_error("filtered model solve failed at generator " + g.name +
                                   " (total degree " + std::to_string(total) + ")");
        LieElement xi, bt;
        for (int i = 0; i < (int)tb.size(); ++i)
            if ((*sol)[i] != 0) bt.add_term(tb[i], (*sol)[i]);
        for (int i = 0; i < (int)xi_basis.size(); ++i)
            if ((*sol)[tb.size() + i] != 0) xi.add_term(xi_basis[i], (*sol)[tb.size() + i]);
        f.model.set_differential(gi, d0x + xi);
        f.psi[gi] = bt;
    }
    return f;
}

ObstructionReport coformal_check(const DGL& target, int filtration_cutoff,
                                 int internal_cutoff) {
    FilteredModel f = filtered_model(target, filtration_cutoff, internal_cutoff);
    ObstructionReport rep;
    for (int r = 1; r < filtration_cutoff; ++r) {
        for (auto& g : f.gens) {
            LieElement p = f.perturbation(g.gen_index, r);
            if (p.is_zero()) continue;
            rep.coformal = false;
            if (!rep.first_order) rep.first_order = r + 1;
            rep.classes.push_back(
                {g.name, g.filtration, g.internal_degree, f.model.lie().to_string(p)});
        }
        if (!rep.coformal) break;  // only the first nonvanishing order is reported
    }
    return rep;
}

// ---- morphisms and minimal models ----

LieElement DGLMorphism::apply(const LieElement& e) const {
    return apply_on_generators(source.lie(), target.lie(), images, e);
}

bool DGLMorphism::is_chain_map() const {
    const GeneratorSet& gs = source.lie().generators();
    for (int g = 0; g < gs.size(); ++g) {
        if (!images.count(g)) return false;
        LieElement lhs = apply(source.differential_on(g));
        LieElement rhs = target.d(images.at(g));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

DGLMorphism identity_morphism(const DGL& d) {
    DGLMorphism m{d, d, {}};
    for (int g = 0; g < d.lie().generators().size(); ++g)
        m.images[g] = d.lie().element_of_generator(g);
    return m;
}

bool verify_quasi_iso(const DGLMorphism& m, int through) {
    if (!m.is_chain_map()) throw std::invalid_argument("morphism is not a chain map");
    HomologyPresentation hs = m.source.chain_homology(through);
    HomologyPresentation ht = m.target.chain_homology(through);
    for (int n = 1; n <= through; ++n) {
        const HomologyDegree& S = hs.by_degree[n];
        const HomologyDegree& T = ht.by_degree[n];
        if (S.betti != T.betti) return false;
        if (S.betti == 0) continue;
        SpanSolver sol((int)m.target.lie().monomial_basis(n).size());
        for (auto& bc : T.boundary_coords) sol.add(bc);
        int nb = (int)T.boundary_coords.size();  // solve() indexes by insertion order
        for (auto& r : T.representatives) sol.add(m.target.lie().decompose(r, n));
        SparseMatrix phi_star(T.betti, S.betti);
        for (int c = 0; c < S.betti; ++c) {
            LieElement img = m.apply(S.representatives[c]);
            if (img.is_zero()) continue;
            auto coeffs = sol.solve(m.target.lie().decompose(img, n));
            if (!coeffs) return false;  // image not a cycle: not even a chain map image
            for (int i = 0; i < T.betti; ++i)
                if ((*coeffs)[nb + i] != 0) phi_star.set(i, c, (*coeffs)[nb + i]);
        }
        if (rank(phi_star) != T.betti) return false;
    }
    return true;
}

MinimalModel minimal_model(const DGL& d, int through) {
    if (through >= d.lie().degree_cutoff())
        throw std::domain_error("minimal model needs homology headroom: raise the cutoff");
    if (d.validate().ok() && d.is_minimal())
        return {d, identity_morphism(d), {"input already minimal; returned as-is"}};

    auto ctx = std::make_shared<FreeLieContext>(GeneratorSet{}, d.lie().degree_cutoff());
    MinimalModel mm{DGL(ctx), DGLMorphism{DGL(ctx), d, {}}, {}};
    DGL& M = mm.model;
    std::map<int, LieElement>& images = mm.phi.images;
    FreeLieContext& tctx = d.lie();

    HomologyPresentation ht = d.chain_homology(through);
    int counter = 0;
    auto adjoin = [&](int degree) {
        std::string name = "m" + std::to_string(degree) + "_" + std::to_string(counter++);
        return ctx->add_generator(name, degree);
    };

    for (int n = 1; n <= through; ++n) {
        HomologyPresentation hm = M.chain_homology(n);
        const HomologyDegree& S = hm.by_degree[n];
        const HomologyDegree& T = ht.by_degree[n];

        // homology-class coordinates in the target at degree n
        SpanSolver tsol((int)tctx.monomial_basis(n).size());
        for (auto& bc : T.boundary_coords) tsol.add(bc);
        int nb = (int)T.boundary_coords.size();  // solve() indexes by insertion order
        for (auto& r : T.representatives) tsol.add(tctx.decompose(r, n));

        auto class_coords = [&](const LieElement& cycle) {
            SparseVector out;
            if (cycle.is_zero()) return out;
            auto coeffs = tsol.solve(tctx.decompose(cycle, n));
            if (!coeffs) throw std::logic_error("morphism image is not a cycle");
            for (int i = 0; i < T.betti; ++i)
                if ((*coeffs)[nb + i] != 0) out[i] = (*coeffs)[nb + i];
            return out;
        };

        // matrix of the induced map on homology
        std::vector<SparseVector> image_classes;
        for (auto& rep : S.representatives)
            image_classes.push_back(class_coords(apply_on_generators(*ctx, tctx, images, rep)));

        // surjectivity: adjoin a degree-n cycle generator per missed class
        SpanSolver hit(T.betti);
        for (auto& ic : image_classes) hit.add(ic);
        for (int i = 0; i < T.betti; ++i) {
            if (!hit.add(unit_vector(i))) continue;
            int gi = adjoin(n);
            images[gi] = T.representatives[i];
        }

        // injectivity: kill the kernel of the induced map with degree n+1
        // generators mapping to chosen primitives in the target
        if (!S.representatives.empty()) {
            SparseMatrix phi_star(T.betti, (int)image_classes.size());
            for (int c = 0; c < (int)image_classes.size(); ++c)
                for (auto& [r, v] : image_classes[c]) phi_star.set(r, c, v);
            for (auto& kv : kernel_basis(phi_star)) {
                LieElement z;
                for (auto& [i, c] : kv) z += S.representatives.at(i).scaled(c);
                LieElement fz = apply_on_generators(*ctx, tctx, images, z);
                // solve d(b) = phi(z) in the target
                LieElement b;
                if (!fz.is_zero()) {
                    const auto& tb = tctx.monomial_basis(n + 1);
                    std::vector<SparseVector> cols;
                    for (MonId mon : tb) {
                        LieElement e;
                        e.add_term(mon, Rational(1));
                        cols.push_back(tctx.decompose(d.d(e), n));
                    }
                    auto sol = in_span(tctx.decompose(fz, n), cols,
                                       (int)tctx.monomial_basis(n).size());
                    if (!sol)
                        throw std::logic_error(
                            "minimal model: kernel class image is not a boundary");
                    for (int i = 0; i < (int)tb.size(); ++i)
                        if ((*sol)[i] != 0) b.add_term(tb[i], (*sol)[i]);
                }
                int gi = adjoin(n + 1);
                M.set_differential(gi, z);
                images[gi] = b;
            }
        }
    }
    mm.phi.source = M;
    return mm;
}

}  // namespace dgla
