#include "dgla/resolution.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace dgla {

namespace {

LieElement single_term(MonId m) {
    LieElement e;
    e.add_term(m, Rational(1));
    return e;
}

}  // namespace

// ---- comonad F ----

LieElement ComonadF::counit(const LieElement& e) const {
    std::map<int, LieElement> images;
    for (int i = 0; i < (int)gens.size(); ++i) images[i] = single_term(gens[i].payload);
    return apply_on_generators(algebra.lie(), base.lie(), images, e);
}

LieElement ComonadF::bracketize(const LieElement& e) const {
    std::map<MonId, int> of_payload;
    for (int i = 0; i < (int)gens.size(); ++i) of_payload[gens[i].payload] = i;
    LieElement out;
    for (auto& [m, c] : e.terms) {
        auto it = of_payload.find(m);
        if (it == of_payload.end())
            throw std::logic_error("bracketing map hit a monomial without a generator: " +
                                   base.lie().mon_string(m));
        out += algebra.lie().element_of_generator(it->second).scaled(c);
    }
    return out;
}

ComonadF comonad_F(const DGL& b, int degree_cutoff) {
    if (degree_cutoff < 1 || degree_cutoff > b.lie().degree_cutoff())
        throw std::invalid_argument("comonad degree cutoff out of range");
    ComonadF f{b, DGL(std::make_shared<FreeLieContext>(GeneratorSet{}, degree_cutoff)), {}};
    for (int deg = 1; deg <= degree_cutoff; ++deg) {
        for (MonId m : b.lie().monomial_basis(deg)) {
            std::string name = "<" + b.lie().mon_string(m) + ">";
            f.algebra.lie().add_generator(name, deg);
            f.gens.push_back({m, false, name});
        }
    }
    for (int i = 0; i < (int)f.gens.size(); ++i) {
        LieElement dval = f.bracketize(b.d_monomial(f.gens[i].payload));
        f.gens[i].sphere = dval.is_zero();
        f.algebra.set_differential(i, dval);
    }
    return f;
}

// ---- canonical resolution ----

CanonicalResolution::CanonicalResolution(const DGL& b, int simplicial_cutoff,
                                         int degree_cutoff)
    : base_(b), simp_(simplicial_cutoff, degree_cutoff) {
    if (degree_cutoff < 1 || degree_cutoff > b.lie().degree_cutoff())
        throw std::invalid_argument("resolution degree cutoff out of range");
    for (int n = 0; n <= simplicial_cutoff; ++n) {
        level_dgls_.emplace_back(simp_.level_ptr(n));
        gens_.emplace_back();
        gen_of_payload_.emplace_back();
        degen_done_.emplace_back();
    }
}

const DGL& CanonicalResolution::level_dgl(int n) const {
    if (n < 0 || n > simplicial_cutoff()) throw std::out_of_range("simplicial dimension");
    return level_dgls_[n];
}

const std::vector<BracketGenerator>& CanonicalResolution::generators(int n) const {
    if (n < 0 || n > simplicial_cutoff()) throw std::out_of_range("simplicial dimension");
    return gens_[n];
}

int CanonicalResolution::ensure_generator(int n, MonId payload) {
    auto hit = gen_of_payload_[n].find(payload);
    if (hit != gen_of_payload_[n].end()) return hit->second;

    FreeLieContext& prev = n == 0 ? base_.lie() : simp_.level(n - 1);
    const DGL& prev_dgl = n == 0 ? base_ : level_dgls_[n - 1];
    int degree = prev.mon_degree(payload);
    std::string name = "<" + prev.mon_string(payload) + ">";
    int idx = simp_.add_generator(n, name, degree);
    gens_[n].push_back({payload, false, name});
    gen_of_payload_[n][payload] = idx;
    if (n == 0) counit_images_[idx] = single_term(payload);

    // differential: d<m> = <dm>.  Copy the memoized value first: bracketize
    // can create generators at level n - 1, and registering their
    // differentials clears the previous level's memo.
    LieElement dm = prev_dgl.d_monomial(payload);
    LieElement dval = bracketize(n, dm);
    gens_[n][idx].sphere = dval.is_zero();
    level_dgls_[n].set_differential(idx, dval);

    // faces: d_0 omits the outer pair, d_i re-brackets the (i-1)-th face of
    // the payload; these reach only downward, so register them eagerly
    if (n >= 1) {
        LieElement payload_elem = single_term(payload);
        simp_.set_face(n, 0, idx, payload_elem);
        for (int i = 1; i <= n; ++i) {
            LieElement f = n == 1 ? counit(payload_elem)
                                  : simp_.face(n - 1, i - 1, payload_elem);
            simp_.set_face(n, i, idx, bracketize(n - 1, f));
        }
    }
    return idx;
}

LieElement CanonicalResolution::bracketize(int n, const LieElement& e) {
    if (n < 0 || n > simplicial_cutoff()) throw std::out_of_range("simplicial dimension");
    LieElement out;
    for (auto& [m, c] : e.terms) {
        int idx = ensure_generator(n, m);
        out += simp_.level(n).element_of_generator(idx).scaled(c);
    }
    return out;
}

LieElement CanonicalResolution::counit(const LieElement& e) {
    return apply_on_generators(simp_.level(0), base_.lie(), counit_images_, e);
}

LieElement CanonicalResolution::face(int n, int i, const LieElement& e) {
    return simp_.face(n, i, e);
}

void CanonicalResolution::ensure_degeneracy(int n, int j, int gen_index) {
    if (!degen_done_[n].insert({j, gen_index}).second) return;
    MonId payload = gens_[n][gen_index].payload;
    if (j == 0) {
        // repeat the outermost pair: <<m>> is a generator on the length-one
        // monomial of <m> itself
        MonId leafm = simp_.level(n).leaf(gen_index);
        int idx = ensure_generator(n + 1, leafm);
        simp_.set_degeneracy(n, 0, gen_index,
                             simp_.level(n + 1).element_of_generator(idx));
        return;
    }
    LieElement payload_elem = single_term(payload);
    // s_j<m> = <s_{j-1} m>: make sure the payload's leaves have their images
    for (int g : simp_.level(n - 1).mon_word(payload)) ensure_degeneracy(n - 1, j - 1, g);
    LieElement s = simp_.degeneracy(n - 1, j - 1, payload_elem);
    simp_.set_degeneracy(n, j, gen_index, bracketize(n + 1, s));
}

LieElement CanonicalResolution::degeneracy(int n, int j, const LieElement& e) {
    if (n < 0 || n + 1 > simplicial_cutoff() || j < 0 || j > n)
        throw std::out_of_range("degeneracy index");
    for (auto& [m, c] : e.terms)
        for (int g : simp_.level(n).mon_word(m)) ensure_degeneracy(n, j, g);
    return simp_.degeneracy(n, j, e);
}

void CanonicalResolution::ensure_degeneracies_of(int n, const LieElement& e, int up_to_dim) {
    if (n >= up_to_dim || e.is_zero()) return;
    for (int j = 0; j <= n; ++j) ensure_degeneracies_of(n + 1, degeneracy(n, j, e), up_to_dim);
}

LieElement CanonicalResolution::differential(int n, const LieElement& e) const {
    return level_dgl(n).d(e);
}

LieElement CanonicalResolution::shuffle_bracket(int p, const LieElement& x, int q,
                                                const LieElement& y) {
    ensure_degeneracies_of(p, x, p + q);
    ensure_degeneracies_of(q, y, p + q);
    return simp_.shuffle_bracket(p, x, q, y);
}

void CanonicalResolution::materialize_all() {
    for (int deg = 1; deg <= degree_cutoff(); ++deg)
        for (MonId m : std::vector<MonId>(base_.lie().monomial_basis(deg)))
            ensure_generator(0, m);
    for (int n = 1; n <= simplicial_cutoff(); ++n) {
        // the previous level is complete, so nothing below grows here
        for (int deg = 1; deg <= degree_cutoff(); ++deg)
            for (MonId m : std::vector<MonId>(simp_.level(n - 1).monomial_basis(deg)))
                ensure_generator(n, m);
    }
}

void CanonicalResolution::materialize_degeneracies() {
    bool grew = true;
    while (grew) {
        grew = false;
        for (int n = 0; n + 1 <= simplicial_cutoff(); ++n) {
            for (int gi = 0; gi < (int)gens_[n].size(); ++gi) {
                for (int j = 0; j <= n; ++j) {
                    if (degen_done_[n].count({j, gi})) continue;
                    ensure_degeneracy(n, j, gi);
                    grew = true;
                }
            }
        }
    }
}

std::vector<std::string> CanonicalResolution::validate() {
    materialize_degeneracies();
    std::vector<std::string> issues = simp_.validate();
    for (int n = 0; n <= simplicial_cutoff(); ++n) {
        for (auto& issue : level_dgls_[n].validate().issues)
            issues.push_back("level " + std::to_string(n) + ": d^2 != 0 on " +
                             issue.generator + " (" + issue.residue + ")");
        for (int gi = 0; gi < (int)gens_[n].size(); ++gi) {
            LieElement e = simp_.level(n).element_of_generator(gi);
            LieElement de = level_dgls_[n].d(e);
            if (n >= 1) {
                for (int i = 0; i <= n; ++i)
                    if (!(face(n, i, de) == level_dgls_[n - 1].d(face(n, i, e))))
                        issues.push_back("level " + std::to_string(n) + ": d" +
                                         std::to_string(i) + " is not a chain map on " +
                                         gens_[n][gi].name);
            } else {
                if (!(counit(de) == base_.d(counit(e))))
                    issues.push_back("augmentation is not a chain map on " +
                                     gens_[0][gi].name);
            }
        }
    }
    return issues;
}

// ---- theta and ladders ----

const LieElement ThetaEmbedding::zero_{};

ThetaEmbedding::ThetaEmbedding(std::shared_ptr<CanonicalResolution> w, DGL model,
                               std::vector<BigradedGen> gens,
                               std::map<int, std::vector<LieElement>> components)
    : w_(std::move(w)),
      model_(std::move(model)),
      gens_(std::move(gens)),
      components_(std::move(components)) {
    if (!w_ || w_->resolved().context() != model_.context())
        throw std::invalid_argument("resolution does not resolve the model's DGL");
}

int ThetaEmbedding::filtration_of_monomial(MonId m) const {
    int f = 0;
    for (int g : model_.lie().mon_word(m)) f += gens_.at(g).filtration;
    return f;
}

namespace {

// all (r_1..r_k) with 0 <= r_j <= caps[j] and sum = total
void enumerate_assignments(const std::vector<int>& caps, int total, std::vector<int>& cur,
                           size_t pos, const std::function<void()>& fn) {
    if (pos == caps.size()) {
        if (total == 0) fn();
        return;
    }
    int hi = std::min(caps[pos], total);
    for (int r = 0; r <= hi; ++r) {
        cur[pos] = r;
        enumerate_assignments(caps, total - r, cur, pos + 1, fn);
    }
    cur[pos] = 0;
}

}  // namespace

const LieElement& ThetaEmbedding::ladder(int gen_index, int s) {
    if (gen_index < 0 || gen_index >= (int)gens_.size())
        throw std::out_of_range("generator index");
    if (s < 0) throw std::out_of_range("ladder level");
    if (s > gens_[gen_index].filtration) return zero_;
    compute_generator(gen_index);
    return ladders_.at({gen_index, s});
}

const LieElement& ThetaEmbedding::theta_of_generator(int gen_index) {
    return ladder(gen_index, 0);
}

LieElement ThetaEmbedding::theta_monomial(MonId m) {
    FreeLieContext& ctx = model_.lie();
    if (ctx.mon_is_leaf(m)) return theta_of_generator(ctx.mon_gen(m));
    MonId lm = ctx.mon_left(m), rm = ctx.mon_right(m);
    LieElement l = theta_monomial(lm);
    LieElement r = theta_monomial(rm);
    int lf = filtration_of_monomial(lm), rf = filtration_of_monomial(rm);
    int lt = ctx.mon_degree(lm) - lf, rt = ctx.mon_degree(rm) - rf;
    // the sign (-1)^{lf*rt + lt*rf} makes theta a chain map for the zeroth
    // face: d_0 of a shuffle bracket is a derivation only up to internal-
    // degree/dimension signs, while the model differential uses total-degree
    // signs; this twist converts one convention into the other
    LieElement out = w_->shuffle_bracket(lf, l, rf, r);
    if ((lf * rt + lt * rf) % 2) out = out.scaled(Rational(-1));
    return out;
}

LieElement ThetaEmbedding::theta(const LieElement& e) {
    LieElement out;
    int filt = -1;
    for (auto& [m, c] : e.terms) {
        int f = filtration_of_monomial(m);
        if (filt < 0) filt = f;
        if (f != filt)
            throw std::invalid_argument("theta needs a filtration-homogeneous element");
        out += theta_monomial(m).scaled(c);
    }
    return out;
}

void ThetaEmbedding::compute_generator(int gen_index) {
    if (verified_.count(gen_index)) return;
    FreeLieContext& ctx = model_.lie();
    int n = gens_[gen_index].filtration;

    // top of the ladder: x^(n) = <x> in level 0
    ladders_[{gen_index, n}] = w_->bracketize(0, ctx.element_of_generator(gen_index));

    const std::vector<LieElement>& comps = components_.at(gen_index);
    for (int s = n - 1; s >= 0; --s) {
        LieElement u;  // element of level n - 1 - s
        for (int r = 0; r < (int)comps.size() && r <= s; ++r) {
            for (auto& [m, c] : comps[r].terms) {
                std::vector<int> leaves = ctx.mon_word(m);
                std::vector<int> caps(leaves.size());
                for (size_t j = 0; j < leaves.size(); ++j)
                    caps[j] = gens_.at(leaves[j]).filtration;
                std::vector<int> cur(leaves.size(), 0);
                enumerate_assignments(caps, s - r, cur, 0, [&]() {
                    // build the bracketing with each leaf y_j replaced by its
                    // ladder element y_j^(r_j); every bracket node carries the
                    // sign (-1)^{dim(left) * internal(right) +
                    //             internal(left) * dim(right)}
                    // with the raised dimensions and internal degrees, the
                    // same twist as in theta_monomial (a raise trades one
                    // simplicial dimension for one internal degree)
                    size_t pos = 0;
                    // {element, simplicial dimension, internal degree}
                    std::function<std::tuple<LieElement, int, int>(MonId)> build =
                        [&](MonId t) -> std::tuple<LieElement, int, int> {
                        if (ctx.mon_is_leaf(t)) {
                            int leaf = ctx.mon_gen(t);
                            int rj = cur[pos++];
                            return {ladder(leaf, rj), gens_.at(leaf).filtration - rj,
                                    gens_.at(leaf).internal_degree + rj};
                        }
                        auto [le, ld, lt] = build(ctx.mon_left(t));
                        auto [re, rd, rt] = build(ctx.mon_right(t));
                        LieElement b = w_->shuffle_bracket(ld, le, rd, re);
                        if ((ld * rt + lt * rd) % 2) b = b.scaled(Rational(-1));
                        return {b, ld + rd, lt + rt};
                    };
                    auto [elem, dim, tint] = build(m);
                    (void)dim;
                    (void)tint;
                    u += elem.scaled(c);
                });
            }
        }
        ladders_[{gen_index, s}] = w_->bracketize(n - s, u);
    }
    verify_generator(gen_index);
    verified_.insert(gen_index);
}

void ThetaEmbedding::verify_generator(int gen_index) {
    int n = gens_[gen_index].filtration;
    const std::string& name = gens_[gen_index].name;
    for (int s = 0; s <= n; ++s) {
        const LieElement& xs = ladders_.at({gen_index, s});
        int dim = n - s;
        for (int i = 1; i < dim; ++i)
            if (!w_->face(dim, i, xs).is_zero())
                throw std::runtime_error("ladder verification failed for generator '" +
                                         name + "': face " + std::to_string(i) +
                                         " of level " + std::to_string(s) +
                                         " does not vanish");
        if (s < n) {
            LieElement last = w_->face(dim, dim, xs);
            LieElement rhs = w_->differential(dim - 1, ladders_.at({gen_index, s + 1}));
            if (!(last == rhs))
                throw std::runtime_error("ladder verification failed for generator '" +
                                         name + "' at face index " + std::to_string(dim) +
                                         " (level " + std::to_string(s) + ")");
        }
    }
}

ThetaEmbedding theta(const BigradedModel& m, std::shared_ptr<CanonicalResolution> w) {
    std::map<int, std::vector<LieElement>> components;
    for (auto& g : m.gens) components[g.gen_index] = {m.model.differential_on(g.gen_index)};
    return ThetaEmbedding(std::move(w), m.model, m.gens, std::move(components));
}

ThetaEmbedding theta(const FilteredModel& m, std::shared_ptr<CanonicalResolution> w) {
    std::map<int, std::vector<LieElement>> components;
    for (auto& g : m.gens) {
        std::vector<LieElement> comps;
        for (int r = 0; r < g.filtration; ++r)
            comps.push_back(m.perturbation(g.gen_index, r));
        components[g.gen_index] = std::move(comps);
    }
    return ThetaEmbedding(std::move(w), m.model, m.gens, std::move(components));
}

// ---- minimal CW resolutions ----

int MinimalCWResolution::nondegenerate_spheres_in(int dimension) const {
    int count = 0;
    for (auto& c : cells)
        if (c.sphere && c.dimension == dimension) ++count;
    return count;
}

namespace {

MinimalCWResolution assemble_cw(ThetaEmbedding emb, std::shared_ptr<CanonicalResolution> w) {
    MinimalCWResolution out{std::move(w), std::move(emb), {}, {}, {}};
    const std::vector<BigradedGen>& gens = out.embedding.generators();
    for (auto& g : gens) {
        int n = g.filtration;
        for (int r = 0; r <= n; ++r) {
            LieElement x = out.embedding.ladder(g.gen_index, r);
            int dim = n - r;
            int deg = out.w->simplicial().level(dim).element_degree(x);
            bool sphere = r == 0;
            if (sphere) {
                if (!out.w->differential(dim, x).is_zero())
                    out.notes.push_back("theta image of '" + g.name + "' is not a cycle");
                out.sphere_of_generator[g.name] = (int)out.cells.size();
            }
            out.cells.push_back({g.gen_index, r, dim, deg, sphere, std::move(x)});
        }
    }
    return out;
}

std::pair<int, int> cw_cutoffs(const std::vector<BigradedGen>& gens) {
    int simp = 0, deg = 1;
    for (auto& g : gens) {
        simp = std::max(simp, g.filtration);
        deg = std::max(deg, g.filtration + g.internal_degree);
    }
    return {simp, deg};
}

}  // namespace

MinimalCWResolution minimal_cw_resolution(const BigradedModel& m) {
    auto [simp, deg] = cw_cutoffs(m.gens);
    auto w = std::make_shared<CanonicalResolution>(m.model, simp, deg);
    return assemble_cw(theta(m, w), w);
}

MinimalCWResolution minimal_cw_resolution(const FilteredModel& m) {
    auto [simp, deg] = cw_cutoffs(m.gens);
    auto w = std::make_shared<CanonicalResolution>(m.model, simp, deg);
    return assemble_cw(theta(m, w), w);
}

// ---- levelwise homology ----

SimplicialGradedVS homology_levelwise(CanonicalResolution& w, int through) {
    if (through < 1 || through >= w.degree_cutoff())
        throw std::invalid_argument("levelwise homology needs 1 <= through < degree cutoff");
    w.materialize_all();

    struct DegData {
        std::vector<LieElement> reps;
        SpanSolver solver{0};
        int n_boundaries = 0;
    };
    int simp = w.simplicial_cutoff();
    std::vector<std::map<int, DegData>> levels(simp + 1);
    SimplicialGradedVS out;
    out.simp_cutoff = simp;

    for (int n = 0; n <= simp; ++n) {
        HomologyPresentation h = w.level_dgl(n).chain_homology(through);
        FreeLieContext& ctx = w.level_dgl(n).lie();
        for (auto& [s, hd] : h.by_degree) {
            DegData dd;
            dd.solver = SpanSolver((int)ctx.monomial_basis(s).size());
            for (auto& b : hd.boundary_coords) dd.solver.add(b);
            dd.n_boundaries = (int)hd.boundary_coords.size();
            std::vector<std::string> labels;
            for (int k = 0; k < (int)hd.representatives.size(); ++k) {
                dd.solver.add(ctx.decompose(hd.representatives[k], s));
                dd.reps.push_back(hd.representatives[k]);
                labels.push_back("h" + std::to_string(n) + "_" + std::to_string(s) + "_" +
                                 std::to_string(k));
            }
            out.basis[{n, s}] = std::move(labels);
            levels[n][s] = std::move(dd);
        }
    }

    // class of a cycle at (level, degree), as coordinates over representatives
    auto class_of = [&](int n, int s, const LieElement& z) {
        const DegData& dd = levels[n].at(s);
        SparseVector c = w.level_dgl(n).lie().decompose(z, s);
        auto sol = dd.solver.solve(c);
        if (!sol) throw std::logic_error("induced map image is not a cycle class");
        SparseVector out_c;
        // solve() indexes by insertion order, so representative k sits at
        // offset n_boundaries + k
        for (int k = 0; k < (int)dd.reps.size(); ++k) {
            Rational v = (*sol)[dd.n_boundaries + k];
            if (v != 0) out_c[k] = v;
        }
        return out_c;
    };

    for (int n = 0; n <= simp; ++n) {
        for (auto& [s, dd] : levels[n]) {
            if (n >= 1) {
                int rows = (int)levels[n - 1][s].reps.size();
                for (int i = 0; i <= n; ++i) {
                    SparseMatrix mat(rows, (int)dd.reps.size());
                    for (int k = 0; k < (int)dd.reps.size(); ++k) {
                        LieElement img = w.face(n, i, dd.reps[k]);
                        if (img.is_zero()) continue;
                        for (auto& [row, v] : class_of(n - 1, s, img)) mat.set(row, k, v);
                    }
                    out.face[{n, i, s}] = std::move(mat);
                }
            }
            if (n + 1 <= simp) {
                int rows = (int)levels[n + 1][s].reps.size();
                for (int j = 0; j <= n; ++j) {
                    SparseMatrix mat(rows, (int)dd.reps.size());
                    for (int k = 0; k < (int)dd.reps.size(); ++k) {
                        LieElement img = w.degeneracy(n, j, dd.reps[k]);
                        if (img.is_zero()) continue;
                        for (auto& [row, v] : class_of(n + 1, s, img)) mat.set(row, k, v);
                    }
                    out.degeneracy[{n, j, s}] = std::move(mat);
                }
            }
        }
    }
    return out;
}

int moore_homology_dim(const SimplicialGradedVS& a, int n, int s) {
    if (n < 0 || n > a.simp_cutoff) throw std::out_of_range("simplicial degree");
    BigradedComplex c = normalize_N(a);
    int cycles = c.dim(n, s) - rank(c.boundary(n, s));
    int boundaries = n + 1 <= a.simp_cutoff ? rank(c.boundary(n + 1, s)) : 0;
    return cycles - boundaries;
}

}  // namespace dgla
