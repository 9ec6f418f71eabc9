#include "dgla/dgl.hpp"

#include <stdexcept>

namespace dgla {

const LieElement DGL::zero_{};

GradedDimension HomologyPresentation::betti_table() const {
    GradedDimension g;
    for (auto& [n, h] : by_degree)
        if (h.betti != 0) g.dims[n] = h.betti;
    return g;
}

DGL::DGL(LieContextPtr ctx) : ctx_(std::move(ctx)) {
    if (!ctx_) throw std::invalid_argument("DGL needs a Lie context");
}

DGL::DGL() : DGL(std::make_shared<FreeLieContext>(GeneratorSet{}, 1)) {}

void DGL::set_differential(int gen_index, const LieElement& value) {
    const GeneratorSet& g = ctx_->generators();
    if (gen_index < 0 || gen_index >= g.size()) throw std::out_of_range("generator index");
    int gdeg = g.degree(gen_index);
    if (!value.is_zero()) {
        if (gdeg == 1)
            throw std::invalid_argument("differential of degree-1 generator '" +
                                        g.at(gen_index).name + "' must be zero");
        int vdeg = ctx_->element_degree(value);
        if (vdeg != gdeg - 1)
            throw std::invalid_argument("differential of '" + g.at(gen_index).name +
                                        "' has degree " + std::to_string(vdeg) +
                                        ", expected " + std::to_string(gdeg - 1));
    }
    d_gen_[gen_index] = value;
    d_memo_.clear();
}

void DGL::set_differential(const std::string& gen_name, const LieElement& value) {
    int idx = ctx_->generators().index_of(gen_name);
    if (idx < 0) throw std::invalid_argument("unknown generator '" + gen_name + "'");
    set_differential(idx, value);
}

const LieElement& DGL::differential_on(int gen_index) const {
    auto it = d_gen_.find(gen_index);
    return it == d_gen_.end() ? zero_ : it->second;
}

const LieElement& DGL::d_monomial(MonId m) const {
    auto hit = d_memo_.find(m);
    if (hit != d_memo_.end()) return hit->second;
    LieElement out;
    if (ctx_->mon_is_leaf(m)) {
        out = differential_on(ctx_->mon_gen(m));
    } else {
        // d[l,r] = [dl, r] + (-1)^{|l|} [l, dr]
        MonId l = ctx_->mon_left(m), r = ctx_->mon_right(m);
        LieElement le, re;
        le.add_term(l, Rational(1));
        re.add_term(r, Rational(1));
        out = ctx_->bracket(d_monomial(l), re);
        int s = ctx_->mon_degree(l) % 2 == 0 ? 1 : -1;
        out += ctx_->bracket(le, d_monomial(r)).scaled(Rational(s));
    }
    return d_memo_.emplace(m, std::move(out)).first->second;
}

LieElement DGL::d(const LieElement& e) const {
    LieElement out;
    for (auto& [m, c] : e.terms) out += d_monomial(m).scaled(c);
    return out;
}

ValidationReport DGL::validate() const {
    ValidationReport rep;
    const GeneratorSet& g = ctx_->generators();
    for (int i = 0; i < g.size(); ++i) {
        LieElement dd = d(differential_on(i));
        if (!dd.is_zero()) rep.issues.push_back({g.at(i).name, ctx_->to_string(dd)});
    }
    return rep;
}

ChainComplexQ DGL::chain_complex(int through) const {
    if (through > ctx_->degree_cutoff()) throw std::domain_error("degree exceeds cutoff");
    ChainComplexQ c;
    for (int n = 1; n <= through; ++n) {
        const auto& basis = ctx_->monomial_basis(n);
        auto& lab = c.labels[n];
        for (MonId m : basis) lab.push_back(ctx_->mon_string(m));
    }
    for (int n = 2; n <= through; ++n) {
        SparseMatrix mat(c.dim(n - 1), c.dim(n));
        const auto& basis = ctx_->monomial_basis(n);
        for (int j = 0; j < (int)basis.size(); ++j) {
            SparseVector col = ctx_->decompose(d_monomial(basis[j]), n - 1);
            for (auto& [i, v] : col) mat.set(i, j, v);
        }
        c.d[n] = std::move(mat);
    }
    return c;
}

HomologyPresentation DGL::chain_homology(int through) const {
    if (through > ctx_->degree_cutoff()) throw std::domain_error("degree exceeds cutoff");
    if (through == ctx_->degree_cutoff())
        throw std::domain_error("homology at degree " + std::to_string(through) +
                                " needs boundaries from degree " + std::to_string(through + 1) +
                                "; raise the cutoff");
    ChainComplexQ c = chain_complex(through + 1);
    HomologyPresentation out;
    out.through = through;
    for (int n = 1; n <= through; ++n) {
        HomologyAt h = homology_at(c, n);
        HomologyDegree hd;
        hd.betti = h.betti;
        for (auto& rep : h.representatives)
            hd.representatives.push_back(ctx_->from_coordinates(rep, n));
        SparseMatrix bnd = c.boundary(n + 1);
        for (int j = 0; j < bnd.cols(); ++j) {
            SparseVector col;
            for (int i = 0; i < bnd.rows(); ++i) {
                Rational v = bnd.get(i, j);
                if (v != 0) col[i] = v;
            }
            if (!sv_is_zero(col)) hd.boundary_coords.push_back(std::move(col));
        }
        out.by_degree[n] = std::move(hd);
    }
    return out;
}

bool DGL::is_minimal() const {
    for (auto& [g, v] : d_gen_)
        for (auto& [m, c] : v.terms)
            if (ctx_->mon_length(m) < 2) return false;
    return true;
}

// ---- constructions ----

DGL sphere(int k, const std::string& name, int cutoff) {
    if (k < 1) throw std::invalid_argument("sphere degree must be >= 1");
    auto ctx = std::make_shared<FreeLieContext>(GeneratorSet({{name, k}}), cutoff);
    return DGL(ctx);
}

DGL disk(int k_plus_1, const std::string& name, int cutoff) {
    if (k_plus_1 < 2) throw std::invalid_argument("disk top degree must be >= 2");
    auto ctx = std::make_shared<FreeLieContext>(
        GeneratorSet({{name, k_plus_1}, {"d" + name, k_plus_1 - 1}}), cutoff);
    DGL out(ctx);
    out.set_differential(0, out.lie().element_of_generator(1));
    return out;
}

DGL boundary_of_disk(const DGL& dk) {
    const GeneratorSet& g = dk.lie().generators();
    if (g.size() != 2)
        throw std::invalid_argument("boundary_of_disk expects a two-generator disk");
    const LieElement& v = dk.differential_on(0);
    if (v.terms.size() != 1 || !dk.lie().mon_is_leaf(v.terms.begin()->first) ||
        dk.lie().mon_gen(v.terms.begin()->first) != 1 || v.terms.begin()->second != 1)
        throw std::invalid_argument("boundary_of_disk expects d(top) = bottom generator");
    return sphere(g.degree(1), g.at(1).name, dk.lie().degree_cutoff());
}

namespace {

// rebuild a monomial tree in another context with re-indexed leaves
MonId transport_tree(const FreeLieContext& from, FreeLieContext& to, MonId m,
                     const std::vector<int>& gen_map) {
    if (from.mon_is_leaf(m)) return to.leaf(gen_map[from.mon_gen(m)]);
    MonId l = transport_tree(from, to, from.mon_left(m), gen_map);
    MonId r = transport_tree(from, to, from.mon_right(m), gen_map);
    return to.raw_node(l, r);
}

LieElement transport_elem(const FreeLieContext& from, FreeLieContext& to,
                          const LieElement& e, const std::vector<int>& gen_map) {
    LieElement out;
    for (auto& [m, c] : e.terms)
        out += to.normal_form(transport_tree(from, to, m, gen_map)).scaled(c);
    return out;
}

}  // namespace

DGL coproduct(const std::vector<DGL>& ds, int cutoff) {
    if (ds.empty()) throw std::invalid_argument("coproduct of nothing");
    GeneratorSet merged;
    std::vector<std::vector<int>> maps;
    for (auto& d : ds) {
        const GeneratorSet& g = d.lie().generators();
        std::vector<int> gm(g.size());
        for (int i = 0; i < g.size(); ++i) gm[i] = merged.add(g.at(i).name, g.degree(i));
        maps.push_back(std::move(gm));
    }
    auto ctx = std::make_shared<FreeLieContext>(std::move(merged), cutoff);
    DGL out(ctx);
    for (size_t k = 0; k < ds.size(); ++k) {
        const GeneratorSet& g = ds[k].lie().generators();
        for (int i = 0; i < g.size(); ++i) {
            const LieElement& v = ds[k].differential_on(i);
            if (!v.is_zero())
                out.set_differential(maps[k][i], transport_elem(ds[k].lie(), *ctx, v, maps[k]));
        }
    }
    return out;
}

// ---- finite simplicial sets & half-smash ----

void FiniteSimplicialSet::validate() const {
    if (names.empty()) throw std::invalid_argument("simplicial set has no simplices");
    if (faces.size() != names.size()) throw std::invalid_argument("faces/names size mismatch");
    if (names[0].empty()) throw std::invalid_argument("no 0-simplices");
    if (basepoint < 0 || basepoint >= (int)names[0].size())
        throw std::invalid_argument("basepoint out of range");
    for (int m = 0; m < (int)names.size(); ++m) {
        if (faces[m].size() != names[m].size())
            throw std::invalid_argument("face table size mismatch in dimension " +
                                        std::to_string(m));
        for (auto& fl : faces[m]) {
            if ((int)fl.size() != (m == 0 ? 0 : m + 1))
                throw std::invalid_argument("face list size mismatch in dimension " +
                                            std::to_string(m));
            for (int f : fl)
                if (f < -1 || (f >= 0 && m >= 1 && f >= (int)names[m - 1].size()))
                    throw std::invalid_argument("face index out of range");
        }
    }
    // d_i d_j = d_{j-1} d_i for i < j, checked where both composites stay
    // nondegenerate
    for (int m = 2; m < (int)names.size(); ++m) {
        for (int s = 0; s < (int)names[m].size(); ++s) {
            for (int j = 1; j <= m; ++j) {
                for (int i = 0; i < j; ++i) {
                    int dj = faces[m][s][j], di = faces[m][s][i];
                    if (dj < 0 || di < 0) continue;
                    int lhs = faces[m - 1][dj][i];
                    int rhs = faces[m - 1][di][j - 1];
                    if (lhs != rhs)
                        throw std::invalid_argument("simplicial identity fails at " +
                                                    names[m][s]);
                }
            }
        }
    }
}

FiniteSimplicialSet ss_point() {
    FiniteSimplicialSet k;
    k.names = {{"*"}};
    k.faces = {{{}}};
    return k;
}

FiniteSimplicialSet ss_interval() {
    FiniteSimplicialSet k;
    k.names = {{"0", "1"}, {"01"}};
    // d_i omits the i-th vertex
    k.faces = {{{}, {}}, {{1, 0}}};
    return k;
}

FiniteSimplicialSet ss_triangle() {
    FiniteSimplicialSet k;
    k.names = {{"0", "1", "2"}, {"01", "02", "12"}, {"012"}};
    k.faces = {{{}, {}, {}},
               {{1, 0}, {2, 0}, {2, 1}},
               {{2, 1, 0}}};  // d_0 = 12, d_1 = 02, d_2 = 01
    return k;
}

DGL half_smash(const DGL& d, const FiniteSimplicialSet& k, int cutoff) {
    k.validate();
    const GeneratorSet& g = d.lie().generators();
    // pair-generator index per (generator, dimension, simplex)
    std::vector<std::vector<std::vector<int>>> idx(
        g.size(), std::vector<std::vector<int>>(k.names.size()));
    GeneratorSet pairs;
    for (int x = 0; x < g.size(); ++x) {
        for (int m = 0; m < (int)k.names.size(); ++m) {
            idx[x][m].resize(k.names[m].size());
            for (int s = 0; s < (int)k.names[m].size(); ++s) {
                idx[x][m][s] = pairs.add("(" + g.at(x).name + "," + k.names[m][s] + ")",
                                         g.degree(x) + m);
            }
        }
    }
    auto ctx = std::make_shared<FreeLieContext>(std::move(pairs), cutoff);
    DGL out(ctx);
    for (int x = 0; x < g.size(); ++x) {
        const LieElement& dx = d.differential_on(x);
        for (auto& [mon, c] : dx.terms) {
            if (!d.lie().mon_is_leaf(mon))
                throw std::invalid_argument(
                    "half_smash needs a generator-linear differential; d(" + g.at(x).name +
                    ") contains the bracket " + d.lie().mon_string(mon));
        }
        for (int m = 0; m < (int)k.names.size(); ++m) {
            for (int s = 0; s < (int)k.names[m].size(); ++s) {
                LieElement v;
                for (int i = 0; i <= m && m >= 1; ++i) {
                    int f = k.faces[m][s][i];
                    if (f < 0) continue;  // degenerate face
                    int sign = (i + g.degree(x)) % 2 == 0 ? 1 : -1;
                    v.add_term(ctx->leaf(idx[x][m - 1][f]), Rational(sign));
                }
                for (auto& [mon, c] : dx.terms)
                    v.add_term(ctx->leaf(idx[d.lie().mon_gen(mon)][m][s]), c);
                if (!v.is_zero()) out.set_differential(idx[x][m][s], v);
            }
        }
    }
    return out;
}

}  // namespace dgla
