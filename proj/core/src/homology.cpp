#include "dgla/homology.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace dgla {

namespace {

// bracket-length-1 part of an element, over generator indices
SparseVector leaf_part(const FreeLieContext& ctx, const LieElement& e) {
    SparseVector out;
    for (auto& [m, c] : e.terms)
        if (ctx.mon_is_leaf(m)) out[ctx.mon_gen(m)] += c;
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

SparseMatrix transpose(const SparseMatrix& a) {
    SparseMatrix t(a.cols(), a.rows());
    for (int r = 0; r < a.rows(); ++r)
        for (auto& [c, v] : a.row(r)) t.set(c, r, v);
    return t;
}

std::vector<SparseVector> matrix_columns(const SparseMatrix& a) {
    std::vector<SparseVector> cols(a.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (auto& [c, v] : a.row(r)) cols[c][r] = v;
    return cols;
}

std::string format_combo(const std::vector<std::string>& labels, const SparseVector& v) {
    if (v.empty()) return "0";
    std::string out;
    for (auto& [i, c] : v) {
        if (out.empty()) {
            if (c == 1)
                out = labels.at(i);
            else if (c == -1)
                out = "-" + labels.at(i);
            else
                out = to_string(c) + "*" + labels.at(i);
        } else if (c == 1) {
            out += " + " + labels.at(i);
        } else if (c == -1) {
            out += " - " + labels.at(i);
        } else if (c > 0) {
            out += " + " + to_string(c) + "*" + labels.at(i);
        } else {
            out += " - " + to_string(Rational(-c)) + "*" + labels.at(i);
        }
    }
    return out;
}

// abelianized levels of a simplicial resolution: a chain complex per level
// (internal degrees 1..max_t) plus the induced face matrices per internal
// degree
struct AbLevels {
    std::vector<ChainComplexQ> level;
    std::map<std::tuple<int, int, int>, SparseMatrix> face;  // (n, i, t)
    int max_t = 0;
};

// canonical route: the abelian basis of level n is every bracket generator
// of W_n; boundary and faces keep only bracket-length-1 terms
AbLevels ab_canonical(CanonicalResolution& w, int levels, int internal_through) {
    if (levels > w.simplicial_cutoff())
        throw std::invalid_argument(
            "bigraded homology needs one simplicial level above the requested range");
    if (internal_through >= w.degree_cutoff())
        throw std::invalid_argument(
            "bigraded homology needs one internal degree above the requested range");
    w.materialize_all();

    AbLevels ab;
    ab.max_t = internal_through + 1;
    // per level: internal degree -> generator index -> basis position
    std::vector<std::map<int, std::map<int, int>>> pos(levels + 1);
    for (int n = 0; n <= levels; ++n) {
        const DGL& dgl = w.level_dgl(n);
        const GeneratorSet& gens = dgl.lie().generators();
        ChainComplexQ c;
        for (int i = 0; i < gens.size(); ++i) {
            int t = gens.degree(i);
            if (t > ab.max_t) continue;
            pos[n][t][i] = (int)c.labels[t].size();
            c.labels[t].push_back(gens.at(i).name);
        }
        for (int t = 2; t <= ab.max_t; ++t) {
            SparseMatrix m(c.dim(t - 1), c.dim(t));
            for (auto& [i, col] : pos[n][t])
                for (auto& [g, v] : leaf_part(dgl.lie(), dgl.differential_on(i)))
                    m.set(pos[n][t - 1].at(g), col, v);
            c.d[t] = std::move(m);
        }
        ab.level.push_back(std::move(c));
    }
    for (int n = 1; n <= levels; ++n) {
        FreeLieContext& ctx = w.level_dgl(n).lie();
        const FreeLieContext& prev = w.level_dgl(n - 1).lie();
        for (int i = 0; i <= n; ++i) {
            for (int t = 1; t <= ab.max_t; ++t) {
                SparseMatrix m(ab.level[n - 1].dim(t), ab.level[n].dim(t));
                for (auto& [gen, col] : pos[n][t]) {
                    LieElement img = w.face(n, i, ctx.element_of_generator(gen));
                    for (auto& [g, v] : leaf_part(prev, img))
                        m.set(pos[n - 1][t].at(g), col, v);
                }
                ab.face[{n, i, t}] = std::move(m);
            }
        }
    }
    return ab;
}

// minimal CW route: the abelian basis of level n is the set of
// nondegenerate cells of dimension n plus independent degeneracy images of
// lower basis elements; coordinates are extracted modulo the span of
// subalgebra products (left-normed brackets of the spanning set)
AbLevels ab_cw(const MinimalCWResolution& cw, int internal_through) {
    CanonicalResolution& w = *cw.w;
    const std::vector<BigradedGen>& gens = cw.embedding.generators();
    int simp = 0;
    for (auto& c : cw.cells) simp = std::max(simp, c.dimension);
    simp = std::min(simp, w.simplicial_cutoff());

    AbLevels ab;
    ab.max_t = std::min(internal_through + 1, w.degree_cutoff());

    struct SpanElem {
        std::string label;
        LieElement elem;
        int degree = 0;
    };

    // spanning sets: cells of the right dimension, then degeneracy images
    // (this pass creates all lazily-built resolution generators, so every
    // basis count taken afterwards is final)
    std::vector<std::vector<SpanElem>> span(simp + 1);
    for (int n = 0; n <= simp; ++n) {
        for (auto& c : cw.cells) {
            if (c.dimension != n) continue;
            std::string label = gens.at(c.gen_index).name;
            if (c.r > 0) label += "^(" + std::to_string(c.r) + ")";
            if (c.internal_degree <= ab.max_t)
                span[n].push_back({label, c.element, c.internal_degree});
            // a disk is the pair (top cell, its boundary); the boundary is
            // needed whenever its degree is in range, even for a top cell
            // just above the cap (it appears as a face image of lower cells)
            if (!c.sphere && c.internal_degree - 1 >= 1 &&
                c.internal_degree - 1 <= ab.max_t) {
                LieElement b = w.differential(n, c.element);
                if (!b.is_zero())
                    span[n].push_back({"d(" + label + ")", std::move(b),
                                       c.internal_degree - 1});
            }
        }
        for (int j = 0; n >= 1 && j <= n - 1; ++j)
            for (auto& g : span[n - 1])
                span[n].push_back({"s" + std::to_string(j) + "(" + g.label + ")",
                                   w.degeneracy(n - 1, j, g.elem), g.degree});
    }

    // subalgebra products per level: left-normed brackets of spanning
    // elements span all products of the generated Lie subalgebra
    std::vector<std::vector<std::pair<int, LieElement>>> products(simp + 1);
    for (int n = 0; n <= simp; ++n) {
        FreeLieContext& ctx = w.level_dgl(n).lie();
        std::vector<std::pair<int, LieElement>> cur;
        for (auto& g : span[n]) cur.push_back({g.degree, g.elem});
        while (!cur.empty()) {
            std::vector<std::pair<int, LieElement>> next;
            for (auto& g : span[n]) {
                for (auto& [pd, pe] : cur) {
                    int deg = g.degree + pd;
                    if (deg > ab.max_t) continue;
                    LieElement b = ctx.bracket(g.elem, pe);
                    if (!b.is_zero()) next.push_back({deg, std::move(b)});
                }
            }
            for (auto& p : next) products[n].push_back(p);
            cur = std::move(next);
        }
    }

    // boundary and face images, before any linear algebra
    std::vector<std::vector<LieElement>> d_img(simp + 1);
    std::vector<std::vector<std::vector<LieElement>>> f_img(simp + 1);
    for (int n = 0; n <= simp; ++n) {
        f_img[n].resize(n + 1);
        for (auto& g : span[n]) {
            d_img[n].push_back(w.differential(n, g.elem));
            for (int i = 0; i <= n && n >= 1; ++i)
                f_img[n][i].push_back(w.face(n, i, g.elem));
        }
    }

    // per (n, t): extraction solver (products first, then candidates) and
    // the surviving basis with its insertion slots
    struct Basis {
        SpanSolver solver{0};
        std::vector<int> member;  // indices into span[n]
        std::vector<int> slot;    // insertion slot in the solver
    };
    std::vector<std::map<int, Basis>> basis(simp + 1);
    ab.level.resize(simp + 1);
    for (int n = 0; n <= simp; ++n) {
        FreeLieContext& ctx = w.level_dgl(n).lie();
        for (int t = 1; t <= ab.max_t; ++t) {
            Basis b;
            b.solver = SpanSolver((int)ctx.monomial_basis(t).size());
            int slot = 0;
            for (auto& [pd, pe] : products[n]) {
                if (pd != t) continue;
                b.solver.add(ctx.decompose(pe, t));
                ++slot;
            }
            std::vector<std::string> labels;
            for (int k = 0; k < (int)span[n].size(); ++k) {
                if (span[n][k].degree != t) continue;
                bool indep = b.solver.add(ctx.decompose(span[n][k].elem, t));
                if (indep) {
                    b.member.push_back(k);
                    b.slot.push_back(slot);
                    labels.push_back(span[n][k].label);
                }
                ++slot;
            }
            if (!labels.empty()) ab.level[n].labels[t] = std::move(labels);
            basis[n][t] = std::move(b);
        }
    }

    // coordinates of an element of level n, degree t, over the surviving
    // basis, modulo products
    auto extract = [&](int n, int t, const LieElement& e) {
        SparseVector out;
        if (e.is_zero()) return out;
        const Basis& b = basis[n].at(t);
        auto sol = b.solver.solve(w.level_dgl(n).lie().decompose(e, t));
        if (!sol)
            throw std::logic_error(
                "CW abelianization: an image leaves the sub-object span at level " +
                std::to_string(n) + ", degree " + std::to_string(t));
        for (int k = 0; k < (int)b.member.size(); ++k) {
            Rational v = (*sol)[b.slot[k]];
            if (v != 0) out[k] = v;
        }
        return out;
    };

    for (int n = 0; n <= simp; ++n) {
        for (int t = 2; t <= ab.max_t; ++t) {
            const Basis& b = basis[n].at(t);
            SparseMatrix m(ab.level[n].dim(t - 1), ab.level[n].dim(t));
            for (int k = 0; k < (int)b.member.size(); ++k)
                for (auto& [row, v] : extract(n, t - 1, d_img[n][b.member[k]]))
                    m.set(row, k, v);
            ab.level[n].d[t] = std::move(m);
        }
        for (int i = 0; i <= n && n >= 1; ++i) {
            for (int t = 1; t <= ab.max_t; ++t) {
                const Basis& b = basis[n].at(t);
                SparseMatrix m(ab.level[n - 1].dim(t), ab.level[n].dim(t));
                for (int k = 0; k < (int)b.member.size(); ++k)
                    for (auto& [row, v] : extract(n - 1, t, f_img[n][i][b.member[k]]))
                        m.set(row, k, v);
                ab.face[{n, i, t}] = std::move(m);
            }
        }
    }
    return ab;
}

// internal homology classes at one (level, internal degree): cycle
// representatives plus a boundaries-first solver for class coordinates
struct ClassData {
    std::vector<SparseVector> reps;
    SpanSolver solver{0};
    int n_boundaries = 0;
};

// shared back-end: internal homology per level first, then Moore homology
// of the induced simplicial vector space of classes
BigradedHomology homology_of(const AbLevels& ab, int simp_through, int internal_through,
                             std::string route) {
    BigradedHomology out;
    out.simp_through = simp_through;
    out.internal_through = internal_through;
    out.route = std::move(route);

    int levels = (int)ab.level.size() - 1;
    std::vector<std::map<int, ClassData>> cls(levels + 1);
    SimplicialGradedVS classes;
    classes.simp_cutoff = levels;
    for (int n = 0; n <= levels; ++n) {
        for (int t = 1; t <= internal_through; ++t) {
            HomologyAt h = homology_at(ab.level[n], t);
            ClassData cd;
            cd.solver = SpanSolver(ab.level[n].dim(t));
            for (auto& col : matrix_columns(h.boundary_coords)) {
                cd.solver.add(col);
                ++cd.n_boundaries;
            }
            std::vector<std::string> labels;
            for (auto& rep : h.representatives) {
                cd.solver.add(rep);
                labels.push_back(format_combo(ab.level[n].labels.count(t)
                                                  ? ab.level[n].labels.at(t)
                                                  : std::vector<std::string>{},
                                              rep));
                cd.reps.push_back(rep);
            }
            classes.basis[{n, t}] = std::move(labels);
            cls[n][t] = std::move(cd);
        }
    }

    auto class_of = [&](int n, int t, const SparseVector& v) {
        const ClassData& cd = cls[n].at(t);
        SparseVector out_c;
        if (sv_is_zero(v)) return out_c;
        auto sol = cd.solver.solve(v);
        if (!sol) throw std::logic_error("face image of a homology class is not a cycle class");
        for (int k = 0; k < (int)cd.reps.size(); ++k) {
            Rational c = (*sol)[cd.n_boundaries + k];
            if (c != 0) out_c[k] = c;
        }
        return out_c;
    };

    for (int n = 1; n <= levels; ++n) {
        for (int i = 0; i <= n; ++i) {
            for (int t = 1; t <= internal_through; ++t) {
                const ClassData& cd = cls[n].at(t);
                SparseMatrix m((int)cls[n - 1].at(t).reps.size(), (int)cd.reps.size());
                auto fit = ab.face.find({n, i, t});
                for (int k = 0; k < (int)cd.reps.size() && fit != ab.face.end(); ++k) {
                    SparseVector img = mat_apply(fit->second, cd.reps[k]);
                    for (auto& [row, v] : class_of(n - 1, t, img)) m.set(row, k, v);
                }
                classes.face[{n, i, t}] = std::move(m);
            }
        }
    }

    BigradedComplex moore = normalize_N(classes);
    for (int t = 1; t <= internal_through; ++t) {
        ChainComplexQ c;
        for (int n = 0; n <= levels; ++n) {
            auto lit = moore.labels.find({n, t});
            if (lit != moore.labels.end()) c.labels[n] = lit->second;
            auto dit = moore.d.find({n, t});
            if (dit != moore.d.end()) c.d[n] = dit->second;
        }
        for (int s = 0; s <= simp_through; ++s) {
            HomologyAt h = homology_at(c, s);
            if (h.betti == 0) continue;
            out.betti[{s, t}] = h.betti;
            std::vector<std::string> labels;
            for (auto& rep : h.representatives)
                labels.push_back(format_combo(c.labels.count(s) ? c.labels.at(s)
                                                                : std::vector<std::string>{},
                                              rep));
            out.representatives[{s, t}] = std::move(labels);
        }
    }
    return out;
}

}  // namespace

int BigradedHomology::dim(int s, int t) const {
    auto it = betti.find({s, t});
    return it == betti.end() ? 0 : it->second;
}

int CohomologyTable::dim(int s, int t) const {
    auto it = dims.find({s, t});
    return it == dims.end() ? 0 : it->second;
}

ChainComplexQ abelianize(const DGL& d, int through) {
    const FreeLieContext& ctx = d.lie();
    const GeneratorSet& gens = ctx.generators();
    ChainComplexQ out;
    std::map<int, std::map<int, int>> pos;  // degree -> generator -> position
    for (int i = 0; i < gens.size(); ++i) {
        int t = gens.degree(i);
        if (t > through) continue;
        pos[t][i] = (int)out.labels[t].size();
        out.labels[t].push_back(gens.at(i).name);
    }
    for (int t = 2; t <= through; ++t) {
        SparseMatrix m(out.dim(t - 1), out.dim(t));
        for (auto& [i, col] : pos[t])
            for (auto& [g, v] : leaf_part(ctx, d.differential_on(i)))
                m.set(pos[t - 1].at(g), col, v);
        out.d[t] = std::move(m);
    }
    return out;
}

BigradedHomology bigraded_homology(CanonicalResolution& w, int simp_through,
                                   int internal_through) {
    AbLevels ab = ab_canonical(w, simp_through + 1, internal_through);
    return homology_of(ab, simp_through, internal_through, "canonical");
}

BigradedHomology bigraded_homology(const MinimalCWResolution& cw, int internal_through) {
    AbLevels ab = ab_cw(cw, internal_through);
    int simp = (int)ab.level.size() - 1;
    int max_t = std::min(internal_through, ab.max_t);
    BigradedHomology out = homology_of(ab, simp, max_t, "minimal-cw");
    for (auto& n : cw.notes) out.notes.push_back("CW resolution: " + n);
    if (max_t < internal_through)
        out.notes.push_back("internal range capped at " + std::to_string(max_t) +
                            " by the resolution degree cutoff");
    return out;
}

BigradedHomology bigraded_homology(const DGL& d, int simp_through, int internal_through) {
    CanonicalResolution w(d, simp_through + 1, internal_through + 1);
    return bigraded_homology(w, simp_through, internal_through);
}

CohomologyTable cohomology(const BigradedHomology& h, const GradedDimension& coefficients,
                           int t_min, int t_max) {
    CohomologyTable out;
    out.simp_through = h.simp_through;
    for (int s = 0; s <= h.simp_through; ++s) {
        for (int t = t_min; t <= t_max; ++t) {
            int dim = 0;
            for (int j = 1; j <= h.internal_through; ++j)
                dim += h.dim(s, j) * coefficients.at(j + t);
            if (dim != 0) out.dims[{s, t}] = dim;
        }
    }
    return out;
}

CohomologyTable cohomology_direct(CanonicalResolution& w, const GradedDimension& coefficients,
                                  int simp_through, int internal_through, int t_min,
                                  int t_max) {
    AbLevels ab = ab_canonical(w, simp_through + 1, internal_through);
    int levels = (int)ab.level.size() - 1;

    // dual pipeline: levelwise cohomology classes of the dualized internal
    // complex, then the unnormalized alternating-sum cochain complex across
    // levels; the coefficient pairing multiplies dimensions at the end
    std::map<std::pair<int, int>, int> h_dual;  // (s, j)
    for (int j = 1; j <= internal_through; ++j) {
        struct DualClassData {
            std::vector<SparseVector> reps;
            SpanSolver solver{0};
            std::vector<int> slot;
        };
        std::vector<DualClassData> cls(levels + 1);
        for (int n = 0; n <= levels; ++n) {
            int dim = ab.level[n].dim(j);
            DualClassData cd;
            cd.solver = SpanSolver(dim);
            int slot = 0;
            // coboundaries: image of the dual of d_j = row space of d_j
            SparseMatrix din = ab.level[n].boundary(j);
            for (int r = 0; r < din.rows(); ++r) {
                cd.solver.add(din.row(r));
                ++slot;
            }
            for (auto& z : kernel_basis(transpose(ab.level[n].boundary(j + 1)))) {
                if (cd.solver.add(z)) {
                    cd.reps.push_back(z);
                    cd.slot.push_back(slot);
                }
                ++slot;
            }
            cls[n] = std::move(cd);
        }
        // alternating sum of dual faces, induced on classes, level n -> n+1
        std::vector<SparseMatrix> coboundary(levels);
        for (int n = 0; n < levels; ++n) {
            SparseMatrix m((int)cls[n + 1].reps.size(), (int)cls[n].reps.size());
            for (int k = 0; k < (int)cls[n].reps.size(); ++k) {
                SparseVector img;
                for (int i = 0; i <= n + 1; ++i) {
                    auto fit = ab.face.find({n + 1, i, j});
                    if (fit == ab.face.end()) continue;
                    SparseVector part = mat_apply(transpose(fit->second), cls[n].reps[k]);
                    if (i % 2) part = sv_scale(Rational(-1), part);
                    img = sv_add(img, part);
                }
                if (sv_is_zero(img)) continue;
                auto sol = cls[n + 1].solver.solve(img);
                if (!sol)
                    throw std::logic_error(
                        "dual face image of a cohomology class is not a cocycle class");
                for (int r = 0; r < (int)cls[n + 1].reps.size(); ++r) {
                    Rational v = (*sol)[cls[n + 1].slot[r]];
                    if (v != 0) m.set(r, k, v);
                }
            }
            coboundary[n] = std::move(m);
        }
        for (int s = 0; s <= simp_through; ++s) {
            int dim = (int)cls[s].reps.size() - rank(coboundary[s]);
            if (s >= 1) dim -= rank(coboundary[s - 1]);
            if (dim != 0) h_dual[{s, j}] = dim;
        }
    }

    CohomologyTable out;
    out.simp_through = simp_through;
    for (int s = 0; s <= simp_through; ++s) {
        for (int t = t_min; t <= t_max; ++t) {
            int dim = 0;
            for (auto& [sj, d] : h_dual)
                if (sj.first == s) dim += d * coefficients.at(sj.second + t);
            if (dim != 0) out.dims[{s, t}] = dim;
        }
    }
    return out;
}

CoformalComparison compare_with_coformal(const DGL& d, int filtration_cutoff,
                                         int internal_cutoff) {
    FilteredModel f = filtered_model(d, filtration_cutoff, internal_cutoff);

    CoformalComparison out;
    MinimalCWResolution cw_in = minimal_cw_resolution(f);
    out.input = bigraded_homology(cw_in, internal_cutoff);

    // the coformal model: same generators, only the filtration-lowering-by-
    // one part of the differential
    BigradedModel coformal;
    coformal.model = f.bigraded;
    coformal.gens = f.gens;
    coformal.filtration_cutoff = f.filtration_cutoff;
    coformal.internal_cutoff = f.internal_cutoff;
    MinimalCWResolution cw_co = minimal_cw_resolution(coformal);
    out.coformal = bigraded_homology(cw_co, internal_cutoff);

    for (auto& [st, dim_in] : out.input.betti) {
        int dim_co = out.coformal.dim(st.first, st.second);
        if (dim_in > dim_co) {
            out.monomorphism = false;
            out.notes.push_back("dimension " + std::to_string(dim_in) + " at (s=" +
                                std::to_string(st.first) + ", t=" + std::to_string(st.second) +
                                ") exceeds the coformal dimension " + std::to_string(dim_co));
            continue;
        }
        std::vector<std::pair<std::string, std::string>> pairs;
        const std::vector<std::string>& in_labels = out.input.representatives.at(st);
        const std::vector<std::string>& co_labels = out.coformal.representatives.at(st);
        for (int k = 0; k < dim_in; ++k) pairs.push_back({in_labels[k], co_labels[k]});
        out.injection[st] = std::move(pairs);
    }
    return out;
}

}  // namespace dgla
