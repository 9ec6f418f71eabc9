#include "dgla/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace dgla {

// ---- shuffles ----

std::vector<Shuffle> shuffles(int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("negative shuffle parameters");
    std::vector<Shuffle> out;
    std::vector<int> sigma;
    // enumerate p-subsets of {0..p+q-1} in lexicographic order
    std::function<void(int)> rec = [&](int next) {
        if ((int)sigma.size() == p) {
            Shuffle s;
            s.sigma = sigma;
            std::vector<bool> used(p + q, false);
            for (int v : sigma) used[v] = true;
            for (int v = 0; v < p + q; ++v)
                if (!used[v]) s.tau.push_back(v);
            s.eps = p;
            for (int i = 0; i < p; ++i) s.eps += sigma[i] - (i + 1);
            s.sign = s.eps % 2 == 0 ? 1 : -1;
            out.push_back(std::move(s));
            return;
        }
        for (int v = next; v < p + q; ++v) {
            sigma.push_back(v);
            rec(v + 1);
            sigma.pop_back();
        }
    };
    rec(0);
    return out;
}

// ---- generator-image morphisms ----

namespace {

LieElement apply_images(const FreeLieContext& from, FreeLieContext& to,
                        const std::map<int, LieElement>& images,
                        std::map<MonId, LieElement>* memo, MonId m) {
    if (memo) {
        auto hit = memo->find(m);
        if (hit != memo->end()) return hit->second;
    }
    LieElement out;
    if (from.mon_is_leaf(m)) {
        auto it = images.find(from.mon_gen(m));
        if (it == images.end())
            throw std::logic_error("map undefined on generator '" +
                                   from.generators().at(from.mon_gen(m)).name + "'");
        out = it->second;
    } else {
        out = to.bracket(apply_images(from, to, images, memo, from.mon_left(m)),
                         apply_images(from, to, images, memo, from.mon_right(m)));
    }
    if (memo) memo->emplace(m, out);
    return out;
}

}  // namespace

LieElement apply_on_generators(const FreeLieContext& from, FreeLieContext& to,
                               const std::map<int, LieElement>& images,
                               const LieElement& e) {
    LieElement out;
    for (auto& [m, c] : e.terms)
        out += apply_images(from, to, images, nullptr, m).scaled(c);
    return out;
}

// ---- SimplicialGradedLie ----

SimplicialGradedLie::SimplicialGradedLie(int simplicial_cutoff, int degree_cutoff)
    : simp_cutoff_(simplicial_cutoff), deg_cutoff_(degree_cutoff) {
    if (simp_cutoff_ < 0) throw std::invalid_argument("negative simplicial cutoff");
    for (int n = 0; n <= simp_cutoff_; ++n) {
        levels_.push_back(std::make_shared<FreeLieContext>(GeneratorSet{}, deg_cutoff_));
        faces_.emplace_back(n + 1);
        degens_.emplace_back(n + 1);
    }
}

FreeLieContext& SimplicialGradedLie::level(int n) const { return *level_ptr(n); }

const LieContextPtr& SimplicialGradedLie::level_ptr(int n) const {
    if (n < 0 || n > simp_cutoff_) throw std::out_of_range("simplicial dimension");
    return levels_[n];
}

int SimplicialGradedLie::add_generator(int n, const std::string& name, int degree) {
    return level(n).add_generator(name, degree);
}

void SimplicialGradedLie::set_face(int n, int i, int gen_index, const LieElement& value) {
    if (n < 1 || n > simp_cutoff_ || i < 0 || i > n) throw std::out_of_range("face index");
    if (!value.is_zero() &&
        level(n - 1).element_degree(value) != level(n).generators().degree(gen_index))
        throw std::invalid_argument("face value changes internal degree");
    faces_[n][i].images[gen_index] = value;
    faces_[n][i].memo.clear();
}

void SimplicialGradedLie::set_degeneracy(int n, int j, int gen_index,
                                         const LieElement& value) {
    if (n < 0 || n + 1 > simp_cutoff_ || j < 0 || j > n)
        throw std::out_of_range("degeneracy index");
    if (!value.is_zero() &&
        level(n + 1).element_degree(value) != level(n).generators().degree(gen_index))
        throw std::invalid_argument("degeneracy value changes internal degree");
    degens_[n][j].images[gen_index] = value;
    degens_[n][j].memo.clear();
}

LieElement SimplicialGradedLie::apply_map(const GenMap& gm, int from_level, int to_level,
                                          const LieElement& e) const {
    LieElement out;
    for (auto& [m, c] : e.terms)
        out += apply_images(level(from_level), level(to_level), gm.images, &gm.memo, m)
                   .scaled(c);
    return out;
}

LieElement SimplicialGradedLie::face(int n, int i, const LieElement& e) const {
    if (n < 1 || n > simp_cutoff_ || i < 0 || i > n) throw std::out_of_range("face index");
    return apply_map(faces_[n][i], n, n - 1, e);
}

LieElement SimplicialGradedLie::degeneracy(int n, int j, const LieElement& e) const {
    if (n < 0 || n + 1 > simp_cutoff_ || j < 0 || j > n)
        throw std::out_of_range("degeneracy index");
    return apply_map(degens_[n][j], n, n + 1, e);
}

std::vector<std::string> SimplicialGradedLie::validate() const {
    std::vector<std::string> issues;
    auto note = [&](int n, const std::string& what) {
        issues.push_back("level " + std::to_string(n) + ": " + what);
    };
    for (int n = 0; n <= simp_cutoff_; ++n) {
        const GeneratorSet& g = level(n).generators();
        for (int gi = 0; gi < g.size(); ++gi) {
            LieElement e = level(n).element_of_generator(gi);
            // d_i d_j = d_{j-1} d_i for i < j
            if (n >= 2) {
                for (int j = 1; j <= n; ++j)
                    for (int i = 0; i < j; ++i)
                        if (!(face(n - 1, i, face(n, j, e)) ==
                              face(n - 1, j - 1, face(n, i, e))))
                            note(n, "d" + std::to_string(i) + " d" + std::to_string(j) +
                                        " mismatch on " + g.at(gi).name);
            }
            if (n + 1 <= simp_cutoff_) {
                for (int j = 0; j <= n; ++j) {
                    LieElement sj = degeneracy(n, j, e);
                    for (int i = 0; i <= n + 1; ++i) {
                        LieElement lhs = face(n + 1, i, sj);
                        LieElement rhs;
                        if (i == j || i == j + 1) {
                            rhs = e;
                        } else if (i < j) {
                            rhs = degeneracy(n - 1, j - 1, face(n, i, e));
                        } else {
                            rhs = degeneracy(n - 1, j, face(n, i - 1, e));
                        }
                        if (!(lhs == rhs))
                            note(n, "d" + std::to_string(i) + " s" + std::to_string(j) +
                                        " mismatch on " + g.at(gi).name);
                    }
                    // s_i s_j = s_{j+1} s_i for i <= j
                    if (n + 2 <= simp_cutoff_) {
                        for (int i = 0; i <= j; ++i)
                            if (!(degeneracy(n + 1, i, sj) ==
                                  degeneracy(n + 1, j + 1, degeneracy(n, i, e))))
                                note(n, "s" + std::to_string(i) + " s" + std::to_string(j) +
                                            " mismatch on " + g.at(gi).name);
                    }
                }
            }
        }
    }
    return issues;
}

LieElement SimplicialGradedLie::shuffle_bracket(int p, const LieElement& x, int q,
                                                const LieElement& y) const {
    if (p + q > simp_cutoff_)
        throw std::domain_error("shuffle bracket lands beyond the simplicial cutoff");
    if (x.is_zero() || y.is_zero()) return {};
    int t = level(q).element_degree(y);
    LieElement out;
    for (const Shuffle& sh : shuffles(p, q)) {
        LieElement xs = x;
        int dim = p;
        for (int j : sh.tau) xs = degeneracy(dim++, j, xs);
        LieElement ys = y;
        dim = q;
        for (int i : sh.sigma) ys = degeneracy(dim++, i, ys);
        int sign = (sh.eps + p * t) % 2 == 0 ? 1 : -1;
        out += level(p + q).bracket(xs, ys).scaled(Rational(sign));
    }
    return out;
}

// ---- Moore complex ----

int MooreComplex::dim(int p, int s) const {
    auto it = basis.find({p, s});
    return it == basis.end() ? 0 : (int)it->second.size();
}

SparseMatrix MooreComplex::boundary(int p, int s) const {
    auto it = d.find({p, s});
    if (it != d.end()) return it->second;
    return SparseMatrix(dim(p - 1, s), dim(p, s));
}

ChainComplexQ MooreComplex::complex_at_internal_degree(int s) const {
    ChainComplexQ c;
    for (int p = 0; p <= simp_cutoff; ++p) {
        int n = dim(p, s);
        if (n == 0) continue;
        auto& lab = c.labels[p];
        for (int k = 0; k < n; ++k)
            lab.push_back("C(" + std::to_string(p) + "," + std::to_string(s) + ")#" +
                          std::to_string(k));
    }
    for (int p = 1; p <= simp_cutoff; ++p)
        if (dim(p, s) > 0) c.d[p] = boundary(p, s);
    return c;
}

MooreComplex moore(const SimplicialGradedLie& a) {
    MooreComplex out;
    out.simp_cutoff = a.simplicial_cutoff();
    out.deg_cutoff = a.degree_cutoff();
    // kernel coordinates per (p,s) for boundary solving
    std::map<std::pair<int, int>, std::vector<SparseVector>> kernels;
    for (int p = 0; p <= out.simp_cutoff; ++p) {
        for (int s = 1; s <= out.deg_cutoff; ++s) {
            const auto& mb = a.level(p).monomial_basis(s);
            if (mb.empty()) continue;
            std::vector<SparseVector> kern;
            if (p == 0) {
                for (int j = 0; j < (int)mb.size(); ++j) kern.push_back({{j, Rational(1)}});
            } else {
                int rows_per = (int)a.level(p - 1).monomial_basis(s).size();
                SparseMatrix stacked(p * rows_per, (int)mb.size());
                for (int j = 0; j < (int)mb.size(); ++j) {
                    LieElement e;
                    e.add_term(mb[j], Rational(1));
                    for (int i = 1; i <= p; ++i) {
                        SparseVector col = a.level(p - 1).decompose(a.face(p, i, e), s);
                        for (auto& [r, v] : col) stacked.add_to((i - 1) * rows_per + r, j, v);
                    }
                }
                kern = kernel_basis(stacked);
            }
            if (kern.empty()) continue;
            std::vector<LieElement> elems;
            for (auto& v : kern) elems.push_back(a.level(p).from_coordinates(v, s));
            kernels[{p, s}] = std::move(kern);
            out.basis[{p, s}] = std::move(elems);
        }
    }
    for (auto& [ps, elems] : out.basis) {
        auto [p, s] = ps;
        if (p == 0) continue;
        auto below = out.basis.find({p - 1, s});
        int below_dim = below == out.basis.end() ? 0 : (int)below->second.size();
        SparseMatrix mat(below_dim, (int)elems.size());
        int lvl_dim = below_dim == 0 ? 0 : (int)a.level(p - 1).monomial_basis(s).size();
        SpanSolver solver(lvl_dim);
        if (below != out.basis.end())
            for (auto& kv : kernels.at({p - 1, s})) solver.add(kv);
        int sgn = s % 2 == 0 ? 1 : -1;
        for (int j = 0; j < (int)elems.size(); ++j) {
            LieElement b = a.face(p, 0, elems[j]).scaled(Rational(sgn));
            if (b.is_zero()) continue;
            if (below == out.basis.end())
                throw std::logic_error("Moore boundary leaves the Moore complex");
            auto coeffs = solver.solve(a.level(p - 1).decompose(b, s));
            if (!coeffs)
                throw std::logic_error("Moore boundary leaves the Moore complex");
            for (int r = 0; r < (int)coeffs->size(); ++r)
                if ((*coeffs)[r] != 0) mat.set(r, j, (*coeffs)[r]);
        }
        out.d[ps] = std::move(mat);
    }
    return out;
}

bool verify_inner_faces_vanish(const SimplicialGradedLie& a, int p, const LieElement& x,
                               int q, const LieElement& y) {
    for (int i = 1; i <= p - 1; ++i)
        if (!a.face(p, i, x).is_zero())
            throw std::invalid_argument("x is not a Moore chain: d" + std::to_string(i) +
                                        " x != 0");
    for (int j = 1; j <= q - 1; ++j)
        if (!a.face(q, j, y).is_zero())
            throw std::invalid_argument("y is not a Moore chain: d" + std::to_string(j) +
                                        " y != 0");
    LieElement z = a.shuffle_bracket(p, x, q, y);
    for (int k = 1; k <= p + q - 1; ++k)
        if (!a.face(p + q, k, z).is_zero()) return false;
    return true;
}

bool last_face_rule(const SimplicialGradedLie& a, int p, const LieElement& x, int q,
                    const LieElement& y) {
    if (p == 0 && q == 0) return true;  // no last face in dimension 0
    if (p == 0 || q == 0)
        throw std::invalid_argument("last_face_rule needs both dimensions positive");
    LieElement lhs = a.face(p + q, p + q, a.shuffle_bracket(p, x, q, y));
    int t = a.level(q).element_degree(y);
    int sgn = (q + t) % 2 == 0 ? 1 : -1;
    LieElement rhs = a.shuffle_bracket(p - 1, a.face(p, p, x), q, y).scaled(Rational(sgn));
    rhs += a.shuffle_bracket(p, x, q - 1, a.face(q, q, y));
    return lhs == rhs;
}

// ---- Dold-Kan for graded vector spaces ----

int BigradedComplex::dim(int n, int s) const {
    auto it = labels.find({n, s});
    return it == labels.end() ? 0 : (int)it->second.size();
}

SparseMatrix BigradedComplex::boundary(int n, int s) const {
    auto it = d.find({n, s});
    if (it != d.end()) return it->second;
    return SparseMatrix(dim(n - 1, s), dim(n, s));
}

bool BigradedComplex::operator==(const BigradedComplex& o) const {
    if (labels != o.labels) return false;
    std::vector<std::pair<int, int>> keys;
    for (auto& [k, v] : d) keys.push_back(k);
    for (auto& [k, v] : o.d) keys.push_back(k);
    for (auto& [n, s] : keys)
        if (!(boundary(n, s) == o.boundary(n, s))) return false;
    return true;
}

SparseMatrix SimplicialGradedVS::face_at(int n, int i, int s) const {
    auto it = face.find({n, i, s});
    if (it != face.end()) return it->second;
    auto rows = basis.find({n - 1, s});
    auto cols = basis.find({n, s});
    return SparseMatrix(rows == basis.end() ? 0 : (int)rows->second.size(),
                        cols == basis.end() ? 0 : (int)cols->second.size());
}

SparseMatrix SimplicialGradedVS::degeneracy_at(int n, int j, int s) const {
    auto it = degeneracy.find({n, j, s});
    if (it != degeneracy.end()) return it->second;
    auto rows = basis.find({n + 1, s});
    auto cols = basis.find({n, s});
    return SparseMatrix(rows == basis.end() ? 0 : (int)rows->second.size(),
                        cols == basis.end() ? 0 : (int)cols->second.size());
}

std::vector<std::string> SimplicialGradedVS::validate() const {
    std::vector<std::string> issues;
    std::set<int> degrees;
    std::set<int> dims;
    for (auto& [ns, b] : basis) {
        dims.insert(ns.first);
        degrees.insert(ns.second);
    }
    for (int s : degrees) {
        for (int n = 0; n <= simp_cutoff; ++n) {
            for (int j = 1; j <= n; ++j)
                for (int i = 0; i < j; ++i)
                    if (!(mat_mul(face_at(n - 1, i, s), face_at(n, j, s)) ==
                          mat_mul(face_at(n - 1, j - 1, s), face_at(n, i, s))))
                        issues.push_back("d" + std::to_string(i) + " d" + std::to_string(j) +
                                         " fails at n=" + std::to_string(n) +
                                         ", s=" + std::to_string(s));
            if (n + 1 > simp_cutoff) continue;
            for (int j = 0; j <= n; ++j) {
                for (int i = 0; i <= n + 1; ++i) {
                    SparseMatrix lhs = mat_mul(face_at(n + 1, i, s), degeneracy_at(n, j, s));
                    SparseMatrix rhs;
                    if (i == j || i == j + 1) {
                        int dn = degeneracy_at(n, j, s).cols();
                        rhs = SparseMatrix(dn, dn);
                        for (int r = 0; r < dn; ++r) rhs.set(r, r, 1);
                    } else if (i < j) {
                        rhs = mat_mul(degeneracy_at(n - 1, j - 1, s), face_at(n, i, s));
                    } else {
                        rhs = mat_mul(degeneracy_at(n - 1, j, s), face_at(n, i - 1, s));
                    }
                    if (!(lhs == rhs))
                        issues.push_back("d" + std::to_string(i) + " s" + std::to_string(j) +
                                         " fails at n=" + std::to_string(n) +
                                         ", s=" + std::to_string(s));
                }
                if (n + 2 <= simp_cutoff) {
                    for (int i = 0; i <= j; ++i)
                        if (!(mat_mul(degeneracy_at(n + 1, i, s), degeneracy_at(n, j, s)) ==
                              mat_mul(degeneracy_at(n + 1, j + 1, s),
                                      degeneracy_at(n, i, s))))
                            issues.push_back("s" + std::to_string(i) + " s" +
                                             std::to_string(j) + " fails at n=" +
                                             std::to_string(n) + ", s=" + std::to_string(s));
                }
            }
        }
    }
    return issues;
}

namespace {

// summand of (Gamma C)_{n,s}: core homological degree k, degeneracy index set
// J (as a sorted-ascending set, applied in decreasing order), label index
struct GammaSummand {
    int k;
    std::vector<int> J;
    int label;
    bool operator<(const GammaSummand& o) const {
        if (J.size() != o.J.size()) return J.size() < o.J.size();
        if (J != o.J) return J < o.J;
        return label < o.label;
    }
};

std::string summand_label(const BigradedComplex& c, int s, const GammaSummand& g) {
    std::string base = c.labels.at({g.k, s})[g.label];
    if (g.J.empty()) return base;
    std::string out = base + "|";
    for (auto it = g.J.rbegin(); it != g.J.rend(); ++it) out += "s" + std::to_string(*it);
    return out;
}

void subsets_of_size(int n, int r, std::vector<int>& acc,
                     std::vector<std::vector<int>>& out, int next = 0) {
    if ((int)acc.size() == r) {
        out.push_back(acc);
        return;
    }
    for (int v = next; v <= n - (r - (int)acc.size()); ++v) {
        acc.push_back(v);
        subsets_of_size(n, r, acc, out, v + 1);
        acc.pop_back();
    }
}

}  // namespace

SimplicialGradedVS gamma(const BigradedComplex& c, int simp_cutoff) {
    SimplicialGradedVS out;
    out.simp_cutoff = simp_cutoff;
    std::set<int> degrees;
    for (auto& [ns, l] : c.labels)
        if (!l.empty()) degrees.insert(ns.second);

    // summand tables and index lookups per (n,s)
    std::map<std::pair<int, int>, std::vector<GammaSummand>> table;
    std::map<std::pair<int, int>, std::map<std::pair<int, std::vector<int>>,
                                           std::vector<int>>> lookup;
    for (int s : degrees) {
        for (int n = 0; n <= simp_cutoff; ++n) {
            std::vector<GammaSummand> sums;
            for (int k = 0; k <= n; ++k) {
                int nl = c.dim(k, s);
                if (nl == 0) continue;
                std::vector<std::vector<int>> subs;
                std::vector<int> acc;
                subsets_of_size(n, n - k, acc, subs);
                for (auto& J : subs)
                    for (int l = 0; l < nl; ++l) sums.push_back({k, J, l});
            }
            std::sort(sums.begin(), sums.end());
            if (sums.empty()) continue;
            auto& lk = lookup[{n, s}];
            std::vector<std::string> labels;
            for (int idx = 0; idx < (int)sums.size(); ++idx) {
                auto& entry = lk[{sums[idx].k, sums[idx].J}];
                if ((int)entry.size() <= sums[idx].label)
                    entry.resize(sums[idx].label + 1, -1);
                entry[sums[idx].label] = idx;
                labels.push_back(summand_label(c, s, sums[idx]));
            }
            table[{n, s}] = std::move(sums);
            out.basis[{n, s}] = std::move(labels);
        }
    }

    for (int s : degrees) {
        for (int n = 1; n <= simp_cutoff; ++n) {
            auto src = table.find({n, s});
            if (src == table.end()) continue;
            int cols = (int)src->second.size();
            auto tgt = table.find({n - 1, s});
            int rows = tgt == table.end() ? 0 : (int)tgt->second.size();
            for (int i = 0; i <= n; ++i) {
                SparseMatrix m(rows, cols);
                for (int j = 0; j < cols; ++j) {
                    const GammaSummand& g = src->second[j];
                    // commute d_i through s_J (J applied in decreasing order)
                    std::vector<int> desc(g.J.rbegin(), g.J.rend());
                    std::vector<int> newJ;
                    int mface = i;
                    bool killed = false;
                    size_t t = 0;
                    for (; t < desc.size(); ++t) {
                        int idx = desc[t];
                        if (mface < idx) {
                            newJ.push_back(idx - 1);
                        } else if (mface == idx || mface == idx + 1) {
                            killed = true;
                            ++t;
                            break;
                        } else {
                            newJ.push_back(idx);
                            --mface;
                        }
                    }
                    for (; t < desc.size(); ++t) newJ.push_back(desc[t]);
                    std::sort(newJ.begin(), newJ.end());
                    if (killed) {
                        int r = lookup.at({n - 1, s}).at({g.k, newJ})[g.label];
                        m.add_to(r, j, Rational(1));
                    } else if (mface == 0 && g.k >= 1) {
                        // d_0 on the core is (-1)^s times the boundary
                        SparseMatrix bd = c.boundary(g.k, s);
                        int sg = s % 2 == 0 ? 1 : -1;
                        for (int r = 0; r < bd.rows(); ++r) {
                            Rational v = bd.get(r, g.label);
                            if (v != 0) {
                                int rr = lookup.at({n - 1, s}).at({g.k - 1, newJ})[r];
                                m.add_to(rr, j, v * sg);
                            }
                        }
                    }
                    // mface >= 1 on the core, or k = 0: zero
                }
                out.face[{n, i, s}] = std::move(m);
            }
        }
        for (int n = 0; n < simp_cutoff; ++n) {
            auto src = table.find({n, s});
            if (src == table.end()) continue;
            int cols = (int)src->second.size();
            auto tgt = table.find({n + 1, s});
            int rows = tgt == table.end() ? 0 : (int)tgt->second.size();
            for (int j = 0; j <= n; ++j) {
                SparseMatrix m(rows, cols);
                for (int col = 0; col < cols; ++col) {
                    const GammaSummand& g = src->second[col];
                    std::vector<int> newJ;
                    for (int idx : g.J) newJ.push_back(idx >= j ? idx + 1 : idx);
                    newJ.push_back(j);
                    std::sort(newJ.begin(), newJ.end());
                    int r = lookup.at({n + 1, s}).at({g.k, newJ})[g.label];
                    m.add_to(r, col, Rational(1));
                }
                out.degeneracy[{n, j, s}] = std::move(m);
            }
        }
    }
    return out;
}

BigradedComplex normalize_N(const SimplicialGradedVS& a) {
    BigradedComplex out;
    std::map<std::pair<int, int>, std::vector<SparseVector>> kernels;
    for (auto& [ns, labels] : a.basis) {
        auto [n, s] = ns;
        std::vector<SparseVector> kern;
        if (n == 0) {
            for (int j = 0; j < (int)labels.size(); ++j) kern.push_back({{j, Rational(1)}});
        } else {
            int rows_per = 0;
            auto below = a.basis.find({n - 1, s});
            if (below != a.basis.end()) rows_per = (int)below->second.size();
            SparseMatrix stacked(n * rows_per, (int)labels.size());
            for (int i = 1; i <= n; ++i) {
                SparseMatrix f = a.face_at(n, i, s);
                for (int r = 0; r < f.rows(); ++r)
                    for (auto& [cc, v] : f.row(r))
                        stacked.add_to((i - 1) * rows_per + r, cc, v);
            }
            kern = kernel_basis(stacked);
        }
        if (kern.empty()) continue;
        std::vector<std::string> nlab;
        for (int j = 0; j < (int)kern.size(); ++j) {
            const SparseVector& v = kern[j];
            if (v.size() == 1 && v.begin()->second == 1)
                nlab.push_back(labels[v.begin()->first]);
            else
                nlab.push_back("ker#" + std::to_string(j));
        }
        kernels[ns] = std::move(kern);
        out.labels[ns] = std::move(nlab);
    }
    for (auto& [ns, kern] : kernels) {
        auto [n, s] = ns;
        if (n == 0) continue;
        auto below = kernels.find({n - 1, s});
        int below_dim = below == kernels.end() ? 0 : (int)below->second.size();
        SparseMatrix mat(below_dim, (int)kern.size());
        SpanSolver solver(below == kernels.end()
                              ? 0
                              : (int)a.basis.at({n - 1, s}).size());
        if (below != kernels.end())
            for (auto& kv : below->second) solver.add(kv);
        SparseMatrix d0 = a.face_at(n, 0, s);
        int sg = s % 2 == 0 ? 1 : -1;
        for (int j = 0; j < (int)kern.size(); ++j) {
            SparseVector img = sv_scale(Rational(sg), mat_apply(d0, kern[j]));
            if (sv_is_zero(img)) continue;
            if (below == kernels.end())
                throw std::logic_error("normalized boundary leaves the Moore complex");
            auto coeffs = solver.solve(img);
            if (!coeffs)
                throw std::logic_error("normalized boundary leaves the Moore complex");
            for (int r = 0; r < (int)coeffs->size(); ++r)
                if ((*coeffs)[r] != 0) mat.set(r, j, (*coeffs)[r]);
        }
        bool nonzero = false;
        for (int r = 0; r < mat.rows(); ++r)
            if (!mat.row(r).empty()) nonzero = true;
        if (nonzero || below_dim > 0) out.d[ns] = std::move(mat);
    }
    return out;
}

// ---- face multi-indices ----

std::vector<int> canonical_face_composite(std::vector<int> ops) {
    for (int v : ops)
        if (v < 0) throw std::invalid_argument("negative face index");
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t t = 0; t + 1 < ops.size(); ++t) {
            if (ops[t] >= ops[t + 1]) {
                // d_a o d_b with a >= b equals d_b o d_{a+1}
                int a = ops[t], b = ops[t + 1];
                ops[t] = b;
                ops[t + 1] = a + 1;
                changed = true;
            }
        }
    }
    return ops;
}

std::pair<int, FaceMultiIndex> kappa(const FaceMultiIndex& I, int j) {
    int s = (int)I.entries.size();
    if (j < 1 || j > s) throw std::out_of_range("kappa position");
    for (int t = 0; t + 1 < s; ++t)
        if (I.entries[t] >= I.entries[t + 1])
            throw std::invalid_argument("face multi-index must be strictly increasing");
    FaceMultiIndex rest;
    for (int t = 0; t < s; ++t)
        if (t != j - 1) rest.entries.push_back(I.entries[t]);
    int bound = I.entries.back() + s + 2;
    int found = -1;
    for (int cand = 0; cand <= bound; ++cand) {
        std::vector<int> ops;
        ops.push_back(cand);
        ops.insert(ops.end(), rest.entries.begin(), rest.entries.end());
        if (canonical_face_composite(ops) == I.entries) {
            if (found >= 0) throw std::logic_error("kappa is not unique");
            found = cand;
        }
    }
    if (found < 0) throw std::logic_error("kappa not found");
    return {found, rest};
}

}  // namespace dgla
