#include "dgla/jacobi.hpp"

#include <stdexcept>
#include <utility>

namespace dgla {

const NAElement DGNA::zero_;

namespace {

int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

int koszul_sign(const std::vector<int>& permutation,
                const std::vector<int>& degrees) {
    if (permutation.size() != degrees.size())
        throw std::invalid_argument("permutation and degree list lengths differ");
    int n = (int)permutation.size();
    std::vector<bool> seen(n, false);
    for (int p : permutation) {
        if (p < 0 || p >= n || seen[p])
            throw std::invalid_argument("not a permutation");
        seen[p] = true;
    }
    long e = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (permutation[i] > permutation[j])
                e += (long)degrees[permutation[i]] * degrees[permutation[j]] + 1;
    return parity_sign(e);
}

// ---- NAElement ----

NAElement& NAElement::add_term(NAId m, const Rational& c) {
    if (c == 0) return *this;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
    return *this;
}

NAElement& NAElement::operator+=(const NAElement& o) {
    for (auto& [m, c] : o.terms) add_term(m, c);
    return *this;
}

NAElement NAElement::operator+(const NAElement& o) const {
    NAElement out = *this;
    out += o;
    return out;
}

NAElement NAElement::operator-(const NAElement& o) const {
    NAElement out = *this;
    for (auto& [m, c] : o.terms) out.add_term(m, -c);
    return out;
}

NAElement NAElement::scaled(const Rational& c) const {
    NAElement out;
    if (c == 0) return out;
    for (auto& [m, k] : terms) out.terms.emplace(m, c * k);
    return out;
}

// ---- DGNA ----

DGNA::DGNA(int degree_cutoff) : cutoff_(degree_cutoff) {
    if (degree_cutoff < 1) throw std::invalid_argument("degree cutoff must be >= 1");
}

int DGNA::add_generator(const std::string& name, int degree, int level) {
    if (degree < 1) throw std::invalid_argument("generator degree must be >= 1");
    if (gen_by_name_.count(name))
        throw std::invalid_argument("duplicate generator name: " + name);
    int idx = (int)gens_.size();
    gens_.push_back({name, degree, level});
    gen_by_name_[name] = idx;
    leaf_ids_.push_back(-1);
    basis_memo_.clear();
    basis_index_memo_.clear();
    return idx;
}

NAId DGNA::leaf(int gen_index) {
    NAId& id = leaf_ids_.at(gen_index);
    if (id < 0) {
        id = (int)mons_.size();
        MonData m;
        m.gen = gen_index;
        m.degree = gens_[gen_index].degree;
        m.key = gens_[gen_index].name;
        mons_.push_back(m);
    }
    return id;
}

NAId DGNA::intern_node(NAId l, NAId r) {
    auto key = std::make_pair(l, r);
    auto it = node_ids_.find(key);
    if (it != node_ids_.end()) return it->second;
    NAId id = (int)mons_.size();
    MonData m;
    m.left = l;
    m.right = r;
    m.degree = mons_.at(l).degree + mons_.at(r).degree;
    m.key = "(" + mons_.at(l).key + "*" + mons_.at(r).key + ")";
    mons_.push_back(m);
    node_ids_.emplace(key, id);
    return id;
}

bool DGNA::mon_less(NAId a, NAId b) const {
    const MonData& ma = mons_.at(a);
    const MonData& mb = mons_.at(b);
    if (ma.degree != mb.degree) return ma.degree < mb.degree;
    return ma.key < mb.key;
}

bool DGNA::canonical_node(NAId l, NAId r, NAId& out, int& sign) {
    if (l == r) {
        if (mons_.at(l).degree % 2 == 0) return false;  // even square is zero
        out = intern_node(l, l);
        sign = 1;
        return true;
    }
    if (mon_less(l, r)) {
        out = intern_node(l, r);
        sign = 1;
    } else {
        out = intern_node(r, l);
        sign = parity_sign((long)mons_.at(l).degree * mons_.at(r).degree + 1);
    }
    return true;
}

std::string DGNA::mon_string(NAId m) const { return mons_.at(m).key; }

NAElement DGNA::element_of_generator(int gen_index) {
    NAElement e;
    e.add_term(leaf(gen_index), Rational(1));
    return e;
}

int DGNA::element_degree(const NAElement& e) const {
    if (e.is_zero()) return 0;
    int deg = mons_.at(e.terms.begin()->first).degree;
    for (auto& [m, c] : e.terms)
        if (mons_.at(m).degree != deg)
            throw std::logic_error("element is not homogeneous");
    return deg;
}

std::string DGNA::to_string(const NAElement& e) const {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [m, c] : e.terms) {
        Rational a = c;
        if (first) {
            if (a < 0) { out += "-"; a = -a; }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        if (a != 1) out += dgla::to_string(a) + "*";
        out += mon_string(m);
        first = false;
    }
    return out;
}

NAElement DGNA::product(const NAElement& a, const NAElement& b) {
    NAElement out;
    for (auto& [m, c] : a.terms)
        for (auto& [n, e] : b.terms) {
            NAId id;
            int sign;
            if (canonical_node(m, n, id, sign))
                out.add_term(id, c * e * sign);
        }
    return out;
}

NAElement DGNA::symmetrized(const NAElement& a, const NAElement& b) {
    if (a.is_zero() || b.is_zero()) return NAElement();
    long p = element_degree(a), q = element_degree(b);
    Rational half(1, 2);
    NAElement out = product(a, b).scaled(half);
    out += product(b, a).scaled(half * parity_sign(p * q + 1));
    return out;
}

// sorts monomial arguments by (degree, printed form), accumulating the
// Koszul sign of the adjacent swaps; a repeated adjacent argument of even
// degree makes the whole orbit zero (the swap sign is -1 on a fixed point)
bool DGNA::canonical_tuple(std::vector<NAId>& args, int& sign) const {
    int n = (int)args.size();
    std::vector<std::pair<int, std::string>> key(n);
    for (int i = 0; i < n; ++i)
        key[i] = {mons_.at(args[i]).degree, mon_string(args[i])};
    sign = 1;
    for (int pass = 0; pass < n; ++pass)
        for (int i = 0; i + 1 < n; ++i)
            if (key[i + 1] < key[i]) {
                sign *= parity_sign((long)key[i].first * key[i + 1].first + 1);
                std::swap(key[i], key[i + 1]);
                std::swap(args[i], args[i + 1]);
            }
    for (int i = 0; i + 1 < n; ++i)
        if (args[i] == args[i + 1] && mons_.at(args[i]).degree % 2 == 0)
            return false;
    return true;
}

int DGNA::ensure_lambda_generator(int level, const std::vector<NAId>& args) {
    auto it = lambda_gen_.find(args);
    if (it != lambda_gen_.end()) return it->second;

    int sum = 0;
    for (NAId m : args) sum += mons_.at(m).degree;
    int degree = sum + level;
    if (degree > cutoff_)
        throw std::out_of_range("bracketer generator of degree " +
                                std::to_string(degree) + " exceeds the cutoff");

    std::string name = "l" + std::to_string((int)args.size()) + "(";
    for (size_t i = 0; i < args.size(); ++i) {
        if (i) name += ";";
        name += mon_string(args[i]);
    }
    name += ")";

    int gen = add_generator(name, degree, level);
    lambda_gen_.emplace(args, gen);

    // boundary: the structural formula on the arguments, corrected by the
    // bracketer applied to the differentials of the arguments so that the
    // whole operation is a chain map (the corrections vanish on cycles)
    std::vector<NAElement> e;
    e.reserve(args.size());
    for (NAId m : args) {
        NAElement x;
        x.add_term(m, Rational(1));
        e.push_back(x);
    }
    NAElement value;
    if (level == 1) {
        value = lambda3_boundary(*this, e[0], e[1], e[2]);
    } else {
        value = lambda4_boundary(*this, e[0], e[1], e[2], e[3], variant_);
    }
    long prefix = 0;
    for (size_t k = 0; k < args.size(); ++k) {
        NAElement dk = d(e[k]);
        if (!dk.is_zero()) {
            std::vector<NAElement> slots = e;
            slots[k] = dk;
            NAElement corr = (level == 1)
                                 ? lambda3(slots[0], slots[1], slots[2])
                                 : lambda4(slots[0], slots[1], slots[2], slots[3]);
            value += corr.scaled(Rational(-parity_sign(prefix)));
        }
        prefix += mons_.at(args[k]).degree;
    }
    set_differential(gen, value);
    return gen;
}

NAElement DGNA::lambda_on_monomials(int level, std::vector<NAId> args) {
    int sign = 1;
    NAElement out;
    if (!canonical_tuple(args, sign)) return out;
    int gen = ensure_lambda_generator(level, args);
    out.add_term(leaf(gen), Rational(sign));
    return out;
}

NAElement DGNA::lambda3(const NAElement& x, const NAElement& y,
                        const NAElement& z) {
    NAElement out;
    for (auto& [m1, c1] : x.terms)
        for (auto& [m2, c2] : y.terms)
            for (auto& [m3, c3] : z.terms)
                out += lambda_on_monomials(1, {m1, m2, m3}).scaled(c1 * c2 * c3);
    return out;
}

NAElement DGNA::lambda4(const NAElement& x, const NAElement& y,
                        const NAElement& z, const NAElement& w) {
    NAElement out;
    for (auto& [m1, c1] : x.terms)
        for (auto& [m2, c2] : y.terms)
            for (auto& [m3, c3] : z.terms)
                for (auto& [m4, c4] : w.terms)
                    out += lambda_on_monomials(2, {m1, m2, m3, m4})
                               .scaled(c1 * c2 * c3 * c4);
    return out;
}

void DGNA::set_differential(int gen_index, const NAElement& value) {
    int deg = gens_.at(gen_index).degree;
    if (deg == 1) {
        if (!value.is_zero())
            throw std::domain_error("degree-1 generators must map to zero");
    } else if (!value.is_zero() && element_degree(value) != deg - 1) {
        throw std::domain_error("differential value of " + gens_[gen_index].name +
                                " must be homogeneous of degree " +
                                std::to_string(deg - 1));
    }
    d_gen_[gen_index] = value;
    d_memo_.clear();
}

void DGNA::set_differential(const std::string& gen_name, const NAElement& value) {
    auto it = gen_by_name_.find(gen_name);
    if (it == gen_by_name_.end())
        throw std::invalid_argument("unknown generator: " + gen_name);
    set_differential(it->second, value);
}

const NAElement& DGNA::differential_on(int gen_index) const {
    auto it = d_gen_.find(gen_index);
    return it == d_gen_.end() ? zero_ : it->second;
}

const NAElement& DGNA::d_monomial(NAId m) {
    auto it = d_memo_.find(m);
    if (it != d_memo_.end()) return it->second;
    NAElement out;
    const MonData md = mons_.at(m);
    if (md.gen >= 0) {
        out = differential_on(md.gen);
    } else {
        NAElement l, r;
        l.add_term(md.left, Rational(1));
        r.add_term(md.right, Rational(1));
        out = product(d_monomial(md.left), r);
        out += product(l, d_monomial(md.right)).scaled(
            Rational(parity_sign(mons_.at(md.left).degree)));
    }
    return d_memo_.emplace(m, std::move(out)).first->second;
}

NAElement DGNA::d(const NAElement& e) {
    NAElement out;
    for (auto& [m, c] : e.terms) out += d_monomial(m).scaled(c);
    return out;
}

ValidationReport DGNA::validate() {
    ValidationReport rep;
    for (int g = 0; g < (int)gens_.size(); ++g) {
        NAElement r = d(differential_on(g));
        if (!r.is_zero()) rep.issues.push_back({gens_[g].name, to_string(r)});
    }
    return rep;
}

const std::vector<NAId>& DGNA::monomial_basis(int degree) {
    auto it = basis_memo_.find(degree);
    if (it != basis_memo_.end()) return it->second;
    if (degree < 1 || degree > cutoff_)
        throw std::domain_error("degree outside 1..cutoff");
    std::vector<NAId> out;
    for (int g = 0; g < (int)gens_.size(); ++g)
        if (gens_[g].degree == degree) out.push_back(leaf(g));
    for (int dl = 1; dl < degree; ++dl) {
        // copies: recursion below may invalidate memo references
        std::vector<NAId> ls = monomial_basis(dl);
        std::vector<NAId> rs = monomial_basis(degree - dl);
        for (NAId l : ls)
            for (NAId r : rs) {
                // one canonical orientation per unordered pair; odd squares
                // survive, even squares are zero
                if (l == r && mons_.at(l).degree % 2 != 0)
                    out.push_back(intern_node(l, l));
                else if (mon_less(l, r))
                    out.push_back(intern_node(l, r));
            }
    }
    auto& slot = basis_memo_[degree];
    slot = std::move(out);
    auto& index = basis_index_memo_[degree];
    for (int i = 0; i < (int)slot.size(); ++i) index[slot[i]] = i;
    return slot;
}

SparseVector DGNA::decompose(const NAElement& e, int degree) {
    monomial_basis(degree);
    const auto& index = basis_index_memo_.at(degree);
    SparseVector out;
    for (auto& [m, c] : e.terms) {
        auto it = index.find(m);
        if (it == index.end())
            throw std::domain_error("monomial " + mon_string(m) +
                                    " is not of degree " + std::to_string(degree));
        out[it->second] = c;
    }
    return out;
}

NAElement DGNA::from_coordinates(const SparseVector& v, int degree) {
    const auto& basis = monomial_basis(degree);
    NAElement out;
    for (auto& [i, c] : v) out.add_term(basis.at(i), c);
    return out;
}

ChainComplexQ DGNA::chain_complex(int through) {
    if (through > cutoff_) throw std::domain_error("degree exceeds cutoff");
    ChainComplexQ c;
    for (int n = 1; n <= through; ++n) {
        const auto& basis = monomial_basis(n);
        auto& lab = c.labels[n];
        for (NAId m : basis) lab.push_back(mon_string(m));
    }
    for (int n = 2; n <= through; ++n) {
        SparseMatrix mat(c.dim(n - 1), c.dim(n));
        std::vector<NAId> basis = monomial_basis(n);
        for (int j = 0; j < (int)basis.size(); ++j) {
            SparseVector col = decompose(d_monomial(basis[j]), n - 1);
            for (auto& [i, v] : col) mat.set(i, j, v);
        }
        c.d[n] = std::move(mat);
    }
    return c;
}

// ---- boundary formulas ----

NAElement lambda3_boundary(DGNA& a, const NAElement& x, const NAElement& y,
                           const NAElement& z) {
    if (x.is_zero() || y.is_zero() || z.is_zero()) return NAElement();
    long q = a.element_degree(y), r = a.element_degree(z);
    NAElement out = a.symmetrized(x, a.symmetrized(y, z));
    out = out - a.symmetrized(a.symmetrized(x, y), z);
    out += a.symmetrized(a.symmetrized(x, z), y).scaled(Rational(parity_sign(q * r)));
    return out;
}

NAElement lambda4_boundary(DGNA& a, const NAElement& x, const NAElement& y,
                           const NAElement& z, const NAElement& w,
                           Lambda4Variant variant) {
    if (x.is_zero() || y.is_zero() || z.is_zero() || w.is_zero())
        return NAElement();
    long p = a.element_degree(x), q = a.element_degree(y),
         r = a.element_degree(z), s = a.element_degree(w);

    // the first group is the only one whose bracketer sits to the right of
    // the product, so it alone picks up the derivation-convention sign
    // (-1)^{|x|}; the coefficient is forced by the square-zero requirement
    // (the ten constituent expressions span a one-dimensional relation space)
    NAElement out =
        a.symmetrized(x, a.lambda3(y, z, w)).scaled(Rational(parity_sign(p)));
    out += a.symmetrized(a.lambda3(x, y, z), w);
    out += a.symmetrized(a.lambda3(x, y, w), z).scaled(Rational(-parity_sign(r * s)));
    out += a.symmetrized(a.lambda3(x, z, w), y).scaled(Rational(parity_sign(q * (r + s))));

    out = out - a.lambda3(a.symmetrized(x, y), z, w);
    out = out - a.lambda3(x, y, a.symmetrized(z, w));

    const NAElement& sixth_slot =
        (variant == Lambda4Variant::repeated_third_argument) ? z : w;
    Rational c6(parity_sign(q * r));
    out += a.lambda3(a.symmetrized(x, z), y, sixth_slot).scaled(c6);
    out += a.lambda3(x, z, a.symmetrized(y, w)).scaled(c6);

    Rational c7(-parity_sign(s * (q + r)));
    out += a.lambda3(a.symmetrized(x, w), y, z).scaled(c7);
    out += a.lambda3(x, w, a.symmetrized(y, z)).scaled(c7);
    return out;
}

// ---- identity checks on homology ----

namespace {

struct HClasses {
    // degree -> cycle representatives as elements
    std::map<int, std::vector<NAElement>> reps;
    // degree -> span of the boundaries in that degree's coordinates
    std::map<int, SpanSolver> boundaries;
};

HClasses homology_classes(DGNA& a, const ChainComplexQ& c, int through) {
    HClasses out;
    for (int n = 1; n <= through; ++n) {
        HomologyAt h = homology_at(c, n);
        auto& sp = out.boundaries.emplace(n, SpanSolver(c.dim(n))).first->second;
        for (int j = 0; j < h.boundary_coords.cols(); ++j) {
            SparseVector col;
            for (int i = 0; i < h.boundary_coords.rows(); ++i) {
                Rational v = h.boundary_coords.get(i, j);
                if (v != 0) col[i] = v;
            }
            sp.add(col);
        }
        auto& reps = out.reps[n];
        for (auto& rv : h.representatives) reps.push_back(a.from_coordinates(rv, n));
    }
    return out;
}

}  // namespace

bool is_jacobi(DGNA& a, int through) {
    if (through > a.degree_cutoff())
        throw std::domain_error("degree exceeds cutoff");
    ChainComplexQ c = a.chain_complex(through);
    HClasses h = homology_classes(a, c, through);

    auto is_boundary = [&](const NAElement& e, int degree) {
        if (e.is_zero()) return true;
        // the span at `degree` saw boundaries from degree + 1 <= through
        if (degree + 1 > through) return false;
        return h.boundaries.at(degree).contains(a.decompose(e, degree));
    };

    // graded antisymmetry: [x,y] + (-1)^{|x||y|} [y,x] = 0 modulo boundaries
    for (auto& [p, xs] : h.reps)
        for (auto& [q, ys] : h.reps) {
            if (p + q > through) continue;
            for (auto& x : xs)
                for (auto& y : ys) {
                    NAElement e = a.symmetrized(x, y) +
                                  a.symmetrized(y, x).scaled(
                                      Rational(parity_sign((long)p * q)));
                    if (!is_boundary(e, p + q)) return false;
                }
        }

    // Jacobi: the Jacobiator of cycle representatives must bound
    for (auto& [p, xs] : h.reps)
        for (auto& [q, ys] : h.reps)
            for (auto& [r, zs] : h.reps) {
                if (p + q + r + 1 > through) continue;
                for (auto& x : xs)
                    for (auto& y : ys)
                        for (auto& z : zs) {
                            NAElement jac = lambda3_boundary(a, x, y, z);
                            if (!is_boundary(jac, p + q + r)) return false;
                        }
            }
    return true;
}

bool is_jacobi(const DGL& dl, int through) {
    FreeLieContext& ctx = dl.lie();
    int cap = std::min(through, ctx.degree_cutoff());
    if (through >= ctx.degree_cutoff()) through = ctx.degree_cutoff() - 1;
    HomologyPresentation h = dl.chain_homology(through);
    for (auto& [p, hp] : h.by_degree)
        for (auto& [q, hq] : h.by_degree) {
            if (p + q > cap) continue;
            for (auto& x : hp.representatives)
                for (auto& y : hq.representatives) {
                    LieElement e = ctx.bracket(x, y) +
                                   ctx.bracket(y, x).scaled(
                                       Rational(parity_sign((long)p * q)));
                    if (!e.is_zero()) return false;
                }
        }
    for (auto& [p, hp] : h.by_degree)
        for (auto& [q, hq] : h.by_degree)
            for (auto& [r, hr] : h.by_degree) {
                if (p + q + r > cap) continue;
                for (auto& x : hp.representatives)
                    for (auto& y : hq.representatives)
                        for (auto& z : hr.representatives) {
                            LieElement jac =
                                ctx.bracket(x, ctx.bracket(y, z)) -
                                ctx.bracket(ctx.bracket(x, y), z) +
                                ctx.bracket(ctx.bracket(x, z), y).scaled(
                                    Rational(parity_sign((long)q * r)));
                            if (!jac.is_zero()) return false;
                        }
            }
    return true;
}

// ---- free construction ----

DGNA free_jacobi_level(const ChainComplexQ& v, int level, int degree_cutoff) {
    if (level < 0 || level > 2)
        throw std::invalid_argument(
            "homological level must be 0, 1, or 2; higher bracketers are not "
            "constructed");
    DGNA j(degree_cutoff);

    std::map<int, std::vector<int>> gen_at;
    for (auto& [t, labels] : v.labels) {
        if (labels.empty()) continue;
        if (t < 1)
            throw std::invalid_argument(
                "chain complex basis in degree < 1 cannot seed a connected "
                "algebra");
        if (t > degree_cutoff) continue;
        for (auto& name : labels) gen_at[t].push_back(j.add_generator(name, t));
    }
    for (auto& [t, gens] : gen_at) {
        if (t == 1 || !gen_at.count(t - 1)) continue;
        SparseMatrix b = v.boundary(t);
        const auto& below = gen_at.at(t - 1);
        for (int i = 0; i < (int)gens.size(); ++i) {
            NAElement val;
            for (int rr = 0; rr < (int)below.size(); ++rr) {
                Rational coeff = b.get(rr, i);
                if (coeff != 0) val.add_term(j.leaf(below[rr]), coeff);
            }
            j.set_differential(gens[i], val);
        }
    }

    if (level >= 1) {
        // level-0 monomials only: collected before any bracketer is interned
        std::vector<NAId> mons;
        for (int deg = 1; deg <= degree_cutoff - 1; ++deg) {
            const auto& b = j.monomial_basis(deg);
            mons.insert(mons.end(), b.begin(), b.end());
        }
        auto elem = [&](NAId m) {
            NAElement e;
            e.add_term(m, Rational(1));
            return e;
        };
        auto deg = [&](NAId m) { return j.mon_degree(m); };
        for (size_t i = 0; i < mons.size(); ++i)
            for (size_t k = i; k < mons.size(); ++k)
                for (size_t l = k; l < mons.size(); ++l) {
                    if (deg(mons[i]) + deg(mons[k]) + deg(mons[l]) + 1 >
                        degree_cutoff)
                        continue;
                    (void)j.lambda3(elem(mons[i]), elem(mons[k]), elem(mons[l]));
                }
        if (level >= 2)
            for (size_t i = 0; i < mons.size(); ++i)
                for (size_t k = i; k < mons.size(); ++k)
                    for (size_t l = k; l < mons.size(); ++l)
                        for (size_t m = l; m < mons.size(); ++m) {
                            if (deg(mons[i]) + deg(mons[k]) + deg(mons[l]) +
                                    deg(mons[m]) + 2 >
                                degree_cutoff)
                                continue;
                            (void)j.lambda4(elem(mons[i]), elem(mons[k]),
                                            elem(mons[l]), elem(mons[m]));
                        }
    }

    ValidationReport rep = j.validate();
    if (!rep.ok())
        throw std::logic_error("square-zero failure on " +
                               rep.issues.front().generator + ": " +
                               rep.issues.front().residue);
    return j;
}

}  // namespace dgla
