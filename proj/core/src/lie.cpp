#include "dgla/lie.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace dgla {

GeneratorSet::GeneratorSet(std::vector<Generator> gens) {
    for (auto& g : gens) add(g.name, g.degree);
}

int GeneratorSet::add(const std::string& name, int degree) {
    if (degree < 1)
        throw std::invalid_argument("generator '" + name +
                                    "' has degree " + std::to_string(degree) +
                                    "; connectedness requires degree >= 1");
    if (by_name_.count(name)) throw std::invalid_argument("duplicate generator name: " + name);
    gens_.push_back({name, degree});
    by_name_[name] = (int)gens_.size() - 1;
    return (int)gens_.size() - 1;
}

int GeneratorSet::index_of(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
}

LieElement& LieElement::add_term(MonId m, const Rational& c) {
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

LieElement& LieElement::operator+=(const LieElement& o) {
    for (auto& [m, c] : o.terms) add_term(m, c);
    return *this;
}

LieElement LieElement::operator+(const LieElement& o) const {
    LieElement out = *this;
    out += o;
    return out;
}

LieElement LieElement::operator-(const LieElement& o) const {
    LieElement out = *this;
    for (auto& [m, c] : o.terms) out.add_term(m, -c);
    return out;
}

LieElement LieElement::scaled(const Rational& c) const {
    LieElement out;
    if (c == 0) return out;
    for (auto& [m, k] : terms) out.terms.emplace(m, c * k);
    return out;
}

// ---- Lyndon word utilities ----

bool is_lyndon(const std::vector<int>& w) {
    int n = (int)w.size();
    if (n == 0) return false;
    for (int i = 1; i < n; ++i) {
        // compare w with its rotation starting at i; w must be strictly smaller
        // than every proper suffix-extension comparison: Lyndon iff w < every
        // proper suffix of w (standard equivalent criterion)
        bool suffix_greater = std::lexicographical_compare(
            w.begin(), w.end(), w.begin() + i, w.end());
        if (!suffix_greater) return false;
    }
    return true;
}

int standard_split(const std::vector<int>& w) {
    int n = (int)w.size();
    if (n < 2) throw std::invalid_argument("standard_split needs length >= 2");
    // the right factor is the lexicographically least proper suffix
    int best = 1;
    for (int i = 2; i < n; ++i) {
        if (std::lexicographical_compare(w.begin() + i, w.end(), w.begin() + best, w.end()))
            best = i;
    }
    return best;
}

namespace {
void gen_words(const std::map<int, int>& remaining, std::vector<int>& acc, int total,
               std::vector<std::vector<int>>& out) {
    if ((int)acc.size() == total) {
        if (is_lyndon(acc)) out.push_back(acc);
        return;
    }
    for (auto& [letter, count] : remaining) {
        if (count == 0) continue;
        auto rem = remaining;
        rem[letter] -= 1;
        acc.push_back(letter);
        gen_words(rem, acc, total, out);
        acc.pop_back();
    }
}
}  // namespace

std::vector<std::vector<int>> lyndon_words_with_content(const std::map<int, int>& content) {
    int total = 0;
    for (auto& [l, c] : content) {
        if (c < 0) throw std::invalid_argument("negative multiplicity");
        total += c;
    }
    std::vector<std::vector<int>> out;
    if (total == 0) return out;
    std::vector<int> acc;
    gen_words(content, acc, total, out);
    return out;
}

// ---- FreeLieContext ----

FreeLieContext::FreeLieContext(GeneratorSet gens, int degree_cutoff)
    : gens_(std::move(gens)), cutoff_(degree_cutoff) {
    if (cutoff_ < 1) throw std::invalid_argument("degree cutoff must be >= 1");
    for (int i = 0; i < gens_.size(); ++i) leaf(i);
}

int FreeLieContext::add_generator(const std::string& name, int degree) {
    int idx = gens_.add(name, degree);
    leaf(idx);
    basis_memo_.clear();
    basis_index_memo_.clear();
    return idx;
}

MonId FreeLieContext::leaf(int gen_index) {
    if (gen_index < 0 || gen_index >= gens_.size())
        throw std::out_of_range("generator index");
    if (gen_index < (int)leaf_ids_.size()) return leaf_ids_[gen_index];
    if (gen_index != (int)leaf_ids_.size())
        throw std::logic_error("leaf interning out of order");
    MonData d;
    d.gen = gen_index;
    d.degree = gens_.degree(gen_index);
    d.word = {gen_index};
    d.is_basis = true;
    mons_.push_back(std::move(d));
    leaf_ids_.push_back((MonId)mons_.size() - 1);
    return leaf_ids_.back();
}

bool FreeLieContext::word_less(MonId a, MonId b) const {
    return std::lexicographical_compare(mons_[a].word.begin(), mons_[a].word.end(),
                                        mons_[b].word.begin(), mons_[b].word.end());
}

MonId FreeLieContext::raw_node(MonId l, MonId r) {
    auto key = std::make_pair(l, r);
    auto it = node_ids_.find(key);
    if (it != node_ids_.end()) return it->second;
    MonData d;
    d.left = l;
    d.right = r;
    d.degree = mons_[l].degree + mons_[r].degree;
    d.word = mons_[l].word;
    d.word.insert(d.word.end(), mons_[r].word.begin(), mons_[r].word.end());
    if (l == r) {
        d.is_self_bracket = true;
        d.is_basis = mons_[l].is_basis && !mons_[l].is_self_bracket && (mons_[l].degree % 2 == 1);
    } else {
        bool kids_lyndon = mons_[l].is_basis && !mons_[l].is_self_bracket &&
                           mons_[r].is_basis && !mons_[r].is_self_bracket;
        if (kids_lyndon && word_less(l, r)) {
            d.is_basis = standard_split(d.word) == (int)mons_[l].word.size();
        }
    }
    mons_.push_back(std::move(d));
    MonId id = (MonId)mons_.size() - 1;
    node_ids_[key] = id;
    return id;
}

std::string FreeLieContext::mon_string(MonId m) const {
    const MonData& d = mons_[m];
    if (d.gen >= 0) return gens_.at(d.gen).name;
    return "[" + mon_string(d.left) + "," + mon_string(d.right) + "]";
}

MonId FreeLieContext::standard_bracketing(const std::vector<int>& word) {
    if (word.size() == 1) return leaf(word[0]);
    int split = standard_split(word);
    std::vector<int> lw(word.begin(), word.begin() + split);
    std::vector<int> rw(word.begin() + split, word.end());
    return raw_node(standard_bracketing(lw), standard_bracketing(rw));
}

const LieElement& FreeLieContext::nf_bracket(MonId a, MonId b) {
    if (!mons_[a].is_basis || !mons_[b].is_basis)
        throw std::invalid_argument("nf_bracket requires basis monomials");
    return nf_bracket_impl(a, b);
}

const LieElement& FreeLieContext::nf_bracket_impl(MonId a, MonId b) {
    auto key = std::make_pair(a, b);
    auto hit = nf_memo_.find(key);
    if (hit != nf_memo_.end()) return hit->second;

    int deg = mons_[a].degree + mons_[b].degree;
    if (deg > cutoff_)
        throw std::domain_error("bracket degree " + std::to_string(deg) +
                                " exceeds cutoff " + std::to_string(cutoff_));
    if (nf_in_progress_[key])
        throw std::logic_error("rewriting cycle at [" + mon_string(a) + "," + mon_string(b) + "]");
    nf_in_progress_[key] = true;

    LieElement out;
    // by value: recursion below interns monomials and can reallocate mons_
    const MonData da = mons_[a];
    const MonData db = mons_[b];

    auto elem_bracket_mono = [this](const LieElement& e, MonId m, bool mono_on_right) {
        LieElement acc;
        for (auto& [t, c] : e.terms) {
            const LieElement& r = mono_on_right ? nf_bracket_impl(t, m) : nf_bracket_impl(m, t);
            acc += r.scaled(c);
        }
        return acc;
    };

    if (a == b) {
        if (da.degree % 2 == 1) out.add_term(raw_node(a, a), Rational(1));
        // even degree: [a,a] = 0
    } else if (db.is_self_bracket && db.left == a) {
        // [u,[u,u]] = 0, forced by graded Jacobi for odd u
    } else if (da.is_self_bracket && da.left == b) {
        // mirror case
    } else if (word_less(b, a)) {
        const LieElement& sw = nf_bracket_impl(b, a);
        int sign = (da.degree * db.degree) % 2 == 0 ? -1 : 1;  // (-1)^{|a||b|+1}
        out = sw.scaled(Rational(sign));
    } else if (da.is_self_bracket) {
        // [[u,u],b] = 2[u,[u,b]] for odd u (graded Jacobi collapses both terms)
        MonId u = da.left;
        out = elem_bracket_mono(nf_bracket_impl(u, b), u, false).scaled(Rational(2));
    } else if (db.is_self_bracket) {
        // [a,[v,v]] = 2[[a,v],v] for odd v
        MonId v = db.left;
        out = elem_bracket_mono(nf_bracket_impl(a, v), v, true).scaled(Rational(2));
    } else {
        MonId cand = raw_node(a, b);
        if (mons_[cand].is_basis) {
            out.add_term(cand, Rational(1));
            nf_in_progress_[key] = false;
            return nf_memo_.emplace(key, std::move(out)).first->second;
        }
        // not standard, so a = [a1,a2] with word(a2) < word(b); expanding the
        // left argument keeps word lengths fixed while strictly shrinking the
        // right word, which is what makes the rewriting terminate
        if (da.gen >= 0) throw std::logic_error("non-standard bracket with leaf left argument");
        MonId a1 = da.left, a2 = da.right;
        // [[a1,a2],b] = [a1,[a2,b]] - (-1)^{|a1||a2|} [a2,[a1,b]]
        out += elem_bracket_mono(nf_bracket_impl(a2, b), a1, false);
        int s = (mons_[a1].degree * mons_[a2].degree) % 2 == 0 ? -1 : 1;
        out += elem_bracket_mono(nf_bracket_impl(a1, b), a2, false).scaled(Rational(s));
    }

    nf_in_progress_[key] = false;
    return nf_memo_.emplace(key, std::move(out)).first->second;
}

LieElement FreeLieContext::bracket(const LieElement& a, const LieElement& b) {
    LieElement out;
    for (auto& [ma, ca] : a.terms)
        for (auto& [mb, cb] : b.terms) out += nf_bracket(ma, mb).scaled(ca * cb);
    return out;
}

LieElement FreeLieContext::normal_form(MonId raw_tree) {
    if (mons_[raw_tree].gen >= 0) {
        LieElement e;
        e.add_term(raw_tree, Rational(1));
        return e;
    }
    // indices, not references: bracket() may grow mons_
    MonId l = mons_[raw_tree].left, r = mons_[raw_tree].right;
    return bracket(normal_form(l), normal_form(r));
}

LieElement FreeLieContext::element_of_generator(int gen_index) {
    LieElement e;
    e.add_term(leaf(gen_index), Rational(1));
    return e;
}

int FreeLieContext::element_degree(const LieElement& e) const {
    if (e.is_zero()) return 0;
    int deg = mons_[e.terms.begin()->first].degree;
    for (auto& [m, c] : e.terms)
        if (mons_[m].degree != deg) throw std::logic_error("inhomogeneous LieElement");
    return deg;
}

std::string FreeLieContext::to_string(const LieElement& e) const {
    if (e.is_zero()) return "0";
    // deterministic print order: (degree, bracketing string)
    std::vector<std::pair<std::string, const Rational*>> parts;
    for (auto& [m, c] : e.terms) parts.push_back({mon_string(m), &c});
    std::sort(parts.begin(), parts.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::string s;
    bool first = true;
    for (auto& [ms, c] : parts) {
        std::string cs = c->get_str();
        if (first) {
            if (cs == "1") s += ms;
            else if (cs == "-1") s += "-" + ms;
            else s += cs + "*" + ms;
            first = false;
        } else {
            if (*c > 0) {
                s += cs == "1" ? " + " + ms : " + " + cs + "*" + ms;
            } else {
                Rational n = -*c;
                std::string ns = n.get_str();
                s += ns == "1" ? " - " + ms : " - " + ns + "*" + ms;
            }
        }
    }
    return s;
}

const std::vector<MonId>& FreeLieContext::monomial_basis(int degree) {
    auto hit = basis_memo_.find(degree);
    if (hit != basis_memo_.end()) return hit->second;
    if (degree > cutoff_) throw std::domain_error("degree exceeds cutoff");

    std::vector<MonId> basis;
    // enumerate contents (multisets of generators) with total degree = degree
    std::map<int, int> content;
    std::function<void(int, int)> rec = [&](int gi, int budget) {
        if (budget == 0) {
            auto part = basis_for_content(content);
            basis.insert(basis.end(), part.begin(), part.end());
            return;
        }
        if (gi >= gens_.size()) return;
        int d = gens_.degree(gi);
        rec(gi + 1, budget);  // skip this generator
        for (int k = 1; k * d <= budget; ++k) {
            content[gi] = k;
            rec(gi + 1, budget - k * d);
        }
        content.erase(gi);
    };
    if (degree >= 1) rec(0, degree);

    std::sort(basis.begin(), basis.end(), [this](MonId x, MonId y) {
        return mon_string(x) < mon_string(y);
    });

    auto& stored = basis_memo_[degree] = std::move(basis);
    auto& index = basis_index_memo_[degree];
    for (int i = 0; i < (int)stored.size(); ++i) index[stored[i]] = i;
    return stored;
}

std::vector<MonId> FreeLieContext::basis_for_content(const std::map<int, int>& content) {
    std::vector<MonId> out;
    for (auto& w : lyndon_words_with_content(content)) out.push_back(standard_bracketing(w));
    // self-brackets [u,u] for odd-degree Lyndon monomials u with half content
    bool all_even = true;
    int half_degree = 0;
    std::map<int, int> half;
    for (auto& [g, c] : content) {
        if (c % 2 != 0) { all_even = false; break; }
        half[g] = c / 2;
        half_degree += (c / 2) * gens_.degree(g);
    }
    if (all_even && !content.empty() && half_degree % 2 == 1) {
        for (auto& w : lyndon_words_with_content(half)) {
            MonId u = standard_bracketing(w);
            out.push_back(raw_node(u, u));
        }
    }
    return out;
}

SparseVector FreeLieContext::decompose(const LieElement& e, int degree) {
    monomial_basis(degree);
    auto& index = basis_index_memo_.at(degree);
    SparseVector v;
    for (auto& [m, c] : e.terms) {
        auto it = index.find(m);
        if (it == index.end())
            throw std::logic_error("monomial " + mon_string(m) + " not in degree-" +
                                   std::to_string(degree) + " basis");
        v[it->second] = c;
    }
    return v;
}

LieElement FreeLieContext::from_coordinates(const SparseVector& v, int degree) {
    const auto& basis = monomial_basis(degree);
    LieElement e;
    for (auto& [i, c] : v) e.add_term(basis.at(i), c);
    return e;
}

}  // namespace dgla
