#ifndef DGLA_LIE_HPP
#define DGLA_LIE_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dgla/linalg.hpp"

namespace dgla {

struct Generator {
    std::string name;
    int degree;  // >= 1
};

class GeneratorSet {
public:
    GeneratorSet() = default;
    explicit GeneratorSet(std::vector<Generator> gens);

    // returns the new generator's index; order = declaration order
    int add(const std::string& name, int degree);

    int size() const { return (int)gens_.size(); }
    const Generator& at(int i) const { return gens_.at(i); }
    int degree(int i) const { return gens_.at(i).degree; }
    int index_of(const std::string& name) const;  // -1 if absent

private:
    std::vector<Generator> gens_;
    std::map<std::string, int> by_name_;
};

using MonId = int;

// exact homogeneous Q-linear combination of interned monomials
struct LieElement {
    std::map<MonId, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    LieElement& add_term(MonId m, const Rational& c);
    LieElement& operator+=(const LieElement& o);
    LieElement operator+(const LieElement& o) const;
    LieElement operator-(const LieElement& o) const;
    LieElement scaled(const Rational& c) const;
    bool operator==(const LieElement& o) const { return terms == o.terms; }
};

// Free graded Lie algebra over Q on an ordered graded generator set, with a
// mandatory degree cutoff. Monomials are interned; the canonical basis
// consists of standard bracketings of Lyndon words in the generators together
// with self-brackets [w,w] of odd-degree Lyndon monomials w.
class FreeLieContext {
public:
    FreeLieContext(GeneratorSet gens, int degree_cutoff);

    const GeneratorSet& generators() const { return gens_; }
    int degree_cutoff() const { return cutoff_; }
    int add_generator(const std::string& name, int degree);

    // ---- monomial interning (raw trees; no normalization implied) ----
    MonId leaf(int gen_index);
    MonId raw_node(MonId l, MonId r);

    int mon_degree(MonId m) const { return mons_[m].degree; }
    bool mon_is_leaf(MonId m) const { return mons_[m].gen >= 0; }
    int mon_gen(MonId m) const { return mons_[m].gen; }
    MonId mon_left(MonId m) const { return mons_[m].left; }
    MonId mon_right(MonId m) const { return mons_[m].right; }
    const std::vector<int>& mon_word(MonId m) const { return mons_[m].word; }
    bool mon_is_basis(MonId m) const { return mons_[m].is_basis; }
    // bracket length = number of leaves
    int mon_length(MonId m) const { return (int)mons_[m].word.size(); }
    std::string mon_string(MonId m) const;

    // ---- normalization ----
    // normalized bracket of two basis monomials (memoized rewriting)
    const LieElement& nf_bracket(MonId a, MonId b);
    // bilinear bracket of normalized elements
    LieElement bracket(const LieElement& a, const LieElement& b);
    // normalize an arbitrary bracketing tree (leaves + raw nodes)
    LieElement normal_form(MonId raw_tree);

    LieElement element_of_generator(int gen_index);
    int element_degree(const LieElement& e) const;  // 0 for zero element
    std::string to_string(const LieElement& e) const;

    // ---- bases ----
    // canonical basis of the full degree component; order = (degree, then
    // lexicographic on the standard bracketing string)
    const std::vector<MonId>& monomial_basis(int degree);
    // basis of the multidegree component (content = per-generator exponents)
    std::vector<MonId> basis_for_content(const std::map<int, int>& content);

    // coordinates in monomial_basis(degree)
    SparseVector decompose(const LieElement& e, int degree);
    LieElement from_coordinates(const SparseVector& v, int degree);

private:
    struct MonData {
        int gen = -1;  // >= 0 for leaves
        MonId left = -1, right = -1;
        int degree = 0;
        std::vector<int> word;  // foliage, generator indices
        bool is_basis = false;
        bool is_self_bracket = false;
    };

    GeneratorSet gens_;
    int cutoff_;
    std::vector<MonData> mons_;
    std::vector<MonId> leaf_ids_;
    std::map<std::pair<MonId, MonId>, MonId> node_ids_;
    std::map<std::pair<MonId, MonId>, LieElement> nf_memo_;
    std::map<std::pair<MonId, MonId>, bool> nf_in_progress_;
    std::map<int, std::vector<MonId>> basis_memo_;
    std::map<int, std::map<MonId, int>> basis_index_memo_;

    bool word_less(MonId a, MonId b) const;
    void compute_basis_flag(MonId m);
    MonId standard_bracketing(const std::vector<int>& word);
    const LieElement& nf_bracket_impl(MonId a, MonId b);
};

// shared handle used across the DGL / simplicial / model layers
using LieContextPtr = std::shared_ptr<FreeLieContext>;

// Lyndon-word utilities (exposed for tests)
bool is_lyndon(const std::vector<int>& w);
// index where the standard factorization splits (start of the longest proper
// Lyndon suffix); word length must be >= 2
int standard_split(const std::vector<int>& w);
// all Lyndon words with the given content, lexicographic order; content maps
// letter -> multiplicity
std::vector<std::vector<int>> lyndon_words_with_content(const std::map<int, int>& content);

}  // namespace dgla

#endif
