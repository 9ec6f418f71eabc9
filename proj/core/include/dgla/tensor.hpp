#ifndef DGLA_TENSOR_HPP
#define DGLA_TENSOR_HPP

#include <map>
#include <vector>

#include "dgla/lie.hpp"
#include "dgla/linalg.hpp"

namespace dgla {

// element of the free graded tensor algebra on a generator set: a finite
// Q-combination of words in generator indices
using TensorElement = std::map<std::vector<int>, Rational>;

TensorElement tensor_add(const TensorElement& a, const TensorElement& b);
TensorElement tensor_scale(const Rational& c, const TensorElement& a);
// concatenation product, extended bilinearly
TensorElement tensor_mul(const TensorElement& a, const TensorElement& b);
int tensor_degree(const GeneratorSet& g, const std::vector<int>& word);

// graded commutator a (x) b - (-1)^{|a||b|} b (x) a for homogeneous arguments
TensorElement graded_commutator(const GeneratorSet& g, const TensorElement& a,
                                const TensorElement& b);

// embedding of a bracketing tree (normalized or not) into the tensor algebra
// by recursive graded-commutator expansion; independent of the rewriting
// machinery so it can serve as its oracle
TensorElement oracle_embed_tree(const FreeLieContext& ctx, MonId tree);
TensorElement oracle_embed(const FreeLieContext& ctx, const LieElement& e);

}  // namespace dgla

#endif
