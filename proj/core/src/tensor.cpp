#include "dgla/tensor.hpp"

namespace dgla {

TensorElement tensor_add(const TensorElement& a, const TensorElement& b) {
    TensorElement out = a;
    for (auto& [w, c] : b) {
        auto it = out.find(w);
        if (it == out.end()) {
            out.emplace(w, c);
        } else {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
    }
    return out;
}

TensorElement tensor_scale(const Rational& c, const TensorElement& a) {
    TensorElement out;
    if (c == 0) return out;
    for (auto& [w, k] : a) out.emplace(w, c * k);
    return out;
}

TensorElement tensor_mul(const TensorElement& a, const TensorElement& b) {
    TensorElement out;
    for (auto& [wa, ca] : a) {
        for (auto& [wb, cb] : b) {
            std::vector<int> w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            auto it = out.find(w);
            if (it == out.end()) {
                out.emplace(std::move(w), ca * cb);
            } else {
                it->second += ca * cb;
                if (it->second == 0) out.erase(it);
            }
        }
    }
    return out;
}

int tensor_degree(const GeneratorSet& g, const std::vector<int>& word) {
    int d = 0;
    for (int i : word) d += g.degree(i);
    return d;
}

TensorElement graded_commutator(const GeneratorSet& g, const TensorElement& a,
                                const TensorElement& b) {
    if (a.empty() || b.empty()) return {};
    int da = tensor_degree(g, a.begin()->first);
    int db = tensor_degree(g, b.begin()->first);
    int sign = (da * db) % 2 == 0 ? -1 : 1;  // -(-1)^{|a||b|}
    return tensor_add(tensor_mul(a, b), tensor_scale(Rational(sign), tensor_mul(b, a)));
}

TensorElement oracle_embed_tree(const FreeLieContext& ctx, MonId tree) {
    if (ctx.mon_is_leaf(tree)) {
        TensorElement t;
        t[{ctx.mon_gen(tree)}] = 1;
        return t;
    }
    TensorElement l = oracle_embed_tree(ctx, ctx.mon_left(tree));
    TensorElement r = oracle_embed_tree(ctx, ctx.mon_right(tree));
    return graded_commutator(ctx.generators(), l, r);
}

TensorElement oracle_embed(const FreeLieContext& ctx, const LieElement& e) {
    TensorElement out;
    for (auto& [m, c] : e.terms)
        out = tensor_add(out, tensor_scale(c, oracle_embed_tree(ctx, m)));
    return out;
}

}  // namespace dgla
