#include "dgla/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace dgla {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

SparseVector sv_add(const SparseVector& a, const SparseVector& b) {
    SparseVector out = a;
    for (auto& [i, v] : b) {
        auto it = out.find(i);
        if (it == out.end()) {
            out.emplace(i, v);
        } else {
            it->second += v;
            if (it->second == 0) out.erase(it);
        }
    }
    return out;
}

SparseVector sv_scale(const Rational& c, const SparseVector& a) {
    SparseVector out;
    if (c == 0) return out;
    for (auto& [i, v] : a) out.emplace(i, c * v);
    return out;
}

bool sv_is_zero(const SparseVector& a) { return a.empty(); }

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

void SparseMatrix::set(int r, int c, const Rational& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
    if (v == 0)
        data_[r].erase(c);
    else
        data_[r][c] = v;
}

Rational SparseMatrix::get(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
    auto it = data_[r].find(c);
    return it == data_[r].end() ? Rational(0) : it->second;
}

void SparseMatrix::add_to(int r, int c, const Rational& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
    auto it = data_[r].find(c);
    if (it == data_[r].end()) {
        if (v != 0) data_[r][c] = v;
    } else {
        it->second += v;
        if (it->second == 0) data_[r].erase(it);
    }
}

void SparseMatrix::append_row(const SparseVector& v) {
    if (!v.empty() && v.rbegin()->first >= cols_) throw std::out_of_range("row too wide");
    data_.push_back(v);
    ++rows_;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

SparseVector mat_apply(const SparseMatrix& a, const SparseVector& v) {
    SparseVector out;
    for (int r = 0; r < a.rows(); ++r) {
        Rational acc = 0;
        for (auto& [c, x] : a.row(r)) {
            auto it = v.find(c);
            if (it != v.end()) acc += x * it->second;
        }
        if (acc != 0) out[r] = acc;
    }
    return out;
}

SparseMatrix mat_mul(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul shape mismatch");
    SparseMatrix out(a.rows(), b.cols());
    for (int r = 0; r < a.rows(); ++r) {
        for (auto& [k, x] : a.row(r)) {
            for (auto& [c, y] : b.row(k)) out.add_to(r, c, x * y);
        }
    }
    return out;
}

RowReduceResult row_reduce(const SparseMatrix& m) {
    // working copy of rows
    std::vector<SparseVector> rows(m.rows());
    for (int r = 0; r < m.rows(); ++r) rows[r] = m.row(r);

    RowReduceResult res;
    std::vector<bool> used(m.rows(), false);
    std::vector<int> pivot_row_of;  // parallel to pivot_cols

    for (int c = 0; c < m.cols(); ++c) {
        int pr = -1;
        for (int r = 0; r < m.rows(); ++r) {
            if (used[r]) continue;
            if (rows[r].count(c)) { pr = r; break; }
        }
        if (pr < 0) continue;
        used[pr] = true;
        Rational inv = 1 / rows[pr][c];
        if (inv != 1) {
            SparseVector scaled = sv_scale(inv, rows[pr]);
            rows[pr] = std::move(scaled);
        }
        for (int r = 0; r < m.rows(); ++r) {
            if (r == pr) continue;
            auto it = rows[r].find(c);
            if (it == rows[r].end()) continue;
            Rational f = -it->second;
            rows[r] = sv_add(rows[r], sv_scale(f, rows[pr]));
        }
        res.pivot_cols.push_back(c);
        pivot_row_of.push_back(pr);
        ++res.rank;
    }

    // reduced matrix: pivot rows first (in pivot-column order), then zero rows
    res.reduced = SparseMatrix(0, m.cols());
    for (int i = 0; i < res.rank; ++i) res.reduced.append_row(rows[pivot_row_of[i]]);
    for (int r = 0; r < m.rows(); ++r) {
        bool is_pivot = false;
        for (int pr : pivot_row_of)
            if (pr == r) { is_pivot = true; break; }
        if (!is_pivot) res.reduced.append_row(SparseVector{});
    }
    return res;
}

int rank(const SparseMatrix& m) { return row_reduce(m).rank; }

std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
    RowReduceResult rr = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    std::vector<int> pivot_index(m.cols(), -1);
    for (int i = 0; i < (int)rr.pivot_cols.size(); ++i) {
        is_pivot[rr.pivot_cols[i]] = true;
        pivot_index[rr.pivot_cols[i]] = i;
    }
    std::vector<SparseVector> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        SparseVector v;
        v[c] = 1;
        for (int i = 0; i < rr.rank; ++i) {
            Rational e = rr.reduced.get(i, c);
            if (e != 0) v[rr.pivot_cols[i]] = -e;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

bool SpanSolver::reduce(SparseVector& v, SparseVector& expr) const {
    for (auto& row : echelon_) {
        auto it = v.find(row.pivot);
        if (it == v.end()) continue;
        Rational f = -it->second;
        v = sv_add(v, sv_scale(f, row.vec));
        expr = sv_add(expr, sv_scale(f, row.expr));
    }
    return v.empty();
}

bool SpanSolver::add(const SparseVector& v) {
    SparseVector w = v, expr;
    expr[added_] = 1;
    ++added_;
    if (reduce(w, expr)) return false;
    int pivot = w.begin()->first;
    Rational inv = 1 / w.begin()->second;
    Row row{sv_scale(inv, w), sv_scale(inv, expr), pivot};
    // back-substitute into existing rows to keep reduced form
    for (auto& r : echelon_) {
        auto it = r.vec.find(pivot);
        if (it == r.vec.end()) continue;
        Rational f = -it->second;
        r.vec = sv_add(r.vec, sv_scale(f, row.vec));
        r.expr = sv_add(r.expr, sv_scale(f, row.expr));
    }
    echelon_.push_back(std::move(row));
    return true;
}

bool SpanSolver::contains(const SparseVector& v) const {
    SparseVector w = v, expr;
    return reduce(w, expr);
}

std::vector<int> SpanSolver::pivots() const {
    std::vector<int> out;
    out.reserve(echelon_.size());
    for (auto& row : echelon_) out.push_back(row.pivot);
    std::sort(out.begin(), out.end());
    return out;
}

SparseVector SpanSolver::residual(const SparseVector& v) const {
    SparseVector w = v, expr;
    reduce(w, expr);
    return w;
}

std::optional<std::vector<Rational>> SpanSolver::solve(const SparseVector& v) const {
    SparseVector w = v, expr;
    if (!reduce(w, expr)) return std::nullopt;
    std::vector<Rational> out(added_, Rational(0));
    for (auto& [i, c] : expr) out[i] = -c;
    return out;
}

std::optional<std::vector<Rational>>
in_span(const SparseVector& target, const std::vector<SparseVector>& generators, int dim) {
    SpanSolver solver(dim);
    for (auto& g : generators) solver.add(g);
    auto sol = solver.solve(target);
    if (!sol) return std::nullopt;
    sol->resize(generators.size(), Rational(0));
    return sol;
}

SparseMatrix ChainComplexQ::boundary(int n) const {
    auto it = d.find(n);
    if (it != d.end()) return it->second;
    return SparseMatrix(dim(n - 1), dim(n));
}

bool ChainComplexQ::verify_square_zero() const {
    for (auto& [n, dn1] : d) {
        SparseMatrix dn = boundary(n - 1);
        if (dn.cols() != dn1.rows()) return false;
        // composite column by column
        for (int c = 0; c < dn1.cols(); ++c) {
            SparseVector col;
            for (int r = 0; r < dn1.rows(); ++r) {
                Rational v = dn1.get(r, c);
                if (v == 0) continue;
                for (int r2 = 0; r2 < dn.rows(); ++r2) {
                    Rational u = dn.get(r2, r);
                    if (u != 0) {
                        auto it2 = col.find(r2);
                        if (it2 == col.end())
                            col[r2] = u * v;
                        else {
                            it2->second += u * v;
                            if (it2->second == 0) col.erase(it2);
                        }
                    }
                }
            }
            if (!col.empty()) return false;
        }
    }
    return true;
}

HomologyAt homology_at(const ChainComplexQ& c, int n) {
    SparseMatrix dn = c.boundary(n);
    SparseMatrix dn1 = c.boundary(n + 1);
    if (dn.cols() != c.dim(n) || dn1.rows() != c.dim(n))
        throw std::invalid_argument("boundary dimension mismatch at degree " + std::to_string(n));

    std::vector<SparseVector> cycles = kernel_basis(dn);

    HomologyAt out;
    out.boundary_coords = SparseMatrix(c.dim(n), dn1.cols());
    SpanSolver span(c.dim(n));
    for (int col = 0; col < dn1.cols(); ++col) {
        SparseVector image;
        for (int r = 0; r < dn1.rows(); ++r) {
            Rational v = dn1.get(r, col);
            if (v != 0) image[r] = v;
        }
        for (auto& [r, v] : image) out.boundary_coords.set(r, col, v);
        span.add(image);
    }
    for (auto& z : cycles) {
        if (span.add(z)) {
            out.representatives.push_back(z);
            ++out.betti;
        }
    }
    return out;
}

}  // namespace dgla
