#ifndef DGLA_LINALG_HPP
#define DGLA_LINALG_HPP

#include <gmpxx.h>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dgla {

// exact rational scalar, always reduced, denominator > 0
using Rational = mpq_class;

std::string to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

// sparse vector: index -> nonzero coefficient
using SparseVector = std::map<int, Rational>;

SparseVector sv_add(const SparseVector& a, const SparseVector& b);
SparseVector sv_scale(const Rational& c, const SparseVector& a);
bool sv_is_zero(const SparseVector& a);

class SparseMatrix {
public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, const Rational& v);
    Rational get(int r, int c) const;
    const SparseVector& row(int r) const { return data_[r]; }

    void add_to(int r, int c, const Rational& v);
    // appends a row given as a sparse vector over columns
    void append_row(const SparseVector& v);

    bool operator==(const SparseMatrix& o) const;

private:
    int rows_, cols_;
    std::vector<SparseVector> data_;
};

SparseVector mat_apply(const SparseMatrix& a, const SparseVector& v);
SparseMatrix mat_mul(const SparseMatrix& a, const SparseMatrix& b);

struct RowReduceResult {
    int rank = 0;
    std::vector<int> pivot_cols;
    SparseMatrix reduced;
};

// exact RREF; pivot choice: lowest column index first, then lowest row index
RowReduceResult row_reduce(const SparseMatrix& m);

int rank(const SparseMatrix& m);

// exact basis of the null space, dimension cols - rank
std::vector<SparseVector> kernel_basis(const SparseMatrix& m);

// coefficients expressing target in the span of the generators, if any;
// deterministic representative (free variables set to zero)
std::optional<std::vector<Rational>>
in_span(const SparseVector& target, const std::vector<SparseVector>& generators, int dim);

// incremental echelon solver: absorb generator vectors once, then answer
// repeated membership queries against the same span
class SpanSolver {
public:
    explicit SpanSolver(int dim) : dim_(dim) {}

    // returns true if v was independent of the current span
    bool add(const SparseVector& v);

    int dim() const { return dim_; }
    int rank() const { return (int)echelon_.size(); }

    bool contains(const SparseVector& v) const;
    // coefficients over the vectors passed to add(), in insertion order
    std::optional<std::vector<Rational>> solve(const SparseVector& v) const;
    // canonical representative of v modulo the span (fully reduced against
    // the internal reduced echelon form)
    SparseVector residual(const SparseVector& v) const;
    // pivot coordinates of the reduced echelon form, ascending
    std::vector<int> pivots() const;

private:
    int dim_;
    // echelon rows paired with their expression in the original generators
    struct Row { SparseVector vec; SparseVector expr; int pivot; };
    std::vector<Row> echelon_;
    int added_ = 0;
    bool reduce(SparseVector& v, SparseVector& expr) const;
};

struct GradedDimension {
    std::map<int, int> dims;
    int at(int n) const {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    }
};

// chain complex over Q with labeled bases; d[n] maps degree n to degree n-1
struct ChainComplexQ {
    std::map<int, std::vector<std::string>> labels;
    std::map<int, SparseMatrix> d;

    int dim(int n) const {
        auto it = labels.find(n);
        return it == labels.end() ? 0 : (int)it->second.size();
    }
    SparseMatrix boundary(int n) const;  // zero matrix if absent
    // verifies d_{n} . d_{n+1} = 0 for all adjacent pairs in range
    bool verify_square_zero() const;
};

struct HomologyAt {
    int betti = 0;
    std::vector<SparseVector> representatives;  // cycles in degree-n coordinates
    SparseMatrix boundary_coords;               // image of d_{n+1}, column-wise
};

HomologyAt homology_at(const ChainComplexQ& c, int n);

}  // namespace dgla

#endif
