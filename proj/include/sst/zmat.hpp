#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include "sst/diagnostics.hpp"

namespace sst {

/// All chart arithmetic is exact 64-bit integer arithmetic with overflow
/// checks; boundary membership decisions are semantically meaningful, so no
/// floating point is allowed anywhere near the geometry or homology engines.
using Int = std::int64_t;

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);

/// Ceiling / floor division for b > 0, exact for negative numerators.
Int ceil_div(Int a, Int b);
Int floor_div(Int a, Int b);

/// Dense integer matrix, row-major.  Dimensions of zero are legal and show up
/// routinely (empty generating sets, maps to or from the zero group).
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {}

    static Mat identity(int n);
    static Mat from_rows(std::initializer_list<std::initializer_list<Int>> rows);
    static Mat from_rows(const std::vector<std::vector<Int>>& rows);
    static Mat column(const std::vector<Int>& v);
    static Mat diagonal(const std::vector<Int>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    Int at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    std::vector<Int> col(int j) const;
    std::vector<Int> row(int i) const;
    void set_col(int j, const std::vector<Int>& v);

    Mat operator*(const Mat& rhs) const;
    Mat operator+(const Mat& rhs) const;
    Mat operator-(const Mat& rhs) const;
    bool operator==(const Mat& rhs) const = default;

    Mat transposed() const;
    Mat cols_slice(int from, int to) const;     // columns [from, to)
    Mat rows_slice(int from, int to) const;
    bool is_zero() const;

    /// [a | b], matching row counts.
    static Mat hcat(const Mat& a, const Mat& b);

    /// [a ; b], matching column counts.
    static Mat vcat(const Mat& a, const Mat& b);

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void negate_row(int i);
    void negate_col(int j);
    void add_row_multiple(int dst, int src, Int k);   // row dst += k * row src
    void add_col_multiple(int dst, int src, Int k);

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

/// Smith normal form u * a * v = d with u, v unimodular and the diagonal of d
/// nonnegative with each entry dividing the next.  uinv is tracked so column
/// lattices of a can be read off without inverting u after the fact.
struct SmithForm {
    Mat u;                 // rows(a) x rows(a)
    Mat uinv;              // inverse of u
    Mat v;                 // cols(a) x cols(a)
    Mat d;                 // rows(a) x cols(a), diagonal
    std::vector<Int> diag; // min(rows, cols) entries, divisibility chain
    int rank = 0;          // number of nonzero diagonal entries
};

SmithForm smith_normal_form(const Mat& a);

/// Integer solutions of a * x = b; nullopt when none exist.
std::optional<std::vector<Int>> solve(const Mat& a, const std::vector<Int>& b);

/// Columnwise solve: x with a * x = b, or nullopt if any column fails.
std::optional<Mat> solve_columns(const Mat& a, const Mat& b);

/// Basis (as columns) of the integer kernel {x : a x = 0}.
Mat kernel_basis(const Mat& a);

/// Basis of the column lattice of gens (full column rank result).
Mat lattice_basis(const Mat& gens);

bool lattice_contains(const Mat& gens, const std::vector<Int>& v);
bool lattice_subset(const Mat& sub_gens, const Mat& super_gens);
bool lattice_equal(const Mat& a, const Mat& b);

/// Basis of the preimage lattice {x : f x in lattice(m_gens)}.
Mat preimage_lattice(const Mat& f, const Mat& m_gens);

/// Structure of a quotient L / M of lattices, M inside L.
///
/// basis is an adapted basis of L: column i generates a cyclic summand of
/// order orders[i] in the quotient (0 meaning infinite, 1 meaning the summand
/// is trivial).  Nonzero orders form a divisibility chain and precede the
/// zero (free) ones.
struct QuotientPresentation {
    Mat basis;               // n x l, adapted basis of L
    std::vector<Int> orders; // length l
};

/// l_basis must have full column rank and every column of m_gens must lie in
/// its lattice; violations throw (they indicate engine bugs, not bad input).
QuotientPresentation quotient_presentation(const Mat& l_basis, const Mat& m_gens);

} // namespace sst
