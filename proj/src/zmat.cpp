#include "sst/zmat.hpp"

#include <algorithm>
#include <cstdlib>

namespace sst {

Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw error("overflow", "integer addition overflow");
    return r;
}

Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw error("overflow", "integer subtraction overflow");
    return r;
}

Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw error("overflow", "integer multiplication overflow");
    return r;
}

Int floor_div(Int a, Int b) {
    Int q = a / b, r = a % b;
    return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

Int ceil_div(Int a, Int b) {
    Int q = a / b, r = a % b;
    return (r != 0 && (r < 0) == (b < 0)) ? q + 1 : q;
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<Int>> rows) {
    std::vector<std::vector<Int>> rr;
    for (const auto& r : rows) rr.emplace_back(r);
    return from_rows(rr);
}

Mat Mat::from_rows(const std::vector<std::vector<Int>>& rows) {
    int r = int(rows.size());
    int c = r == 0 ? 0 : int(rows[0].size());
    Mat m(r, c);
    for (int i = 0; i < r; ++i) {
        if (int(rows[i].size()) != c) throw error("matrix-shape", "ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Mat Mat::column(const std::vector<Int>& v) {
    Mat m(int(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i) m.at(int(i), 0) = v[i];
    return m;
}

Mat Mat::diagonal(const std::vector<Int>& d) {
    Mat m(int(d.size()), int(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(int(i), int(i)) = d[i];
    return m;
}

std::vector<Int> Mat::col(int j) const {
    std::vector<Int> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

std::vector<Int> Mat::row(int i) const {
    std::vector<Int> v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

void Mat::set_col(int j, const std::vector<Int>& v) {
    for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
}

Mat Mat::operator*(const Mat& rhs) const {
    if (cols_ != rhs.rows_) throw error("matrix-shape", "product dimension mismatch");
    Mat out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            Int aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j)
                out.at(i, j) = checked_add(out.at(i, j), checked_mul(aik, rhs.at(k, j)));
        }
    return out;
}

Mat Mat::operator+(const Mat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw error("matrix-shape", "sum dimension mismatch");
    Mat out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = checked_add(at(i, j), rhs.at(i, j));
    return out;
}

Mat Mat::operator-(const Mat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw error("matrix-shape", "difference dimension mismatch");
    Mat out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = checked_sub(at(i, j), rhs.at(i, j));
    return out;
}

Mat Mat::transposed() const {
    Mat out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

Mat Mat::cols_slice(int from, int to) const {
    Mat out(rows_, to - from);
    for (int i = 0; i < rows_; ++i)
        for (int j = from; j < to; ++j) out.at(i, j - from) = at(i, j);
    return out;
}

Mat Mat::rows_slice(int from, int to) const {
    Mat out(to - from, cols_);
    for (int i = from; i < to; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i - from, j) = at(i, j);
    return out;
}

bool Mat::is_zero() const {
    for (Int x : a_)
        if (x != 0) return false;
    return true;
}

Mat Mat::hcat(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw error("matrix-shape", "hcat row mismatch");
    Mat out(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
    }
    return out;
}

Mat Mat::vcat(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) throw error("matrix-shape", "vcat column mismatch");
    Mat out(a.rows() + b.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        for (int i = 0; i < a.rows(); ++i) out.at(i, j) = a.at(i, j);
        for (int i = 0; i < b.rows(); ++i) out.at(a.rows() + i, j) = b.at(i, j);
    }
    return out;
}

void Mat::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void Mat::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void Mat::negate_row(int i) {
    for (int c = 0; c < cols_; ++c) at(i, c) = checked_sub(0, at(i, c));
}

void Mat::negate_col(int j) {
    for (int r = 0; r < rows_; ++r) at(r, j) = checked_sub(0, at(r, j));
}

void Mat::add_row_multiple(int dst, int src, Int k) {
    if (k == 0) return;
    for (int c = 0; c < cols_; ++c)
        at(dst, c) = checked_add(at(dst, c), checked_mul(k, at(src, c)));
}

void Mat::add_col_multiple(int dst, int src, Int k) {
    if (k == 0) return;
    for (int r = 0; r < rows_; ++r)
        at(r, dst) = checked_add(at(r, dst), checked_mul(k, at(r, src)));
}

namespace {

// Row operation on a, mirrored on u; uinv receives the inverse column
// operation so that uinv * u = I is maintained throughout.
struct SnfState {
    Mat a, u, uinv, v;

    explicit SnfState(const Mat& m)
        : a(m), u(Mat::identity(m.rows())), uinv(Mat::identity(m.rows())),
          v(Mat::identity(m.cols())) {}

    void row_add(int dst, int src, Int k) {
        a.add_row_multiple(dst, src, k);
        u.add_row_multiple(dst, src, k);
        uinv.add_col_multiple(src, dst, checked_sub(0, k));
    }
    void col_add(int dst, int src, Int k) {
        a.add_col_multiple(dst, src, k);
        v.add_col_multiple(dst, src, k);
    }
    void row_swap(int i, int j) {
        a.swap_rows(i, j);
        u.swap_rows(i, j);
        uinv.swap_cols(i, j);
    }
    void col_swap(int i, int j) {
        a.swap_cols(i, j);
        v.swap_cols(i, j);
    }
    void row_negate(int i) {
        a.negate_row(i);
        u.negate_row(i);
        uinv.negate_col(i);
    }
};

} // namespace

SmithForm smith_normal_form(const Mat& input) {
    SnfState s(input);
    const int rows = input.rows(), cols = input.cols(), n = std::min(rows, cols);

    for (int k = 0; k < n; ++k) {
        // Locate pivot: a nonzero entry of minimal magnitude in the submatrix.
        int pi = -1, pj = -1;
        for (int i = k; i < rows; ++i)
            for (int j = k; j < cols; ++j) {
                Int x = s.a.at(i, j);
                if (x != 0 && (pi < 0 || std::llabs(x) < std::llabs(s.a.at(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break; // submatrix is zero

        s.row_swap(k, pi);
        s.col_swap(k, pj);

        for (;;) {
            // Reduce the pivot column and row; remainders become new, smaller
            // pivot candidates on the next sweep, so this terminates.
            bool clean = true;
            for (int i = k + 1; i < rows; ++i) {
                Int x = s.a.at(i, k);
                if (x == 0) continue;
                s.row_add(i, k, -floor_div(x, s.a.at(k, k)));
                if (s.a.at(i, k) != 0) {
                    s.row_swap(k, i);
                    clean = false;
                }
            }
            for (int j = k + 1; j < cols; ++j) {
                Int x = s.a.at(k, j);
                if (x == 0) continue;
                s.col_add(j, k, -floor_div(x, s.a.at(k, k)));
                if (s.a.at(k, j) != 0) {
                    s.col_swap(k, j);
                    clean = false;
                }
            }
            if (!clean) continue;

            // Enforce divisibility: pivot must divide the whole submatrix.
            bool fixed = false;
            for (int i = k + 1; i < rows && !fixed; ++i)
                for (int j = k + 1; j < cols && !fixed; ++j)
                    if (s.a.at(i, j) % s.a.at(k, k) != 0) {
                        s.row_add(k, i, 1);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (s.a.at(k, k) < 0) s.row_negate(k);
    }

    SmithForm out;
    out.u = std::move(s.u);
    out.uinv = std::move(s.uinv);
    out.v = std::move(s.v);
    out.d = std::move(s.a);
    out.diag.resize(n);
    for (int k = 0; k < n; ++k) {
        out.diag[k] = out.d.at(k, k);
        if (out.diag[k] != 0) ++out.rank;
    }
    return out;
}

std::optional<std::vector<Int>> solve(const Mat& a, const std::vector<Int>& b) {
    if (int(b.size()) != a.rows()) throw error("matrix-shape", "solve rhs size mismatch");
    SmithForm s = smith_normal_form(a);
    // d y = u b, then x = v y.
    std::vector<Int> ub(a.rows(), 0);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.rows(); ++j)
            ub[i] = checked_add(ub[i], checked_mul(s.u.at(i, j), b[j]));

    std::vector<Int> y(a.cols(), 0);
    for (int i = 0; i < a.rows(); ++i) {
        Int di = i < int(s.diag.size()) ? s.diag[i] : 0;
        if (di == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % di != 0) return std::nullopt;
            y[i] = ub[i] / di;
        }
    }
    std::vector<Int> x(a.cols(), 0);
    for (int i = 0; i < a.cols(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            x[i] = checked_add(x[i], checked_mul(s.v.at(i, j), y[j]));
    return x;
}

std::optional<Mat> solve_columns(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw error("matrix-shape", "solve_columns row mismatch");
    SmithForm s = smith_normal_form(a);
    Mat ub = s.u * b;
    Mat y(a.cols(), b.cols());
    for (int c = 0; c < b.cols(); ++c) {
        for (int i = 0; i < a.rows(); ++i) {
            Int di = i < int(s.diag.size()) ? s.diag[i] : 0;
            Int rhs = ub.at(i, c);
            if (di == 0) {
                if (rhs != 0) return std::nullopt;
            } else {
                if (rhs % di != 0) return std::nullopt;
                if (i < a.cols()) y.at(i, c) = rhs / di;
            }
        }
    }
    return s.v * y;
}

Mat kernel_basis(const Mat& a) {
    if (a.cols() == 0) return Mat(0, 0);
    SmithForm s = smith_normal_form(a);
    return s.v.cols_slice(s.rank, a.cols());
}

Mat lattice_basis(const Mat& gens) {
    SmithForm s = smith_normal_form(gens);
    Mat basis(gens.rows(), s.rank);
    for (int k = 0; k < s.rank; ++k)
        for (int i = 0; i < gens.rows(); ++i)
            basis.at(i, k) = checked_mul(s.uinv.at(i, k), s.diag[k]);
    return basis;
}

bool lattice_contains(const Mat& gens, const std::vector<Int>& v) {
    return solve(gens, v).has_value();
}

bool lattice_subset(const Mat& sub_gens, const Mat& super_gens) {
    return solve_columns(super_gens, sub_gens).has_value();
}

bool lattice_equal(const Mat& a, const Mat& b) {
    return lattice_subset(a, b) && lattice_subset(b, a);
}

Mat preimage_lattice(const Mat& f, const Mat& m_gens) {
    if (m_gens.cols() > 0 && m_gens.rows() != f.rows())
        throw error("matrix-shape", "preimage lattice dimension mismatch");
    Mat stacked = m_gens.cols() > 0 ? Mat::hcat(f, m_gens) : f;
    Mat ker = kernel_basis(stacked);
    return lattice_basis(ker.rows_slice(0, f.cols()));
}

QuotientPresentation quotient_presentation(const Mat& l_basis, const Mat& m_gens) {
    const int l = l_basis.cols();
    QuotientPresentation out;
    if (l == 0) {
        out.basis = l_basis;
        return out;
    }
    Mat x;
    if (m_gens.cols() == 0) {
        x = Mat(l, 0);
    } else {
        auto solved = solve_columns(l_basis, m_gens);
        if (!solved) throw error("lattice-quotient", "relations not contained in lattice");
        x = *solved;
    }
    SmithForm s = smith_normal_form(x);
    out.basis = l_basis * s.uinv;
    out.orders.assign(l, 0);
    for (int i = 0; i < int(s.diag.size()); ++i) out.orders[i] = s.diag[i];
    return out;
}

} // namespace sst
