#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "quadcx/error.hpp"

namespace quadcx {

using Rat = mpq_class;

// n/d in lowest terms
Rat make_rat(long n, long d);
std::string rat_str(const Rat& r);
Rat rat_parse(const std::string& s);

// Dense row-major matrix over Q.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols);
    Mat(int rows, int cols, std::vector<Rat> entries);
    Mat(std::initializer_list<std::initializer_list<long>> rows);

    static Mat identity(int n);
    static Mat zero(int rows, int cols) { return Mat(rows, cols); }
    static Mat column(const std::vector<Rat>& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const std::vector<Rat>& entries() const { return e_; }

    Mat transpose() const;
    Mat block(int r0, int c0, int nr, int nc) const;
    void set_block(int r0, int c0, const Mat& b);
    Mat col(int j) const { return block(0, j, rows_, 1); }
    Mat select_cols(const std::vector<int>& js) const;
    Mat select_rows(const std::vector<int>& is) const;
    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(const Rat& s);

    friend bool operator==(const Mat& a, const Mat& b);
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(const Mat& a, const Mat& b);
    friend Mat operator*(const Rat& s, Mat a) { return a *= s; }
    friend Mat operator-(Mat a) { return a *= Rat(-1); }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> e_;
};

Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
Mat block_diag(const Mat& a, const Mat& b);
// [[a, b], [c, d]] with shapes checked
Mat block2(const Mat& a, const Mat& b, const Mat& c, const Mat& d);

struct Rref {
    Mat r;
    std::vector<int> pivots;
};

Rref rref(const Mat& m);
int rank(const Mat& m);
// Canonical RREF null-space basis, one column per free variable in increasing order.
Mat kernel_basis(const Mat& m);
// Particular solution with free variables set to zero.
std::optional<Mat> solve_linear(const Mat& a, const Mat& b);
Mat solve_or_throw(const Mat& a, const Mat& b, const char* what);
Rat det(const Mat& m);
std::optional<Mat> inverse(const Mat& m);
Mat inverse_or_throw(const Mat& m);

// Basis of the column space made of the pivot columns of m.
Mat image_basis(const Mat& m);
// Canonical basis of the column span: depends only on the subspace.
Mat canonical_basis(const Mat& span);
// Columns of `m` lie in the column span of `span`.
bool span_contains(const Mat& span, const Mat& m);
bool same_span(const Mat& a, const Mat& b);
// Left-inverse coordinates of x in a canonical kernel basis: rows at the free indices.
std::vector<int> free_rows(const Mat& canonical);

}  // namespace quadcx
