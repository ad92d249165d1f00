#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dc/scalars.hpp"

namespace dc {

template <class S>
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<S> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    S& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const S& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool is_zero() const {
        for (auto& x : a)
            if (!dc::is_zero(x)) return false;
        return true;
    }
    std::vector<S> col(int j) const {
        std::vector<S> v(rows);
        for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_col(int j, const std::vector<S>& v) {
        for (int i = 0; i < rows; ++i) (*this)(i, j) = v[i];
    }
};

using Mat = Matrix<GQ>;
using PolyMat = Matrix<ParamPoly>;
using Vec = std::vector<GQ>;
using PolyVec = std::vector<ParamPoly>;

template <class A, class B>
auto operator*(const Matrix<A>& x, const Matrix<B>& y) {
    using R = decltype(std::declval<A>() * std::declval<B>());
    if (x.cols != y.rows) throw Error("matrix shape mismatch in product");
    Matrix<R> out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (is_zero(x(i, k))) continue;
            for (int j = 0; j < y.cols; ++j)
                if (!is_zero(y(k, j))) out(i, j) += x(i, k) * y(k, j);
        }
    return out;
}

template <class A, class B>
auto operator*(const Matrix<A>& x, const std::vector<B>& v) {
    using R = decltype(std::declval<A>() * std::declval<B>());
    if (x.cols != static_cast<int>(v.size())) throw Error("matrix shape mismatch in product");
    std::vector<R> out(x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k)
            if (!is_zero(x(i, k)) && !is_zero(v[k])) out[i] += x(i, k) * v[k];
    return out;
}

template <class S>
Matrix<S> operator+(Matrix<S> x, const Matrix<S>& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw Error("matrix shape mismatch in sum");
    for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
}

template <class S>
Matrix<S> operator-(Matrix<S> x, const Matrix<S>& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw Error("matrix shape mismatch in difference");
    for (size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
}

template <class S>
Matrix<S> scaled(Matrix<S> x, const GQ& c) {
    for (auto& e : x.a) e *= c;
    return x;
}

template <class S>
bool operator==(const Matrix<S>& x, const Matrix<S>& y) {
    return x.rows == y.rows && x.cols == y.cols && (x - y).is_zero();
}

template <class S>
std::vector<S> vadd(std::vector<S> x, const std::vector<S>& y) {
    for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return x;
}

template <class S>
bool vzero(const std::vector<S>& v) {
    for (auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

Mat identity(int n);
Mat conj_transpose(const Mat& m);
Mat conj_entries(const Mat& m);
Mat hstack(const std::vector<Mat>& blocks);  // blocks share rows
Mat vstack(const std::vector<Mat>& blocks);  // blocks share cols
Mat from_columns(int rows, const std::vector<Vec>& cols);
Mat evaluate(const PolyMat& m, const std::map<std::string, GQ>& point);
Vec evaluate(const PolyVec& v, const std::map<std::string, GQ>& point);
PolyMat lift(const Mat& m);

int rank(const Mat& m);
// Columns form a basis of the null space.
Mat kernel(const Mat& m);
// Columns form a basis of the column space (a subset of the columns of m).
Mat column_basis(const Mat& m);
Mat inverse(const Mat& m);
// Some x with m x = b, if one exists.
std::optional<Vec> solve(const Mat& m, const Vec& b);

// dim(ker a ∩ im m) for composable a, m.
int dim_kernel_cap_image(const Mat& a, const Mat& m);
// dim(U ∩ V) for column spans.
int dim_intersection(const Mat& u, const Mat& v);
// span(inner) ⊆ span(outer)
bool span_contains(const Mat& outer, const Mat& inner);

std::string to_string(const Mat& m);

}  // namespace dc
