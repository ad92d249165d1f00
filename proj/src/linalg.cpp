#include "dc/linalg.hpp"

namespace dc {

Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = GQ(1);
    return m;
}

Mat conj_transpose(const Mat& m) {
    Mat out(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out(j, i) = m(i, j).conj();
    return out;
}

Mat conj_entries(const Mat& m) {
    Mat out = m;
    for (auto& x : out.a) x = x.conj();
    return out;
}

Mat hstack(const std::vector<Mat>& blocks) {
    if (blocks.empty()) return {};
    int rows = blocks[0].rows, cols = 0;
    for (auto& b : blocks) {
        if (b.rows != rows) throw Error("hstack row mismatch");
        cols += b.cols;
    }
    Mat out(rows, cols);
    int off = 0;
    for (auto& b : blocks) {
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < b.cols; ++j) out(i, off + j) = b(i, j);
        off += b.cols;
    }
    return out;
}

Mat vstack(const std::vector<Mat>& blocks) {
    if (blocks.empty()) return {};
    int cols = blocks[0].cols, rows = 0;
    for (auto& b : blocks) {
        if (b.cols != cols) throw Error("vstack column mismatch");
        rows += b.rows;
    }
    Mat out(rows, cols);
    int off = 0;
    for (auto& b : blocks) {
        for (int i = 0; i < b.rows; ++i)
            for (int j = 0; j < cols; ++j) out(off + i, j) = b(i, j);
        off += b.rows;
    }
    return out;
}

Mat from_columns(int rows, const std::vector<Vec>& cols) {
    Mat out(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < out.cols; ++j) out.set_col(j, cols[j]);
    return out;
}

Mat evaluate(const PolyMat& m, const std::map<std::string, GQ>& point) {
    Mat out(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = m.a[i].eval(point);
    return out;
}

Vec evaluate(const PolyVec& v, const std::map<std::string, GQ>& point) {
    Vec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].eval(point);
    return out;
}

PolyMat lift(const Mat& m) {
    PolyMat out(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = ParamPoly(m.a[i]);
    return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (!m(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m(r, j), m(piv, j));
        GQ inv = m(r, c).inv();
        for (int j = c; j < m.cols; ++j) m(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            GQ f = m(i, c);
            for (int j = c; j < m.cols; ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int rank(const Mat& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    Mat w = m;
    return static_cast<int>(rref(w).size());
}

Mat kernel(const Mat& m) {
    Mat w = m;
    auto pivots = rref(w);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols);
        v[f] = GQ(1);
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -w(static_cast<int>(i), f);
        basis.push_back(std::move(v));
    }
    return from_columns(m.cols, basis);
}

Mat column_basis(const Mat& m) {
    Mat w = m;
    auto pivots = rref(w);
    std::vector<Vec> cols;
    for (int c : pivots) cols.push_back(m.col(c));
    return from_columns(m.rows, cols);
}

Mat inverse(const Mat& m) {
    if (m.rows != m.cols) throw Error("inverse of non-square matrix");
    int n = m.rows;
    Mat w = hstack({m, identity(n)});
    auto pivots = rref(w);
    if (static_cast<int>(pivots.size()) < n || (n > 0 && pivots[n - 1] != n - 1))
        throw Error("singular matrix");
    Mat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = w(i, n + j);
    return out;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
    Mat w = hstack({m, from_columns(m.rows, {b})});
    auto pivots = rref(w);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
    Vec x(m.cols);
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = w(static_cast<int>(i), m.cols);
    return x;
}

int dim_kernel_cap_image(const Mat& a, const Mat& m) { return rank(m) - rank(a * m); }

int dim_intersection(const Mat& u, const Mat& v) { return rank(u) + rank(v) - rank(hstack({u, v})); }

bool span_contains(const Mat& outer, const Mat& inner) { return rank(hstack({outer, inner})) == rank(outer); }

std::string to_string(const Mat& m) {
    std::string out;
    for (int i = 0; i < m.rows; ++i) {
        out += "[";
        for (int j = 0; j < m.cols; ++j) out += (j ? ", " : "") + to_string(m(i, j));
        out += "]\n";
    }
    return out;
}

}  // namespace dc
