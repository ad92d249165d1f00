#include "dc/hodge.hpp"

namespace dc {

std::string theory_name(Theory t) {
    switch (t) {
        case Theory::Dolbeault: return "dolbeault";
        case Theory::BottChern: return "bc";
        case Theory::Aeppli: return "aeppli";
    }
    return "?";
}

Theory parse_theory(const std::string& s) {
    if (s == "dolbeault") return Theory::Dolbeault;
    if (s == "bc" || s == "bott-chern") return Theory::BottChern;
    if (s == "aeppli") return Theory::Aeppli;
    throw ParseError("unknown theory '" + s + "' (expected dolbeault, bc or aeppli)");
}

Hodge::Hodge(const Presentation& P) : P_(P) {
    const int n = P.n;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            Block& b = blocks_[{p, q}];
            b.dp = matrix_of<GQ>(P, [&](const Key& k) { return P.partial(k); }, {p, q}, {p + 1, q});
            b.db = matrix_of<GQ>(P, [&](const Key& k) { return P.dbar(k); }, {p, q}, {p, q + 1});
        }
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            Block& b = blocks_[{p, q}];
            b.ddb = q < n ? dp(p, q + 1) * b.db : Mat(dim(p + 1, q + 1), dim(p, q));
            b.star = build_star(p, q);
        }
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            Block& b = blocks_[{p, q}];
            const int N = dim(p, q);
            for (Theory t : {Theory::Dolbeault, Theory::BottChern, Theory::Aeppli}) {
                int i = static_cast<int>(t);
                b.lap[i] = build_laplacian(t, p, q);
                b.harm[i] = kernel(b.lap[i]);
                const Mat& K = b.harm[i];
                Mat Nm(N, N);
                Vec nv = norms(p, q);
                for (int a = 0; a < N; ++a) Nm(a, a) = nv[a];
                if (K.cols > 0) {
                    Mat KhN = conj_transpose(K) * Nm;
                    b.proj[i] = K * inverse(KhN * K) * KhN;
                } else {
                    b.proj[i] = Mat(N, N);
                }
                b.green[i] = inverse(b.lap[i] + b.proj[i]) - b.proj[i];
            }
        }
}

int Hodge::dim(int p, int q) const { return in_range(p, q) ? P_.dim(p, q) : 0; }

const Hodge::Block& Hodge::block(int p, int q) const {
    auto it = blocks_.find({p, q});
    if (it == blocks_.end()) throw Error("bidegree " + to_string(Bidegree{p, q}) + " out of range");
    return it->second;
}

namespace {
const Mat& zero_map(int rows, int cols) {
    static thread_local std::map<std::pair<int, int>, Mat> cache;
    auto [it, fresh] = cache.try_emplace({rows, cols}, rows, cols);
    return it->second;
}
}  // namespace

const Mat& Hodge::dp(int p, int q) const {
    if (!in_range(p, q)) return zero_map(dim(p + 1, q), 0);
    return block(p, q).dp;
}
const Mat& Hodge::db(int p, int q) const {
    if (!in_range(p, q)) return zero_map(dim(p, q + 1), 0);
    return block(p, q).db;
}
const Mat& Hodge::ddb(int p, int q) const {
    if (!in_range(p, q)) return zero_map(dim(p + 1, q + 1), 0);
    return block(p, q).ddb;
}

Vec Hodge::norms(int p, int q) const {
    Vec v;
    if (!in_range(p, q)) return v;
    for (auto& k : P_.basis(p, q)) v.emplace_back(P_.norm(k));
    return v;
}

Mat Hodge::adjoint(const Mat& A, Bidegree src, Bidegree dst) const {
    Mat out = conj_transpose(A);
    Vec ns = norms(src.p, src.q), nd = norms(dst.p, dst.q);
    for (int i = 0; i < out.rows; ++i)
        for (int j = 0; j < out.cols; ++j)
            if (!out(i, j).is_zero()) out(i, j) = out(i, j) * nd[j] / ns[i];
    return out;
}

Mat Hodge::dp_star(int p, int q) const { return adjoint(dp(p - 1, q), {p - 1, q}, {p, q}); }
Mat Hodge::db_star(int p, int q) const { return adjoint(db(p, q - 1), {p, q - 1}, {p, q}); }
Mat Hodge::ddb_star(int p, int q) const { return adjoint(ddb(p - 1, q - 1), {p - 1, q - 1}, {p, q}); }

GQ Hodge::inner(const Vec& a, const Vec& b, int p, int q) const {
    Vec nv = norms(p, q);
    if (a.size() != nv.size() || b.size() != nv.size()) throw Error("inner product: bidegree mismatch");
    GQ s(0);
    for (size_t i = 0; i < nv.size(); ++i) s += a[i] * b[i].conj() * nv[i];
    return s;
}

Mat Hodge::conj_matrix(int p, int q) const {
    Mat C(dim(q, p), dim(p, q));
    const auto& b = P_.basis(p, q);
    for (int j = 0; j < C.cols; ++j) {
        auto [k, s] = P_.conj(b[j]);
        int i = P_.index(q, p, k);
        if (i < 0) throw ValidationError("conjugate of " + P_.key_name(b[j]) + " lies outside the presented basis");
        C(i, j) = GQ(long(s));
    }
    return C;
}

Vec Hodge::conj_vec(const Vec& x, int p, int q) const {
    Vec c(x.size());
    for (size_t i = 0; i < x.size(); ++i) c[i] = x[i].conj();
    return conj_matrix(p, q) * c;
}

Mat Hodge::build_star(int p, int q) const {
    const int n = P_.n;
    const auto& a = P_.basis(p, q);
    const auto& c = P_.basis(n - p, n - q);
    if (a.size() != c.size()) throw ValidationError("no star operator on A^" + to_string(Bidegree{p, q}));
    const int N = static_cast<int>(a.size());
    Mat pairing(N, N);
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < N; ++k) {
            auto [w, s] = Presentation::wedge(a[i], c[k]);
            if (s) pairing(i, k) = P_.integral(Expansion{{w, GQ(long(s))}});
        }
    Mat rhs(N, N);
    Vec nv = norms(p, q);
    for (int i = 0; i < N; ++i) rhs(i, i) = nv[i];
    Mat Z = inverse(pairing) * rhs;  // column j: coordinates of conj(*b_j)
    return conj_matrix(n - p, n - q) * conj_entries(Z);
}

const Mat& Hodge::star(int p, int q) const { return block(p, q).star; }

Mat Hodge::build_laplacian(Theory t, int p, int q) const {
    const int N = dim(p, q);
    Mat L(N, N);
    auto add = [&](const Mat& m) { L = L + m; };
    auto gram = [&](const Mat& X, Bidegree src, Bidegree dst) { return adjoint(X, src, dst) * X; };
    auto cogram = [&](const Mat& Y, Bidegree src, Bidegree dst) { return Y * adjoint(Y, src, dst); };
    switch (t) {
        case Theory::Dolbeault:
            add(gram(db(p, q), {p, q}, {p, q + 1}));
            add(cogram(db(p, q - 1), {p, q - 1}, {p, q}));
            break;
        case Theory::BottChern:
            add(gram(ddb(p, q), {p, q}, {p + 1, q + 1}));
            add(cogram(ddb(p - 1, q - 1), {p - 1, q - 1}, {p, q}));
            // dbar* d' : A^{p,q} -> A^{p+1,q-1}
            if (dim(p + 1, q - 1) > 0) add(gram(db_star(p + 1, q) * dp(p, q), {p, q}, {p + 1, q - 1}));
            // dbar* d' : A^{p-1,q+1} -> A^{p,q}
            if (dim(p - 1, q + 1) > 0) add(cogram(db_star(p, q + 1) * dp(p - 1, q + 1), {p - 1, q + 1}, {p, q}));
            add(gram(db(p, q), {p, q}, {p, q + 1}));
            add(gram(dp(p, q), {p, q}, {p + 1, q}));
            break;
        case Theory::Aeppli:
            add(gram(ddb(p, q), {p, q}, {p + 1, q + 1}));
            add(cogram(ddb(p - 1, q - 1), {p - 1, q - 1}, {p, q}));
            // dbar d'* : A^{p,q} -> A^{p-1,q+1}
            if (dim(p - 1, q + 1) > 0) add(gram(db(p - 1, q) * dp_star(p, q), {p, q}, {p - 1, q + 1}));
            // dbar d'* : A^{p+1,q-1} -> A^{p,q}
            if (dim(p + 1, q - 1) > 0) add(cogram(db(p, q - 1) * dp_star(p + 1, q - 1), {p + 1, q - 1}, {p, q}));
            add(cogram(db(p, q - 1), {p, q - 1}, {p, q}));
            add(cogram(dp(p - 1, q), {p - 1, q}, {p, q}));
            break;
    }
    return L;
}

const Mat& Hodge::laplacian(Theory t, int p, int q) const { return block(p, q).lap[static_cast<int>(t)]; }
const Mat& Hodge::harmonic(Theory t, int p, int q) const { return block(p, q).harm[static_cast<int>(t)]; }
const Mat& Hodge::projector(Theory t, int p, int q) const { return block(p, q).proj[static_cast<int>(t)]; }
const Mat& Hodge::green(Theory t, int p, int q) const { return block(p, q).green[static_cast<int>(t)]; }

int Hodge::dim_quotient(Theory t, int p, int q) const {
    const int N = dim(p, q);
    switch (t) {
        case Theory::Dolbeault: return N - rank(db(p, q)) - rank(db(p, q - 1));
        case Theory::BottChern: return N - rank(vstack({dp(p, q), db(p, q)})) - rank(ddb(p - 1, q - 1));
        case Theory::Aeppli: return N - rank(ddb(p, q)) - rank(hstack({dp(p - 1, q), db(p, q - 1)}));
    }
    return 0;
}

CohomologyGroup Hodge::cohomology(Theory t, int p, int q) const {
    CohomologyGroup g{t, {p, q}, 0, {}};
    g.harmonic_basis = harmonic(t, p, q);
    g.dimension = g.harmonic_basis.cols;
    int other = dim_quotient(t, p, q);
    if (other != g.dimension)
        throw InconsistencyError(theory_name(t) + " cohomology of bidegree " + to_string(Bidegree{p, q}) +
                                 ": Laplacian kernel has dimension " + std::to_string(g.dimension) +
                                 " but the quotient has dimension " + std::to_string(other));
    return g;
}

}  // namespace dc
