#include "dc/canonical.hpp"

namespace dc {

namespace {

PolyVec lift_vec(const Vec& v, const RingPtr& ring) {
    PolyVec out;
    out.reserve(v.size());
    for (auto& x : v) out.emplace_back(ring, x);
    return out;
}

std::tuple<int, int, int> tkey(Theory t, int p, int q) { return {static_cast<int>(t), p, q}; }

Mat diag_norms(const Hodge& H, int p, int q) {
    Vec nv = H.norms(p, q);
    Mat N(static_cast<int>(nv.size()), static_cast<int>(nv.size()));
    for (size_t i = 0; i < nv.size(); ++i) N(i, i) = nv[i];
    return N;
}

int kernel_dim(const Mat& m) { return m.cols - rank(m); }

}  // namespace

PolyVec DeformationSeries::total() const {
    PolyVec out = pieces.at(0);
    for (size_t k = 1; k < pieces.size(); ++k) out = vadd(out, pieces[k]);
    return out;
}

Vec DeformationSeries::at(const Point& pt) const { return evaluate(total(), pt); }

std::pair<bool, bool> weak_ddbar_predicates(const Hodge& H, int p, int q) {
    Mat k1 = kernel(H.ddb(p - 1, q + 1));
    Mat src1 = H.dp(p - 1, q + 1) * k1;
    Mat target1 = H.db(p, q) * kernel(H.dp(p, q));
    bool first = span_contains(target1, src1);
    Mat k2 = kernel(H.ddb(p, q + 1));
    Mat src2 = H.dp(p, q + 1) * k2;
    bool second = span_contains(H.ddb(p, q), src2);
    return {first, second};
}

BeltramiFamily working_family(const BeltramiFamily& fam, int order) {
    return fam.with_order(order + 2 * std::max(1, fam.max_degree()));
}

Canonical::Canonical(const Deformation& D, int order) : D_(D), order_(order) {
    if (order < 1) throw ParseError("truncation order must be positive");
    if (D.ring()->order < order + D.max_degree())
        throw Error("family ring order " + std::to_string(D.ring()->order) + " too small for truncation order " +
                    std::to_string(order));
}

const Mat& Canonical::recursion_map(Theory t, int p, int q) const {
    auto key = tkey(t, p, q);
    auto it = rmap_.find(key);
    if (it != rmap_.end()) return it->second;
    const Hodge& H = hodge();
    Mat R;
    switch (t) {
        case Theory::Aeppli:
            R = H.green(t, p, q) * H.ddb_star(p + 1, q + 1);
            break;
        case Theory::BottChern: {
            const int m = H.dim(p, q + 1);
            Mat inner = H.dp(p - 1, q + 1) * H.dp_star(p, q + 1) + identity(m);
            R = scaled(H.green(t, p, q) * H.db_star(p, q + 1) * inner, GQ(-1));
            break;
        }
        case Theory::Dolbeault:
            R = H.in_range(p, q + 1) ? H.db_star(p, q + 1) * H.green(t, p, q + 1) : Mat(H.dim(p, q), 0);
            break;
    }
    return rmap_.emplace(key, std::move(R)).first->second;
}

PolyMat Canonical::step(Theory t, int p, int q, int k) const {
    auto key = std::make_tuple(static_cast<int>(t), p, q, k);
    auto it = steps_.find(key);
    if (it != steps_.end()) return it->second;
    const Hodge& H = hodge();
    PolyMat T;
    switch (t) {
        case Theory::Aeppli:
            T = H.dp(p, q + 1) * (D_.iphi(p + 1, q, k) * H.dp(p, q));
            break;
        case Theory::BottChern:
            T = H.dp(p - 1, q + 1) * D_.iphi(p, q, k);
            break;
        case Theory::Dolbeault:
            T = D_.lie(p, q, k);
            break;
    }
    return steps_.emplace(key, std::move(T)).first->second;
}

DeformationSeries Canonical::series(Theory t, int p, int q, const Vec& sigma0) const {
    const Hodge& H = hodge();
    if (static_cast<int>(sigma0.size()) != H.dim(p, q)) throw Error("sigma0 has the wrong length");
    DeformationSeries s;
    s.theory = t;
    s.bidegree = {p, q};
    s.sigma0 = sigma0;
    s.pieces.push_back(lift_vec(sigma0, D_.ring()));
    const int maxdeg = D_.max_degree();
    const Mat& R = recursion_map(t, p, q);
    int zero_run = 0;
    if (maxdeg == 0) s.terminated = true;
    for (int k = 1; k <= order_ && !s.terminated; ++k) {
        PolyVec acc(R.cols);
        for (int j = 1; j <= std::min(k, maxdeg); ++j) acc = vadd(acc, step(t, p, q, j) * s.pieces[k - j]);
        PolyVec sk = R * acc;
        zero_run = vzero(sk) ? zero_run + 1 : 0;
        s.pieces.push_back(std::move(sk));
        if (zero_run >= maxdeg) s.terminated = true;
    }
    while (s.pieces.size() > 1 && vzero(s.pieces.back())) s.pieces.pop_back();
    if (s.terminated) {
        PolyVec sig = s.total();
        PolyVec rhs = vadd(lift_vec(sigma0, D_.ring()), R * (step(t, p, q, 0) * sig));
        s.certified = rhs == sig;
    }
    return s;
}

DeformationSeries Canonical::full_deformation(Theory t, int p, int q, const Vec& y) const {
    const Hodge& H = hodge();
    // closedness precondition
    bool closed = false;
    switch (t) {
        case Theory::Aeppli: closed = vzero(H.ddb(p, q) * y); break;
        case Theory::BottChern: closed = vzero(H.dp(p, q) * y) && vzero(H.db(p, q) * y); break;
        case Theory::Dolbeault: closed = vzero(H.db(p, q) * y); break;
    }
    if (!closed) throw ValidationError("full deformation: y is not closed for " + theory_name(t));
    Vec h = H.projector(t, p, q) * y;
    Vec rest = y;
    for (size_t i = 0; i < rest.size(); ++i) rest[i] -= h[i];
    DeformationSeries s = series(t, p, q, h);
    PolyVec tail;
    auto fail = [&] {
        throw InconsistencyError("Hodge decomposition of y fails for " + theory_name(t) + " in " +
                                 to_string(Bidegree{p, q}));
    };
    switch (t) {
        case Theory::Aeppli: {
            Mat a = H.dp(p - 1, q), b = H.db(p, q - 1);
            auto x = solve(hstack({a, b}), rest);
            if (!x) fail();
            Vec v(x->begin(), x->begin() + a.cols), u(x->begin() + a.cols, x->end());
            tail = vadd(lift_vec(a * v, D_.ring()), D_.dbar_phi(p, q - 1) * u);
            break;
        }
        case Theory::BottChern: {
            auto u = solve(H.ddb(p - 1, q - 1), rest);
            if (!u) fail();
            tail = D_.ddbar_phi(p - 1, q - 1) * *u;
            break;
        }
        case Theory::Dolbeault: {
            auto u = solve(H.db(p, q - 1), rest);
            if (!u) fail();
            tail = D_.dbar_phi(p, q - 1) * *u;
            break;
        }
    }
    s.sigma0 = y;
    const int top = D_.ring()->order;
    for (int k = 0; k <= top; ++k) {
        PolyVec part(tail.size());
        bool any = false;
        for (size_t i = 0; i < tail.size(); ++i) {
            part[i] = tail[i].is_zero() ? ParamPoly(D_.ring(), GQ(0)) : tail[i].homogeneous_part(k);
            any = any || !part[i].is_zero();
        }
        if (!any) continue;
        while (static_cast<int>(s.pieces.size()) <= k) s.pieces.push_back(PolyVec(tail.size()));
        s.pieces[k] = vadd(s.pieces[k], part);
    }
    return s;
}

PolyVec Canonical::obstruction(const DeformationSeries& s) const {
    auto [p, q] = s.bidegree;
    PolyVec sig = s.total();
    switch (s.theory) {
        case Theory::Aeppli: return D_.ddbar_phi(p, q) * sig;
        case Theory::BottChern: return D_.d_phi(p, q) * sig;
        case Theory::Dolbeault: return D_.dbar_phi(p, q) * sig;
    }
    return {};
}

bool Canonical::unobstructed(const DeformationSeries& s) const { return s.certified && vzero(obstruction(s)); }

HarmonicityCheck Canonical::harmonicity(const DeformationSeries& s, const Point& pt) const {
    const Hodge& H = hodge();
    auto [p, q] = s.bidegree;
    HarmonicityCheck c;
    PolyVec sig = s.total();
    PolyVec x = step(Theory::Aeppli, p, q, 0) * sig;
    c.deformed_closed = vzero(evaluate(D_.ddbar_phi(p, q) * sig, pt));
    c.bc_projection_zero = !H.in_range(p + 1, q + 1) || vzero(H.projector(Theory::BottChern, p + 1, q + 1) * evaluate(x, pt));
    c.in_ker_d = vzero(H.db(p + 1, q + 1) * x) && vzero(H.dp(p + 1, q + 1) * x);
    return c;
}

bool Canonical::unipotent(Theory t, int p, int q) const {
    PolyMat T = step(t, p, q, 0);
    for (auto& e : T.a)
        if (!e.homogeneous_part(0).is_zero()) return false;
    return true;
}

const std::vector<DeformationSeries>& Canonical::harmonic_series(Theory t, int p, int q) const {
    auto key = tkey(t, p, q);
    auto it = series_.find(key);
    if (it != series_.end()) return it->second;
    std::vector<DeformationSeries> out;
    const Hodge& H = hodge();
    if (H.in_range(p, q)) {
        const Mat& K = H.harmonic(t, p, q);
        for (int l = 0; l < K.cols; ++l) out.push_back(series(t, p, q, K.col(l)));
    }
    return series_.emplace(key, std::move(out)).first->second;
}

const PolyMat& Canonical::rank_matrix(Theory t, int p, int q) const {
    auto key = tkey(t, p, q);
    auto it = rank_.find(key);
    if (it != rank_.end()) return it->second;
    const Hodge& H = hodge();
    const auto& ser = harmonic_series(t, p, q);
    std::vector<PolyVec> cols;
    Mat functional;
    if (t == Theory::Aeppli) {
        functional = H.in_range(p + 1, q + 1)
                         ? conj_transpose(H.harmonic(Theory::BottChern, p + 1, q + 1)) * diag_norms(H, p + 1, q + 1)
                         : Mat(0, H.dim(p + 1, q + 1));
    }
    for (auto& s : ser) {
        if (!s.certified)
            throw InconsistencyError(theory_name(t) + " series in " + to_string(Bidegree{p, q}) +
                                     " did not terminate within order " + std::to_string(order_));
        switch (t) {
            case Theory::Aeppli: cols.push_back(functional * (step(t, p, q, 0) * s.total())); break;
            case Theory::BottChern: cols.push_back(D_.d_phi(p, q) * s.total()); break;
            case Theory::Dolbeault: cols.push_back(D_.dbar_phi(p, q) * s.total()); break;
        }
    }
    int rows = 0;
    switch (t) {
        case Theory::Aeppli: rows = functional.rows; break;
        case Theory::BottChern: rows = H.dim(p + 1, q) + H.dim(p, q + 1); break;
        case Theory::Dolbeault: rows = H.dim(p, q + 1); break;
    }
    PolyMat M(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < M.cols; ++j) M.set_col(j, cols[j]);
    return rank_.emplace(key, std::move(M)).first->second;
}

JumpInvariants Canonical::jump_invariants(const PointOperators& O, int p, int q) const {
    JumpInvariants j;
    const Hodge& H = hodge();
    if (!H.in_range(p, q)) return j;  // negative-index convention
    const Point& pt = O.point();
    j.v = rank(evaluate(rank_matrix(Theory::BottChern, p, q), pt));
    j.w = rank(evaluate(rank_matrix(Theory::Aeppli, p, q), pt));
    j.v_dol = rank(evaluate(rank_matrix(Theory::Dolbeault, p, q), pt));
    const int hbc = H.harmonic(Theory::BottChern, p, q).cols;
    const int ha = H.harmonic(Theory::Aeppli, p, q).cols;
    const int hd = H.harmonic(Theory::Dolbeault, p, q).cols;
    j.v_direct = hbc - kernel_dim(vstack({H.dp(p, q), O.dbar_phi(p, q), H.ddb_star(p, q)}));
    j.w_direct = ha - kernel_dim(vstack({O.ddbar_phi(p, q), H.dp_star(p, q), H.db_star(p, q)}));
    j.v_dol_direct = hd - kernel_dim(vstack({O.dbar_phi(p, q), H.db_star(p, q)}));
    auto check = [&](const char* name, int a, int b) {
        if (a != b)
            throw InconsistencyError(std::string(name) + " in " + to_string(Bidegree{p, q}) + ": rank matrix gives " +
                                     std::to_string(a) + ", kernel dimensions give " + std::to_string(b));
    };
    check("v", j.v, j.v_direct);
    check("w", j.w, j.w_direct);
    check("Dolbeault v", j.v_dol, j.v_dol_direct);
    return j;
}

UnobstructednessReport Canonical::unobstructedness(Theory t, int p, int q, const std::vector<Point>& points) const {
    UnobstructednessReport r;
    r.theory = t;
    r.bidegree = {p, q};
    for (auto& s : harmonic_series(t, p, q)) {
        ClassVerdict c;
        c.certified = s.certified;
        PolyVec obs = obstruction(s);
        c.unobstructed = s.certified && vzero(obs);
        for (auto& pt : points)
            if (!vzero(evaluate(obs, pt))) c.failing_points.push_back(pt);
        r.unobstructed = r.unobstructed && c.unobstructed;
        r.classes.push_back(std::move(c));
    }
    auto preds = weak_ddbar_predicates(hodge(), p, q);
    if (t == Theory::BottChern) r.predicate = preds.first;
    if (t == Theory::Aeppli) r.predicate = preds.second;
    if (r.predicate && *r.predicate && !r.unobstructed)
        throw InconsistencyError("weak ddbar predicate holds in " + to_string(Bidegree{p, q}) + " but the " +
                                 theory_name(t) + " deformations are obstructed");
    return r;
}

}  // namespace dc
