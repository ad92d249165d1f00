#include "dc/beltrami.hpp"

#include <algorithm>

namespace dc {

using nlohmann::json;

namespace {

// Bidegrees visited by the operator tables; a margin of two keeps every composite well-shaped.
template <class F>
void for_each_bidegree(int n, F&& f) {
    for (int p = -2; p <= n + 2; ++p)
        for (int q = -2; q <= n + 2; ++q) f(p, q);
}

std::string where(int p, int q) { return "bidegree " + to_string(Bidegree{p, q}); }

}  // namespace

BeltramiFamily BeltramiFamily::from_json(const json& j, const Presentation& P, int order) {
    BeltramiFamily fam;
    try {
        fam.ring = make_ring(j.at("params").get<std::vector<std::string>>(), order);
        for (auto& t : j.at("terms")) {
            BeltramiTerm term;
            term.coeff = ParamPoly(fam.ring, t.contains("coeff") ? json_scalar(t.at("coeff")) : GQ(1));
            for (auto& [name, e] : t.at("monomial").items()) {
                if (fam.ring->index_of(name) < 0) throw ParseError("beltrami: unknown parameter '" + name + "'");
                ParamPoly v = ParamPoly::variable(fam.ring, name);
                for (int i = 0; i < e.get<int>(); ++i) term.coeff *= v;
            }
            auto vec = t.at("vector").get<std::string>();
            auto form = t.at("form").get<std::string>();
            term.vec = P.vector_of(vec);
            term.form = P.slot_of(form);
            if (term.vec < 0) throw ParseError("beltrami: unknown vector '" + vec + "'");
            if (term.form < 0) throw ParseError("beltrami: unknown generator '" + form + "'");
            if (!(P.bidegree(Key{P.zero_weight(), 1u << term.form}) == Bidegree{0, 1}))
                throw ValidationError("beltrami: form '" + form + "' is not a (0,1) generator");
            if (!term.coeff.homogeneous_part(0).is_zero())
                throw ValidationError("beltrami: term " + vec + " (x) " + form + " does not vanish at t = 0");
            if (!term.coeff.is_zero()) fam.terms.push_back(std::move(term));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("beltrami: ") + e.what());
    }
    return fam;
}

BeltramiFamily BeltramiFamily::zero(int order) {
    BeltramiFamily fam;
    fam.ring = make_ring({}, order);
    return fam;
}

int BeltramiFamily::max_degree() const {
    int d = 0;
    for (auto& t : terms) d = std::max(d, t.coeff.degree());
    return d;
}

BeltramiFamily BeltramiFamily::with_order(int order) const {
    BeltramiFamily fam;
    fam.ring = dc::with_order(ring, order);
    for (auto& t : terms) fam.terms.push_back({t.coeff.rebase(fam.ring), t.vec, t.form});
    return fam;
}

BeltramiFamily BeltramiFamily::substitute(const std::map<std::string, ParamPoly>& images,
                                          const RingPtr& target) const {
    BeltramiFamily fam;
    fam.ring = target;
    for (auto& t : terms) {
        ParamPoly c = t.coeff.substitute(images, target);
        if (!c.is_zero()) fam.terms.push_back({c, t.vec, t.form});
    }
    return fam;
}

std::string BeltramiFamily::to_string(const Presentation& P) const {
    if (terms.empty()) return "0";
    std::string out;
    for (auto& t : terms) {
        if (!out.empty()) out += " + ";
        out += "(" + dc::to_string(t.coeff) + ")*" + P.vectors[t.vec] + "(x)" + P.gen_names[t.form];
    }
    return out;
}

Deformation::Deformation(const Hodge& H, BeltramiFamily fam, bool verify) : H_(H), fam_(std::move(fam)) {
    maxdeg_ = fam_.max_degree();
    const Presentation& P = pres();
    for_each_bidegree(P.n, [&](int p, int q) {
        auto& v = contr_[{p, q}];
        for (auto& t : fam_.terms) {
            Key omega{P.zero_weight(), 1u << t.form};
            std::function<Expansion(const Key&)> op = [&](const Key& k) {
                Expansion out;
                for (auto& [k2, c] : P.contract(t.vec, k)) {
                    auto [w, s] = Presentation::wedge(omega, k2);
                    if (s) accumulate(out, w, s > 0 ? c : -c);
                }
                return out;
            };
            v.push_back(matrix_of<GQ>(P, op, {p, q}, {p - 1, q + 1}));
        }
    });
    for_each_bidegree(P.n, [&](int p, int q) {
        auto& v = lie_[{p, q}];
        for (size_t i = 0; i < fam_.terms.size(); ++i) {
            if (p > P.n + 1 || q > P.n + 1) {
                v.emplace_back(H_.dim(p, q + 1), H_.dim(p, q));
                continue;
            }
            v.push_back(term_contraction(i, p + 1, q) * H_.dp(p, q) -
                        H_.dp(p - 1, q + 1) * term_contraction(i, p, q));
        }
    });
    if (verify) {
        auto rep = check_maurer_cartan();
        if (!rep.ok) throw ValidationError(rep.failures.front());
    }
}

const Mat& Deformation::term_contraction(size_t term, int p, int q) const {
    auto it = contr_.find({p, q});
    if (it == contr_.end()) throw Error("contraction requested outside the operator table at " + where(p, q));
    return it->second.at(term);
}

PolyMat Deformation::combine(int, int, int k, const std::vector<Mat>& per_term, int rows, int cols) const {
    PolyMat out(rows, cols);
    for (size_t i = 0; i < per_term.size(); ++i) {
        const ParamPoly c = k == 0 ? fam_.terms[i].coeff : fam_.terms[i].coeff.homogeneous_part(k);
        if (c.is_zero()) continue;
        const Mat& m = per_term[i];
        for (int r = 0; r < rows; ++r)
            for (int s = 0; s < cols; ++s)
                if (!m(r, s).is_zero()) out(r, s) += c * m(r, s);
    }
    for (auto& e : out.a)
        if (e.ring() == nullptr) e = ParamPoly(fam_.ring, e.constant_term());
    return out;
}

PolyMat Deformation::iphi(int p, int q, int k) const {
    return combine(p, q, k, contr_.at({p, q}), H_.dim(p - 1, q + 1), H_.dim(p, q));
}

PolyMat Deformation::lie(int p, int q, int k) const {
    return combine(p, q, k, lie_.at({p, q}), H_.dim(p, q + 1), H_.dim(p, q));
}

PolyMat Deformation::dbar_phi(int p, int q) const { return lift(H_.db(p, q)) - lie(p, q); }

PolyMat Deformation::d_phi(int p, int q) const {
    PolyMat top = lift(H_.dp(p, q)), bottom = dbar_phi(p, q);
    PolyMat out(top.rows + bottom.rows, H_.dim(p, q));
    for (int j = 0; j < out.cols; ++j) {
        for (int i = 0; i < top.rows; ++i) out(i, j) = top(i, j);
        for (int i = 0; i < bottom.rows; ++i) out(top.rows + i, j) = bottom(i, j);
    }
    return out;
}

PolyMat Deformation::ddbar_phi(int p, int q) const { return H_.dp(p, q + 1) * dbar_phi(p, q); }

PolyMat Deformation::bracket_lie(int p, int q, int j, int k) const {
    return lie(p, q + 1, j) * lie(p, q, k) + lie(p, q + 1, k) * lie(p, q, j);
}

ValidationReport Deformation::check_maurer_cartan() const {
    ValidationReport rep;
    const int n = pres().n;
    for (int k = 1; k <= 2 * maxdeg_ && k <= fam_.ring->order; ++k)
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) {
                PolyMat lhs = lift(H_.db(p, q + 1)) * lie(p, q, k) + lie(p, q + 1, k) * lift(H_.db(p, q));
                PolyMat rhs(lhs.rows, lhs.cols);
                for (int j = 1; j < k; ++j) rhs = rhs + lie(p, q + 1, j) * lie(p, q, k - j);
                if (!(lhs - rhs).is_zero()) {
                    rep.fail("Maurer-Cartan equation fails at order " + std::to_string(k) + " on " + where(p, q));
                    return rep;
                }
            }
    rep.notes.push_back("Maurer-Cartan verified through order " + std::to_string(2 * maxdeg_));
    return rep;
}

ValidationReport Deformation::check_nilpotent() const {
    ValidationReport rep;
    const int n = pres().n;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            if (!(dbar_phi(p, q + 1) * dbar_phi(p, q)).is_zero()) rep.fail("dbar_phi^2 != 0 on " + where(p, q));
            PolyMat anti = H_.dp(p, q + 1) * dbar_phi(p, q) + dbar_phi(p + 1, q) * lift(H_.dp(p, q));
            if (!anti.is_zero()) rep.fail("d' dbar_phi + dbar_phi d' != 0 on " + where(p, q));
        }
    return rep;
}

ValidationReport Deformation::check_cartan() const {
    ValidationReport rep;
    const int n = pres().n;
    const GQ half(Rational(1, 2));
    for (int j = 1; j <= 2 * maxdeg_; ++j)
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) {
                PolyMat lhs = iphi(p, q + 1, j) * H_.db(p, q);
                PolyMat rhs = H_.db(p - 1, q + 1) * iphi(p, q, j);
                for (int l = 1; l < j; ++l) {
                    rhs = rhs - iphi(p, q + 1, l) * (H_.dp(p - 1, q + 1) * iphi(p, q, j - l));
                    PolyMat a = H_.dp(p - 2, q + 2) * (iphi(p - 1, q + 1, l) * iphi(p, q, j - l));
                    PolyMat b = iphi(p, q + 1, j - l) * (iphi(p + 1, q, l) * H_.dp(p, q));
                    rhs = rhs + scaled(a + b, half);
                }
                if (!(lhs - rhs).is_zero())
                    rep.fail("Cartan identity fails at order " + std::to_string(j) + " on " + where(p, q));
            }
    if (rep.ok) rep.notes.push_back("Cartan identity verified through order " + std::to_string(2 * maxdeg_));
    return rep;
}

ValidationReport Deformation::check_derivation() const {
    ValidationReport rep;
    const Presentation& P = pres();
    const std::uint32_t all = 1u << (2 * P.n);
    for (size_t i = 0; i < fam_.terms.size(); ++i) {
        const auto& t = fam_.terms[i];
        Key omega{P.zero_weight(), 1u << t.form};
        auto ip = [&](const Expansion& x) {
            Expansion out;
            for (auto& [k, c] : x)
                for (auto& [k2, c2] : P.contract(t.vec, k)) {
                    auto [w, s] = Presentation::wedge(omega, k2);
                    if (s) accumulate(out, w, c * (s > 0 ? c2 : -c2));
                }
            return out;
        };
        auto wedge_exp = [](const Expansion& x, const Expansion& y) { return wedge(x, y); };
        // Single generators on the left suffice: the rule then extends by induction on length.
        for (std::uint32_t a = 1; a < all; a <<= 1)
            for (std::uint32_t b = 0; b < all; ++b) {
                if (a & b) continue;
                Expansion x{{Key{P.zero_weight(), a}, GQ(1)}}, y{{Key{P.zero_weight(), b}, GQ(1)}};
                Expansion lhs = ip(wedge_exp(x, y));
                Expansion rhs = wedge_exp(ip(x), y);
                for (auto& [k, c] : wedge_exp(x, ip(y))) accumulate(rhs, k, c);
                if (lhs != rhs) {
                    rep.fail("i_phi is not a derivation for term " + std::to_string(i) + " on " +
                             P.key_name(x.begin()->first) + ", " + P.key_name(y.begin()->first));
                    return rep;
                }
            }
    }
    return rep;
}

PointOperators::PointOperators(const Deformation& D, Point point) : H_(D.hodge()), pt_(std::move(point)) {
    const auto& terms = D.family().terms;
    std::vector<GQ> c;
    for (auto& t : terms) c.push_back(t.coeff.eval(pt_));
    const int n = H_.n();
    for_each_bidegree(n, [&](int p, int q) {
        Block& b = blocks_[{p, q}];
        b.iphi = Mat(H_.dim(p - 1, q + 1), H_.dim(p, q));
        for (size_t i = 0; i < terms.size(); ++i)
            if (!c[i].is_zero()) b.iphi = b.iphi + scaled(D.term_contraction(i, p, q), c[i]);
    });
    for_each_bidegree(n, [&](int p, int q) {
        if (p > n + 1 || q > n + 1) return;
        Block& b = blocks_[{p, q}];
        Mat L = block(p + 1, q).iphi * H_.dp(p, q) - H_.dp(p - 1, q + 1) * b.iphi;
        b.dbphi = H_.db(p, q) - L;
    });
    for_each_bidegree(n, [&](int p, int q) {
        if (p > n + 1 || q > n + 1) return;
        Block& b = blocks_[{p, q}];
        b.ddbphi = H_.dp(p, q + 1) * b.dbphi;
    });
}

const PointOperators::Block& PointOperators::block(int p, int q) const {
    auto it = blocks_.find({p, q});
    if (it == blocks_.end()) throw Error("operator requested outside the table at " + where(p, q));
    return it->second;
}

const Mat& PointOperators::iphi(int p, int q) const { return block(p, q).iphi; }
const Mat& PointOperators::dbar_phi(int p, int q) const { return block(p, q).dbphi; }
const Mat& PointOperators::ddbar_phi(int p, int q) const { return block(p, q).ddbphi; }
Mat PointOperators::d_phi(int p, int q) const { return vstack({H_.dp(p, q), dbar_phi(p, q)}); }

namespace {
// conj(x) = C conj_entries(x) with C real, so conj o A o conj = C_dst conj_entries(A) C_src.
Mat conjugated(const Hodge& H, const Mat& A, Bidegree a_src, Bidegree a_dst) {
    Mat src = H.in_range(a_src.q, a_src.p) ? H.conj_matrix(a_src.q, a_src.p)
                                             : Mat(H.dim(a_src.p, a_src.q), H.dim(a_src.q, a_src.p));
    Mat dst = H.in_range(a_dst.p, a_dst.q) ? H.conj_matrix(a_dst.p, a_dst.q)
                                             : Mat(H.dim(a_dst.q, a_dst.p), H.dim(a_dst.p, a_dst.q));
    return dst * conj_entries(A) * src;
}
}  // namespace

Mat PointOperators::iphibar(int p, int q) const {
    return conjugated(H_, iphi(q, p), {q, p}, {q - 1, p + 1});
}

Mat PointOperators::dp_phibar(int p, int q) const {
    return conjugated(H_, dbar_phi(q, p), {q, p}, {q, p + 1});
}

Mat PointOperators::iphi_star(int p, int q) const { return H_.adjoint(iphi(p, q), {p, q}, {p - 1, q + 1}); }
Mat PointOperators::dbar_phi_star(int p, int q) const {
    return H_.adjoint(dbar_phi(p, q), {p, q}, {p, q + 1});
}
Mat PointOperators::ddbar_phi_star(int p, int q) const {
    return H_.adjoint(ddbar_phi(p, q), {p, q}, {p + 1, q + 1});
}

ValidationReport PointOperators::check_star_formulas() const {
    ValidationReport rep;
    const int n = H_.n();
    auto sign = [](int k) { return GQ(k % 2 ? -1L : 1L); };
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            const int k = p + q;
            if (H_.in_range(p - 1, q + 1)) {
                // i_phi* = (-1)^{p+q+1} * i_phibar *  on A^{p-1,q+1}
                Mat rhs = H_.star(n - q, n - p) * iphibar(n - q - 1, n - p + 1) * H_.star(p - 1, q + 1);
                if (!(iphi_star(p, q) == scaled(rhs, sign(k + 1))))
                    rep.fail("i_phi* star formula fails into " + where(p, q));
            }
            if (q < n) {
                // dbar_phi* = - * d'_phibar *  on A^{p,q+1}
                Mat rhs = H_.star(n - q, n - p) * dp_phibar(n - q - 1, n - p) * H_.star(p, q + 1);
                if (!(dbar_phi_star(p, q) == scaled(rhs, GQ(-1))))
                    rep.fail("dbar_phi* star formula fails into " + where(p, q));
            }
            if (p < n && q < n) {
                // (d' dbar_phi)* = (-1)^{p+q+1} * d'_phibar dbar *  on A^{p+1,q+1}
                Mat rhs = H_.star(n - q, n - p) * dp_phibar(n - q - 1, n - p) * H_.db(n - q - 1, n - p - 1) *
                          H_.star(p + 1, q + 1);
                if (!(ddbar_phi_star(p, q) == scaled(rhs, sign(k + 1))))
                    rep.fail("(d' dbar_phi)* star formula fails into " + where(p, q));
            }
        }
    return rep;
}

}  // namespace dc
