#include "dc/deformed.hpp"

namespace dc {

namespace {

int kernel_dim(const Mat& m) { return m.cols - rank(m); }

std::string at(int p, int q) { return to_string(Bidegree{p, q}); }

}  // namespace

std::string to_string(const Point& pt) {
    std::string out;
    for (auto& [k, v] : pt) out += (out.empty() ? "" : ",") + k + "=" + to_string(v);
    return out.empty() ? "-" : out;
}

int deformed_dim(const PointOperators& O, Theory t, int p, int q) {
    const Hodge& H = O.hodge();
    if (!H.in_range(p, q)) return 0;
    auto contained = [&](const Mat& outer, const Mat& inner, const char* what) {
        if (!(outer * inner).is_zero())
            throw ValidationError(std::string(what) + " fails in " + at(p, q) + " at " + to_string(O.point()) +
                                  " (Maurer-Cartan violated at this point)");
    };
    switch (t) {
        case Theory::BottChern: {
            Mat dphi = O.d_phi(p, q);
            const Mat& in = O.ddbar_phi(p - 1, q - 1);
            contained(dphi, in, "im d'dbar_phi in ker d_phi");
            return kernel_dim(dphi) - rank(in);
        }
        case Theory::Aeppli: {
            const Mat& out = O.ddbar_phi(p, q);
            Mat in = hstack({H.dp(p - 1, q), O.dbar_phi(p, q - 1)});
            contained(out, in, "im d' + im dbar_phi in ker d'dbar_phi");
            return kernel_dim(out) - rank(in);
        }
        case Theory::Dolbeault: {
            const Mat& out = O.dbar_phi(p, q);
            const Mat& in = O.dbar_phi(p, q - 1);
            contained(out, in, "dbar_phi^2 = 0");
            return kernel_dim(out) - rank(in);
        }
    }
    return 0;
}

DstarCheck dstar_representative_check(const PointOperators& O, int p, int q) {
    const Hodge& H = O.hodge();
    DstarCheck c;
    Mat dstar = vstack({H.dp_star(p, q), H.db_star(p, q)});
    int closed = kernel_dim(vstack({dstar, O.ddbar_phi(p, q)}));
    int exact = dim_kernel_cap_image(dstar, hstack({H.dp(p - 1, q), O.dbar_phi(p, q - 1)}));
    c.representatives = closed - exact;
    c.aeppli = deformed_dim(O, Theory::Aeppli, p, q);
    return c;
}

ValidationReport duality_check(const PointOperators& O) {
    ValidationReport rep;
    const Hodge& H = O.hodge();
    const int n = H.n();
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            const int a = n - p, b = n - q;
            Mat hbc = kernel(vstack({O.d_phi(p, q), O.ddbar_phi_star(p - 1, q - 1)}));
            Mat acond = vstack({O.ddbar_phi(a, b), H.dp_star(a, b), O.dbar_phi_star(a, b - 1)});
            Mat ha = kernel(acond);
            Mat image = H.conj_matrix(n - q, n - p) * conj_entries(H.star(p, q) * hbc);
            if (!(acond * image).is_zero()) rep.fail("conj o * does not land in the deformed Aeppli space from " + at(p, q));
            if (rank(image) != hbc.cols) rep.fail("conj o * is not injective on " + at(p, q));
            if (hbc.cols != ha.cols)
                rep.fail("harmonic dimensions differ: " + std::to_string(hbc.cols) + " in " + at(p, q) + " vs " +
                         std::to_string(ha.cols) + " in " + at(a, b));
            int bc = deformed_dim(O, Theory::BottChern, p, q), ae = deformed_dim(O, Theory::Aeppli, a, b);
            if (bc != hbc.cols) rep.fail("deformed Bott-Chern harmonic space has the wrong dimension in " + at(p, q));
            if (ae != ha.cols) rep.fail("deformed Aeppli harmonic space has the wrong dimension in " + at(a, b));
            if (bc != ae) rep.fail("h_BCphi" + at(p, q) + " = " + std::to_string(bc) + " but h_Aphi" + at(a, b) +
                                   " = " + std::to_string(ae));
        }
    return rep;
}

ValidationReport check_vanishing_intersections(const PointOperators& O) {
    ValidationReport rep;
    const Hodge& H = O.hodge();
    const int n = H.n();
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            if (dim_kernel_cap_image(O.ddbar_phi(p, q), H.ddb_star(p + 1, q + 1)) != 0)
                rep.fail("ker d'dbar_phi meets im (d'dbar)* in " + at(p, q));
            if (dim_kernel_cap_image(O.d_phi(p, q), hstack({H.dp_star(p + 1, q), H.db_star(p, q + 1)})) != 0)
                rep.fail("ker d_phi meets im d* in " + at(p, q));
            if (dim_intersection(hstack({H.dp(p - 1, q), H.db(p, q - 1)}), O.ddbar_phi_star(p, q)) != 0)
                rep.fail("im d meets im (d'dbar_phi)* in " + at(p, q));
        }
    return rep;
}

ValidationReport check_aeppli_harmonic_split(const PointOperators& O) {
    ValidationReport rep;
    const Hodge& H = O.hodge();
    const int n = H.n();
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            const Mat& f = O.ddbar_phi(p, q);
            int first = kernel_dim(vstack({H.dp_star(p, q), H.db_star(p, q), f}));
            int second = dim_kernel_cap_image(H.ddb_star(p + 1, q + 1), f);
            int ha = H.harmonic(Theory::Aeppli, p, q).cols;
            if (ha != first + second)
                rep.fail("dim H_A" + at(p, q) + " = " + std::to_string(ha) + " but the split gives " +
                         std::to_string(first) + " + " + std::to_string(second));
        }
    return rep;
}

int JumpReport::v(int p, int q) const {
    auto it = rows.find({p, q});
    return it == rows.end() ? 0 : it->second.inv.v;
}
int JumpReport::w(int p, int q) const {
    auto it = rows.find({p, q});
    return it == rows.end() ? 0 : it->second.inv.w;
}
int JumpReport::v_dol(int p, int q) const {
    auto it = rows.find({p, q});
    return it == rows.end() ? 0 : it->second.inv.v_dol;
}

JumpReport jump_report(const Canonical& C, const PointOperators& O, const std::string& label) {
    const Hodge& H = O.hodge();
    const int n = H.n();
    JumpReport r;
    r.label = label;
    r.point = O.point();
    r.n = n;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            JumpRow& row = r.rows[{p, q}];
            row.h_bc = H.harmonic(Theory::BottChern, p, q).cols;
            row.h_a = H.harmonic(Theory::Aeppli, p, q).cols;
            row.h_dol = H.harmonic(Theory::Dolbeault, p, q).cols;
            row.h_bc_phi = deformed_dim(O, Theory::BottChern, p, q);
            row.h_a_phi = deformed_dim(O, Theory::Aeppli, p, q);
            row.h_dol_phi = deformed_dim(O, Theory::Dolbeault, p, q);
            row.inv = C.jump_invariants(O, p, q);
        }
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            JumpRow& row = r.rows[{p, q}];
            row.residual_bc = row.h_bc - (row.h_bc_phi + r.v(p, q) + r.w(p - 1, q - 1));
            row.residual_a = row.h_a - (row.h_a_phi + r.v(n - p, n - q) + r.w(n - p - 1, n - q - 1));
            row.residual_dol = row.h_dol - (row.h_dol_phi + r.v_dol(p, q) + r.v_dol(p, q - 1));
            row.bc_stable = r.v(p, q) == 0 && r.w(p - 1, q - 1) == 0;
            row.a_stable = r.v(n - p, n - q) == 0 && r.w(n - p - 1, n - q - 1) == 0;
            int lhs = 0, rhs = 0;
            for (int i = 0; i <= q; ++i) {
                const int sgn = (q - i) % 2 ? -1 : 1;
                const JumpRow& ri = r.rows.at({p, i});
                lhs += sgn * (ri.h_bc_phi + r.v(p, i) - r.w(p - 1, i));
                rhs += sgn * ri.h_bc;
            }
            row.alternating_residual = lhs - (rhs - r.w(p - 1, q));
            const std::string b = at(p, q);
            if (row.residual_bc) r.failures.push_back("Bott-Chern jumping formula residual " + std::to_string(row.residual_bc) + " in " + b);
            if (row.residual_a) r.failures.push_back("Aeppli jumping formula residual " + std::to_string(row.residual_a) + " in " + b);
            if (row.residual_dol) r.failures.push_back("Dolbeault jumping formula residual " + std::to_string(row.residual_dol) + " in " + b);
            if (row.alternating_residual) r.failures.push_back("alternating-sum residual in " + b);
            if (row.bc_stable != (row.h_bc_phi == row.h_bc)) r.failures.push_back("Bott-Chern stability verdict inconsistent in " + b);
            if (row.a_stable != (row.h_a_phi == row.h_a)) r.failures.push_back("Aeppli stability verdict inconsistent in " + b);
            if (row.h_bc_phi != r.rows.at({n - p, n - q}).h_a_phi) r.failures.push_back("duality of deformed dimensions fails in " + b);
            if ((p == n || q == n) && row.inv.w != 0) r.failures.push_back("w nonzero in top bidegree " + b);
        }
    return r;
}

ValidationReport dolbeault_jump_check(const Canonical& C, const PointOperators& O, int p) {
    ValidationReport rep;
    const Hodge& H = O.hodge();
    const int n = H.n();
    std::vector<int> h(n + 1), hphi(n + 1), v(n + 1);
    for (int q = 0; q <= n; ++q) {
        h[q] = H.harmonic(Theory::Dolbeault, p, q).cols;
        hphi[q] = deformed_dim(O, Theory::Dolbeault, p, q);
        v[q] = C.jump_invariants(O, p, q).v_dol;
    }
    for (int q = 0; q <= n; ++q) {
        int prev = q > 0 ? v[q - 1] : 0;
        if (h[q] != hphi[q] + v[q] + prev)
            rep.fail("Dolbeault jump fails in " + at(p, q) + ": " + std::to_string(h[q]) + " != " +
                     std::to_string(hphi[q]) + " + " + std::to_string(v[q]) + " + " + std::to_string(prev));
        int alt = 0;
        for (int i = 0; i <= q; ++i) alt += ((q - i) % 2 ? -1 : 1) * (h[i] - hphi[i]);
        if (alt != v[q]) rep.fail("alternating sum of Dolbeault jumps differs from v in " + at(p, q));
    }
    return rep;
}

}  // namespace dc
