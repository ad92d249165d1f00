// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "dc/report.hpp"

using namespace dc;

namespace {

struct Criterion {
    bool ok = true;
    std::vector<std::string> notes;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
    void absorb(const ValidationReport& r, const std::string& where) {
        for (auto& f : r.failures) expect(false, where + ": " + f);
    }
};

std::string str(int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

const Theory kAll[] = {Theory::Dolbeault, Theory::BottChern, Theory::Aeppli};

struct Ctx {
    std::unique_ptr<Example> iw, nk;
    double load_seconds[2] = {0, 0};
    // Every point at which a jump report was computed, with its report.
    std::vector<std::pair<const Example*, JumpReport>> evaluated;
};

Point random_point(const Example& ex, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
    Point pt;
    for (auto& name : ex.family().ring->names) {
        Rational r(num(rng), den(rng));
        r.canonicalize();
        pt[name] = GQ(r);
    }
    return pt;
}

Point at_t(const char* t) { return {{"t", parse_gq(t)}}; }

// 1. Undeformed dimensions and runtime.
Criterion undeformed(Ctx& c) {
    Criterion k;
    struct Dim {
        Theory t;
        int p, q, dim;
    };
    const std::vector<Dim> iw = {
        {Theory::Aeppli, 1, 0, 3}, {Theory::Aeppli, 0, 1, 3}, {Theory::Aeppli, 2, 0, 2}, {Theory::Aeppli, 0, 2, 2},
        {Theory::Aeppli, 1, 1, 8}, {Theory::Aeppli, 3, 0, 1}, {Theory::Aeppli, 2, 1, 6}, {Theory::Aeppli, 1, 2, 6},
        {Theory::Aeppli, 0, 3, 1}, {Theory::Aeppli, 3, 1, 3}, {Theory::Aeppli, 2, 2, 4}, {Theory::Aeppli, 1, 3, 3},
        {Theory::Aeppli, 3, 2, 2}, {Theory::Aeppli, 2, 3, 2}, {Theory::Aeppli, 3, 3, 1}, {Theory::BottChern, 2, 0, 3},
        {Theory::BottChern, 2, 1, 6}, {Theory::BottChern, 2, 2, 8}};
    const std::vector<Dim> nk = {{Theory::Aeppli, 1, 0, 5},     {Theory::Aeppli, 0, 1, 5},
                                 {Theory::Aeppli, 1, 1, 11},    {Theory::Aeppli, 2, 1, 9},
                                 {Theory::Aeppli, 1, 2, 9},     {Theory::BottChern, 2, 0, 3},
                                 {Theory::BottChern, 1, 1, 7},  {Theory::BottChern, 2, 1, 9},
                                 {Theory::BottChern, 1, 2, 9},  {Theory::BottChern, 3, 1, 3},
                                 {Theory::BottChern, 2, 2, 11}, {Theory::BottChern, 3, 2, 5},
                                 {Theory::BottChern, 2, 3, 5}};
    int i = 0;
    for (auto [ex, dims] : {std::pair{c.iw.get(), &iw}, std::pair{c.nk.get(), &nk}}) {
        auto t0 = std::chrono::steady_clock::now();
        for (auto& d : *dims) {
            int got = ex->hodge().cohomology(d.t, d.p, d.q).dimension;
            k.expect(got == d.dim, ex->name() + " " + theory_name(d.t) + str(d.p, d.q) + " = " + std::to_string(got) +
                                       ", expected " + std::to_string(d.dim));
        }
        double s = c.load_seconds[i++] + std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        k.expect(s < 10, ex->name() + " took " + std::to_string(s) + " s");
        std::ostringstream os;
        os.precision(2);
        os << ex->name() << " " << std::fixed << s << " s";
        k.notes.push_back(os.str());
    }
    return k;
}

// 2. The 36 cells of the Iwasawa table via stratum evaluation.
Criterion iwasawa_table(Ctx& c) {
    Criterion k;
    const Example& ex = *c.iw;
    const char* quantities[] = {"h_A", "h_BC", "w", "v", "h_BCphi", "h_Aphi"};
    // strata (i), (ii), (iii); rows in the order of quantities
    const int at20[6][3] = {{3, 3, 3}, {3, 3, 3}, {0, 0, 0}, {0, 1, 2}, {3, 2, 1}, {3, 2, 1}};
    const int at22[6][3] = {{8, 8, 8}, {8, 8, 8}, {0, 0, 0}, {0, 1, 1}, {8, 7, 7}, {8, 7, 7}};
    const char* strata[] = {"i", "ii", "iii"};
    int cells = 0;
    for (int s = 0; s < 3; ++s) {
        StratumResult r = ex.evaluate(ex.stratum(strata[s]), 1);
        for (auto& w : r.warnings) k.expect(false, w);
        for (auto& rep : r.reports) c.evaluated.push_back({&ex, rep});
        for (auto [p, q, table] : {std::tuple{2, 0, &at20}, std::tuple{2, 2, &at22}})
            for (int i = 0; i < 6; ++i) {
                ++cells;
                int got = table_quantity(r.generic(), quantities[i], p, q);
                k.expect(got == (*table)[i][s], std::string("(") + strata[s] + ") " + table_label(quantities[i], 3, p, q) +
                                                    " = " + std::to_string(got));
            }
    }
    k.notes.push_back(std::to_string(cells) + " cells");
    return k;
}

// 3. The Nakamura table at t = 1/2 and a second nonzero point.
Criterion nakamura_table(Ctx& c) {
    Criterion k;
    const Example& ex = *c.nk;
    struct Row {
        int p, q, h_a, h_bc, v, w, h_bc_phi, h_a_phi;
    };
    const Row rows[] = {{3, 2, 5, 5, 0, 2, 3, 3},    {2, 3, 5, 5, 0, 2, 3, 3}, {3, 1, 3, 3, 2, 0, 1, 1},
                        {2, 2, 11, 11, 2, 2, 7, 7},  {1, 3, 3, 3, 0, 0, 3, 3}, {3, 0, 1, 1, 0, 0, 1, 1},
                        {2, 1, 9, 9, 2, 2, 5, 5},    {1, 2, 9, 9, 0, 2, 7, 7}, {0, 3, 1, 1, 0, 0, 1, 1},
                        {2, 0, 3, 3, 2, 0, 1, 1},    {1, 1, 7, 7, 2, 0, 5, 5}, {0, 2, 3, 3, 0, 0, 3, 3},
                        {1, 0, 1, 1, 0, 0, 1, 1},    {0, 1, 1, 1, 0, 0, 1, 1}};
    for (const char* t : {"1/2", "-2/3"}) {
        JumpReport r = ex.evaluate(at_t(t), std::string("t=") + t);
        c.evaluated.push_back({&ex, r});
        for (auto& row : rows) {
            const std::pair<const char*, int> cells[] = {{"h_A", row.h_a}, {"h_BC", row.h_bc},         {"v", row.v},
                                                         {"w", row.w},     {"h_BCphi", row.h_bc_phi}, {"h_Aphi", row.h_a_phi}};
            for (auto [q, want] : cells) {
                int got = table_quantity(r, q, row.p, row.q);
                k.expect(got == want, std::string("t=") + t + " " + table_label(q, 3, row.p, row.q) + " = " +
                                          std::to_string(got) + ", expected " + std::to_string(want));
            }
        }
    }
    k.notes.push_back("84 cells at t = 1/2 and t = -2/3");
    return k;
}

// 4. Jump formula residuals at every evaluated point.
Criterion residuals(Ctx& c) {
    Criterion k;
    std::mt19937_64 rng(4);
    for (const Example* ex : {c.iw.get(), c.nk.get()})
        for (int i = 0; i < 3; ++i) {
            Point pt = random_point(*ex, rng);
            c.evaluated.push_back({ex, ex->evaluate(pt, to_string(pt))});
        }
    for (auto& [ex, r] : c.evaluated) {
        for (auto& f : r.failures) k.expect(false, ex->name() + " " + r.label + ": " + f);
        for (auto& [b, row] : r.rows) {
            k.expect(row.residual_bc == 0, ex->name() + " " + r.label + " Bott-Chern residual at " + to_string(b));
            k.expect(row.residual_a == 0, ex->name() + " " + r.label + " Aeppli residual at " + to_string(b));
        }
    }
    k.notes.push_back(std::to_string(c.evaluated.size()) + " points");
    return k;
}

// 5. h_BCphi^{p,q} = h_Aphi^{n-p,n-q} at every evaluated point.
Criterion duality(Ctx& c) {
    Criterion k;
    for (auto& [ex, r] : c.evaluated) {
        const int n = r.n;
        for (auto& [b, row] : r.rows) {
            int a = r.rows.at({n - b.p, n - b.q}).h_a_phi;
            k.expect(row.h_bc_phi == a, ex->name() + " " + r.label + " at " + to_string(b));
        }
        PointOperators O(ex->deformation(), r.point);
        k.absorb(duality_check(O), ex->name() + " " + r.label);
    }
    return k;
}

// Sample points of every stratum of an example.
std::vector<Point> stratum_points(const Example& ex) {
    std::vector<Point> out;
    for (auto& s : ex.strata())
        for (auto& sp : ex.sample(s, 1, 2)) out.push_back(sp.params);
    return out;
}

// 6. Property suites.
Criterion properties(Ctx& c) {
    Criterion k;
    std::mt19937_64 rng(6);
    for (const Example* ex : {c.iw.get(), c.nk.get()}) {
        const std::string name = ex->name();
        const Hodge& H = ex->hodge();
        const int n = H.n();
        // d^2 = 0, Leibniz rule and the contraction derivation property.
        k.absorb(validate(ex->pres()), name);
        const Deformation& D = ex->deformation();
        k.absorb(D.check_derivation(), name);
        // Hodge decomposition identities.
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q)
                for (Theory t : kAll) {
                    const Mat I = identity(H.dim(p, q));
                    k.expect(H.projector(t, p, q) + H.laplacian(t, p, q) * H.green(t, p, q) == I,
                             name + " 1 = H + box G fails for " + theory_name(t) + str(p, q));
                }
        // Maurer-Cartan, nilpotency and the Cartan identity.
        k.absorb(D.check_maurer_cartan(), name);
        k.absorb(D.check_nilpotent(), name);
        k.absorb(D.check_cartan(), name);
        // Star formulas against Hermitian adjoints at three points.
        for (int i = 0; i < 3; ++i) {
            Point pt = random_point(*ex, rng);
            k.absorb(PointOperators(D, pt).check_star_formulas(), name + " " + to_string(pt));
        }
        const Canonical& C = ex->canonical();
        for (auto& pt : stratum_points(*ex)) {
            PointOperators O(D, pt);
            const std::string where = name + " " + to_string(pt);
            k.absorb(check_vanishing_intersections(O), where);
            k.absorb(check_aeppli_harmonic_split(O), where);
            for (int p : {0, 1}) k.absorb(dolbeault_jump_check(C, O, p), where);
            // Harmonicity criterion and d-closedness for every Aeppli series.
            for (int p = 0; p <= n; ++p)
                for (int q = 0; q <= n; ++q)
                    for (auto& s : C.harmonic_series(Theory::Aeppli, p, q)) {
                        HarmonicityCheck h = C.harmonicity(s, pt);
                        k.expect(h.deformed_closed == h.bc_projection_zero, where + " harmonicity criterion at " + str(p, q));
                        k.expect(h.in_ker_d, where + " d-closedness at " + str(p, q));
                    }
        }
    }
    return k;
}

// 7. Unobstructedness verdicts for the Iwasawa family.
Criterion unobstructedness(Ctx& c) {
    Criterion k;
    const Example& ex = *c.iw;
    const Canonical& C = ex.canonical();
    std::vector<Point> on_i, off_i;
    for (auto& s : ex.strata())
        for (auto& sp : ex.sample(s, 1, 2)) (s.name == "i" ? on_i : off_i).push_back(sp.params);
    std::vector<Point> all = on_i;
    all.insert(all.end(), off_i.begin(), off_i.end());
    try {
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q)
                k.expect(C.unobstructedness(Theory::Aeppli, p, q, all).unobstructed, "Aeppli " + str(p, q) + " obstructed");
        k.expect(C.unobstructedness(Theory::BottChern, 2, 1, all).unobstructed, "Bott-Chern (2,1) obstructed");
        for (auto [p, q] : {std::pair{2, 0}, std::pair{2, 2}}) {
            UnobstructednessReport r = C.unobstructedness(Theory::BottChern, p, q, all);
            k.expect(!r.unobstructed, "Bott-Chern " + str(p, q) + " unobstructed");
            auto fails_at = [&](const Point& pt) {
                for (auto& cl : r.classes)
                    for (auto& f : cl.failing_points)
                        if (f == pt) return true;
                return false;
            };
            for (auto& pt : off_i) k.expect(fails_at(pt), "Bott-Chern " + str(p, q) + " unobstructed at " + to_string(pt));
            for (auto& pt : on_i) k.expect(!fails_at(pt), "Bott-Chern " + str(p, q) + " obstructed on (i) at " + to_string(pt));
        }
        // Cross-checks with the weak ddbar predicates throw on inconsistency.
        for (const Example* e : {c.iw.get(), c.nk.get()})
            for (int p = 0; p <= 3; ++p)
                for (int q = 0; q <= 3; ++q)
                    for (Theory t : kAll) e->canonical().unobstructedness(t, p, q, {});
    } catch (const InconsistencyError& e) {
        k.expect(false, e.what());
    }
    return k;
}

// 8. v and w by rank matrices against direct kernel dimensions at random points.
Criterion oracle(Ctx& c) {
    Criterion k;
    std::mt19937_64 rng(8);
    int points = 0;
    for (const Example* ex : {c.iw.get(), c.nk.get()})
        for (int i = 0; i < 4; ++i) {
            Point pt = random_point(*ex, rng);
            ++points;
            try {
                PointOperators O(ex->deformation(), pt);
                for (int p = 0; p <= 3; ++p)
                    for (int q = 0; q <= 3; ++q) {
                        JumpInvariants j = ex->canonical().jump_invariants(O, p, q);
                        const std::string where = ex->name() + " " + to_string(pt) + " at " + str(p, q);
                        k.expect(j.v == j.v_direct, where + " v");
                        k.expect(j.w == j.w_direct, where + " w");
                        k.expect(j.v_dol == j.v_dol_direct, where + " Dolbeault v");
                    }
            } catch (const InconsistencyError& e) {
                k.expect(false, e.what());
            }
        }
    k.notes.push_back(std::to_string(points) + " random points");
    return k;
}

}  // namespace

int main() {
    Ctx c;
    try {
        auto t0 = std::chrono::steady_clock::now();
        c.iw = Example::load("iwasawa");
        auto t1 = std::chrono::steady_clock::now();
        c.nk = Example::load("nakamura");
        auto t2 = std::chrono::steady_clock::now();
        c.load_seconds[0] = std::chrono::duration<double>(t1 - t0).count();
        c.load_seconds[1] = std::chrono::duration<double>(t2 - t1).count();
    } catch (const std::exception& e) {
        std::cout << "FAIL loading examples: " << e.what() << "\n";
        return 1;
    }
    const std::vector<std::pair<std::string, std::function<Criterion(Ctx&)>>> criteria = {
        {"undeformed cohomology", undeformed},
        {"Iwasawa table", iwasawa_table},
        {"Nakamura table", nakamura_table},
        {"jump formula residuals", residuals},
        {"duality", duality},
        {"property suites", properties},
        {"unobstructedness verdicts", unobstructedness},
        {"rank matrix and direct routes", oracle},
    };
    bool all = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Criterion k;
        try {
            k = criteria[i].second(c);
        } catch (const std::exception& e) {
            k.expect(false, std::string("exception: ") + e.what());
        }
        all = all && k.ok;
        std::cout << (k.ok ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first;
        if (!k.notes.empty()) {
            std::cout << " (";
            for (size_t j = 0; j < k.notes.size() && j < 5; ++j) std::cout << (j ? "; " : "") << k.notes[j];
            if (k.notes.size() > 5) std::cout << "; ...";
            std::cout << ")";
        }
        std::cout << "\n";
    }
    return all ? 0 : 1;
}
