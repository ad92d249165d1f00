#include <doctest.h>

#include "dc/examples.hpp"

using namespace dc;

namespace {

const Example& iwasawa() {
    static auto ex = Example::load("iwasawa", 6);
    return *ex;
}

const Example& nakamura() {
    static auto ex = Example::load("nakamura", 6);
    return *ex;
}

Point at_t(const char* t) { return {{"t", parse_gq(t)}}; }

// Stratum sample points, two per stratum, in the family parameters.
std::vector<Point> stratum_points(const Example& ex) {
    std::vector<Point> out;
    for (auto& s : ex.strata())
        for (auto& sp : ex.sample(s, 11, 2)) out.push_back(sp.params);
    return out;
}

const Theory kAll[] = {Theory::Dolbeault, Theory::BottChern, Theory::Aeppli};

}  // namespace

TEST_CASE("deformed dimensions agree with the undeformed ones at t = 0") {
    for (const Example* ex : {&iwasawa(), &nakamura()}) {
        Point zero;
        for (auto& name : ex->family().ring->names) zero[name] = GQ(0);
        PointOperators O(ex->deformation(), zero);
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q)
                for (Theory t : kAll) CHECK(deformed_dim(O, t, p, q) == ex->hodge().cohomology(t, p, q).dimension);
    }
}

TEST_CASE("Nakamura at t = 1/2: deformed dimensions") {
    PointOperators O(nakamura().deformation(), at_t("1/2"));
    CHECK(deformed_dim(O, Theory::Aeppli, 1, 1) == 7);
    CHECK(deformed_dim(O, Theory::Aeppli, 1, 2) == 5);
    CHECK(deformed_dim(O, Theory::BottChern, 2, 1) == 5);
    CHECK(deformed_dim(O, Theory::BottChern, 1, 1) == 5);
    CHECK(deformed_dim(O, Theory::BottChern, 2, 0) == 1);
    CHECK(deformed_dim(O, Theory::Aeppli, 1, 0) == 3);
    DstarCheck c = dstar_representative_check(O, 1, 2);
    CHECK(c.ok());
    CHECK(c.representatives == 5);
}

TEST_CASE("Iwasawa stratum (iii): h_BCphi^{2,0} = 1") {
    const Example& ex = iwasawa();
    for (auto& sp : ex.sample(ex.stratum("iii"), 3, 3)) {
        PointOperators O(ex.deformation(), sp.params);
        CHECK(deformed_dim(O, Theory::BottChern, 2, 0) == 1);
        CHECK(deformed_dim(O, Theory::Aeppli, 1, 3) == 1);
        CHECK(deformed_dim(O, Theory::BottChern, 2, 2) == 7);
    }
}

TEST_CASE("duality, vanishing intersections and the Aeppli harmonic split at stratum sample points") {
    for (const Example* ex : {&iwasawa(), &nakamura()})
        for (auto& pt : stratum_points(*ex)) {
            PointOperators O(ex->deformation(), pt);
            for (auto rep : {duality_check(O), check_vanishing_intersections(O), check_aeppli_harmonic_split(O)}) {
                for (auto& m : rep.failures) MESSAGE(m);
                CHECK(rep.ok);
            }
            for (int p = 0; p <= 3; ++p)
                for (int q = 0; q <= 3; ++q) {
                    CHECK(deformed_dim(O, Theory::BottChern, p, q) == deformed_dim(O, Theory::Aeppli, 3 - p, 3 - q));
                    CHECK(dstar_representative_check(O, p, q).ok());
                }
        }
}

TEST_CASE("jump reports: residuals vanish and both routes agree") {
    for (const Example* ex : {&iwasawa(), &nakamura()})
        for (auto& pt : stratum_points(*ex)) {
            JumpReport r = ex->evaluate(pt, to_string(pt));
            for (auto& m : r.failures) MESSAGE(m);
            CHECK(r.ok());
            for (auto& [b, row] : r.rows) {
                CHECK(row.residual_bc == 0);
                CHECK(row.residual_a == 0);
                CHECK(row.residual_dol == 0);
                CHECK(row.alternating_residual == 0);
                CHECK(row.inv.v == row.inv.v_direct);
                CHECK(row.inv.w == row.inv.w_direct);
                CHECK(row.inv.v_dol == row.inv.v_dol_direct);
                CHECK(row.h_bc == row.h_bc_phi + r.v(b.p, b.q) + r.w(b.p - 1, b.q - 1));
                CHECK(row.h_a == row.h_a_phi + r.v(3 - b.p, 3 - b.q) + r.w(2 - b.p, 2 - b.q));
                CHECK(row.h_dol == row.h_dol_phi + r.v_dol(b.p, b.q) + r.v_dol(b.p, b.q - 1));
            }
        }
}

TEST_CASE("Nakamura jump report at t = 1/2") {
    JumpReport r = nakamura().evaluate(at_t("1/2"), "t=1/2");
    REQUIRE(r.ok());
    // 7 = 5 + 2 + 0 for Bott-Chern (1,1) and 11 = 7 + 2 + 2 for Aeppli (1,1).
    const JumpRow& row = r.rows.at({1, 1});
    CHECK(row.h_bc == 7);
    CHECK(row.h_bc_phi == 5);
    CHECK(r.v(1, 1) == 2);
    CHECK(r.w(0, 0) == 0);
    CHECK(row.h_a == 11);
    CHECK(row.h_a_phi == 7);
    CHECK(r.v(2, 2) == 2);
    CHECK(r.w(1, 1) == 2);
    CHECK(r.rows.at({2, 1}).h_bc_phi == 5);
    CHECK(r.rows.at({1, 2}).h_a_phi == 5);
    CHECK(!row.bc_stable);
    CHECK(r.rows.at({3, 0}).bc_stable);
}

TEST_CASE("Dolbeault jump identity on functions and (1,0)-forms") {
    for (const Example* ex : {&iwasawa(), &nakamura()})
        for (auto& pt : stratum_points(*ex)) {
            PointOperators O(ex->deformation(), pt);
            for (int p : {0, 1}) {
                ValidationReport rep = dolbeault_jump_check(ex->canonical(), O, p);
                for (auto& m : rep.failures) MESSAGE(m);
                CHECK(rep.ok);
            }
        }
}

TEST_CASE("deformed dimensions are constant along a stratum away from its exceptional set") {
    const Example& ex = iwasawa();
    for (auto& s : ex.strata()) {
        auto pts = ex.sample(s, 17, 3);
        PointOperators a(ex.deformation(), pts[0].params);
        for (size_t i = 1; i < pts.size(); ++i) {
            PointOperators b(ex.deformation(), pts[i].params);
            for (int p = 0; p <= 3; ++p)
                for (int q = 0; q <= 3; ++q)
                    for (Theory t : kAll) CHECK(deformed_dim(a, t, p, q) == deformed_dim(b, t, p, q));
        }
    }
}
