#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "dc/beltrami.hpp"

namespace dc {

struct DeformationSeries {
    Theory theory = Theory::Aeppli;
    Bidegree bidegree;
    Vec sigma0;
    std::vector<PolyVec> pieces;  // pieces[k] homogeneous of degree k; pieces[0] = sigma0
    bool terminated = false;      // a run of maxdeg zero pieces was reached within the order
    bool certified = false;       // exact plug-back into the fixed-point equation passed
    PolyVec total() const;
    Vec at(const Point& pt) const;
};

struct HarmonicityCheck {
    bool deformed_closed = false;    // d' dbar_phi sigma(t) = 0 at the point
    bool bc_projection_zero = false; // H_BC(d' i_phi d' sigma(t)) = 0 at the point
    bool in_ker_d = false;           // d' i_phi d' sigma(t) is d-closed identically
};

struct JumpInvariants {
    int v = 0, w = 0, v_dol = 0;                 // rank-matrix route
    int v_direct = 0, w_direct = 0, v_dol_direct = 0;
};

struct ClassVerdict {
    bool certified = false;
    bool unobstructed = false;  // target condition holds identically in t
    std::vector<Point> failing_points;
};

struct UnobstructednessReport {
    Theory theory;
    Bidegree bidegree;
    std::vector<ClassVerdict> classes;
    bool unobstructed = true;
    std::optional<bool> predicate;  // weak ddbar predicate relevant to this theory, if any
};

// Weak ddbar-lemma predicates at the level of the presented complex.
// first:  d'(ker d'dbar in A^{p-1,q+1}) lies in dbar(ker d' in A^{p,q})  (forces Bott-Chern (p,q) unobstructed)
// second: d'(ker d'dbar in A^{p,q+1}) lies in d'dbar(A^{p,q})            (forces Aeppli (p,q) unobstructed)
std::pair<bool, bool> weak_ddbar_predicates(const Hodge& H, int p, int q);

// Canonical deformations computed to a fixed truncation order.
// The family ring must have order at least order + maxdeg so that plug-back is exact.
class Canonical {
public:
    Canonical(const Deformation& D, int order);

    const Deformation& deformation() const { return D_; }
    const Hodge& hodge() const { return D_.hodge(); }
    int order() const { return order_; }

    DeformationSeries series(Theory t, int p, int q, const Vec& sigma0) const;
    // Deformation of a closed y: harmonic part by the recursion, exact part deformed directly.
    DeformationSeries full_deformation(Theory t, int p, int q, const Vec& y) const;
    // Target condition applied to sigma(t): d'dbar_phi (Aeppli), d_phi (Bott-Chern), dbar_phi (Dolbeault).
    PolyVec obstruction(const DeformationSeries& s) const;
    bool unobstructed(const DeformationSeries& s) const;
    HarmonicityCheck harmonicity(const DeformationSeries& s, const Point& pt) const;
    // x -> x - T x, with T the recursion operator, has no constant term in T.
    bool unipotent(Theory t, int p, int q) const;

    // Rank matrix over the harmonic basis (columns). Aeppli: <d' i_phi d' sigma^l(t), e_i> against the
    // Bott-Chern harmonic basis of A^{p+1,q+1}; Bott-Chern: coordinates of d_phi sigma^l(t);
    // Dolbeault: coordinates of dbar_phi sigma^l(t).
    const PolyMat& rank_matrix(Theory t, int p, int q) const;
    // Series of the harmonic basis elements.
    const std::vector<DeformationSeries>& harmonic_series(Theory t, int p, int q) const;

    // v, w and the Dolbeault v at a point by both routes; throws InconsistencyError if they differ.
    JumpInvariants jump_invariants(const PointOperators& O, int p, int q) const;

    UnobstructednessReport unobstructedness(Theory t, int p, int q, const std::vector<Point>& points) const;

private:
    PolyMat step(Theory t, int p, int q, int k) const;  // T_k
    const Mat& recursion_map(Theory t, int p, int q) const;
    const Deformation& D_;
    int order_;
    mutable std::map<std::tuple<int, int, int>, Mat> rmap_;
    mutable std::map<std::tuple<int, int, int, int>, PolyMat> steps_;
    mutable std::map<std::tuple<int, int, int>, PolyMat> rank_;
    mutable std::map<std::tuple<int, int, int>, std::vector<DeformationSeries>> series_;
};

// A deformation whose family ring has room for exact plug-back at the given order.
BeltramiFamily working_family(const BeltramiFamily& fam, int order);

}  // namespace dc
