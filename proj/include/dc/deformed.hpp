#pragma once

#include <map>
#include <string>

#include "dc/canonical.hpp"

namespace dc {

// dim ker / dim im of the deformed complexes at a point, after checking im inside ker.
// Bott-Chern: ker d_phi / im d'dbar_phi; Aeppli: ker d'dbar_phi / (im d' + im dbar_phi); Dolbeault: ker/im dbar_phi.
int deformed_dim(const PointOperators& O, Theory t, int p, int q);

// dim (ker d* ∩ ker d'dbar_phi) - dim (ker d* ∩ (im d' + im dbar_phi)) against the deformed Aeppli dimension.
struct DstarCheck {
    int representatives = 0;
    int aeppli = 0;
    bool ok() const { return representatives == aeppli; }
};
DstarCheck dstar_representative_check(const PointOperators& O, int p, int q);

// conj o * from ker d_phi ∩ ker (d'dbar_phi)* in A^{p,q} to ker d'dbar_phi ∩ ker d_phi* in A^{n-p,n-q}:
// image containment, injectivity and equality of dimensions, every bidegree.
ValidationReport duality_check(const PointOperators& O);

// ker d'dbar_phi ∩ im (d'dbar)* = 0, ker d_phi ∩ im d* = 0 and im d ∩ im (d'dbar_phi)* = 0, every bidegree.
ValidationReport check_vanishing_intersections(const PointOperators& O);

// dim H_A = dim (ker d'* ∩ ker dbar* ∩ ker d'dbar_phi) + dim (ker (d'dbar)* ∩ im d'dbar_phi), every bidegree.
ValidationReport check_aeppli_harmonic_split(const PointOperators& O);

struct JumpRow {
    int h_bc = 0, h_a = 0, h_dol = 0;
    int h_bc_phi = 0, h_a_phi = 0, h_dol_phi = 0;
    JumpInvariants inv;
    int residual_bc = 0, residual_a = 0, residual_dol = 0;
    int alternating_residual = 0;  // summed Bott-Chern identity along q
    bool bc_stable = false;        // v^{p,q} = w^{p-1,q-1} = 0
    bool a_stable = false;         // v^{n-p,n-q} = w^{n-p-1,n-q-1} = 0
};

struct JumpReport {
    std::string label;
    Point point;
    int n = 0;
    std::map<Bidegree, JumpRow> rows;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
    int v(int p, int q) const;  // zero outside the range
    int w(int p, int q) const;
    int v_dol(int p, int q) const;
};

JumpReport jump_report(const Canonical& C, const PointOperators& O, const std::string& label);

// h^{p,q} = h_phi^{p,q} + v^{p,q} + v^{p,q-1} for the Dolbeault groups, and the alternating-sum form of v.
ValidationReport dolbeault_jump_check(const Canonical& C, const PointOperators& O, int p);

std::string to_string(const Point& pt);

}  // namespace dc
