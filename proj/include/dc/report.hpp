#pragma once

#include <string>

#include "dc/examples.hpp"

namespace dc {

enum class Format { Markdown, Tsv, Json };
Format parse_format(const std::string& s);

// Linear combination of basis monomials of A^{p,q}.
std::string form_string(const Presentation& P, int p, int q, const Vec& v);
std::string form_string(const Presentation& P, int p, int q, const PolyVec& v);

// Undeformed (or, with a point, deformed) dimensions on the (p,q) grid.
std::string render_dimensions(const Hodge& H, const std::vector<Theory>& theories, const PointOperators* O, Format f);

// One row per bidegree: h = h_phi + jumps for Bott-Chern, Aeppli and Dolbeault.
std::string render_jump(const JumpReport& r, Format f);
nlohmann::json jump_json(const JumpReport& r);

// Value of a table quantity (h_A, h_BC, w, v, h_BCphi, h_Aphi) for the Bott-Chern bidegree (p,q).
// Aeppli quantities are taken in (n-p,n-q) and w in (p-1,q-1).
int table_quantity(const JumpReport& r, const std::string& quantity, int p, int q);
std::string table_label(const std::string& quantity, int n, int p, int q);

// Layout from the example's "golden_table" section, filled from the generic report of each listed stratum.
std::string render_golden_table(const Example& ex, const std::map<std::string, JumpReport>& by_stratum);

// Long table keyed (stratum, theory, p, q): h, h_phi and the two jump terms with h = h_phi + j1 + j2.
std::string render_full_table(const std::vector<std::pair<std::string, JumpReport>>& reports, Format f);

}  // namespace dc
