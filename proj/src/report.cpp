#include "dc/report.hpp"

#include <sstream>

namespace dc {

using nlohmann::json;

namespace {

std::string bd(int p, int q) { return std::to_string(p) + "," + std::to_string(q); }

int dimension(const Hodge& H, const PointOperators* O, Theory t, int p, int q) {
    return O ? deformed_dim(*O, t, p, q) : H.harmonic(t, p, q).cols;
}

template <class S>
std::string combination(const Presentation& P, int p, int q, const std::vector<S>& v) {
    const auto& basis = P.basis(p, q);
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (is_zero(v[i])) continue;
        std::string c = to_string(v[i]);
        bool compound = c.find_first_of("+-", 1) != std::string::npos;
        if (compound) c = "(" + c + ")";
        if (!out.empty()) {
            if (!compound && c[0] == '-') {
                out += " - ";
                c = c.substr(1);
            } else {
                out += " + ";
            }
        }
        out += (c == "1" ? "" : c == "-1" ? "-" : c + "*") + P.key_name(basis[i]);
    }
    return out.empty() ? "0" : out;
}

// h, h_phi and the two jump terms of each theory at (p,q).
struct Split {
    int h, h_phi, j1, j2;
};

Split split(const JumpReport& r, Theory t, int p, int q) {
    const JumpRow& row = r.rows.at({p, q});
    const int n = r.n;
    switch (t) {
        case Theory::BottChern: return {row.h_bc, row.h_bc_phi, r.v(p, q), r.w(p - 1, q - 1)};
        case Theory::Aeppli: return {row.h_a, row.h_a_phi, r.v(n - p, n - q), r.w(n - p - 1, n - q - 1)};
        case Theory::Dolbeault: return {row.h_dol, row.h_dol_phi, r.v_dol(p, q), r.v_dol(p, q - 1)};
    }
    return {};
}

const Theory kTheories[] = {Theory::BottChern, Theory::Aeppli, Theory::Dolbeault};

}  // namespace

Format parse_format(const std::string& s) {
    if (s == "md" || s == "markdown") return Format::Markdown;
    if (s == "tsv") return Format::Tsv;
    if (s == "json") return Format::Json;
    throw ParseError("unknown format '" + s + "' (md, tsv, json)");
}

std::string form_string(const Presentation& P, int p, int q, const Vec& v) { return combination(P, p, q, v); }
std::string form_string(const Presentation& P, int p, int q, const PolyVec& v) { return combination(P, p, q, v); }

std::string render_dimensions(const Hodge& H, const std::vector<Theory>& theories, const PointOperators* O, Format f) {
    const int n = H.n();
    std::ostringstream out;
    if (f == Format::Json) {
        json j = json::object();
        for (Theory t : theories) {
            json grid = json::array();
            for (int p = 0; p <= n; ++p) {
                json row = json::array();
                for (int q = 0; q <= n; ++q) row.push_back(dimension(H, O, t, p, q));
                grid.push_back(row);
            }
            j[theory_name(t)] = grid;
        }
        if (O) {
            json pt = json::object();
            for (auto& [k, v] : O->point()) pt[k] = to_string(v);
            j["point"] = pt;
        }
        return j.dump(2) + "\n";
    }
    if (f == Format::Tsv) {
        out << "theory\tp\tq\tdim\n";
        for (Theory t : theories)
            for (int p = 0; p <= n; ++p)
                for (int q = 0; q <= n; ++q) out << theory_name(t) << '\t' << p << '\t' << q << '\t' << dimension(H, O, t, p, q) << '\n';
        return out.str();
    }
    for (Theory t : theories) {
        out << "### " << theory_name(t) << (O ? " at " + to_string(O->point()) : std::string()) << "\n\n| p \\ q |";
        for (int q = 0; q <= n; ++q) out << ' ' << q << " |";
        out << "\n|---|";
        for (int q = 0; q <= n; ++q) out << "---|";
        out << '\n';
        for (int p = 0; p <= n; ++p) {
            out << "| " << p << " |";
            for (int q = 0; q <= n; ++q) out << ' ' << dimension(H, O, t, p, q) << " |";
            out << '\n';
        }
        out << '\n';
    }
    return out.str();
}

json jump_json(const JumpReport& r) {
    json j;
    j["label"] = r.label;
    json pt = json::object();
    for (auto& [k, v] : r.point) pt[k] = to_string(v);
    j["point"] = pt;
    j["rows"] = json::array();
    for (auto& [b, row] : r.rows) {
        j["rows"].push_back({{"p", b.p},
                             {"q", b.q},
                             {"h_bc", row.h_bc},
                             {"h_a", row.h_a},
                             {"h_dol", row.h_dol},
                             {"h_bc_phi", row.h_bc_phi},
                             {"h_a_phi", row.h_a_phi},
                             {"h_dol_phi", row.h_dol_phi},
                             {"v", row.inv.v},
                             {"w", row.inv.w},
                             {"v_dol", row.inv.v_dol},
                             {"bc_stable", row.bc_stable},
                             {"a_stable", row.a_stable}});
    }
    j["failures"] = r.failures;
    j["ok"] = r.ok();
    return j;
}

std::string render_jump(const JumpReport& r, Format f) {
    if (f == Format::Json) return jump_json(r).dump(2) + "\n";
    std::ostringstream out;
    if (f == Format::Tsv) {
        out << "p\tq\th_BC\th_BCphi\tv\tw_shift\th_A\th_Aphi\tv_dual\tw_dual\th_dol\th_dolphi\tv_dol\tv_dol_prev\n";
        for (auto& [b, row] : r.rows) {
            out << b.p << '\t' << b.q;
            for (Theory t : kTheories) {
                Split s = split(r, t, b.p, b.q);
                out << '\t' << s.h << '\t' << s.h_phi << '\t' << s.j1 << '\t' << s.j2;
            }
            out << '\n';
        }
        return out.str();
    }
    out << "### " << r.label << " at " << to_string(r.point) << "\n\n";
    out << "| p,q | h_BC = h_BCφ + v^{p,q} + w^{p-1,q-1} | h_A = h_Aφ + v^{n-p,n-q} + w^{n-p-1,n-q-1} | "
           "h_∂̄ = h_∂̄φ + v^{p,q} + v^{p,q-1} |\n|---|---|---|---|\n";
    for (auto& [b, row] : r.rows) {
        out << "| " << bd(b.p, b.q) << " |";
        for (Theory t : kTheories) {
            Split s = split(r, t, b.p, b.q);
            out << ' ' << s.h << " = " << s.h_phi << " + " << s.j1 << " + " << s.j2 << " |";
        }
        out << '\n';
    }
    for (auto& m : r.failures) out << "\nFAILED: " << m;
    if (!r.failures.empty()) out << '\n';
    return out.str();
}

int table_quantity(const JumpReport& r, const std::string& quantity, int p, int q) {
    const int n = r.n;
    if (quantity == "h_A") return r.rows.at({n - p, n - q}).h_a;
    if (quantity == "h_BC") return r.rows.at({p, q}).h_bc;
    if (quantity == "w") return r.w(p - 1, q - 1);
    if (quantity == "v") return r.v(p, q);
    if (quantity == "h_BCphi") return r.rows.at({p, q}).h_bc_phi;
    if (quantity == "h_Aphi") return r.rows.at({n - p, n - q}).h_a_phi;
    throw ParseError("unknown table quantity '" + quantity + "'");
}

std::string table_label(const std::string& quantity, int n, int p, int q) {
    if (quantity == "h_A" || quantity == "h_Aphi") return quantity + "^{" + bd(n - p, n - q) + "}";
    if (quantity == "w") return "w^{" + bd(p - 1, q - 1) + "}";
    return quantity + "^{" + bd(p, q) + "}";
}

std::string render_golden_table(const Example& ex, const std::map<std::string, JumpReport>& by_stratum) {
    if (!ex.raw().contains("golden_table")) throw ParseError(ex.name() + " has no golden_table section");
    const json& def = ex.raw().at("golden_table");
    const std::string layout = def.at("layout").get<std::string>();
    const auto strata = def.at("strata").get<std::vector<std::string>>();
    const auto quantities = def.at("quantities").get<std::vector<std::string>>();
    const auto bidegrees = def.at("bidegrees").get<std::vector<std::array<int, 2>>>();
    const int n = ex.pres().n;
    std::ostringstream out;
    if (layout == "across") {
        // One block of strata columns per bidegree, one row per quantity.
        for (size_t b = 0; b < bidegrees.size(); ++b) {
            out << (b == 0 ? "" : "\t");
            for (auto& s : strata) out << "\t(" << s << ")";
        }
        out << '\n';
        for (auto& qn : quantities) {
            for (size_t b = 0; b < bidegrees.size(); ++b) {
                auto [p, q] = bidegrees[b];
                out << (b == 0 ? "" : "\t") << table_label(qn, n, p, q);
                for (auto& s : strata) out << '\t' << table_quantity(by_stratum.at(s), qn, p, q);
            }
            out << '\n';
        }
    } else if (layout == "down") {
        // One row per bidegree, label/value pairs per quantity; a single stratum.
        if (strata.size() != 1) throw ParseError("golden_table: the down layout takes exactly one stratum");
        const JumpReport& r = by_stratum.at(strata.front());
        for (auto [p, q] : bidegrees) {
            for (size_t i = 0; i < quantities.size(); ++i)
                out << (i ? "\t" : "") << table_label(quantities[i], n, p, q) << '\t'
                    << table_quantity(r, quantities[i], p, q);
            out << '\n';
        }
    } else {
        throw ParseError("golden_table: unknown layout '" + layout + "'");
    }
    return out.str();
}

std::string render_full_table(const std::vector<std::pair<std::string, JumpReport>>& reports, Format f) {
    std::ostringstream out;
    if (f == Format::Json) {
        json j = json::array();
        for (auto& [name, r] : reports)
            for (Theory t : kTheories)
                for (auto& [b, row] : r.rows) {
                    Split s = split(r, t, b.p, b.q);
                    j.push_back({{"stratum", name}, {"theory", theory_name(t)}, {"p", b.p}, {"q", b.q}, {"h", s.h},
                                 {"h_phi", s.h_phi}, {"j1", s.j1}, {"j2", s.j2}});
                }
        return j.dump(2) + "\n";
    }
    const char sep = f == Format::Tsv ? '\t' : '|';
    auto line = [&](const std::vector<std::string>& cells) {
        if (f == Format::Tsv) {
            for (size_t i = 0; i < cells.size(); ++i) out << (i ? "\t" : "") << cells[i];
        } else {
            out << '|';
            for (auto& c : cells) out << ' ' << c << " |";
        }
        out << '\n';
    };
    line({"stratum", "theory", "p", "q", "h", "h_phi", "j1", "j2"});
    if (sep == '|') line({"---", "---", "---", "---", "---", "---", "---", "---"});
    for (auto& [name, r] : reports)
        for (Theory t : kTheories)
            for (auto& [b, row] : r.rows) {
                Split s = split(r, t, b.p, b.q);
                line({name, theory_name(t), std::to_string(b.p), std::to_string(b.q), std::to_string(s.h),
                      std::to_string(s.h_phi), std::to_string(s.j1), std::to_string(s.j2)});
            }
    return out.str();
}

}  // namespace dc
