#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dc/report.hpp"

using namespace dc;

namespace {

struct Options {
    std::string input;
    std::string theory;
    std::string bidegree;
    std::vector<std::string> at;
    std::string stratum;
    int order = 10;
    std::uint64_t seed = 1;
    std::string format = "md";
    bool golden = false;
};

Bidegree parse_bidegree(const std::string& s) {
    int p = 0, q = 0;
    char comma = 0, extra = 0;
    if (std::sscanf(s.c_str(), "%d %c %d %c", &p, &comma, &q, &extra) != 3 || comma != ',')
        throw ParseError("expected --bidegree p,q, got '" + s + "'");
    return {p, q};
}

std::vector<Theory> theories(const Options& o) {
    if (!o.theory.empty()) return {parse_theory(o.theory)};
    return {Theory::BottChern, Theory::Aeppli, Theory::Dolbeault};
}

const Example& need_family(const Example& ex) {
    if (!ex.has_family()) throw ParseError(ex.name() + " has no beltrami family");
    return ex;
}

int cmd_validate(const Options& o) {
    const std::string path = Example::resolve(o.input);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    Presentation P = Presentation::from_json(j);
    ValidationReport rep = validate(P);
    for (auto& f : rep.failures) std::cerr << path << ": " << f << '\n';
    if (!rep.ok) return 1;
    auto ex = Example::load(path, o.order);
    std::cout << "ok " << ex->name() << ": n = " << P.n << ", " << P.total_dim() << " basis forms";
    if (ex->has_family()) {
        const Deformation& D = ex->deformation();
        for (auto check : {&Deformation::check_nilpotent, &Deformation::check_cartan})
            for (auto& f : (D.*check)().failures) {
                std::cerr << path << ": " << f << '\n';
                rep.fail(f);
            }
        std::cout << ", family in " << D.ring()->nvars() << (D.ring()->nvars() == 1 ? " parameter" : " parameters")
                  << " of degree " << D.max_degree()
                  << " (Maurer-Cartan holds)";
    }
    std::cout << '\n';
    return rep.ok ? 0 : 1;
}

int cmd_cohom(const Options& o) {
    auto ex = Example::load(o.input, o.order);
    const Format f = parse_format(o.format);
    std::unique_ptr<PointOperators> O;
    if (!o.at.empty()) {
        Point pt = parse_point(o.at);
        need_family(*ex).evaluate(pt, "check");  // validates the parameter names
        O = std::make_unique<PointOperators>(ex->deformation(), pt);
    }
    if (o.bidegree.empty()) {
        std::cout << render_dimensions(ex->hodge(), theories(o), O.get(), f);
        return 0;
    }
    Bidegree b = parse_bidegree(o.bidegree);
    for (Theory t : theories(o)) {
        int d = O ? deformed_dim(*O, t, b.p, b.q) : ex->hodge().cohomology(t, b.p, b.q).dimension;
        std::cout << theory_name(t) << '\t' << to_string(b) << '\t' << d << '\n';
    }
    return 0;
}

int cmd_hodge(const Options& o) {
    auto ex = Example::load(o.input, o.order);
    const Hodge& H = ex->hodge();
    const Presentation& P = ex->pres();
    std::vector<Bidegree> bds;
    if (o.bidegree.empty()) {
        for (int p = 0; p <= P.n; ++p)
            for (int q = 0; q <= P.n; ++q) bds.push_back({p, q});
    } else {
        bds.push_back(parse_bidegree(o.bidegree));
    }
    for (Theory t : theories(o))
        for (auto b : bds) {
            CohomologyGroup g = H.cohomology(t, b.p, b.q);
            std::cout << theory_name(t) << ' ' << to_string(b) << ": dim " << g.dimension << '\n';
            for (int j = 0; j < g.harmonic_basis.cols; ++j)
                std::cout << "  " << form_string(P, b.p, b.q, g.harmonic_basis.col(j)) << '\n';
        }
    return 0;
}

int cmd_deform(const Options& o) {
    auto ex = Example::load(o.input, o.order);
    const Canonical& C = need_family(*ex).canonical();
    const Presentation& P = ex->pres();
    if (o.bidegree.empty()) throw ParseError("deform needs --bidegree p,q");
    Bidegree b = parse_bidegree(o.bidegree);
    if (!ex->hodge().in_range(b.p, b.q)) throw ParseError("bidegree " + to_string(b) + " out of range");
    std::vector<Point> points;
    if (!o.at.empty()) points.push_back(parse_point(o.at));
    for (auto& pt : points) ex->evaluate(pt, "check");
    int status = 0;
    for (Theory t : theories(o)) {
        UnobstructednessReport u = C.unobstructedness(t, b.p, b.q, points);
        const auto& series = C.harmonic_series(t, b.p, b.q);
        std::cout << theory_name(t) << ' ' << to_string(b) << ": " << series.size() << " harmonic classes, "
                  << (u.unobstructed ? "canonically unobstructed" : "obstructed");
        if (u.predicate) std::cout << ", weak ddbar predicate " << (*u.predicate ? "holds" : "fails");
        std::cout << '\n';
        for (size_t l = 0; l < series.size(); ++l) {
            const DeformationSeries& s = series[l];
            std::cout << "  class " << l << (s.certified ? "" : " (NOT certified)")
                      << (u.classes[l].unobstructed ? "" : " obstructed") << '\n';
            for (size_t k = 0; k < s.pieces.size(); ++k) {
                bool zero = true;
                for (auto& c : s.pieces[k]) zero = zero && c.is_zero();
                if (k > 0 && zero) continue;
                std::cout << "    sigma_" << k << " = " << form_string(P, b.p, b.q, s.pieces[k]) << '\n';
            }
            if (!s.certified) status = 3;
            for (auto& pt : points) {
                if (t == Theory::Aeppli) {
                    HarmonicityCheck h = C.harmonicity(s, pt);
                    std::cout << "    at " << to_string(pt) << ": deformed closed " << h.deformed_closed
                              << ", harmonic projection zero " << h.bc_projection_zero << ", d-closed "
                              << h.in_ker_d << '\n';
                }
                bool fails = false;
                for (auto& fp : u.classes[l].failing_points) fails = fails || fp == pt;
                std::cout << "    at " << to_string(pt) << ": " << (fails ? "target condition fails" : "target condition holds")
                          << '\n';
            }
        }
        for (auto& pt : points) {
            PointOperators O(ex->deformation(), pt);
            JumpInvariants inv = C.jump_invariants(O, b.p, b.q);
            if (t == Theory::Dolbeault) std::cout << "  v_dol = " << inv.v_dol << " at " << to_string(pt) << '\n';
            else if (t == Theory::BottChern) std::cout << "  v = " << inv.v << " at " << to_string(pt) << '\n';
            else std::cout << "  w = " << inv.w << " at " << to_string(pt) << '\n';
        }
    }
    return status;
}

std::vector<std::pair<std::string, JumpReport>> collect(const Example& ex, const Options& o,
                                                        const std::vector<std::string>& names) {
    std::vector<std::pair<std::string, JumpReport>> out;
    for (auto& name : names) {
        StratumResult r = ex.evaluate(ex.stratum(name), o.seed);
        for (auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
        out.emplace_back(name, r.generic());
    }
    return out;
}

int cmd_jump(const Options& o) {
    auto ex = Example::load(o.input, o.order);
    need_family(*ex);
    const Format f = parse_format(o.format);
    std::vector<std::pair<std::string, JumpReport>> reports;
    if (!o.at.empty()) {
        if (!o.stratum.empty()) throw ParseError("give either --at or --stratum");
        reports.emplace_back("point", ex->evaluate(parse_point(o.at), "point"));
    } else {
        std::vector<std::string> names;
        if (!o.stratum.empty()) names.push_back(o.stratum);
        else
            for (auto& s : ex->strata()) names.push_back(s.name);
        reports = collect(*ex, o, names);
    }
    bool ok = true;
    if (f == Format::Json) {
        nlohmann::json j = nlohmann::json::array();
        for (auto& [name, r] : reports) j.push_back(jump_json(r));
        std::cout << j.dump(2) << '\n';
    } else {
        for (size_t i = 0; i < reports.size(); ++i) std::cout << (i ? "\n" : "") << render_jump(reports[i].second, f);
    }
    for (auto& [name, r] : reports) {
        for (auto& m : r.failures) std::cerr << name << ": " << m << '\n';
        ok = ok && r.ok();
    }
    return ok ? 0 : 3;
}

int cmd_table(const Options& o) {
    auto ex = Example::load(o.input, o.order);
    need_family(*ex);
    std::vector<std::string> names;
    if (!o.stratum.empty()) names.push_back(o.stratum);
    else if (o.golden && ex->raw().contains("golden_table"))
        names = ex->raw().at("golden_table").at("strata").get<std::vector<std::string>>();
    else
        for (auto& s : ex->strata()) names.push_back(s.name);
    auto reports = collect(*ex, o, names);
    bool ok = true;
    for (auto& [name, r] : reports) {
        for (auto& m : r.failures) std::cerr << name << ": " << m << '\n';
        ok = ok && r.ok();
    }
    if (o.golden) {
        std::map<std::string, JumpReport> by(reports.begin(), reports.end());
        std::cout << render_golden_table(*ex, by);
    } else {
        std::cout << render_full_table(reports, parse_format(o.format));
    }
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bott-Chern, Aeppli and Dolbeault cohomology of presented double complexes under deformation"};
    app.require_subcommand(1);
    Options o;
    auto add = [&](CLI::App* sub, bool family) {
        sub->add_option("input", o.input, "bundled example name or presentation file")->required();
        sub->add_option("--theory", o.theory, "dolbeault, bc or aeppli");
        sub->add_option("--bidegree", o.bidegree, "p,q");
        sub->add_option("--order", o.order, "truncation order of the parameter series")->check(CLI::Range(1, 64));
        sub->add_option("--format", o.format, "md, tsv or json");
        if (family) {
            sub->add_option("--at", o.at, "parameter values name=a/b[,...]")->allow_extra_args(false);
            sub->add_option("--stratum", o.stratum, "named stratum of the example");
            sub->add_option("--seed", o.seed, "seed for stratum sampling");
        }
    };
    struct Cmd {
        const char* name;
        const char* help;
        bool family;
        int (*run)(const Options&);
    };
    const Cmd cmds[] = {
        {"validate", "check a presentation and its family", false, cmd_validate},
        {"cohom", "cohomology dimensions, deformed with --at", true, cmd_cohom},
        {"hodge", "harmonic representatives", false, cmd_hodge},
        {"deform", "canonical deformations of harmonic classes", true, cmd_deform},
        {"jump", "jumping formulas at a point or on strata", true, cmd_jump},
        {"table", "jump table over strata; --golden for the bundled layout", true, cmd_table},
    };
    std::vector<std::pair<CLI::App*, const Cmd*>> subs;
    for (auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add(sub, c.family);
        if (std::string(c.name) == "table") sub->add_flag("--golden", o.golden, "layout of the bundled golden table");
        subs.emplace_back(sub, &c);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        for (auto& [sub, c] : subs)
            if (sub->parsed()) return c->run(o);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation failed: " << e.what() << '\n';
        return 1;
    } catch (const InconsistencyError& e) {
        std::cerr << "internal inconsistency: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
