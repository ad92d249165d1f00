#include "dc/examples.hpp"

#include <filesystem>
#include <fstream>
#include <random>

namespace dc {

using nlohmann::json;

namespace {

std::string json_text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long>());
    throw ParseError("expected a string or an integer, got " + j.dump());
}

// Numerators in [-12,12] \ {0}, denominators in [1,12].
GQ random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(1, 12), den(1, 12), sign(0, 1);
    long a = num(rng) * (sign(rng) ? -1 : 1);
    Rational r(a, den(rng));
    r.canonicalize();
    return GQ(r);
}

int total_rank(const JumpReport& r) {
    int t = 0;
    for (auto& [b, row] : r.rows) t += row.inv.v + row.inv.w + row.inv.v_dol;
    return t;
}

bool same_values(const JumpReport& a, const JumpReport& b) {
    for (auto& [bd, ra] : a.rows) {
        const JumpRow& rb = b.rows.at(bd);
        if (ra.h_bc_phi != rb.h_bc_phi || ra.h_a_phi != rb.h_a_phi || ra.h_dol_phi != rb.h_dol_phi ||
            ra.inv.v != rb.inv.v || ra.inv.w != rb.inv.w || ra.inv.v_dol != rb.inv.v_dol)
            return false;
    }
    return true;
}

}  // namespace

Point parse_point(const std::vector<std::string>& assignments) {
    Point pt;
    for (auto& arg : assignments) {
        size_t start = 0;
        while (start <= arg.size()) {
            size_t comma = arg.find(',', start);
            std::string item = arg.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            start = comma == std::string::npos ? arg.size() + 1 : comma + 1;
            if (item.empty()) continue;
            size_t eq = item.find('=');
            if (eq == std::string::npos || eq == 0) throw ParseError("expected name=value, got '" + item + "'");
            if (!pt.emplace(item.substr(0, eq), parse_gq(item.substr(eq + 1))).second)
                throw ParseError("parameter '" + item.substr(0, eq) + "' assigned twice");
        }
    }
    return pt;
}

std::string Example::resolve(const std::string& name_or_path) {
    if (std::filesystem::exists(name_or_path) && !std::filesystem::is_directory(name_or_path)) return name_or_path;
    std::string bundled = std::string(DC_DATA_DIR) + "/" + name_or_path + ".json";
    if (name_or_path.find('/') == std::string::npos && std::filesystem::exists(bundled)) return bundled;
    throw ParseError("unknown example '" + name_or_path + "' (bundled: iwasawa, nakamura)");
}

std::unique_ptr<Example> Example::load(const std::string& name_or_path, int order) {
    auto ex = std::unique_ptr<Example>(new Example());
    const std::string path = resolve(name_or_path);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        in >> ex->raw_;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    ex->order_ = order;
    ex->P_ = std::make_unique<Presentation>(Presentation::from_json(ex->raw_));
    ex->name_ = ex->P_->name;
    ValidationReport rep = validate(*ex->P_);
    if (!rep.ok) throw ValidationError(path + ": " + rep.failures.front());
    ex->H_ = std::make_unique<Hodge>(*ex->P_);
    if (!ex->raw_.contains("beltrami")) return ex;
    BeltramiFamily fam = BeltramiFamily::from_json(ex->raw_.at("beltrami"), *ex->P_, order);
    ex->D_ = std::make_unique<Deformation>(*ex->H_, working_family(fam, order));
    ex->C_ = std::make_unique<Canonical>(*ex->D_, order);
    const RingPtr& params = ex->D_->ring();
    try {
        for (auto& js : ex->raw_.value("strata", json::array())) {
            Stratum s;
            s.name = js.at("name").get<std::string>();
            s.symbols = make_ring(js.value("symbols", std::vector<std::string>{}), params->order);
            for (auto& name : params->names) {
                if (!js.at("substitution").contains(name))
                    throw ParseError("stratum " + s.name + ": no substitution for parameter '" + name + "'");
                s.substitution[name] = parse_poly(json_text(js.at("substitution").at(name)), s.symbols);
            }
            for (auto& c : js.value("nonzero", json::array())) s.nonzero.push_back(parse_poly(json_text(c), params));
            if (js.contains("anchor")) {
                Point a;
                for (auto& [k, v] : js.at("anchor").items()) a[k] = parse_gq(json_text(v));
                s.anchor = a;
            }
            ex->strata_.push_back(std::move(s));
        }
    } catch (const json::exception& e) {
        throw ParseError(path + ": strata: " + e.what());
    }
    return ex;
}

const Stratum& Example::stratum(const std::string& name) const {
    for (auto& s : strata_)
        if (s.name == name) return s;
    std::string known;
    for (auto& s : strata_) known += (known.empty() ? "" : ", ") + s.name;
    throw ParseError("unknown stratum '" + name + "' for " + name_ + " (known: " + known + ")");
}

Point Example::point_from_symbols(const Stratum& s, const Point& symbols) const {
    Point pt;
    for (auto& [name, poly] : s.substitution) pt[name] = poly.eval(symbols);
    return pt;
}

std::vector<SamplePoint> Example::sample(const Stratum& s, std::uint64_t seed, int count) const {
    std::mt19937_64 rng(seed);
    std::vector<SamplePoint> out;
    auto accept = [&](const Point& sym) {
        Point pt = point_from_symbols(s, sym);
        for (auto& c : s.nonzero)
            if (c.eval(pt).is_zero()) return false;
        out.push_back({sym, pt});
        return true;
    };
    if (s.anchor && !accept(*s.anchor)) throw ValidationError("anchor of stratum " + s.name + " violates its conditions");
    int attempts = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++attempts > 1000) throw ValidationError("could not sample stratum " + s.name);
        Point sym;
        for (auto& name : s.symbols->names) sym[name] = random_rational(rng);
        accept(sym);
    }
    out.resize(count);
    return out;
}

JumpReport Example::evaluate(const Point& params, const std::string& label) const {
    for (auto& name : D_->ring()->names)
        if (!params.count(name)) throw ParseError("no value given for parameter '" + name + "'");
    for (auto& [name, v] : params)
        if (D_->ring()->index_of(name) < 0) throw ParseError("unknown parameter '" + name + "'");
    PointOperators O(*D_, params);
    return jump_report(*C_, O, label);
}

StratumResult Example::evaluate(const Stratum& s, std::uint64_t seed) const {
    StratumResult r;
    r.name = s.name;
    r.samples = sample(s, seed, 3);
    for (int i = 0; i < 2; ++i) r.reports.push_back(evaluate(r.samples[i].params, s.name));
    if (!same_values(r.reports[0], r.reports[1])) {
        r.reports.push_back(evaluate(r.samples[2].params, s.name));
        r.warnings.push_back("stratum " + s.name + ": sample points disagree; evaluated a third point and kept the "
                             "one of maximal rank");
        for (size_t i = 1; i < r.reports.size(); ++i)
            if (total_rank(r.reports[i]) > total_rank(r.reports[r.chosen])) r.chosen = i;
    } else {
        r.samples.resize(2);
    }
    return r;
}

Example::Restricted Example::restrict_to(const Stratum& s) const {
    Restricted out;
    BeltramiFamily fam = D_->family().substitute(s.substitution, s.symbols);
    out.D = std::make_unique<Deformation>(*H_, working_family(fam, order_));
    out.C = std::make_unique<Canonical>(*out.D, order_);
    return out;
}

}  // namespace dc
