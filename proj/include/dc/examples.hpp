#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dc/deformed.hpp"

namespace dc {

// A polynomially parametrized piece of the parameter space.
struct Stratum {
    std::string name;
    RingPtr symbols;                                  // fresh symbols of the parametrization
    std::map<std::string, ParamPoly> substitution;    // family parameter -> polynomial in the symbols
    std::vector<ParamPoly> nonzero;                   // conditions in the family parameters
    std::optional<Point> anchor;                      // preferred first sample, in the symbols
};

struct SamplePoint {
    Point symbols;
    Point params;
};

// Evaluation of a stratum at two (or, on disagreement, three) sample points.
struct StratumResult {
    std::string name;
    std::vector<SamplePoint> samples;
    std::vector<JumpReport> reports;
    size_t chosen = 0;  // report taken as the generic value
    std::vector<std::string> warnings;
    const JumpReport& generic() const { return reports.at(chosen); }
};

class Example {
public:
    // A bundled name (iwasawa, nakamura) or a path to a presentation file.
    static std::unique_ptr<Example> load(const std::string& name_or_path, int order = 10);
    static std::string resolve(const std::string& name_or_path);

    const std::string& name() const { return name_; }
    const nlohmann::json& raw() const { return raw_; }
    const Presentation& pres() const { return *P_; }
    const Hodge& hodge() const { return *H_; }
    bool has_family() const { return D_ != nullptr; }
    const BeltramiFamily& family() const { return D_->family(); }
    const Deformation& deformation() const { return *D_; }
    const Canonical& canonical() const { return *C_; }
    int order() const { return order_; }
    const std::vector<Stratum>& strata() const { return strata_; }
    const Stratum& stratum(const std::string& name) const;

    // Random points of the stratum meeting its nonzero conditions; the anchor, if any, comes first.
    std::vector<SamplePoint> sample(const Stratum& s, std::uint64_t seed, int count) const;
    StratumResult evaluate(const Stratum& s, std::uint64_t seed) const;
    JumpReport evaluate(const Point& params, const std::string& label) const;

    // Deformation restricted to a stratum, in its symbols (for identities on the whole stratum).
    struct Restricted {
        std::unique_ptr<Deformation> D;
        std::unique_ptr<Canonical> C;
    };
    Restricted restrict_to(const Stratum& s) const;

    Point point_from_symbols(const Stratum& s, const Point& symbols) const;

private:
    std::string name_;
    nlohmann::json raw_;
    int order_ = 10;
    std::unique_ptr<Presentation> P_;
    std::unique_ptr<Hodge> H_;
    std::unique_ptr<Deformation> D_;
    std::unique_ptr<Canonical> C_;
    std::vector<Stratum> strata_;
};

// Parses "t11=1/2,t12=0" style assignments (complex values as re+im*i).
Point parse_point(const std::vector<std::string>& assignments);

}  // namespace dc
