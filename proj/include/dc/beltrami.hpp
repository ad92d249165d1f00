#pragma once

#include <map>
#include <string>
#include <vector>

#include "dc/hodge.hpp"

namespace dc {

using Point = std::map<std::string, GQ>;

// coeff * theta_vec (x) form, with form a (0,1) generator.
struct BeltramiTerm {
    ParamPoly coeff;
    int vec = 0;
    int form = 0;  // generator slot
};

class BeltramiFamily {
public:
    // {params:[names], terms:[{coeff?, monomial:{param: exponent}, vector, form}]}
    static BeltramiFamily from_json(const nlohmann::json& j, const Presentation& P, int order);
    static BeltramiFamily zero(int order);

    RingPtr ring;
    std::vector<BeltramiTerm> terms;

    const std::vector<std::string>& params() const { return ring->names; }
    int max_degree() const;  // 0 for the zero family
    bool is_zero() const { return terms.empty(); }
    BeltramiFamily with_order(int order) const;
    // Parameters replaced by polynomials in the symbols of target.
    BeltramiFamily substitute(const std::map<std::string, ParamPoly>& images, const RingPtr& target) const;
    std::string to_string(const Presentation& P) const;
};

// Deformed operators of a family as matrices with parameter-polynomial entries.
// Order k >= 1 selects the homogeneous piece phi_k; order 0 means the whole family.
class Deformation {
public:
    // Verifies Maurer-Cartan order by order and throws ValidationError naming the first failing order.
    Deformation(const Hodge& H, BeltramiFamily fam, bool verify = true);

    const Hodge& hodge() const { return H_; }
    const Presentation& pres() const { return H_.pres(); }
    const BeltramiFamily& family() const { return fam_; }
    int max_degree() const { return maxdeg_; }
    const RingPtr& ring() const { return fam_.ring; }

    // Constant matrix of i_{theta (x) omega} for a single term: A^{p,q} -> A^{p-1,q+1}.
    const Mat& term_contraction(size_t term, int p, int q) const;

    PolyMat iphi(int p, int q, int k = 0) const;      // A^{p,q} -> A^{p-1,q+1}
    PolyMat lie(int p, int q, int k = 0) const;       // i_phi d' - d' i_phi : A^{p,q} -> A^{p,q+1}
    PolyMat dbar_phi(int p, int q) const;             // A^{p,q} -> A^{p,q+1}
    PolyMat d_phi(int p, int q) const;                // rows: d' into A^{p+1,q}, then dbar_phi
    PolyMat ddbar_phi(int p, int q) const;            // d' dbar_phi : A^{p,q} -> A^{p+1,q+1}
    // Graded commutator L_j L_k + L_k L_j : A^{p,q} -> A^{p,q+2}; stands in for L_{[phi_j, phi_k]}.
    PolyMat bracket_lie(int p, int q, int j, int k) const;

    // dbar L_k + L_k dbar = sum_{j=1}^{k-1} L_j L_{k-j}, all bidegrees, k = 1..2*maxdeg.
    ValidationReport check_maurer_cartan() const;
    // dbar_phi^2 = 0 and d' dbar_phi + dbar_phi d' = 0 as polynomial identities.
    ValidationReport check_nilpotent() const;
    // i_{phi_j} dbar = dbar i_{phi_j} - sum i_{phi_l} d' i_{phi_{j-l}}
    //                 + 1/2 sum (d' i_{phi_l} i_{phi_{j-l}} + i_{phi_{j-l}} i_{phi_l} d')
    ValidationReport check_cartan() const;
    // i_phi(a ^ b) = i_phi a ^ b + a ^ i_phi b on pairs of exterior monomials, per term.
    ValidationReport check_derivation() const;

private:
    PolyMat combine(int p, int q, int k, const std::vector<Mat>& per_term, int rows, int cols) const;
    const Hodge& H_;
    BeltramiFamily fam_;
    int maxdeg_ = 0;
    std::map<Bidegree, std::vector<Mat>> contr_;  // per term
    std::map<Bidegree, std::vector<Mat>> lie_;    // per term
};

// Deformed operators evaluated at a point, with the conjugate family and Hermitian adjoints.
class PointOperators {
public:
    PointOperators(const Deformation& D, Point point);

    const Point& point() const { return pt_; }
    const Hodge& hodge() const { return H_; }
    int dim(int p, int q) const { return H_.dim(p, q); }

    const Mat& iphi(int p, int q) const;       // A^{p,q} -> A^{p-1,q+1}
    const Mat& dbar_phi(int p, int q) const;   // A^{p,q} -> A^{p,q+1}
    const Mat& ddbar_phi(int p, int q) const;  // A^{p,q} -> A^{p+1,q+1}
    Mat d_phi(int p, int q) const;             // [d'; dbar_phi]
    Mat iphibar(int p, int q) const;           // conj o i_phi o conj : A^{p,q} -> A^{p+1,q-1}
    Mat dp_phibar(int p, int q) const;         // conj o dbar_phi o conj : A^{p,q} -> A^{p+1,q}

    // Hermitian adjoints, as maps into A^{p,q}.
    Mat iphi_star(int p, int q) const;       // A^{p-1,q+1} -> A^{p,q}
    Mat dbar_phi_star(int p, int q) const;   // A^{p,q+1} -> A^{p,q}
    Mat ddbar_phi_star(int p, int q) const;  // A^{p+1,q+1} -> A^{p,q}

    // Star formulas for the adjoints against the Hermitian adjoints, every bidegree.
    ValidationReport check_star_formulas() const;

private:
    struct Block {
        Mat iphi, dbphi, ddbphi;
    };
    const Block& block(int p, int q) const;
    const Hodge& H_;
    Point pt_;
    std::map<Bidegree, Block> blocks_;
};

}  // namespace dc
