#pragma once

#include <array>
#include <map>

#include "dc/presentation.hpp"

namespace dc {

enum class Theory { Dolbeault, BottChern, Aeppli };
std::string theory_name(Theory t);
Theory parse_theory(const std::string& s);

struct CohomologyGroup {
    Theory theory;
    Bidegree bidegree;
    int dimension = 0;
    Mat harmonic_basis;  // columns
};

// Hodge theory of the presented complex with the diagonal metric given by the generator norms.
// Adjoints are Hermitian adjoints for that metric; the star operator is derived from the wedge pairing.
class Hodge {
public:
    explicit Hodge(const Presentation& P);

    const Presentation& pres() const { return P_; }
    int n() const { return P_.n; }
    int dim(int p, int q) const;
    bool in_range(int p, int q) const { return p >= 0 && q >= 0 && p <= n() && q <= n(); }

    // Differentials out of A^{p,q}; zero-sized when either end is out of range.
    const Mat& dp(int p, int q) const;
    const Mat& db(int p, int q) const;
    const Mat& ddb(int p, int q) const;  // d' dbar : A^{p,q} -> A^{p+1,q+1}
    // Adjoints into A^{p,q} from above, as maps out of A^{p,q}: d'* : A^{p,q} -> A^{p-1,q} etc.
    Mat dp_star(int p, int q) const;
    Mat db_star(int p, int q) const;
    Mat ddb_star(int p, int q) const;  // A^{p,q} -> A^{p-1,q-1}

    // Hermitian adjoint of A : A^{src} -> A^{dst}, as a map A^{dst} -> A^{src}.
    Mat adjoint(const Mat& A, Bidegree src, Bidegree dst) const;
    Vec norms(int p, int q) const;
    GQ inner(const Vec& a, const Vec& b, int p, int q) const;

    const Mat& star(int p, int q) const;  // A^{p,q} -> A^{n-q,n-p}
    Mat conj_matrix(int p, int q) const;  // conj(x) = conj_matrix * conj_entries(x), A^{p,q} -> A^{q,p}
    Vec conj_vec(const Vec& x, int p, int q) const;

    const Mat& laplacian(Theory t, int p, int q) const;
    const Mat& harmonic(Theory t, int p, int q) const;   // basis of ker laplacian, as columns
    const Mat& projector(Theory t, int p, int q) const;  // orthogonal projection onto harmonic space
    const Mat& green(Theory t, int p, int q) const;

    int dim_quotient(Theory t, int p, int q) const;
    // Dimension computed from the Laplacian kernel and from the quotient; throws if they differ.
    CohomologyGroup cohomology(Theory t, int p, int q) const;

private:
    struct Block {
        Mat dp, db, ddb, star;
        std::array<Mat, 3> lap, harm, proj, green;
    };
    const Block& block(int p, int q) const;
    Mat build_laplacian(Theory t, int p, int q) const;
    Mat build_star(int p, int q) const;

    const Presentation& P_;
    std::map<Bidegree, Block> blocks_;
};

}  // namespace dc
