#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dc/errors.hpp"

namespace dc {

using Rational = mpq_class;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

// Gaussian rational re + im*i.
struct GQ {
    Rational re, im;

    GQ() = default;
    GQ(long v) : re(v), im(0) {}
    GQ(Rational r) : re(std::move(r)), im(0) {}
    GQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    GQ conj() const { return GQ(re, -im); }
    Rational norm2() const { return re * re + im * im; }
    GQ inv() const;

    GQ& operator+=(const GQ& o);
    GQ& operator-=(const GQ& o);
    GQ& operator*=(const GQ& o);
    GQ& operator/=(const GQ& o) { return *this *= o.inv(); }

    friend GQ operator+(GQ a, const GQ& b) { return a += b; }
    friend GQ operator-(GQ a, const GQ& b) { return a -= b; }
    friend GQ operator*(GQ a, const GQ& b) { return a *= b; }
    friend GQ operator/(GQ a, const GQ& b) { return a /= b; }
    friend GQ operator-(const GQ& a) { return GQ(-a.re, -a.im); }
    friend bool operator==(const GQ& a, const GQ& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }
};

inline GQ conj(const GQ& z) { return z.conj(); }
inline bool is_zero(const GQ& z) { return z.is_zero(); }
inline const GQ I_UNIT(Rational(0), Rational(1));

std::string to_string(const GQ& z);
// Accepts "a/b", "a/b*i", "i", "-i", "re+im*i", "re-im*i".
GQ parse_gq(const std::string& s);

// Variables t_1..t_r followed by their conjugates; total-degree truncation.
struct PolyRing {
    std::vector<std::string> names;
    int order = 10;

    int nvars() const { return static_cast<int>(names.size()); }
    int index_of(const std::string& name) const;
    std::string var_name(int v) const;  // conjugates print as "conj(t)"
};
using RingPtr = std::shared_ptr<const PolyRing>;
RingPtr make_ring(std::vector<std::string> names, int order);
RingPtr with_order(const RingPtr& ring, int order);

// Sparse exponent vector: sorted (variable, power) pairs, variables in [0, 2r).
using Exponent = std::vector<std::pair<int, int>>;
int total_degree(const Exponent& e);

class ParamPoly {
public:
    ParamPoly() = default;
    ParamPoly(long c) : ParamPoly(GQ(c)) {}
    ParamPoly(const GQ& c);
    ParamPoly(RingPtr ring, const GQ& c);

    static ParamPoly variable(RingPtr ring, const std::string& name, bool conjugate = false);
    static ParamPoly monomial(RingPtr ring, Exponent e, GQ c);

    const RingPtr& ring() const { return ring_; }
    const std::map<Exponent, GQ>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GQ constant_term() const;
    int degree() const;       // -1 for zero
    bool holomorphic() const;  // no conjugate variables
    ParamPoly homogeneous_part(int k) const;

    ParamPoly conj() const;
    ParamPoly rebase(RingPtr ring) const;
    GQ eval(const std::map<std::string, GQ>& point) const;
    // Substitutes each variable by a polynomial of another ring (conjugates by the conjugated image).
    ParamPoly substitute(const std::map<std::string, ParamPoly>& images, RingPtr target) const;

    ParamPoly& operator+=(const ParamPoly& o);
    ParamPoly& operator-=(const ParamPoly& o);
    ParamPoly& operator*=(const ParamPoly& o);
    ParamPoly& operator*=(const GQ& c);

    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
    friend ParamPoly operator*(ParamPoly a, const ParamPoly& b) { return a *= b; }
    friend ParamPoly operator*(ParamPoly a, const GQ& c) { return a *= c; }
    friend ParamPoly operator*(const GQ& c, ParamPoly a) { return a *= c; }
    friend ParamPoly operator-(ParamPoly a) { return a *= GQ(-1); }
    friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return (a - b).is_zero(); }
    friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }

private:
    void adopt(const ParamPoly& o);
    void add_term(const Exponent& e, const GQ& c);
    int limit() const { return ring_ ? ring_->order : 1 << 20; }

    RingPtr ring_;
    std::map<Exponent, GQ> terms_;
};

inline ParamPoly conj(const ParamPoly& p) { return p.conj(); }
inline bool is_zero(const ParamPoly& p) { return p.is_zero(); }
std::string to_string(const ParamPoly& p);

// Parses sums of products of rationals, "i" and ring variables ("s1", "2*s1^2", "lambda*s1 - 1/2").
ParamPoly parse_poly(const std::string& s, const RingPtr& ring);

}  // namespace dc
