#include <doctest.h>

#include <random>

#include "dc/scalars.hpp"

using namespace dc;

namespace {

GQ random_gq(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    return GQ(a, b);
}

}  // namespace

TEST_CASE("gaussian rationals: parse and print round trip") {
    CHECK(to_string(parse_gq("1/2")) == "1/2");
    CHECK(to_string(parse_gq("2/4")) == "1/2");
    CHECK(parse_gq("i") == I_UNIT);
    CHECK(parse_gq("-i") == -I_UNIT);
    CHECK(parse_gq("1/2+3/4*i") == GQ(Rational(1, 2), Rational(3, 4)));
    CHECK(parse_gq("1/2-3/4*i") == GQ(Rational(1, 2), Rational(-3, 4)));
    CHECK(parse_gq("-7") == GQ(-7));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        GQ z = random_gq(rng);
        CHECK(parse_gq(to_string(z)) == z);
    }
}

TEST_CASE("gaussian rationals: malformed input is a parse error") {
    CHECK_THROWS_AS(parse_gq("1/0"), ParseError);
    CHECK_THROWS_AS(parse_gq("abc"), ParseError);
    CHECK_THROWS_AS(parse_gq(""), ParseError);
}

TEST_CASE("gaussian rationals form a field with conjugation") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        GQ a = random_gq(rng), b = random_gq(rng), c = random_gq(rng);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        CHECK(conj(a * b) == conj(a) * conj(b));
        CHECK(a * conj(a) == GQ(a.norm2()));
        if (!a.is_zero()) CHECK(a * a.inv() == GQ(1));
    }
    CHECK(I_UNIT * I_UNIT == GQ(-1));
}

TEST_CASE("parameter polynomials: arithmetic, truncation and conjugation") {
    RingPtr R = make_ring({"t", "u"}, 3);
    ParamPoly t = ParamPoly::variable(R, "t"), u = ParamPoly::variable(R, "u");
    ParamPoly tb = ParamPoly::variable(R, "t", true);
    CHECK((t + u) * (t - u) == t * t - u * u);
    CHECK((t * t * t * t).is_zero());  // beyond order 3
    CHECK((t * t * u).degree() == 3);
    CHECK(conj(t) == tb);
    CHECK(conj(I_UNIT * t * u) == -I_UNIT * tb * ParamPoly::variable(R, "u", true));
    CHECK(!(t * tb).holomorphic());
    CHECK((t + t * u).homogeneous_part(2) == t * u);
    CHECK(parse_poly("2*t^2 - 1/2*u + 1", R) == GQ(2) * t * t - GQ(Rational(1, 2)) * u + GQ(1));
    CHECK_THROWS_AS(parse_poly("t +* u", R), ParseError);
    CHECK_THROWS_AS(parse_poly("x", R), ParseError);
}

TEST_CASE("parameter polynomials: evaluation is a ring homomorphism") {
    RingPtr R = make_ring({"a", "b"}, 6);
    std::mt19937_64 rng(3);
    ParamPoly a = ParamPoly::variable(R, "a"), b = ParamPoly::variable(R, "b");
    ParamPoly ab = ParamPoly::variable(R, "a", true);
    ParamPoly f = a * a + I_UNIT * b, g = ab * b - 3;
    for (int i = 0; i < 20; ++i) {
        std::map<std::string, GQ> pt{{"a", random_gq(rng)}, {"b", random_gq(rng)}};
        CHECK((f * g).eval(pt) == f.eval(pt) * g.eval(pt));
        CHECK((f + g).eval(pt) == f.eval(pt) + g.eval(pt));
        CHECK(ab.eval(pt) == conj(pt["a"]));
    }
}

TEST_CASE("parameter polynomials: substitution") {
    RingPtr R = make_ring({"t11", "t21"}, 4);
    RingPtr S = make_ring({"s", "l"}, 4);
    ParamPoly f = parse_poly("t11*t21", R);
    std::map<std::string, ParamPoly> img{{"t11", parse_poly("s", S)}, {"t21", parse_poly("l*s", S)}};
    CHECK(f.substitute(img, S) == parse_poly("l*s^2", S));
    ParamPoly fb = ParamPoly::variable(R, "t21", true);
    CHECK(fb.substitute(img, S) == ParamPoly::variable(S, "l", true) * ParamPoly::variable(S, "s", true));
}
