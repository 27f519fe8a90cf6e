#include <doctest.h>

#include <random>

#include <cremona/hompoly.hpp>
#include <cremona/parse.hpp>

using namespace cremona;

namespace {

HomPoly3 P(const char *s) { return parse_hompoly(s); }

HomPoly3 random_poly(std::mt19937_64 &rng, int degree, int terms)
{
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> ex(0, degree);
    HomPoly3::TermMap m;
    for (int t = 0; t < terms; ++t) {
        const unsigned i = static_cast<unsigned>(ex(rng));
        std::uniform_int_distribution<int> ej(0, degree - static_cast<int>(i));
        const unsigned j = static_cast<unsigned>(ej(rng));
        const int c = coef(rng);
        if (c != 0) {
            m[{i, j, static_cast<unsigned>(degree) - i - j}] += c;
        }
    }
    auto p = HomPoly3::from_terms(Field::rationals(), m);
    if (p.is_zero()) {
        return HomPoly3::monomial(Field::rationals(), 1, {static_cast<unsigned>(degree), 0, 0});
    }
    return p;
}

} // namespace

TEST_CASE("arithmetic")
{
    CHECK(P("x") * P("y") == P("x*y"));
    CHECK((P("x") * P("y")).degree() == 2);
    CHECK((P("x^2") - P("x^2")).is_zero());
    CHECK((P("x^2") - P("x^2")).degree() == -1);
    CHECK((P("x+y") * P("x-y")) == P("x^2 - y^2"));
    CHECK_THROWS_AS(P("x") + P("x^2"), Error);
    try {
        (void)(P("x") + P("y^2"));
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::DegreeMismatch);
    }
    CHECK((P("x") + HomPoly3()) == P("x"));
}

TEST_CASE("gcd examples")
{
    CHECK(gcd(P("x^2 - y^2"), P("x*z - y*z")) == P("x - y"));
    const HomPoly3 p = P("-4x^2*y + 6*y*z^2");
    CHECK(gcd(p, p) == p.normalized());
    CHECK(gcd(P("x"), P("y")) == P("1"));
    CHECK(gcd(P("x^3*y"), P("x*y^2*z")) == P("x*y"));
    CHECK(gcd(HomPoly3(), P("2x+4y")) == P("x+2y"));
}

TEST_CASE("gcd divides randomized products")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const HomPoly3 c = random_poly(rng, 1 + trial % 3, 4);
        const HomPoly3 a = c * random_poly(rng, 2, 4);
        const HomPoly3 b = c * random_poly(rng, 1 + trial % 2, 3);
        const HomPoly3 g = gcd(a, b);
        REQUIRE(divide_exact(a, g).has_value());
        REQUIRE(divide_exact(b, g).has_value());
        // the planted factor is divisible by nothing more than g allows
        CHECK(divide_exact(g, c.normalized()).has_value());
        // cofactors are coprime
        CHECK(gcd(*divide_exact(a, g), *divide_exact(b, g)).is_constant());
    }
}

TEST_CASE("gcd over a prime field")
{
    const Field f7 = Field::prime(7);
    const HomPoly3 a = parse_hompoly("x^2 - y^2", f7);
    const HomPoly3 b = parse_hompoly("x*z + 6*y*z", f7);
    CHECK(gcd(a, b) == parse_hompoly("x - y", f7));
    // x^7 - y^7 = (x-y)^7 in characteristic 7
    const HomPoly3 c = parse_hompoly("x^7 - y^7", f7);
    CHECK(gcd(c, parse_hompoly("x^2 - 2x*y + y^2", f7)) == parse_hompoly("x^2 - 2x*y + y^2", f7));
}

TEST_CASE("jacobian")
{
    CHECK(jacobian_det(P("x"), P("y"), P("z")).degree() == 0);
    const HomPoly3 j1 = jacobian_det(P("y*z"), P("x*z"), P("x*y"));
    CHECK(j1.normalized() == P("x*y*z"));
    const HomPoly3 j2 = jacobian_det(P("x*y"), P("x*z"), P("z^2"));
    CHECK(j2.normalized() == P("x*z^2"));
}

TEST_CASE("substitute")
{
    const std::array<HomPoly3, 3> f{P("x^2+y*z"), P("3x*y"), P("z^2-x*y")};
    CHECK(substitute(P("x"), f) == f[0]);
    CHECK(substitute(P("x+y"), {P("y"), P("x"), P("z")}) == P("x+y"));
    CHECK(substitute(P("x^2"), {P("y*z"), P("x*z"), P("x*y")}) == P("y^2*z^2"));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const HomPoly3 q = random_poly(rng, 2, 4);
        const std::array<HomPoly3, 3> g{random_poly(rng, 2, 3), random_poly(rng, 2, 3), random_poly(rng, 2, 3)};
        const std::array<HomPoly3, 3> h{random_poly(rng, 1, 3), random_poly(rng, 1, 3), random_poly(rng, 1, 3)};
        const std::array<HomPoly3, 3> gh{substitute(g[0], h), substitute(g[1], h), substitute(g[2], h)};
        CHECK(substitute(substitute(q, g), h) == substitute(q, gh));
    }
}

TEST_CASE("multiplication is associative and commutative")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const HomPoly3 a = random_poly(rng, 2, 4);
        const HomPoly3 b = random_poly(rng, 3, 5);
        const HomPoly3 c = random_poly(rng, 1, 3);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("printer and parser round trip")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        HomPoly3 a = random_poly(rng, 1 + trial % 4, 5);
        if (trial % 3 == 0) {
            a = a.scaled(BigRational(1, 2 + trial));
        }
        CHECK(parse_hompoly(a.to_string()) == a);
    }
    CHECK(P("2x^2y - (1/2)y^3 + 3/4*y*z^2").to_string() == "2*x^2*y - 1/2*y^3 + 3/4*y*z^2");
    CHECK_THROWS_AS(P("x + y^2"), Error);
    CHECK_THROWS_AS(P("x / y"), Error);
    CHECK_THROWS_AS(P("x + w"), Error);
    CHECK_THROWS_AS(P("(x + y"), Error);
}

TEST_CASE("squarefree and division")
{
    CHECK(is_squarefree(P("x*y*z")));
    CHECK_FALSE(is_squarefree(P("x^2*y")));
    const auto [q, r] = divide(P("x^2 + y^2"), P("x - y"));
    CHECK(q * P("x - y") + r == P("x^2 + y^2"));
    CHECK(r == P("2y^2"));
}

TEST_CASE("prime field elements")
{
    const PrimeFieldElement a(3, 7);
    CHECK((a * a.inverse()).residue() == 1);
    CHECK(PrimeFieldElement::from_rational(BigRational(1, 2), 7).residue() == 4);
    CHECK_THROWS_AS(PrimeFieldElement(1, 8), Error);
}
