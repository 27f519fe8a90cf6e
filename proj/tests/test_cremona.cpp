#include <doctest.h>

#include <random>

#include <cremona/cremona.hpp>
#include <cremona/parse.hpp>

using namespace cremona;

namespace {

HomPoly3 P(const char *s) { return parse_hompoly(s); }
CremonaMap M(const char *s) { return CremonaMap::parse(s); }

const CremonaMap sigma = M("[y*z : x*z : x*y]");

UPoly random_upoly(std::mt19937_64 &rng, int max_deg)
{
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::vector<BigRational> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto &v : c) {
        v = coef(rng);
    }
    return UPoly(Field::rationals(), c);
}

DeJonquieresElement random_dejonq(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> coef(-3, 3);
    const UPoly one = UPoly::constant(Field::rationals(), 1);
    while (true) {
        DeJonquieresElement::Mobius m{coef(rng), coef(rng), coef(rng), coef(rng)};
        if (m[0] * m[3] - m[1] * m[2] == 0) {
            continue;
        }
        DeJonquieresElement::Fiber f;
        for (auto &e : f) {
            e = RatFunc(random_upoly(rng, 2), one);
        }
        if ((f[0] * f[3] - f[1] * f[2]).is_zero()) {
            continue;
        }
        return DeJonquieresElement(m, f);
    }
}

// Evaluate a map at a point of P^2; nullopt at indeterminacy.
std::optional<std::array<BigRational, 3>> apply(const CremonaMap &f, const std::array<BigRational, 3> &q)
{
    std::array<BigRational, 3> r{f[0].eval(q), f[1].eval(q), f[2].eval(q)};
    if (r[0] == 0 && r[1] == 0 && r[2] == 0) {
        return std::nullopt;
    }
    return r;
}

// Points on the line a x + b y + c z = 0.
std::vector<std::array<BigRational, 3>> points_on_line(const HomPoly3 &line, int count)
{
    const BigRational a = line.coeff({1, 0, 0});
    const BigRational b = line.coeff({0, 1, 0});
    const BigRational c = line.coeff({0, 0, 1});
    // two independent solutions of the linear equation
    std::array<BigRational, 3> u;
    std::array<BigRational, 3> v;
    if (a != 0) {
        u = {-b, a, 0};
        v = {-c, 0, a};
    } else if (b != 0) {
        u = {1, 0, 0};
        v = {0, -c, b};
    } else {
        u = {1, 0, 0};
        v = {0, 1, 0};
    }
    std::vector<std::array<BigRational, 3>> out;
    for (int s = 1; s <= count; ++s) {
        BigRational t(s * 7 + 3, s + 11);
        t.canonicalize();
        out.push_back({u[0] + t * v[0], u[1] + t * v[1], u[2] + t * v[2]});
    }
    return out;
}

} // namespace

TEST_CASE("normalize")
{
    const CremonaMap a = CremonaMap::normalize(P("x^2"), P("x*y"), P("x*z"));
    CHECK(a.is_identity());
    CHECK(a.degree() == 1);
    CHECK(CremonaMap::normalize(P("y*z"), P("x*z"), P("x*y")).degree() == 2);
    CHECK(CremonaMap::normalize(P("2x"), P("2y"), P("2z")).is_identity());
    CHECK(CremonaMap::normalize(P("-x/2"), P("-y/2"), P("-z/2")).is_identity());
    CHECK_THROWS_AS(CremonaMap::normalize(HomPoly3(), HomPoly3(), HomPoly3()), Error);
    try {
        (void)CremonaMap::normalize(HomPoly3(), HomPoly3(), HomPoly3());
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::AllZero);
    }
    CHECK(M("[x*y : x*z : z^2]").to_string() == "[x*y : x*z : z^2]");
    CHECK(M(M("[x^2 - y*z : 3x*y/2 : z^2]").to_string().c_str()) == M("[x^2 - y*z : 3x*y/2 : z^2]"));
}

TEST_CASE("compose")
{
    CHECK(compose(sigma, sigma).is_identity());
    const CremonaMap f = M("[x*y : x*z : z^2]");
    CHECK(compose(CremonaMap::identity(), f) == f);
    CHECK(compose(f, CremonaMap::identity()) == f);
    const auto raw = compose_raw(sigma, sigma);
    CHECK(raw[0].degree() == 4);
    CHECK(raw[0] == P("x^2*y*z"));
    CHECK(compose(sigma, sigma).degree() == 1);
    CHECK(compose(sigma, sigma).degree() < sigma.degree() * sigma.degree());
}

TEST_CASE("inverse witness")
{
    const CremonaMap s = sigma.with_inverse(sigma);
    CHECK(s.has_inverse());
    CHECK(s.inverse() == sigma);
    CHECK_THROWS_AS(sigma.with_inverse(CremonaMap::identity()), Error);
    const CremonaMap f = M("[x*y : x*z : z^2]");
    const CremonaMap finv = M("[y^2 : x*z : y*z]");
    CHECK(f.with_inverse(finv).has_inverse());
    const CremonaMap g = compose_birational(f.with_inverse(finv), s);
    REQUIRE(g.has_inverse());
    CHECK(compose(g, g.inverse()).is_identity());
}

TEST_CASE("strict transform")
{
    const CremonaMap s = sigma.with_inverse(sigma);
    // {x = 0} is the image of the point [1:0:0] under sigma, so it has no strict preimage
    CHECK(strict_transform(s, P("x")).is_constant());
    for (const auto &q : points_on_line(P("x"), 4)) {
        CHECK(ProjPoint::make(Field::rationals(), *apply(sigma, q)) == ProjPoint::make(Field::rationals(), {1, 0, 0}));
    }
    CHECK(strict_transform(CremonaMap::identity().with_inverse(CremonaMap::identity()), P("x^2 + y*z")) == P("x^2 + y*z"));
    CHECK(strict_transform(s, P("x + y + z")) == P("x*y + x*z + y*z"));

    const CremonaMap f = M("[x*y : x*z : z^2]").with_inverse(M("[y^2 : x*z : y*z]"));
    // z∘f = z^2 consists of Jacobian factors only
    CHECK(strict_transform(f, P("z")).is_constant());
    CHECK(strict_transform(f, P("x")) == P("y"));
    CHECK_THROWS_AS(strict_transform(sigma, P("x")), Error);
}

TEST_CASE("strict transform against sampled preimages")
{
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> coef(-4, 4);
    int checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const CremonaMap f = dejonq_to_cremona(random_dejonq(rng));
        const CremonaMap finv = f.inverse();
        HomPoly3 line = P("0");
        while (line.is_zero()) {
            line = P("x").scaled(coef(rng)) + P("y").scaled(coef(rng)) + P("z").scaled(coef(rng));
        }
        const HomPoly3 q = strict_transform(f, line);
        if (q.is_constant()) {
            continue;
        }
        // Preimages of points of the line lie on q.
        for (const auto &pt : points_on_line(line, 5)) {
            const auto pre = apply(finv, pt);
            if (pre) {
                CHECK(q.eval(*pre) == 0);
            }
        }
        // Round trip back to the line.
        CHECK(strict_transform(finv, q) == line.normalized());
        ++checked;
    }
    CHECK(checked > 15);
}

TEST_CASE("contracted image")
{
    CHECK(contracted_image(sigma, P("x")) == ProjPoint::make(Field::rationals(), {1, 0, 0}));
    CHECK_FALSE(contracted_image(CremonaMap::identity(), P("x")).has_value());
    const CremonaMap f = M("[x*y : x*z : z^2]");
    CHECK(contracted_image(f, P("z")) == ProjPoint::make(Field::rationals(), {1, 0, 0}));
    CHECK(contracted_image(f, P("x")) == ProjPoint::make(Field::rationals(), {0, 0, 1}));
    CHECK_FALSE(contracted_image(f, P("y")).has_value());
    CHECK_THROWS_AS(contracted_image(f, P("x^2")), Error);
    // contracted curves divide the Jacobian
    const HomPoly3 jac = jacobian_det(f[0], f[1], f[2]);
    for (const char *line : {"x", "y", "z", "x+y", "x-z"}) {
        if (contracted_image(f, P(line))) {
            CHECK(divide_exact(jac, P(line)).has_value());
        }
    }
}

TEST_CASE("de Jonquieres composition")
{
    const Field Q = Field::rationals();
    const RatFunc one = RatFunc::constant(Q, 1);
    const RatFunc zero(Q);
    const DeJonquieresElement swap({1, 0, 0, 1}, {zero, one, one, zero});
    CHECK(dejonq_compose(swap, swap) == DeJonquieresElement::identity());
    const DeJonquieresElement shift({1, 1, 0, 1}, {one, zero, zero, one});
    CHECK(dejonq_compose(shift, shift) == DeJonquieresElement({1, 2, 0, 1}, {one, zero, zero, one}));

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 25; ++trial) {
        const DeJonquieresElement j1 = random_dejonq(rng);
        const DeJonquieresElement j2 = random_dejonq(rng);
        CHECK(dejonq_to_cremona(dejonq_compose(j1, j2)) == compose(dejonq_to_cremona(j1), dejonq_to_cremona(j2)));
        CHECK(dejonq_compose(j1, j1.inverse()) == DeJonquieresElement::identity());
    }
}

TEST_CASE("de Jonquieres to Cremona")
{
    CHECK(dejonq_to_cremona(DeJonquieresElement::identity()).is_identity());
    const auto a = DeJonquieresElement::parse("[[1,0],[0,1]] [[x,0],[0,1]]");
    // (x, y) -> (x, x y)
    CHECK(dejonq_to_cremona(a) == M("[x*z : x*y : z^2]"));
    const auto b = DeJonquieresElement::parse("[[0,1],[1,0]] [[0,1],[1,0]]");
    CHECK(dejonq_to_cremona(b) == sigma);
    // the inverse witness is genuine
    const CremonaMap f = dejonq_to_cremona(DeJonquieresElement::parse("[[2,1],[1,1]] [[x^2+1, x],[1, x-1]]"));
    CHECK(compose(f, f.inverse()).is_identity());
    CHECK(compose(f.inverse(), f).is_identity());
    // vertical lines x = c z go to vertical lines
    const HomPoly3 image = strict_transform(f.inverse(), P("x - 3z"));
    CHECK(image == P("4x - 7z"));
}

TEST_CASE("de Jonquieres recognition")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const DeJonquieresElement j = random_dejonq(rng);
        const auto back = is_dejonquieres(dejonq_to_cremona(j));
        REQUIRE(back.has_value());
        CHECK(*back == j);
    }
    // (x, y) -> (x, x y) conjugated by exchanging x and y preserves a different pencil
    const CremonaMap j = M("[x*z : x*y : z^2]");
    CHECK(is_dejonquieres(j).has_value());
    const CremonaMap swapped = CremonaMap::normalize(j[1].permuted({1, 0, 2}), j[0].permuted({1, 0, 2}), j[2].permuted({1, 0, 2}));
    CHECK(swapped == M("[x*y : y*z : z^2]"));
    CHECK_FALSE(is_dejonquieres(swapped).has_value());
    CHECK(is_dejonquieres(CremonaMap::identity()) == DeJonquieresElement::identity());
    CHECK(is_dejonquieres(sigma).has_value());
}

TEST_CASE("de Jonquieres parsing")
{
    const auto j = DeJonquieresElement::parse("[[1,2],[0,1]] [[(x+1)/(x-1), 0],[0, 1]]");
    CHECK(DeJonquieresElement::parse(j.to_string()) == j);
    CHECK_THROWS_AS(DeJonquieresElement::parse("[[1,1],[1,1]] [[1,0],[0,1]]"), Error);
    CHECK_THROWS_AS(DeJonquieresElement::parse("[[x,0],[0,1]] [[1,0],[0,1]]"), Error);
}
