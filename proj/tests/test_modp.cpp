#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include <cremona/modp.hpp>
#include <cremona/parse.hpp>

using namespace cremona;

namespace {

const std::vector<std::string> system_files{
    "sigma_torus", "torus_pair", "henon",       "cat_map",    "jonquieres",
    "linear",      "half_shear", "sigma_swap", "triangular", "monomial_mix",
};

std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GeneratorSystem load(const std::string &name)
{
    return GeneratorSystem::parse(read_file(std::string(CREMONA_DATA_DIR) + "/systems/" + name + ".gens"));
}

ErrorKind kind_of(const std::function<void()> &f)
{
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("no error");
    return ErrorKind::InvalidArgument;
}

std::string message_of(const std::function<void()> &f)
{
    try {
        f();
    } catch (const Error &e) {
        return e.what();
    }
    return "";
}

// Subgroup of (F_p^*)^2 generated by the given pairs, by closure under multiplication.
std::size_t torus_subgroup_size(const std::vector<std::pair<long, long>> &gens, long p)
{
    std::set<std::pair<long, long>> seen{{1, 1}};
    std::vector<std::pair<long, long>> todo{{1, 1}};
    while (!todo.empty()) {
        const auto [a, b] = todo.back();
        todo.pop_back();
        for (const auto &[g, h] : gens) {
            const std::pair<long, long> n{a * g % p, b * h % p};
            if (seen.insert(n).second) {
                todo.push_back(n);
            }
        }
    }
    return seen.size();
}

} // namespace

TEST_CASE("generator files")
{
    for (const auto &name : system_files) {
        CAPTURE(name);
        const GeneratorSystem sys = load(name);
        CHECK(sys.size() >= 2);
        for (const auto &g : sys.generators()) {
            CHECK(compose(g.map, sys.generators()[g.inverse].map).is_identity());
            CHECK(sys.generators()[g.inverse].inverse == sys.index_of(g.name));
        }
    }
    const GeneratorSystem sys = load("sigma_torus");
    CHECK(sys.generators()[0].map == CremonaMap::parse("[y*z : x*z : x*y]"));
    CHECK(sys.generators()[0].inverse == 0);
    CHECK(sys.generators()[2].lift[0] == parse_hompoly("x/2"));
    CHECK(sys.word_to_string(sys.parse_word("t * sigma T")) == "t sigma T");

    const std::string unpaired = "gen a = [2*x : y : z]\ngen A = [x/2 : y : z]\ngen b = [x : 3*y : z]\ninverse a A\n";
    CHECK(kind_of([&] { GeneratorSystem::parse(unpaired); }) == ErrorKind::ParseError);
    CHECK(message_of([&] { GeneratorSystem::parse(unpaired); }).find("generator b has no inverse") != std::string::npos);
    CHECK(kind_of([] { GeneratorSystem::parse("gen a = [x : y : z]\ninverse a a\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { GeneratorSystem::parse("gen a = [2*x : y : z]\ninverse a a\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { GeneratorSystem::parse("gen a = [2*x : y\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { GeneratorSystem::parse("generator a\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { GeneratorSystem::parse("gen a = [y : x : z]\ninverse a b\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([&] { sys.parse_word("t q"); }) == ErrorKind::ParseError);
}

TEST_CASE("bad set")
{
    const GeneratorSystem st = load("sigma_torus");
    const BadSet bad = collect_bad_set(st);
    CHECK(bad.t.count(BigRational(1, 2)) == 1);
    CHECK(bad.t.count(BigRational(1, 3)) == 1);
    CHECK(bad.t.count(BigRational(1)) == 1);
    CHECK(bad.p[0] == parse_hompoly("x*y*z"));
    CHECK(bad.first == 0);
    REQUIRE(bad.second.has_value());
    CHECK(*bad.second == 1);
    BigRational r = 1;
    for (const auto &q : bad.t) {
        CHECK(q != 0);
        r *= q;
    }
    CHECK(bad.r == r);

    // Only one distinct generator: the pair is taken against the identity.
    const BadSet self = collect_bad_set(GeneratorSystem::parse("gen s = [y*z : x*z : x*y]\ninverse s s\n"));
    CHECK_FALSE(self.second.has_value());
    CHECK(self.minors[self.witness] == parse_hompoly("y^2*z - x^2*z"));
}

TEST_CASE("prime choice")
{
    BadSet b;
    b.t = {BigRational(1, 2), BigRational(3)};
    CHECK(choose_prime(b) == 5);
    b.t = {BigRational(1)};
    CHECK(choose_prime(b) == 2);
    b.t = {BigRational(BigInt("30030")), BigRational(1, 17)};
    CHECK(choose_prime(b) == 19);

    const BadSet bad = collect_bad_set(load("torus_pair"));
    CHECK(choose_prime(bad) == 11);
    const PrimeStrategy seeded{PrimeStrategy::Kind::Seeded, 42};
    const unsigned long p = choose_prime(bad, seeded);
    CHECK(p == choose_prime(bad, seeded));
    CHECK(is_admissible(bad, p));
    CHECK_FALSE(is_admissible(bad, 7));
    CHECK_FALSE(is_admissible(bad, 9));
}

TEST_CASE("reduction")
{
    const GeneratorSystem ss = load("sigma_swap");
    const BadSet bss = collect_bad_set(ss);
    const ReductionHom h5 = reduce_system(ss, bss, 5);
    CHECK(h5.maps[0] == CremonaMap::parse("[y*z : x*z : x*y]", Field::prime(5)));
    CHECK(compose(h5.maps[0], h5.maps[0]).is_identity());
    REQUIRE(h5.witness.has_value());
    CHECK_FALSE(h5.witness->is_zero());

    const GeneratorSystem tri = load("triangular");
    const BadSet bt = collect_bad_set(tri);
    CHECK_FALSE(is_admissible(bt, 3));
    CHECK(kind_of([&] { reduce_system(tri, bt, 3); }) == ErrorKind::BadPrime);
    const ReductionHom ht = reduce_system(tri, bt, choose_prime(bt));
    CHECK(ht.drops.empty());

    const GeneratorSystem half = load("half_shear");
    CHECK(kind_of([&] { reduce_system(half, collect_bad_set(half), 2); }) == ErrorKind::BadPrime);

    // Without the distinguishing pair, p = 3 would still pass the inverse checks
    // on (g, G) and collapse g to the identity.
    const GeneratorSystem gg = GeneratorSystem::parse("gen g = [x^2 : x*y : x*z + 3*y^2]\ngen G = [x^2 : x*y : x*z - 3*y^2]\ninverse g G\n");
    const BadSet bgg = collect_bad_set(gg);
    CHECK(CremonaMap::normalize(gg.generators()[0].lift).reduce_mod(3).is_identity());
    CHECK(kind_of([&] { reduce_system(gg, bgg, 3); }) == ErrorKind::BadPrime);
}

TEST_CASE("homomorphism on random words")
{
    for (const auto &name : system_files) {
        CAPTURE(name);
        const GeneratorSystem sys = load(name);
        const BadSet bad = collect_bad_set(sys);
        const unsigned long p = choose_prime(bad);
        const ReductionHom hom = reduce_system(sys, bad, p);
        for (const auto &w : random_words(sys.size(), 15, 4, 7)) {
            CAPTURE(sys.word_to_string(w));
            const WordCheck c = check_word(sys, hom, w);
            CHECK(c.commutes);
            CHECK(c.degree_p <= c.degree_q);
        }
        const Word w = sys.parse_word(sys.generators()[0].name + " " + sys.generators()[1].name + " " +
                                      sys.generators()[0].name);
        CHECK(check_word(sys, hom, w).commutes);
    }
    CHECK(random_words(3, 5, 4, 1) == random_words(3, 5, 4, 1));
}

TEST_CASE("finite image experiment")
{
    const GeneratorSystem tp = load("torus_pair");
    const BadSet bad = collect_bad_set(tp);
    for (const unsigned long p : {11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL}) {
        CAPTURE(p);
        const ReductionHom hom = reduce_system(tp, bad, p);
        const ImageReport rep = finite_image_experiment(hom, 1, 200);
        CHECK(rep.closure);
        const long q = static_cast<long>(p);
        const std::size_t expect = torus_subgroup_size({{2 % q, 3 % q}, {5 % q, 7 % q}}, q);
        CHECK(rep.image_size == expect);
        CHECK((p - 1) * (p - 1) % rep.image_size == 0);
    }

    const GeneratorSystem st = load("sigma_torus");
    const BadSet bst = collect_bad_set(st);
    const ReductionHom hst = reduce_system(st, bst, choose_prime(bst));
    CHECK(hst.p == 5);
    const ImageReport rst = finite_image_experiment(hst, 2, 100);
    CHECK(rst.closure);
    // sigma t sigma = t^-1, so the image is the torus subgroup extended by sigma.
    CHECK(rst.image_size == 2 * torus_subgroup_size({{2, 3}}, 5));

    const ReductionHom empty = reduce_system(GeneratorSystem{}, collect_bad_set(GeneratorSystem{}), 2);
    const ImageReport re = finite_image_experiment(empty, 1, 5);
    CHECK(re.closure);
    CHECK(re.image_size == 1);

    const ReductionHom h31 = reduce_system(tp, bad, 31);
    try {
        (void)finite_image_experiment(h31, 1, 2);
        FAIL("budget not enforced");
    } catch (const ImageBudgetExceeded &e) {
        CHECK_FALSE(e.partial().closure);
        CHECK(e.partial().image_size > 1);
    }
    const auto j = to_json(rst);
    CHECK(j["closure"] == true);
    CHECK(modp_report_json(st, bst, hst)["p"] == 5);
}
