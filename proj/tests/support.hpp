#ifndef CREMONA_TESTS_SUPPORT_HPP
#define CREMONA_TESTS_SUPPORT_HPP

#include <cstdlib>
#include <random>

#include <cremona/monomial.hpp>
#include <cremona/toric.hpp>

namespace testing_support {

using cremona::IntMatrix2;

inline IntMatrix2 random_unimodular(std::mt19937_64 &rng, int bound, bool sl2_only = false)
{
    std::uniform_int_distribution<int> e(-bound, bound);
    while (true) {
        const IntMatrix2 m{e(rng), e(rng), e(rng), e(rng)};
        if (m.det() == 1 || (!sl2_only && m.det() == -1)) {
            return m;
        }
    }
}

inline IntMatrix2 random_loxodromic(std::mt19937_64 &rng, int bound, bool sl2_only = false)
{
    while (true) {
        const IntMatrix2 m = random_unimodular(rng, bound, sl2_only);
        if (cremona::is_loxodromic(m)) {
            return m;
        }
    }
}

inline cremona::TorusElement random_torus(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> e(-12, 12);
    int a = 0;
    int b = 0;
    while (a == 0 || b == 0) {
        a = e(rng);
        b = e(rng);
    }
    int c = 0;
    while (c == 0) {
        c = e(rng);
    }
    return cremona::TorusElement::from_rationals(cremona::make_rational(a, std::abs(c)), b);
}

inline cremona::ToricSurfaceModel random_model(std::mt19937_64 &rng, int blowups)
{
    cremona::ToricSurfaceModel m;
    for (int i = 0; i < blowups; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, m.fan().size() - 1);
        m = m.blow_up_cone(pick(rng));
    }
    return m;
}

} // namespace testing_support

#endif
