#ifndef CREMONA_NUMTHEORY_HPP
#define CREMONA_NUMTHEORY_HPP

#include <map>
#include <utility>

#include <cremona/field.hpp>

namespace cremona {

// Prime factorization of |n| (n != 0), by trial division then Pollard-Brent rho.
std::map<BigInt, unsigned> factorize(const BigInt &n);

// n = s^2 * r with r squarefree (n >= 0). Returns (s, r); (0, 0) for n = 0.
std::pair<BigInt, BigInt> square_part(const BigInt &n);

BigRational rational_pow(const BigRational &q, long e);

} // namespace cremona

#endif
