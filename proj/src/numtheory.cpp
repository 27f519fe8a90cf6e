#include <cremona/numtheory.hpp>

#include <vector>

namespace cremona {

namespace {

BigInt pollard_brent(const BigInt &n, unsigned long seed)
{
    if (mpz_even_p(n.get_mpz_t()) != 0) {
        return 2;
    }
    BigInt y(seed % 1000 + 2);
    const BigInt c(seed % 997 + 1);
    const unsigned long m = 64;
    BigInt g(1);
    BigInt r(1);
    BigInt q(1);
    BigInt x;
    BigInt ys;
    auto step = [&](BigInt &v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1) {
        x = y;
        for (BigInt i = 0; i < r; ++i) {
            step(y);
        }
        BigInt k(0);
        while (k < r && g == 1) {
            ys = y;
            for (unsigned long i = 0; i < m && k + i < r; ++i) {
                step(y);
                q = q * abs(x - y) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            step(ys);
            BigInt diff = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

void factor_into(const BigInt &n, std::map<BigInt, unsigned> &out)
{
    if (n == 1) {
        return;
    }
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
        ++out[n];
        return;
    }
    for (unsigned long seed = 1;; ++seed) {
        const BigInt d = pollard_brent(n, seed);
        if (d != 1 && d != n) {
            factor_into(d, out);
            factor_into(n / d, out);
            return;
        }
    }
}

} // namespace

std::map<BigInt, unsigned> factorize(const BigInt &n)
{
    if (n == 0) {
        throw Error(ErrorKind::InvalidArgument, "factorization of zero");
    }
    std::map<BigInt, unsigned> out;
    BigInt m = abs(n);
    for (unsigned long p = 2; p < 10000 && m > 1; p += (p == 2 ? 1 : 2)) {
        if (BigInt(p) * p > m) {
            break;
        }
        while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
            ++out[BigInt(p)];
            m /= p;
        }
    }
    factor_into(m, out);
    return out;
}

std::pair<BigInt, BigInt> square_part(const BigInt &n)
{
    if (n < 0) {
        throw Error(ErrorKind::InvalidArgument, "square part of a negative integer");
    }
    if (n == 0) {
        return {BigInt(0), BigInt(0)};
    }
    BigInt s(1);
    BigInt r(1);
    for (const auto &[p, e] : factorize(n)) {
        BigInt pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e / 2);
        s *= pe;
        if (e % 2 == 1) {
            r *= p;
        }
    }
    return {s, r};
}

BigRational rational_pow(const BigRational &q, long e)
{
    if (e < 0) {
        if (q == 0) {
            throw Error(ErrorKind::InvalidArgument, "zero to a negative power");
        }
        return rational_pow(1 / q, -e);
    }
    BigInt num;
    BigInt den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

} // namespace cremona
