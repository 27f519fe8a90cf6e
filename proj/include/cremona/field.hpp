#ifndef CREMONA_FIELD_HPP
#define CREMONA_FIELD_HPP

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include <cremona/error.hpp>

namespace cremona {

using BigInt = mpz_class;
using BigRational = mpq_class;

// Coefficient field of a polynomial: either Q (characteristic 0) or F_p.
// Elements are always carried as BigRational; over F_p they are integers
// in [0, p).
class Field {
public:
    Field() = default;

    static Field rationals() { return Field(); }
    static Field prime(unsigned long p);

    bool is_rational() const noexcept { return p_ == 0; }
    unsigned long characteristic() const noexcept { return p_; }

    // Maps a rational into this field. Over F_p the denominator must be a unit.
    BigRational reduce(const BigRational &q) const;

    BigRational add(const BigRational &a, const BigRational &b) const;
    BigRational sub(const BigRational &a, const BigRational &b) const;
    BigRational mul(const BigRational &a, const BigRational &b) const;
    BigRational neg(const BigRational &a) const;
    BigRational inv(const BigRational &a) const;
    BigRational div(const BigRational &a, const BigRational &b) const { return mul(a, inv(b)); }

    std::string name() const;

    friend bool operator==(const Field &, const Field &) = default;

private:
    explicit Field(unsigned long p) : p_(p) {}
    unsigned long p_ = 0;
};

// num/den in lowest terms (mpq_class's two-argument constructor does not reduce).
inline BigRational make_rational(const BigInt &num, const BigInt &den)
{
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

bool is_prime(unsigned long n);
BigInt mod_floor(const BigInt &a, const BigInt &m);

// Scalar in F_p, used by the reduction-mod-p machinery.
class PrimeFieldElement {
public:
    PrimeFieldElement(std::uint64_t residue, std::uint64_t modulus);

    std::uint64_t residue() const noexcept { return residue_; }
    std::uint64_t modulus() const noexcept { return modulus_; }

    static PrimeFieldElement from_rational(const BigRational &q, std::uint64_t p);

    PrimeFieldElement operator+(const PrimeFieldElement &o) const;
    PrimeFieldElement operator-(const PrimeFieldElement &o) const;
    PrimeFieldElement operator*(const PrimeFieldElement &o) const;
    PrimeFieldElement inverse() const;
    PrimeFieldElement pow(std::uint64_t e) const;

    friend bool operator==(const PrimeFieldElement &, const PrimeFieldElement &) = default;

private:
    struct Unchecked {};
    PrimeFieldElement(Unchecked, std::uint64_t residue, std::uint64_t modulus) : residue_(residue), modulus_(modulus) {}
    void check_compatible(const PrimeFieldElement &o) const;
    std::uint64_t residue_;
    std::uint64_t modulus_;
};

} // namespace cremona

#endif
