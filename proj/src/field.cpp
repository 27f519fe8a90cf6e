#include <cremona/field.hpp>

namespace cremona {

const char *to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::NotBirational: return "NotBirational";
    case ErrorKind::NotSquarefree: return "NotSquarefree";
    case ErrorKind::ZeroModP: return "ZeroModP";
    case ErrorKind::IrrationalTorus: return "IrrationalTorus";
    case ErrorKind::NotLoxodromic: return "NotLoxodromic";
    case ErrorKind::NotSL2: return "NotSL2";
    case ErrorKind::TraceNotLoxodromic: return "TraceNotLoxodromic";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NotAdjacent: return "NotAdjacent";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotIsometry: return "NotIsometry";
    case ErrorKind::NotOnHyperboloid: return "NotOnHyperboloid";
    case ErrorKind::BadPrime: return "BadPrime";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
    }
    return "Unknown";
}

bool is_prime(unsigned long n)
{
    if (n < 2) {
        return false;
    }
    BigInt z(n);
    return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

BigInt mod_floor(const BigInt &a, const BigInt &m)
{
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Field Field::prime(unsigned long p)
{
    if (!is_prime(p)) {
        throw Error(ErrorKind::InvalidArgument, "field characteristic " + std::to_string(p) + " is not prime");
    }
    return Field(p);
}

BigRational Field::reduce(const BigRational &q) const
{
    if (p_ == 0) {
        return q;
    }
    const BigInt p(p_);
    BigInt num = mod_floor(q.get_num(), p);
    BigInt den = mod_floor(q.get_den(), p);
    if (den == 0) {
        throw Error(ErrorKind::BadPrime, "denominator of " + q.get_str() + " vanishes mod " + std::to_string(p_));
    }
    if (den != 1) {
        BigInt inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        num = mod_floor(num * inv, p);
    }
    return BigRational(num);
}

BigRational Field::add(const BigRational &a, const BigRational &b) const
{
    if (p_ == 0) {
        return a + b;
    }
    return BigRational(mod_floor(a.get_num() + b.get_num(), BigInt(p_)));
}

BigRational Field::sub(const BigRational &a, const BigRational &b) const
{
    if (p_ == 0) {
        return a - b;
    }
    return BigRational(mod_floor(a.get_num() - b.get_num(), BigInt(p_)));
}

BigRational Field::mul(const BigRational &a, const BigRational &b) const
{
    if (p_ == 0) {
        return a * b;
    }
    return BigRational(mod_floor(a.get_num() * b.get_num(), BigInt(p_)));
}

BigRational Field::neg(const BigRational &a) const
{
    if (p_ == 0) {
        return -a;
    }
    return BigRational(mod_floor(-a.get_num(), BigInt(p_)));
}

BigRational Field::inv(const BigRational &a) const
{
    if (a == 0) {
        throw Error(ErrorKind::InvalidArgument, "division by zero");
    }
    if (p_ == 0) {
        return 1 / a;
    }
    BigInt r;
    const BigInt p(p_);
    mpz_invert(r.get_mpz_t(), a.get_num_mpz_t(), p.get_mpz_t());
    return BigRational(r);
}

std::string Field::name() const
{
    return p_ == 0 ? std::string("Q") : "F" + std::to_string(p_);
}

PrimeFieldElement::PrimeFieldElement(std::uint64_t residue, std::uint64_t modulus)
    : residue_(modulus == 0 ? 0 : residue % modulus), modulus_(modulus)
{
    if (!is_prime(modulus)) {
        throw Error(ErrorKind::InvalidArgument, "modulus " + std::to_string(modulus) + " is not prime");
    }
}

PrimeFieldElement PrimeFieldElement::from_rational(const BigRational &q, std::uint64_t p)
{
    const BigRational r = Field::prime(p).reduce(q);
    return PrimeFieldElement(r.get_num().get_ui(), p);
}

void PrimeFieldElement::check_compatible(const PrimeFieldElement &o) const
{
    if (o.modulus_ != modulus_) {
        throw Error(ErrorKind::InvalidArgument, "mixing elements of different prime fields");
    }
}

PrimeFieldElement PrimeFieldElement::operator+(const PrimeFieldElement &o) const
{
    check_compatible(o);
    return PrimeFieldElement(Unchecked{}, static_cast<std::uint64_t>((static_cast<unsigned __int128>(residue_) + o.residue_) % modulus_),
                             modulus_);
}

PrimeFieldElement PrimeFieldElement::operator-(const PrimeFieldElement &o) const
{
    check_compatible(o);
    return PrimeFieldElement(Unchecked{}, (residue_ + modulus_ - o.residue_) % modulus_, modulus_);
}

PrimeFieldElement PrimeFieldElement::operator*(const PrimeFieldElement &o) const
{
    check_compatible(o);
    return PrimeFieldElement(Unchecked{}, static_cast<std::uint64_t>((static_cast<unsigned __int128>(residue_) * o.residue_) % modulus_),
                             modulus_);
}

PrimeFieldElement PrimeFieldElement::pow(std::uint64_t e) const
{
    PrimeFieldElement result(Unchecked{}, 1 % modulus_, modulus_);
    PrimeFieldElement base = *this;
    while (e != 0) {
        if (e & 1U) {
            result = result * base;
        }
        base = base * base;
        e >>= 1U;
    }
    return result;
}

PrimeFieldElement PrimeFieldElement::inverse() const
{
    if (residue_ == 0) {
        throw Error(ErrorKind::InvalidArgument, "zero has no inverse in F_p");
    }
    return pow(modulus_ - 2);
}

} // namespace cremona
