#ifndef CREMONA_UPOLY_HPP
#define CREMONA_UPOLY_HPP

#include <string>
#include <utility>
#include <vector>

#include <cremona/field.hpp>

namespace cremona {

// Dense univariate polynomial over a Field, coefficients stored low to high.
class UPoly {
public:
    explicit UPoly(Field field = Field::rationals()) : field_(field) {}
    UPoly(Field field, std::vector<BigRational> coeffs);

    static UPoly constant(Field field, const BigRational &c);
    static UPoly variable(Field field);
    static UPoly monomial(Field field, const BigRational &c, std::size_t deg);

    const Field &field() const noexcept { return field_; }
    // -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    BigRational coeff(std::size_t i) const;
    const BigRational &leading() const;
    const std::vector<BigRational> &coeffs() const noexcept { return c_; }

    UPoly operator+(const UPoly &o) const;
    UPoly operator-(const UPoly &o) const;
    UPoly operator-() const;
    UPoly operator*(const UPoly &o) const;
    UPoly scaled(const BigRational &s) const;

    UPoly monic() const;
    UPoly derivative() const;
    BigRational eval(const BigRational &t) const;
    int sign_at(const BigRational &t) const;

    static std::pair<UPoly, UPoly> divmod(const UPoly &a, const UPoly &b);
    // Throws InvalidArgument when b does not divide a.
    static UPoly exact_div(const UPoly &a, const UPoly &b);
    // Monic gcd; gcd(0, 0) = 0.
    static UPoly gcd(const UPoly &a, const UPoly &b);

    std::string to_string(char var = 'x') const;

    friend bool operator==(const UPoly &, const UPoly &) = default;

private:
    void trim();
    Field field_;
    std::vector<BigRational> c_;
};

UPoly pow(const UPoly &p, unsigned e);

} // namespace cremona

#endif
