#ifndef CREMONA_HOMPOLY_HPP
#define CREMONA_HOMPOLY_HPP

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <cremona/field.hpp>

namespace cremona {

// Exponent triple (i, j, k) of x^i y^j z^k.
using Exponent = std::array<unsigned, 3>;

// Homogeneous polynomial in x, y, z over a Field, stored sparsely.
//
// Terms are kept in descending lexicographic order of exponents; since every
// term has the same total degree this coincides with graded-lex order, so the
// first term is the leading term. The zero polynomial has no terms and
// degree() == -1.
class HomPoly3 {
public:
    using TermMap = std::map<Exponent, BigRational, std::greater<Exponent>>;

    explicit HomPoly3(Field field = Field::rationals()) : field_(field) {}

    // Validates homogeneity; zero coefficients are dropped, others reduced into field.
    static HomPoly3 from_terms(Field field, const TermMap &terms);
    static HomPoly3 constant(Field field, const BigRational &c);
    static HomPoly3 monomial(Field field, const BigRational &c, const Exponent &e);
    // index 0, 1, 2 -> x, y, z
    static HomPoly3 variable(Field field, int index);

    const Field &field() const noexcept { return field_; }
    int degree() const noexcept { return degree_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return degree_ == 0; }
    bool is_monomial() const noexcept { return terms_.size() == 1; }
    std::size_t size() const noexcept { return terms_.size(); }
    const TermMap &terms() const noexcept { return terms_; }
    const Exponent &leading_exponent() const;
    const BigRational &leading_coeff() const;
    BigRational coeff(const Exponent &e) const;

    unsigned max_degree_in(int var) const;
    unsigned min_degree_in(int var) const;

    HomPoly3 operator+(const HomPoly3 &o) const;
    HomPoly3 operator-(const HomPoly3 &o) const;
    HomPoly3 operator-() const;
    HomPoly3 operator*(const HomPoly3 &o) const;
    HomPoly3 scaled(const BigRational &s) const;
    HomPoly3 pow(unsigned e) const;
    HomPoly3 derivative(int var) const;
    // Multiply by the monomial x^e0 y^e1 z^e2.
    HomPoly3 shifted(const Exponent &e) const;
    // Divide by x^e0 y^e1 z^e2; every term must be divisible.
    HomPoly3 unshifted(const Exponent &e) const;

    BigRational eval(const std::array<BigRational, 3> &point) const;

    // Canonical scaling: over Q primitive integer coefficients with positive
    // leading coefficient; over F_p monic. Zero maps to zero.
    HomPoly3 normalized() const;
    // Coefficientwise image in F_p; throws BadPrime if a denominator vanishes.
    HomPoly3 reduce_mod(unsigned long p) const;
    // Swap two variables.
    HomPoly3 permuted(const std::array<int, 3> &perm) const;

    std::string to_string() const;

    friend bool operator==(const HomPoly3 &a, const HomPoly3 &b)
    {
        return a.field_ == b.field_ && a.terms_ == b.terms_;
    }

private:
    void check_field(const HomPoly3 &o) const;
    Field field_;
    TermMap terms_;
    int degree_ = -1;
};

// P(f0, f1, f2); the fi must share a degree.
HomPoly3 substitute(const HomPoly3 &p, const std::array<HomPoly3, 3> &f);

// Determinant of the Jacobian matrix of (f0, f1, f2).
HomPoly3 jacobian_det(const HomPoly3 &f0, const HomPoly3 &f1, const HomPoly3 &f2);

// Division with remainder by a single polynomial in lex order. The remainder
// is the unique normal form modulo the principal ideal (b).
std::pair<HomPoly3, HomPoly3> divide(const HomPoly3 &a, const HomPoly3 &b);
std::optional<HomPoly3> divide_exact(const HomPoly3 &a, const HomPoly3 &b);

// Normalized gcd (see HomPoly3::normalized); gcd of coprime inputs is 1.
HomPoly3 gcd(const HomPoly3 &a, const HomPoly3 &b);

// gcd(P, dP/dx, dP/dy, dP/dz) == 1; valid as a squarefreeness test in characteristic 0.
bool is_squarefree(const HomPoly3 &p);

} // namespace cremona

#endif
