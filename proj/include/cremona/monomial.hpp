#ifndef CREMONA_MONOMIAL_HPP
#define CREMONA_MONOMIAL_HPP

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <cremona/cremona.hpp>
#include <cremona/field.hpp>

namespace cremona {

using IntVec2 = std::array<BigInt, 2>;

// 2x2 integer matrix (a b; c d).
struct IntMatrix2 {
    BigInt a{0}, b{0}, c{0}, d{0};

    static IntMatrix2 identity() { return {1, 0, 0, 1}; }
    // "[[a,b],[c,d]]"
    static IntMatrix2 parse(std::string_view text);

    BigInt det() const { return a * d - b * c; }
    BigInt trace() const { return a + d; }
    bool is_unimodular() const { const BigInt t = det(); return t == 1 || t == -1; }
    // Requires det = +-1 (SingularMatrix otherwise).
    IntMatrix2 inverse() const;
    IntMatrix2 pow(unsigned long n) const;
    IntMatrix2 transpose() const { return {a, c, b, d}; }
    IntVec2 apply(const IntVec2 &v) const { return {a * v[0] + b * v[1], c * v[0] + d * v[1]}; }
    bool nonnegative() const { return a >= 0 && b >= 0 && c >= 0 && d >= 0; }

    IntMatrix2 operator*(const IntMatrix2 &o) const;
    IntMatrix2 operator+(const IntMatrix2 &o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    IntMatrix2 operator-(const IntMatrix2 &o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    IntMatrix2 operator-() const { return {-a, -b, -c, -d}; }
    IntMatrix2 scaled(const BigInt &s) const { return {a * s, b * s, c * s, d * s}; }

    std::string to_string() const;

    friend bool operator==(const IntMatrix2 &x, const IntMatrix2 &y)
    {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    // Lexicographic on (a, b, c, d).
    friend bool operator<(const IntMatrix2 &x, const IntMatrix2 &y);
};

// Element (c1 x, c2 y) of the diagonal torus.
//
// Each coordinate is stored as (-1)^s * prod p^e over primes p, with
// rational exponents e and s taken modulo 2. Primes are multiplicatively
// independent, so the base never needs re-checking when elements are
// combined. Non-integral exponents stand for radicals (roots of unity for s).
class TorusElement {
public:
    using Exponents = std::array<BigRational, 2>;

    TorusElement() = default;
    static TorusElement identity() { return {}; }
    // (c1 x, c2 y); both nonzero.
    static TorusElement from_rationals(const BigRational &c1, const BigRational &c2);
    // Text "(2^(1/2)*3^-1*x, -5*y)".
    static TorusElement parse(std::string_view text);

    const std::map<BigInt, Exponents> &prime_exponents() const noexcept { return primes_; }
    const Exponents &sign_exponents() const noexcept { return sign_; }
    // Exponent of p (or of -1 when p == -1) in coordinate i.
    BigRational exponent(const BigInt &p, int coord) const;

    bool is_identity() const { return primes_.empty() && sign_[0] == 0 && sign_[1] == 0; }
    bool is_rational() const;
    // (c1, c2); throws IrrationalTorus unless is_rational().
    std::array<BigRational, 2> values() const;

    TorusElement operator*(const TorusElement &o) const;
    TorusElement inverse() const;
    // Exponent action A(e): the exponent vector of every base is multiplied by A.
    TorusElement act(const IntMatrix2 &m) const;
    // Componentwise rational power.
    TorusElement pow(const BigRational &e) const;

    std::string to_string() const;

    friend bool operator==(const TorusElement &, const TorusElement &) = default;

private:
    void set(const BigInt &p, Exponents e);
    void normalize_signs();
    std::map<BigInt, Exponents> primes_;
    Exponents sign_{0, 0};
};

// Element (A, d) of GL2(Z) x| D2, acting as d o f_A with
// f_A(x, y) = (x^a y^b, x^c y^d). Product (A,d)(B,e) = (AB, d A(e)).
struct MonomialElement {
    IntMatrix2 matrix = IntMatrix2::identity();
    TorusElement torus;

    MonomialElement() = default;
    // Throws NotSL2-style InvalidArgument unless det = +-1.
    MonomialElement(IntMatrix2 m, TorusElement t = {});

    MonomialElement inverse() const;
    std::string to_string() const;

    friend bool operator==(const MonomialElement &, const MonomialElement &) = default;
};

MonomialElement semidirect_compose(const MonomialElement &g1, const MonomialElement &g2);

// Homogenized normalized map with the inverse attached. IrrationalTorus if
// the torus part is not rational.
CremonaMap to_cremona(const MonomialElement &g);
CremonaMap to_cremona(const IntMatrix2 &a);

// deg f_A, from the exponent vectors alone.
BigInt monomial_degree(const IntMatrix2 &a);

// a + b sqrt(D), with D = 0 or a squarefree integer > 1 (b = 0 when D = 0).
class QuadraticValue {
public:
    QuadraticValue() = default;
    QuadraticValue(const BigRational &a) : a_(a) {} // NOLINT(google-explicit-constructor)
    // a + b sqrt(n) for any integer n >= 0; square factors are pulled out.
    static QuadraticValue make(const BigRational &a, const BigRational &b, const BigInt &n);

    const BigRational &rational_part() const noexcept { return a_; }
    const BigRational &radical_coeff() const noexcept { return b_; }
    const BigInt &radicand() const noexcept { return d_; }
    bool is_rational() const noexcept { return b_ == 0; }

    QuadraticValue operator+(const QuadraticValue &o) const;
    QuadraticValue operator-(const QuadraticValue &o) const;
    QuadraticValue operator-() const;
    QuadraticValue operator*(const QuadraticValue &o) const;
    QuadraticValue pow(unsigned n) const;
    QuadraticValue conjugate() const;
    int sign() const;
    double to_double() const;
    std::string to_string() const;

    friend bool operator==(const QuadraticValue &x, const QuadraticValue &y)
    {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
    }
    friend bool operator<(const QuadraticValue &x, const QuadraticValue &y) { return (x - y).sign() < 0; }
    friend bool operator>(const QuadraticValue &x, const QuadraticValue &y) { return (x - y).sign() > 0; }
    friend bool operator<=(const QuadraticValue &x, const QuadraticValue &y) { return (x - y).sign() <= 0; }
    friend bool operator>=(const QuadraticValue &x, const QuadraticValue &y) { return (x - y).sign() >= 0; }

private:
    void check_compatible(const QuadraticValue &o) const;
    BigRational a_{0};
    BigRational b_{0};
    BigInt d_{0};
};

QuadraticValue spectral_radius(const IntMatrix2 &a);
bool is_loxodromic(const IntMatrix2 &a);

// d' with d'^-1 (d f_A) d' = f_A, from (A - I) log d' = -log d. NotLoxodromic
// unless A is loxodromic. The identity is re-verified before returning.
TorusElement solve_commuting_torus(const IntMatrix2 &a, const TorusElement &d);

struct NonnegativeConjugate {
    IntMatrix2 b;
    IntMatrix2 p;
    int sign = 1;
};

// B = P^-1 (sign A) P with B >= 0 entrywise, P in GL2(Z). NotSL2, NotLoxodromic.
NonnegativeConjugate conjugate_to_nonnegative(const IntMatrix2 &a);

struct ConjugacyClass {
    IntMatrix2 representative;
    // Every matrix of the class with entries of the representative's sign
    // pattern, with conjugators: members[i] = conjugators[i]^-1 rep conjugators[i].
    std::vector<IntMatrix2> members;
    std::vector<IntMatrix2> conjugators;
};

// GL2(Z)-conjugacy classes of SL2(Z) matrices with trace t, |t| >= 3,
// sorted by representative. For t < 0 everything is the negation of the
// classes for -t. TraceNotLoxodromic for |t| <= 2.
std::vector<ConjugacyClass> trace_conjugacy_classes(const BigInt &t);

// Word in R = (1 1; 0 1), L = (1 0; 1 1) of a nonnegative SL2 matrix.
std::string positive_word(const IntMatrix2 &a);

// id + A + ... + A^(n-1)
IntMatrix2 power_sum_matrix(const IntMatrix2 &a, unsigned long n);

struct SmithForm {
    IntMatrix2 m1;
    IntMatrix2 d;
    IntMatrix2 m2;
};

// B = M1 D M2, D = diag(d1, d2), 0 < d1 | d2. SingularMatrix if det B = 0.
SmithForm smith_normal_form(const IntMatrix2 &b);

// Dimension of the Zariski closure of the group generated by the elements.
int zariski_closure_dim(const std::vector<TorusElement> &gens);

} // namespace cremona

#endif
