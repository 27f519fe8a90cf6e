#ifndef CREMONA_DYNAMICS_HPP
#define CREMONA_DYNAMICS_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <cremona/cremona.hpp>
#include <cremona/monomial.hpp>
#include <cremona/toric.hpp>

namespace cremona {

// deg(f^n) for n = 1..N, degree taken with respect to the line class.
struct DegreeSequence {
    std::vector<BigInt> values;
    std::string source;
};

// Thrown by degree_sequence when an iterate exceeds the degree budget.
class DegreeBudgetExceeded : public Error {
public:
    DegreeBudgetExceeded(const std::string &what, DegreeSequence partial)
        : Error(ErrorKind::BudgetExceeded, what), partial_(std::move(partial))
    {
    }
    const DegreeSequence &partial() const noexcept { return partial_; }

private:
    DegreeSequence partial_;
};

// Combinatorial: deg f_{A^n}. The torus part never changes degrees.
DegreeSequence degree_sequence(const MonomialElement &g, std::size_t n);
DegreeSequence degree_sequence(const IntMatrix2 &a, std::size_t n);
// Iterated composition; BudgetExceeded (as DegreeBudgetExceeded) once an
// iterate has degree above max_degree.
DegreeSequence degree_sequence(const CremonaMap &f, std::size_t n, unsigned long max_degree = 4096);

struct GrowthReport {
    enum class Kind { Bounded, Linear, Quadratic, Exponential, Inconclusive };
    Kind kind = Kind::Inconclusive;
    std::optional<double> lambda_estimate;
    std::vector<double> ratios;          // v[n+1] / v[n]
    std::vector<double> local_exponents; // log(v[n+1]/v[n]) / log((n+1)/n), second half only
    std::string reason;
};

const char *to_string(GrowthReport::Kind kind);

// Heuristic reading of a finite degree sequence (length >= 6, InvalidArgument
// otherwise). Order of tests:
//   Bounded      second half never exceeds the maximum of the first half
//   Linear       first differences of the second half constant and positive
//   Quadratic    second differences of the second half constant and positive
//   polynomial   local exponents of the second half stay in [0.5, 2.5] without
//                increasing by more than 0.3; rounded to 1 or 2 when within 0.35
//   Exponential  the last three ratios exceed 1.05, the local exponents
//                increase, and the last two ratios differ by at most 5%
// Anything else is Inconclusive.
GrowthReport classify_growth(const DegreeSequence &seq);

nlohmann::json growth_json(const DegreeSequence &seq, const GrowthReport &report);

QuadraticValue dynamical_degree_monomial(const IntMatrix2 &a);

struct RationalInterval {
    BigRational lo;
    BigRational hi;
    BigRational width() const { return hi - lo; }
    bool contains(const BigRational &q) const { return lo <= q && q <= hi; }
};

// x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1
UPoly lehmer_polynomial();
// Interval of width <= eps around its root in (1, 2), by exact bisection.
RationalInterval lehmer_number(const BigRational &eps);

struct GapVerdict {
    bool satisfied = false;
    // Only for quadratic input with lambda > 1: conjugate of modulus < 1.
    std::optional<bool> pisot;
};

// lambda == 1 or lambda >= lower end of lehmer_number(1e-9).
GapVerdict gap_check(const QuadraticValue &lambda);
GapVerdict gap_check(const BigRational &lambda);

// Decimal approximation with `digits` significant digits.
struct RealApprox {
    std::string decimal;
    double value = 0;
};

RealApprox decimal_approx(const QuadraticValue &q, unsigned digits = 30);
RealApprox log_approx(const QuadraticValue &lambda, unsigned digits = 30);
// log lambda; NotLoxodromic unless lambda > 1.
RealApprox translation_length(const QuadraticValue &lambda, unsigned digits = 30);

struct DegreeBound {
    BigInt c; // largest representative degree over 3 <= |t| <= d + 1
    BigInt k; // (2 max(d, c))^57
};

BigInt degree_bound_k(const BigInt &r);
DegreeBound degree_bound(unsigned long d);

using IntMatrix = std::vector<std::vector<BigInt>>;

// Z e0 + Z e1 + ... + Z en with e0^2 = 1, ei^2 = -1, orthogonal.
class MinkowskiLattice {
public:
    explicit MinkowskiLattice(std::size_t n_exceptional);
    MinkowskiLattice(std::vector<std::string> labels);

    std::size_t rank() const noexcept { return labels_.size(); }
    const std::vector<std::string> &labels() const noexcept { return labels_; }
    int form_sign(std::size_t i) const { return i == 0 ? 1 : -1; }
    BigRational dot(const std::vector<BigRational> &u, const std::vector<BigRational> &v) const;

private:
    std::vector<std::string> labels_;
};

// Integer matrix acting on column vectors; M^T J M = J and M e0 has positive
// e0 coefficient, checked on construction (NotIsometry).
class LatticeIsometry {
public:
    explicit LatticeIsometry(IntMatrix m);
    static LatticeIsometry identity(std::size_t rank);

    const IntMatrix &matrix() const noexcept { return m_; }
    std::size_t rank() const noexcept { return m_.size(); }
    LatticeIsometry operator*(const LatticeIsometry &o) const;
    LatticeIsometry inverse() const; // J M^T J
    std::vector<BigRational> apply(const std::vector<BigRational> &v) const;
    std::string to_string() const;

    friend bool operator==(const LatticeIsometry &, const LatticeIsometry &) = default;

private:
    IntMatrix m_;
};

// det(x I - M), exact.
UPoly characteristic_polynomial(const IntMatrix &m);
// Number of distinct real roots in (a, b].
int sturm_count(const UPoly &p, const BigRational &a, const BigRational &b);
std::size_t rank_over_q(const std::vector<std::vector<BigRational>> &m);

struct IsometryType {
    enum class Kind { Elliptic, Parabolic, Loxodromic };
    Kind kind = Kind::Elliptic;
    std::optional<RationalInterval> lambda_interval; // Loxodromic only
    std::optional<QuadraticValue> lambda;            // when the minimal polynomial is quadratic
};

const char *to_string(IsometryType::Kind kind);

// Roots > 1 of the characteristic polynomial decide loxodromic; otherwise a
// Jordan block at 1 (rank (M-I)^2 < rank (M-I)) decides parabolic.
// lambda_interval has width <= eps.
IsometryType isometry_type(const LatticeIsometry &m, const BigRational &eps = BigRational(1, 1000000000));

// arccosh(u . v); NotOnHyperboloid unless u.u = v.v = 1 with positive e0 coordinates.
RealApprox hyperbolic_distance(const MinkowskiLattice &lattice, const std::vector<BigRational> &u,
                               const std::vector<BigRational> &v, unsigned digits = 30);

struct PicardManinAction {
    MinkowskiLattice lattice;
    LatticeIsometry action;
    MonomialResolution resolution;
};

// f_A as an isomorphism between the toric models of resolve_monomial(A).
// Basis e0 = line class, e_i = total transform of the i-th exceptional curve
// in blow-up order; source e_i is identified with target e_i. The matrix is
// f_* (columns are images of the source basis), computed as the inverse of
// the pullback of piecewise linear functions on the target fan.
PicardManinAction pm_action_monomial(const IntMatrix2 &a);

} // namespace cremona

#endif
