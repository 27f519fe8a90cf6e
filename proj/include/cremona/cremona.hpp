#ifndef CREMONA_CREMONA_HPP
#define CREMONA_CREMONA_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <cremona/hompoly.hpp>
#include <cremona/upoly.hpp>

namespace cremona {

// Point of P^2 with first nonzero coordinate equal to 1.
class ProjPoint {
public:
    static ProjPoint make(Field field, std::array<BigRational, 3> coords);

    const std::array<BigRational, 3> &coords() const noexcept { return c_; }
    const Field &field() const noexcept { return field_; }
    std::string to_string() const;

    friend bool operator==(const ProjPoint &, const ProjPoint &) = default;

private:
    ProjPoint(Field field, std::array<BigRational, 3> c) : field_(field), c_(std::move(c)) {}
    Field field_;
    std::array<BigRational, 3> c_;
};

// Rational map [f0 : f1 : f2] of P^2 with coprime components of equal degree.
//
// Components are scaled jointly: over Q all coefficients are integers with
// content 1 and the leading coefficient of the first nonzero component is
// positive; over F_p that leading coefficient is 1. Two maps are equal as
// maps of P^2 exactly when their components agree.
//
// A map may carry an inverse witness. Operations that need birationality
// (strict transforms, de Jonquieres recognition) require one.
class CremonaMap {
public:
    // Cancels the common factor and rescales. Throws AllZero, DegreeMismatch.
    static CremonaMap normalize(const HomPoly3 &f0, const HomPoly3 &f1, const HomPoly3 &f2);
    static CremonaMap normalize(const std::array<HomPoly3, 3> &f) { return normalize(f[0], f[1], f[2]); }
    static CremonaMap identity(Field field = Field::rationals());
    // Text form "[f0 : f1 : f2]".
    static CremonaMap parse(std::string_view text, Field field = Field::rationals());

    const std::array<HomPoly3, 3> &components() const noexcept { return f_; }
    const HomPoly3 &operator[](std::size_t i) const { return f_.at(i); }
    int degree() const noexcept { return f_[0].is_zero() ? (f_[1].is_zero() ? f_[2].degree() : f_[1].degree()) : f_[0].degree(); }
    const Field &field() const noexcept { return f_[0].field(); }
    bool is_identity() const;

    bool has_inverse() const noexcept { return inverse_ != nullptr; }
    // The witness itself, carrying this map as its own witness.
    CremonaMap inverse() const;
    // Attaches `inv` after checking compose(*this, inv) and compose(inv, *this)
    // are the identity. Throws NotBirational otherwise.
    CremonaMap with_inverse(const CremonaMap &inv) const;
    // Attaches without re-checking; for inverses known by construction.
    CremonaMap with_trusted_inverse(const CremonaMap &inv) const;
    CremonaMap without_inverse() const;

    // Coefficientwise image over F_p, renormalized. Any inverse is dropped.
    CremonaMap reduce_mod(unsigned long p) const;

    std::string to_string() const;

    friend bool operator==(const CremonaMap &a, const CremonaMap &b) { return a.f_ == b.f_; }

private:
    explicit CremonaMap(std::array<HomPoly3, 3> f) : f_(std::move(f)) {}
    std::array<HomPoly3, 3> f_;
    std::shared_ptr<const CremonaMap> inverse_;
};

// (f0(g), f1(g), f2(g)) before cancellation.
std::array<HomPoly3, 3> compose_raw(const CremonaMap &f, const CremonaMap &g);
// f after g, normalized. Inverse witnesses are not propagated.
CremonaMap compose(const CremonaMap &f, const CremonaMap &g);
// As compose, and when both carry witnesses the result carries g^-1 f^-1.
CremonaMap compose_birational(const CremonaMap &f, const CremonaMap &g);

// Equation of the closure of f^-1(V(P) minus indeterminacy), i.e. P(f) with
// every factor shared with the Jacobian determinant of f divided out.
// A constant result means V(P) is the image of a point under f^-1.
// Requires an inverse witness (NotBirational).
HomPoly3 strict_transform(const CremonaMap &f, const HomPoly3 &p);

// If f maps the curve V(P) to a point, that point. P must be squarefree
// (NotSquarefree); irreducibility is the caller's responsibility.
std::optional<ProjPoint> contracted_image(const CremonaMap &f, const HomPoly3 &p);

// Reduced fraction num/den in one variable x, den monic.
class RatFunc {
public:
    explicit RatFunc(Field field = Field::rationals());
    RatFunc(const UPoly &num, const UPoly &den);
    static RatFunc constant(Field field, const BigRational &c);
    static RatFunc variable(Field field);
    static RatFunc parse(std::string_view text, Field field = Field::rationals());

    const UPoly &num() const noexcept { return num_; }
    const UPoly &den() const noexcept { return den_; }
    const Field &field() const noexcept { return num_.field(); }
    bool is_zero() const noexcept { return num_.is_zero(); }

    RatFunc operator+(const RatFunc &o) const;
    RatFunc operator-(const RatFunc &o) const;
    RatFunc operator-() const;
    RatFunc operator*(const RatFunc &o) const;
    RatFunc operator/(const RatFunc &o) const;

    // x -> (a x + b) / (c x + d)
    RatFunc compose_mobius(const std::array<BigRational, 4> &m) const;

    std::string to_string() const;

    friend bool operator==(const RatFunc &, const RatFunc &) = default;

private:
    UPoly num_;
    UPoly den_;
};

// (x, y) -> ((a x + b)/(c x + d), (alpha y + beta)/(gamma y + delta)) with
// alpha..delta rational functions of x. In the chart z = 1 these maps
// permute the lines x = c z, the pencil through [0:1:0]. Both matrices are projective, so the
// canonical form scales the Mobius part to make its first nonzero entry 1 and
// the fiber part to polynomial entries with content 1 and monic first nonzero
// entry.
class DeJonquieresElement {
public:
    using Mobius = std::array<BigRational, 4>;
    using Fiber = std::array<RatFunc, 4>;

    // Throws SingularMatrix if either determinant vanishes.
    DeJonquieresElement(Mobius mobius, Fiber fiber);
    static DeJonquieresElement identity(Field field = Field::rationals());
    // "[[a,b],[c,d]] [[alpha,beta],[gamma,delta]]"
    static DeJonquieresElement parse(std::string_view text, Field field = Field::rationals());

    const Mobius &mobius() const noexcept { return m_; }
    const Fiber &fiber() const noexcept { return f_; }
    const Field &field() const noexcept { return f_[0].field(); }

    DeJonquieresElement inverse() const;
    std::string to_string() const;

    friend bool operator==(const DeJonquieresElement &, const DeJonquieresElement &) = default;

private:
    Mobius m_;
    Fiber f_;
};

// j1 after j2: Mobius parts multiply, fiber = F1(M2 x) * F2(x).
DeJonquieresElement dejonq_compose(const DeJonquieresElement &j1, const DeJonquieresElement &j2);
// Homogenized with z; carries the inverse element's map as witness.
CremonaMap dejonq_to_cremona(const DeJonquieresElement &j);
// Recognizes maps of the form above: f0/f2 a Mobius function of x/z and
// f1/f2 of degree at most one in y after setting z = 1. Conjugates of the
// group that preserve another pencil are not detected.
std::optional<DeJonquieresElement> is_dejonquieres(const CremonaMap &f);

} // namespace cremona

#endif
