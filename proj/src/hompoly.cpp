#include <cremona/hompoly.hpp>

#include <algorithm>
#include <sstream>
#include <vector>

namespace cremona {

namespace {

unsigned total(const Exponent &e)
{
    return e[0] + e[1] + e[2];
}

bool divides(const Exponent &a, const Exponent &b)
{
    return a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2];
}

void accumulate(const Field &f, HomPoly3::TermMap &acc, const Exponent &e, const BigRational &c)
{
    auto [it, inserted] = acc.try_emplace(e, c);
    if (!inserted) {
        it->second = f.add(it->second, c);
        if (it->second == 0) {
            acc.erase(it);
        }
    }
}

} // namespace

HomPoly3 HomPoly3::from_terms(Field field, const TermMap &terms)
{
    HomPoly3 p(field);
    for (const auto &[e, c] : terms) {
        BigRational r = field.reduce(c);
        if (r == 0) {
            continue;
        }
        const int d = static_cast<int>(total(e));
        if (p.degree_ >= 0 && d != p.degree_) {
            throw Error(ErrorKind::DegreeMismatch, "terms of different total degree in a homogeneous polynomial");
        }
        p.degree_ = d;
        p.terms_.emplace(e, std::move(r));
    }
    return p;
}

HomPoly3 HomPoly3::constant(Field field, const BigRational &c)
{
    return from_terms(field, TermMap{{Exponent{0, 0, 0}, c}});
}

HomPoly3 HomPoly3::monomial(Field field, const BigRational &c, const Exponent &e)
{
    return from_terms(field, TermMap{{e, c}});
}

HomPoly3 HomPoly3::variable(Field field, int index)
{
    Exponent e{0, 0, 0};
    e.at(static_cast<std::size_t>(index)) = 1;
    return monomial(field, BigRational(1), e);
}

const Exponent &HomPoly3::leading_exponent() const
{
    if (terms_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "leading term of zero polynomial");
    }
    return terms_.begin()->first;
}

const BigRational &HomPoly3::leading_coeff() const
{
    if (terms_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "leading term of zero polynomial");
    }
    return terms_.begin()->second;
}

BigRational HomPoly3::coeff(const Exponent &e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? BigRational(0) : it->second;
}

unsigned HomPoly3::max_degree_in(int var) const
{
    unsigned m = 0;
    for (const auto &[e, c] : terms_) {
        m = std::max(m, e[static_cast<std::size_t>(var)]);
    }
    return m;
}

unsigned HomPoly3::min_degree_in(int var) const
{
    if (terms_.empty()) {
        return 0;
    }
    unsigned m = ~0U;
    for (const auto &[e, c] : terms_) {
        m = std::min(m, e[static_cast<std::size_t>(var)]);
    }
    return m;
}

void HomPoly3::check_field(const HomPoly3 &o) const
{
    if (!(field_ == o.field_)) {
        throw Error(ErrorKind::InvalidArgument, "polynomials over different fields: " + field_.name() + " vs " + o.field_.name());
    }
}

HomPoly3 HomPoly3::operator+(const HomPoly3 &o) const
{
    check_field(o);
    if (is_zero()) {
        return o;
    }
    if (o.is_zero()) {
        return *this;
    }
    if (degree_ != o.degree_) {
        throw Error(ErrorKind::DegreeMismatch,
                    "cannot add degree " + std::to_string(degree_) + " and degree " + std::to_string(o.degree_));
    }
    HomPoly3 r = *this;
    for (const auto &[e, c] : o.terms_) {
        accumulate(field_, r.terms_, e, c);
    }
    if (r.terms_.empty()) {
        r.degree_ = -1;
    }
    return r;
}

HomPoly3 HomPoly3::operator-() const
{
    HomPoly3 r = *this;
    for (auto &[e, c] : r.terms_) {
        c = field_.neg(c);
    }
    return r;
}

HomPoly3 HomPoly3::operator-(const HomPoly3 &o) const
{
    return *this + (-o);
}

HomPoly3 HomPoly3::operator*(const HomPoly3 &o) const
{
    check_field(o);
    HomPoly3 r(field_);
    if (is_zero() || o.is_zero()) {
        return r;
    }
    for (const auto &[ea, ca] : terms_) {
        for (const auto &[eb, cb] : o.terms_) {
            accumulate(field_, r.terms_, Exponent{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, field_.mul(ca, cb));
        }
    }
    r.degree_ = r.terms_.empty() ? -1 : degree_ + o.degree_;
    return r;
}

HomPoly3 HomPoly3::scaled(const BigRational &s) const
{
    const BigRational t = field_.reduce(s);
    if (t == 0) {
        return HomPoly3(field_);
    }
    HomPoly3 r = *this;
    for (auto &[e, c] : r.terms_) {
        c = field_.mul(c, t);
    }
    return r;
}

HomPoly3 HomPoly3::pow(unsigned e) const
{
    HomPoly3 result = constant(field_, BigRational(1));
    HomPoly3 base = *this;
    while (e != 0) {
        if (e & 1U) {
            result = result * base;
        }
        e >>= 1U;
        if (e != 0) {
            base = base * base;
        }
    }
    return result;
}

HomPoly3 HomPoly3::derivative(int var) const
{
    HomPoly3 r(field_);
    const auto v = static_cast<std::size_t>(var);
    for (const auto &[e, c] : terms_) {
        if (e[v] == 0) {
            continue;
        }
        Exponent d = e;
        d[v] -= 1;
        BigRational coeff = field_.mul(c, field_.reduce(BigRational(e[v])));
        if (coeff != 0) {
            r.terms_.emplace(d, std::move(coeff));
        }
    }
    r.degree_ = r.terms_.empty() ? -1 : degree_ - 1;
    return r;
}

HomPoly3 HomPoly3::shifted(const Exponent &s) const
{
    HomPoly3 r(field_);
    for (const auto &[e, c] : terms_) {
        r.terms_.emplace(Exponent{e[0] + s[0], e[1] + s[1], e[2] + s[2]}, c);
    }
    r.degree_ = r.terms_.empty() ? -1 : degree_ + static_cast<int>(total(s));
    return r;
}

HomPoly3 HomPoly3::unshifted(const Exponent &s) const
{
    HomPoly3 r(field_);
    for (const auto &[e, c] : terms_) {
        if (!divides(s, e)) {
            throw Error(ErrorKind::InvalidArgument, "monomial does not divide polynomial");
        }
        r.terms_.emplace(Exponent{e[0] - s[0], e[1] - s[1], e[2] - s[2]}, c);
    }
    r.degree_ = r.terms_.empty() ? -1 : degree_ - static_cast<int>(total(s));
    return r;
}

BigRational HomPoly3::eval(const std::array<BigRational, 3> &point) const
{
    std::array<std::vector<BigRational>, 3> powers;
    for (std::size_t v = 0; v < 3; ++v) {
        powers[v].push_back(BigRational(1));
        const BigRational pv = field_.reduce(point[v]);
        for (unsigned i = 1; i <= max_degree_in(static_cast<int>(v)); ++i) {
            powers[v].push_back(field_.mul(powers[v].back(), pv));
        }
    }
    BigRational acc(0);
    for (const auto &[e, c] : terms_) {
        acc = field_.add(acc, field_.mul(c, field_.mul(powers[0][e[0]], field_.mul(powers[1][e[1]], powers[2][e[2]]))));
    }
    return acc;
}

HomPoly3 HomPoly3::normalized() const
{
    if (terms_.empty()) {
        return *this;
    }
    if (!field_.is_rational()) {
        return scaled(field_.inv(leading_coeff()));
    }
    // Scale to primitive integer coefficients.
    BigInt num_gcd(0);
    BigInt den_lcm(1);
    for (const auto &[e, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    }
    BigRational factor(den_lcm, num_gcd);
    factor.canonicalize();
    if (leading_coeff() < 0) {
        factor = -factor;
    }
    return scaled(factor);
}

HomPoly3 HomPoly3::reduce_mod(unsigned long p) const
{
    const Field target = Field::prime(p);
    HomPoly3 r(target);
    for (const auto &[e, c] : terms_) {
        BigRational rc = target.reduce(c);
        if (rc != 0) {
            r.terms_.emplace(e, std::move(rc));
        }
    }
    r.degree_ = r.terms_.empty() ? -1 : degree_;
    return r;
}

HomPoly3 HomPoly3::permuted(const std::array<int, 3> &perm) const
{
    HomPoly3 r(field_);
    for (const auto &[e, c] : terms_) {
        Exponent n{0, 0, 0};
        for (std::size_t v = 0; v < 3; ++v) {
            n[static_cast<std::size_t>(perm[v])] = e[v];
        }
        r.terms_.emplace(n, c);
    }
    r.degree_ = degree_;
    return r;
}

std::string HomPoly3::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    static constexpr std::array<char, 3> names{'x', 'y', 'z'};
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, coeff] : terms_) {
        BigRational c = coeff;
        const bool negative = field_.is_rational() && c < 0;
        if (negative) {
            c = -c;
        }
        if (first) {
            os << (negative ? "-" : "");
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (c != 1 || total(e) == 0) {
            os << c.get_str();
            wrote = true;
        }
        for (std::size_t v = 0; v < 3; ++v) {
            if (e[v] == 0) {
                continue;
            }
            if (wrote) {
                os << '*';
            }
            os << names[v];
            if (e[v] > 1) {
                os << '^' << e[v];
            }
            wrote = true;
        }
    }
    return os.str();
}

HomPoly3 substitute(const HomPoly3 &p, const std::array<HomPoly3, 3> &f)
{
    const Field &field = p.field();
    int d = -1;
    for (const auto &fi : f) {
        if (!(fi.field() == field)) {
            throw Error(ErrorKind::InvalidArgument, "substitution over mismatched fields");
        }
        if (fi.is_zero()) {
            continue;
        }
        if (d >= 0 && fi.degree() != d) {
            throw Error(ErrorKind::DegreeMismatch, "substituted components have different degrees");
        }
        d = fi.degree();
    }
    // Power caches, built on demand.
    std::array<std::vector<HomPoly3>, 3> powers;
    for (std::size_t v = 0; v < 3; ++v) {
        powers[v].push_back(HomPoly3::constant(field, BigRational(1)));
        const unsigned need = p.max_degree_in(static_cast<int>(v));
        for (unsigned i = 1; i <= need; ++i) {
            powers[v].push_back(powers[v].back() * f[v]);
        }
    }
    HomPoly3::TermMap acc;
    for (const auto &[e, c] : p.terms()) {
        const HomPoly3 term = powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]];
        for (const auto &[te, tc] : term.terms()) {
            accumulate(field, acc, te, field.mul(c, tc));
        }
    }
    return HomPoly3::from_terms(field, acc);
}

HomPoly3 jacobian_det(const HomPoly3 &f0, const HomPoly3 &f1, const HomPoly3 &f2)
{
    const std::array<const HomPoly3 *, 3> f{&f0, &f1, &f2};
    int d = -1;
    for (const auto *fi : f) {
        if (fi->is_zero()) {
            continue;
        }
        if (d >= 0 && fi->degree() != d) {
            throw Error(ErrorKind::DegreeMismatch, "Jacobian of components with different degrees");
        }
        d = fi->degree();
    }
    std::array<std::array<HomPoly3, 3>, 3> m;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            m[i][j] = f[i]->derivative(static_cast<int>(j));
        }
    }
    auto minor = [&](std::size_t r1, std::size_t r2, std::size_t c1, std::size_t c2) {
        return m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1];
    };
    return m[0][0] * minor(1, 2, 1, 2) - m[0][1] * minor(1, 2, 0, 2) + m[0][2] * minor(1, 2, 0, 1);
}

std::pair<HomPoly3, HomPoly3> divide(const HomPoly3 &a, const HomPoly3 &b)
{
    if (b.is_zero()) {
        throw Error(ErrorKind::InvalidArgument, "division by the zero polynomial");
    }
    const Field &field = a.field();
    HomPoly3::TermMap quotient;
    HomPoly3::TermMap remainder;
    HomPoly3::TermMap work = a.terms();
    const Exponent &lb = b.leading_exponent();
    const BigRational lc_inv = field.inv(b.leading_coeff());
    while (!work.empty()) {
        const auto it = work.begin();
        const Exponent e = it->first;
        const BigRational c = it->second;
        if (divides(lb, e)) {
            const Exponent q{e[0] - lb[0], e[1] - lb[1], e[2] - lb[2]};
            const BigRational qc = field.mul(c, lc_inv);
            quotient.emplace(q, qc);
            for (const auto &[be, bc] : b.terms()) {
                accumulate(field, work, Exponent{be[0] + q[0], be[1] + q[1], be[2] + q[2]}, field.neg(field.mul(qc, bc)));
            }
        } else {
            remainder.emplace(e, c);
            work.erase(it);
        }
    }
    return {HomPoly3::from_terms(field, quotient), HomPoly3::from_terms(field, remainder)};
}

std::optional<HomPoly3> divide_exact(const HomPoly3 &a, const HomPoly3 &b)
{
    auto [q, r] = divide(a, b);
    if (!r.is_zero()) {
        return std::nullopt;
    }
    return q;
}

bool is_squarefree(const HomPoly3 &p)
{
    HomPoly3 g = p;
    for (int v = 0; v < 3 && !g.is_constant(); ++v) {
        const HomPoly3 d = p.derivative(v);
        if (!d.is_zero()) {
            g = gcd(g, d);
        }
    }
    return g.is_constant();
}

} // namespace cremona
