#include <cremona/cremona.hpp>

#include <cremona/detail/expr_parser.hpp>
#include <cremona/parse.hpp>

#include <sstream>
#include <vector>

namespace cremona {

// ---------------------------------------------------------------- ProjPoint

ProjPoint ProjPoint::make(Field field, std::array<BigRational, 3> coords)
{
    std::size_t lead = 3;
    for (std::size_t i = 0; i < 3; ++i) {
        coords[i] = field.reduce(coords[i]);
        if (lead == 3 && coords[i] != 0) {
            lead = i;
        }
    }
    if (lead == 3) {
        throw Error(ErrorKind::AllZero, "projective point with all coordinates zero");
    }
    const BigRational inv = field.inv(coords[lead]);
    for (auto &c : coords) {
        c = field.mul(c, inv);
    }
    return ProjPoint(field, std::move(coords));
}

std::string ProjPoint::to_string() const
{
    return "[" + c_[0].get_str() + ":" + c_[1].get_str() + ":" + c_[2].get_str() + "]";
}

// --------------------------------------------------------------- CremonaMap

CremonaMap CremonaMap::normalize(const HomPoly3 &f0, const HomPoly3 &f1, const HomPoly3 &f2)
{
    std::array<HomPoly3, 3> f{f0, f1, f2};
    const Field field = f0.field();
    int degree = -1;
    for (const auto &fi : f) {
        if (!(fi.field() == field)) {
            throw Error(ErrorKind::InvalidArgument, "map components over different fields");
        }
        if (fi.is_zero()) {
            continue;
        }
        if (degree >= 0 && fi.degree() != degree) {
            throw Error(ErrorKind::DegreeMismatch, "map components of different degrees");
        }
        degree = fi.degree();
    }
    if (degree < 0) {
        throw Error(ErrorKind::AllZero, "all three components are zero");
    }

    HomPoly3 g(field);
    for (const auto &fi : f) {
        g = gcd(g, fi);
        if (g.is_constant()) {
            break;
        }
    }
    if (!g.is_constant()) {
        for (auto &fi : f) {
            fi = fi.is_zero() ? fi : *divide_exact(fi, g);
        }
    }

    const HomPoly3 *lead = nullptr;
    for (const auto &fi : f) {
        if (!fi.is_zero()) {
            lead = &fi;
            break;
        }
    }
    BigRational factor;
    if (field.is_rational()) {
        BigInt num_gcd(0);
        BigInt den_lcm(1);
        for (const auto &fi : f) {
            for (const auto &[e, c] : fi.terms()) {
                mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
            }
        }
        factor = BigRational(den_lcm, num_gcd);
        factor.canonicalize();
        if (lead->leading_coeff() < 0) {
            factor = -factor;
        }
    } else {
        factor = field.inv(lead->leading_coeff());
    }
    if (factor != 1) {
        for (auto &fi : f) {
            fi = fi.scaled(factor);
        }
    }
    return CremonaMap(std::move(f));
}

CremonaMap CremonaMap::identity(Field field)
{
    return CremonaMap({HomPoly3::variable(field, 0), HomPoly3::variable(field, 1), HomPoly3::variable(field, 2)});
}

CremonaMap CremonaMap::parse(std::string_view text, Field field)
{
    const auto parts = split_bracket_triple(text);
    std::array<HomPoly3, 3> f;
    for (std::size_t i = 0; i < 3; ++i) {
        f[i] = parse_hompoly(parts[i], field);
    }
    try {
        return normalize(f);
    } catch (const Error &e) {
        throw Error(ErrorKind::ParseError, "invalid map \"" + std::string(text) + "\": " + e.what());
    }
}

bool CremonaMap::is_identity() const
{
    return *this == identity(field());
}

CremonaMap CremonaMap::inverse() const
{
    if (!inverse_) {
        throw Error(ErrorKind::NotBirational, "map " + to_string() + " carries no inverse");
    }
    return inverse_->with_trusted_inverse(without_inverse());
}

CremonaMap CremonaMap::with_inverse(const CremonaMap &inv) const
{
    if (!compose(*this, inv).is_identity() || !compose(inv, *this).is_identity()) {
        throw Error(ErrorKind::NotBirational, inv.to_string() + " is not an inverse of " + to_string());
    }
    return with_trusted_inverse(inv);
}

CremonaMap CremonaMap::with_trusted_inverse(const CremonaMap &inv) const
{
    CremonaMap r = without_inverse();
    r.inverse_ = std::make_shared<const CremonaMap>(inv.without_inverse());
    return r;
}

CremonaMap CremonaMap::without_inverse() const
{
    return CremonaMap(f_);
}

CremonaMap CremonaMap::reduce_mod(unsigned long p) const
{
    return normalize(f_[0].reduce_mod(p), f_[1].reduce_mod(p), f_[2].reduce_mod(p));
}

std::string CremonaMap::to_string() const
{
    return "[" + f_[0].to_string() + " : " + f_[1].to_string() + " : " + f_[2].to_string() + "]";
}

std::array<HomPoly3, 3> compose_raw(const CremonaMap &f, const CremonaMap &g)
{
    if (!(f.field() == g.field())) {
        throw Error(ErrorKind::InvalidArgument, "composition of maps over different fields");
    }
    const auto &gc = g.components();
    return {substitute(f[0], gc), substitute(f[1], gc), substitute(f[2], gc)};
}

CremonaMap compose(const CremonaMap &f, const CremonaMap &g)
{
    return CremonaMap::normalize(compose_raw(f, g));
}

CremonaMap compose_birational(const CremonaMap &f, const CremonaMap &g)
{
    CremonaMap r = compose(f, g);
    if (f.has_inverse() && g.has_inverse()) {
        r = r.with_trusted_inverse(compose(g.inverse(), f.inverse()));
    }
    return r;
}

HomPoly3 strict_transform(const CremonaMap &f, const HomPoly3 &p)
{
    if (!f.has_inverse()) {
        throw Error(ErrorKind::NotBirational, "strict transform needs an inverse witness for " + f.to_string());
    }
    if (p.degree() < 1) {
        throw Error(ErrorKind::InvalidArgument, "strict transform of a constant");
    }
    const auto &c = f.components();
    const HomPoly3 jac = jacobian_det(c[0], c[1], c[2]);
    HomPoly3 q = substitute(p, c);
    if (q.is_zero()) {
        throw Error(ErrorKind::VerificationFailure, "P(f) vanishes identically for birational f");
    }
    while (true) {
        const HomPoly3 g = gcd(q, jac);
        if (g.is_constant()) {
            break;
        }
        q = *divide_exact(q, g);
    }
    return q.normalized();
}

std::optional<ProjPoint> contracted_image(const CremonaMap &f, const HomPoly3 &p)
{
    if (p.degree() < 1) {
        throw Error(ErrorKind::InvalidArgument, "contracted_image of a constant");
    }
    if (!is_squarefree(p)) {
        throw Error(ErrorKind::NotSquarefree, p.to_string() + " is not squarefree");
    }
    const Field &field = f.field();
    std::array<HomPoly3, 3> r;
    int pivot = -1;
    for (std::size_t i = 0; i < 3; ++i) {
        r[i] = divide(f[i], p).second;
        if (pivot < 0 && !r[i].is_zero()) {
            pivot = static_cast<int>(i);
        }
    }
    if (pivot < 0) {
        throw Error(ErrorKind::ZeroModP, "every component of " + f.to_string() + " vanishes modulo " + p.to_string());
    }
    // The remainders are normal forms, so proportionality modulo P is
    // proportionality of remainders.
    const HomPoly3 &base = r[static_cast<std::size_t>(pivot)];
    const Exponent &le = base.leading_exponent();
    const BigRational lc_inv = field.inv(base.leading_coeff());
    std::array<BigRational, 3> point;
    for (std::size_t i = 0; i < 3; ++i) {
        const BigRational ratio = field.mul(r[i].coeff(le), lc_inv);
        if (!(r[i] - base.scaled(ratio)).is_zero()) {
            return std::nullopt;
        }
        point[i] = ratio;
    }
    return ProjPoint::make(field, point);
}

// ------------------------------------------------------------------ RatFunc

RatFunc::RatFunc(Field field) : num_(field), den_(UPoly::constant(field, BigRational(1))) {}

RatFunc::RatFunc(const UPoly &num, const UPoly &den)
{
    if (den.is_zero()) {
        throw Error(ErrorKind::InvalidArgument, "rational function with zero denominator");
    }
    if (num.is_zero()) {
        *this = RatFunc(num.field());
        return;
    }
    const UPoly g = UPoly::gcd(num, den);
    UPoly n = UPoly::exact_div(num, g);
    UPoly d = UPoly::exact_div(den, g);
    const BigRational lc = d.leading();
    num_ = n.scaled(num.field().inv(lc));
    den_ = d.scaled(num.field().inv(lc));
}

RatFunc RatFunc::constant(Field field, const BigRational &c)
{
    return RatFunc(UPoly::constant(field, c), UPoly::constant(field, BigRational(1)));
}

RatFunc RatFunc::variable(Field field)
{
    return RatFunc(UPoly::variable(field), UPoly::constant(field, BigRational(1)));
}

namespace {

struct RatFuncBuilder {
    using Value = RatFunc;
    Field field;

    Value number(const BigInt &n) const { return RatFunc::constant(field, BigRational(n)); }
    std::optional<Value> variable(char c) const
    {
        if (c != 'x') {
            return std::nullopt;
        }
        return RatFunc::variable(field);
    }
    Value neg(const Value &a) const { return -a; }
    Value add(const Value &a, const Value &b) const { return a + b; }
    Value sub(const Value &a, const Value &b) const { return a - b; }
    Value mul(const Value &a, const Value &b) const { return a * b; }
    Value div(const Value &a, const Value &b) const
    {
        if (b.is_zero()) {
            throw Error(ErrorKind::ParseError, "division by zero");
        }
        return a / b;
    }
    Value pow(const Value &a, unsigned e) const
    {
        return RatFunc(cremona::pow(a.num(), e), cremona::pow(a.den(), e));
    }
};

} // namespace

RatFunc RatFunc::parse(std::string_view text, Field field)
{
    RatFuncBuilder b{field};
    detail::ExprParser<RatFuncBuilder> parser(text, b);
    return parser.parse();
}

RatFunc RatFunc::operator+(const RatFunc &o) const
{
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc &o) const
{
    return *this + (-o);
}

RatFunc RatFunc::operator-() const
{
    RatFunc r = *this;
    r.num_ = -num_;
    return r;
}

RatFunc RatFunc::operator*(const RatFunc &o) const
{
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc &o) const
{
    if (o.is_zero()) {
        throw Error(ErrorKind::InvalidArgument, "division by the zero rational function");
    }
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::compose_mobius(const std::array<BigRational, 4> &m) const
{
    const Field &f = field();
    const UPoly top(f, {m[1], m[0]});
    const UPoly bottom(f, {m[3], m[2]});
    // p((a x + b)/(c x + d)) * (c x + d)^n for n >= deg p
    auto homogenized = [&](const UPoly &p, int n) {
        UPoly acc(f);
        for (int i = 0; i <= p.degree(); ++i) {
            const BigRational &c = p.coeff(static_cast<std::size_t>(i));
            if (c == 0) {
                continue;
            }
            acc = acc + (pow(top, static_cast<unsigned>(i)) * pow(bottom, static_cast<unsigned>(n - i))).scaled(c);
        }
        return acc;
    };
    const int n = std::max(num_.degree(), den_.degree());
    return RatFunc(homogenized(num_, n), homogenized(den_, n));
}

std::string RatFunc::to_string() const
{
    if (den_.degree() == 0) {
        return num_.to_string('x');
    }
    return "(" + num_.to_string('x') + ")/(" + den_.to_string('x') + ")";
}

// ------------------------------------------------------------- de Jonquieres

namespace {

template <typename T, typename Mul, typename Sub>
T det2(const std::array<T, 4> &m, Mul mul, Sub sub)
{
    return sub(mul(m[0], m[3]), mul(m[1], m[2]));
}

DeJonquieresElement::Mobius canonical_mobius(const Field &field, DeJonquieresElement::Mobius m)
{
    for (auto &c : m) {
        c = field.reduce(c);
    }
    for (const auto &c : m) {
        if (c != 0) {
            const BigRational inv = field.inv(c);
            for (auto &e : m) {
                e = field.mul(e, inv);
            }
            break;
        }
    }
    return m;
}

DeJonquieresElement::Fiber canonical_fiber(DeJonquieresElement::Fiber fiber)
{
    const Field field = fiber[0].field();
    UPoly common = UPoly::constant(field, BigRational(1));
    for (const auto &r : fiber) {
        common = UPoly::exact_div(common * r.den(), UPoly::gcd(common, r.den()));
    }
    std::array<UPoly, 4> polys;
    UPoly g(field);
    for (std::size_t i = 0; i < 4; ++i) {
        polys[i] = UPoly::exact_div(fiber[i].num() * common, fiber[i].den());
        g = UPoly::gcd(g, polys[i]);
    }
    BigRational scale(1);
    for (std::size_t i = 0; i < 4; ++i) {
        polys[i] = UPoly::exact_div(polys[i], g);
    }
    if (field.is_rational()) {
        BigInt num_gcd(0);
        BigInt den_lcm(1);
        for (const auto &p : polys) {
            for (const auto &c : p.coeffs()) {
                mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
            }
        }
        scale = BigRational(den_lcm, num_gcd);
        scale.canonicalize();
    }
    for (const auto &p : polys) {
        if (!p.is_zero()) {
            const BigRational lead = field.mul(p.leading(), scale);
            scale = field.is_rational() ? (lead < 0 ? BigRational(-scale) : scale) : field.mul(scale, field.inv(lead));
            break;
        }
    }
    DeJonquieresElement::Fiber out;
    const UPoly one = UPoly::constant(field, BigRational(1));
    for (std::size_t i = 0; i < 4; ++i) {
        out[i] = RatFunc(polys[i].scaled(scale), one);
    }
    return out;
}

} // namespace

DeJonquieresElement::DeJonquieresElement(Mobius mobius, Fiber fiber)
{
    const Field field = fiber[0].field();
    for (const auto &r : fiber) {
        if (!(r.field() == field)) {
            throw Error(ErrorKind::InvalidArgument, "fiber entries over different fields");
        }
    }
    m_ = canonical_mobius(field, std::move(mobius));
    if (det2(m_, [&](auto &a, auto &b) { return field.mul(a, b); }, [&](auto a, auto b) { return field.sub(a, b); }) == 0) {
        throw Error(ErrorKind::SingularMatrix, "Mobius part is singular");
    }
    if (det2(fiber, [](auto &a, auto &b) { return a * b; }, [](auto a, auto b) { return a - b; }).is_zero()) {
        throw Error(ErrorKind::SingularMatrix, "fiber part is singular");
    }
    f_ = canonical_fiber(std::move(fiber));
}

DeJonquieresElement DeJonquieresElement::identity(Field field)
{
    const RatFunc one = RatFunc::constant(field, BigRational(1));
    const RatFunc zero(field);
    return DeJonquieresElement({1, 0, 0, 1}, {one, zero, zero, one});
}

DeJonquieresElement DeJonquieresElement::parse(std::string_view text, Field field)
{
    const std::string t = trim_copy(text);
    // Split into two top-level bracket groups.
    std::vector<std::string> groups;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] == '[') {
            if (depth == 0) {
                start = i;
            }
            ++depth;
        } else if (t[i] == ']') {
            --depth;
            if (depth == 0) {
                groups.push_back(t.substr(start, i - start + 1));
            }
        }
    }
    if (groups.size() != 2 || depth != 0) {
        throw Error(ErrorKind::ParseError, "expected two bracketed 2x2 matrices in \"" + t + "\"");
    }
    auto entries = [&](const std::string &g) {
        const auto rows = split_top_level(std::string_view(g).substr(1, g.size() - 2), ',');
        std::vector<std::string> out;
        for (const auto &row : rows) {
            if (row.size() < 2 || row.front() != '[' || row.back() != ']') {
                throw Error(ErrorKind::ParseError, "malformed matrix row \"" + row + "\"");
            }
            for (auto &e : split_top_level(std::string_view(row).substr(1, row.size() - 2), ',')) {
                out.push_back(e);
            }
        }
        if (rows.size() != 2 || out.size() != 4) {
            throw Error(ErrorKind::ParseError, "expected a 2x2 matrix, got \"" + g + "\"");
        }
        return out;
    };
    const auto me = entries(groups[0]);
    const auto fe = entries(groups[1]);
    Mobius m;
    Fiber f;
    for (std::size_t i = 0; i < 4; ++i) {
        const RatFunc c = RatFunc::parse(me[i], field);
        if (c.num().degree() > 0 || c.den().degree() > 0) {
            throw Error(ErrorKind::ParseError, "Mobius entry \"" + me[i] + "\" is not a constant");
        }
        m[i] = c.num().coeff(0);
        f[i] = RatFunc::parse(fe[i], field);
    }
    try {
        return DeJonquieresElement(m, f);
    } catch (const Error &e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

DeJonquieresElement DeJonquieresElement::inverse() const
{
    const Field &field = this->field();
    const Mobius minv{m_[3], field.neg(m_[1]), field.neg(m_[2]), m_[0]};
    // (M, F)^-1 = (M^-1, adj(F(M^-1 x)))
    std::array<RatFunc, 4> g;
    for (std::size_t i = 0; i < 4; ++i) {
        g[i] = f_[i].compose_mobius(minv);
    }
    return DeJonquieresElement(minv, {g[3], -g[1], -g[2], g[0]});
}

std::string DeJonquieresElement::to_string() const
{
    return "[[" + m_[0].get_str() + "," + m_[1].get_str() + "],[" + m_[2].get_str() + "," + m_[3].get_str() + "]] [[" +
           f_[0].to_string() + "," + f_[1].to_string() + "],[" + f_[2].to_string() + "," + f_[3].to_string() + "]]";
}

DeJonquieresElement dejonq_compose(const DeJonquieresElement &j1, const DeJonquieresElement &j2)
{
    if (!(j1.field() == j2.field())) {
        throw Error(ErrorKind::InvalidArgument, "composition over different fields");
    }
    const Field &field = j1.field();
    const auto &a = j1.mobius();
    const auto &b = j2.mobius();
    auto dot = [&](const BigRational &p, const BigRational &q, const BigRational &r, const BigRational &s) {
        return field.add(field.mul(p, q), field.mul(r, s));
    };
    const DeJonquieresElement::Mobius m{dot(a[0], b[0], a[1], b[2]), dot(a[0], b[1], a[1], b[3]),
                                        dot(a[2], b[0], a[3], b[2]), dot(a[2], b[1], a[3], b[3])};
    std::array<RatFunc, 4> f1;
    for (std::size_t i = 0; i < 4; ++i) {
        f1[i] = j1.fiber()[i].compose_mobius(b);
    }
    const auto &f2 = j2.fiber();
    return DeJonquieresElement(m, {f1[0] * f2[0] + f1[1] * f2[2], f1[0] * f2[1] + f1[1] * f2[3],
                                   f1[2] * f2[0] + f1[3] * f2[2], f1[2] * f2[1] + f1[3] * f2[3]});
}

namespace {

// Affine polynomial in x, y keyed by (i, j) for x^i y^j.
using Affine = std::map<std::pair<unsigned, unsigned>, BigRational>;

Affine affine_mul(const Field &field, const Affine &a, const Affine &b)
{
    Affine r;
    for (const auto &[ea, ca] : a) {
        for (const auto &[eb, cb] : b) {
            auto &slot = r[{ea.first + eb.first, ea.second + eb.second}];
            slot = field.add(slot, field.mul(ca, cb));
        }
    }
    std::erase_if(r, [](const auto &kv) { return kv.second == 0; });
    return r;
}

Affine affine_add(const Field &field, Affine a, const Affine &b)
{
    for (const auto &[e, c] : b) {
        auto &slot = a[e];
        slot = field.add(slot, c);
    }
    std::erase_if(a, [](const auto &kv) { return kv.second == 0; });
    return a;
}

Affine affine_from(const UPoly &p, unsigned ydeg)
{
    Affine r;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        if (p.coeffs()[i] != 0) {
            r[{static_cast<unsigned>(i), ydeg}] = p.coeffs()[i];
        }
    }
    return r;
}

HomPoly3 homogenize(const Field &field, const Affine &a, unsigned degree)
{
    HomPoly3::TermMap t;
    for (const auto &[e, c] : a) {
        t[{e.first, e.second, degree - e.first - e.second}] = c;
    }
    return HomPoly3::from_terms(field, t);
}

unsigned affine_degree(const Affine &a)
{
    unsigned d = 0;
    for (const auto &[e, c] : a) {
        d = std::max(d, e.first + e.second);
    }
    return d;
}

CremonaMap to_cremona_raw(const DeJonquieresElement &j)
{
    const Field &field = j.field();
    const auto &m = j.mobius();
    const auto &f = j.fiber();
    // Fiber entries are polynomials in canonical form.
    const Affine n1 = affine_from(UPoly(field, {m[1], m[0]}), 0);
    const Affine d1 = affine_from(UPoly(field, {m[3], m[2]}), 0);
    const Affine n2 = affine_add(field, affine_from(f[0].num(), 1), affine_from(f[1].num(), 0));
    const Affine d2 = affine_add(field, affine_from(f[2].num(), 1), affine_from(f[3].num(), 0));
    const Affine a0 = affine_mul(field, n1, d2);
    const Affine a1 = affine_mul(field, n2, d1);
    const Affine a2 = affine_mul(field, d1, d2);
    const unsigned deg = std::max({affine_degree(a0), affine_degree(a1), affine_degree(a2)});
    return CremonaMap::normalize(homogenize(field, a0, deg), homogenize(field, a1, deg), homogenize(field, a2, deg));
}

// Dehomogenized numerator of a form in x, y, z at z = 1, as coefficients of y^0 and y^1.
std::optional<std::array<UPoly, 2>> split_linear_in_y(const HomPoly3 &p)
{
    const Field &field = p.field();
    std::array<std::vector<BigRational>, 2> c;
    for (const auto &[e, coeff] : p.terms()) {
        if (e[1] > 1) {
            return std::nullopt;
        }
        auto &v = c[e[1]];
        if (v.size() <= e[0]) {
            v.resize(e[0] + 1);
        }
        v[e[0]] = coeff;
    }
    return std::array<UPoly, 2>{UPoly(field, c[0]), UPoly(field, c[1])};
}

} // namespace

CremonaMap dejonq_to_cremona(const DeJonquieresElement &j)
{
    return to_cremona_raw(j).with_trusted_inverse(to_cremona_raw(j.inverse()));
}

std::optional<DeJonquieresElement> is_dejonquieres(const CremonaMap &f)
{
    const Field &field = f.field();
    if (f[2].is_zero()) {
        return std::nullopt;
    }
    auto reduced = [](const HomPoly3 &a, const HomPoly3 &b) {
        if (a.is_zero()) {
            return std::pair{a, HomPoly3::constant(b.field(), BigRational(1))};
        }
        const HomPoly3 g = gcd(a, b);
        return std::pair{*divide_exact(a, g), *divide_exact(b, g)};
    };
    // First coordinate: (a x + b z)/(c x + d z).
    const auto [n1, d1] = reduced(f[0], f[2]);
    if (n1.degree() > 1 || d1.degree() > 1 || n1.max_degree_in(1) > 0 || d1.max_degree_in(1) > 0) {
        return std::nullopt;
    }
    auto linear = [&](const HomPoly3 &p) -> std::array<BigRational, 2> {
        if (p.is_zero()) {
            return {0, 0};
        }
        if (p.degree() == 0) {
            return {0, p.coeff({0, 0, 0})};
        }
        return {p.coeff({1, 0, 0}), p.coeff({0, 0, 1})};
    };
    if (n1.degree() != d1.degree() && !n1.is_zero()) {
        return std::nullopt;
    }
    const auto top = linear(n1);
    const auto bottom = linear(d1);
    DeJonquieresElement::Mobius m{top[0], top[1], bottom[0], bottom[1]};
    if (field.sub(field.mul(m[0], m[3]), field.mul(m[1], m[2])) == 0) {
        return std::nullopt;
    }
    // Second coordinate: (A(x) y + B(x))/(C(x) y + D(x)) at z = 1.
    const auto [n2, d2] = reduced(f[1], f[2]);
    const auto top2 = split_linear_in_y(n2);
    const auto bottom2 = split_linear_in_y(d2);
    if (!top2 || !bottom2) {
        return std::nullopt;
    }
    const UPoly one = UPoly::constant(field, BigRational(1));
    DeJonquieresElement::Fiber fib{RatFunc((*top2)[1], one), RatFunc((*top2)[0], one), RatFunc((*bottom2)[1], one),
                                   RatFunc((*bottom2)[0], one)};
    if ((fib[0] * fib[3] - fib[1] * fib[2]).is_zero()) {
        return std::nullopt;
    }
    return DeJonquieresElement(m, fib);
}

} // namespace cremona
