#include <cremona/monomial.hpp>

#include <cremona/numtheory.hpp>
#include <cremona/parse.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace cremona {

namespace {

BigInt parse_bigint(const std::string &s)
{
    std::string t = trim_copy(s);
    if (!t.empty() && t[0] == '+') {
        t.erase(0, 1);
    }
    const std::size_t digits_from = (!t.empty() && t[0] == '-') ? 1 : 0;
    if (t.size() == digits_from || !std::all_of(t.begin() + static_cast<long>(digits_from), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; })) {
        throw Error(ErrorKind::ParseError, "expected an integer, got \"" + s + "\"");
    }
    return BigInt(t);
}

BigRational mod2(const BigRational &s)
{
    // s - 2 floor(s / 2)
    BigRational half = s / 2;
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
    BigRational r = s - BigRational(2 * fl);
    r.canonicalize();
    return r;
}

bool is_integer(const BigRational &q)
{
    return q.get_den() == 1;
}

unsigned long to_ulong(const BigInt &n, const char *what)
{
    if (n < 0 || !n.fits_ulong_p() || n > std::numeric_limits<unsigned>::max()) {
        throw Error(ErrorKind::InvalidArgument, std::string(what) + " out of range");
    }
    return n.get_ui();
}

std::string exponent_text(const BigRational &e)
{
    if (is_integer(e)) {
        return e.get_str();
    }
    return "(" + e.get_str() + ")";
}

} // namespace

// --------------------------------------------------------------- IntMatrix2

IntMatrix2 IntMatrix2::parse(std::string_view text)
{
    const std::string t = trim_copy(text);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
        throw Error(ErrorKind::ParseError, "expected a matrix \"[[a,b],[c,d]]\", got \"" + t + "\"");
    }
    const auto rows = split_top_level(std::string_view(t).substr(1, t.size() - 2), ',');
    std::vector<BigInt> e;
    for (const auto &row : rows) {
        if (row.size() < 2 || row.front() != '[' || row.back() != ']') {
            throw Error(ErrorKind::ParseError, "malformed matrix row \"" + row + "\"");
        }
        for (const auto &x : split_top_level(std::string_view(row).substr(1, row.size() - 2), ',')) {
            e.push_back(parse_bigint(x));
        }
    }
    if (rows.size() != 2 || e.size() != 4) {
        throw Error(ErrorKind::ParseError, "expected a 2x2 matrix, got \"" + t + "\"");
    }
    return {e[0], e[1], e[2], e[3]};
}

IntMatrix2 IntMatrix2::inverse() const
{
    const BigInt dt = det();
    if (dt == 1) {
        return {d, -b, -c, a};
    }
    if (dt == -1) {
        return {-d, b, c, -a};
    }
    throw Error(ErrorKind::SingularMatrix, to_string() + " is not invertible over Z");
}

IntMatrix2 IntMatrix2::pow(unsigned long n) const
{
    IntMatrix2 r = identity();
    IntMatrix2 base = *this;
    while (n != 0) {
        if ((n & 1UL) != 0) {
            r = r * base;
        }
        n >>= 1U;
        if (n != 0) {
            base = base * base;
        }
    }
    return r;
}

IntMatrix2 IntMatrix2::operator*(const IntMatrix2 &o) const
{
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

std::string IntMatrix2::to_string() const
{
    return "[[" + a.get_str() + "," + b.get_str() + "],[" + c.get_str() + "," + d.get_str() + "]]";
}

bool operator<(const IntMatrix2 &x, const IntMatrix2 &y)
{
    if (x.a != y.a) {
        return x.a < y.a;
    }
    if (x.b != y.b) {
        return x.b < y.b;
    }
    if (x.c != y.c) {
        return x.c < y.c;
    }
    return x.d < y.d;
}

// ------------------------------------------------------------- TorusElement

void TorusElement::set(const BigInt &p, Exponents e)
{
    if (e[0] == 0 && e[1] == 0) {
        primes_.erase(p);
    } else {
        primes_[p] = std::move(e);
    }
}

void TorusElement::normalize_signs()
{
    sign_[0] = mod2(sign_[0]);
    sign_[1] = mod2(sign_[1]);
}

TorusElement TorusElement::from_rationals(const BigRational &c1, const BigRational &c2)
{
    TorusElement t;
    const std::array<const BigRational *, 2> c{&c1, &c2};
    for (int i = 0; i < 2; ++i) {
        const BigRational &q = *c[static_cast<std::size_t>(i)];
        if (q == 0) {
            throw Error(ErrorKind::InvalidArgument, "torus coordinates must be nonzero");
        }
        if (q < 0) {
            t.sign_[static_cast<std::size_t>(i)] = 1;
        }
        for (const auto &[p, e] : factorize(q.get_num())) {
            auto ex = t.primes_[p];
            ex[static_cast<std::size_t>(i)] += e;
            t.set(p, ex);
        }
        if (q.get_den() != 1) {
            for (const auto &[p, e] : factorize(q.get_den())) {
                auto ex = t.primes_[p];
                ex[static_cast<std::size_t>(i)] -= e;
                t.set(p, ex);
            }
        }
    }
    return t;
}

BigRational TorusElement::exponent(const BigInt &p, int coord) const
{
    if (p == -1) {
        return sign_.at(static_cast<std::size_t>(coord));
    }
    const auto it = primes_.find(p);
    return it == primes_.end() ? BigRational(0) : it->second.at(static_cast<std::size_t>(coord));
}

bool TorusElement::is_rational() const
{
    for (const auto &[p, e] : primes_) {
        if (!is_integer(e[0]) || !is_integer(e[1])) {
            return false;
        }
    }
    return is_integer(sign_[0]) && is_integer(sign_[1]);
}

std::array<BigRational, 2> TorusElement::values() const
{
    if (!is_rational()) {
        throw Error(ErrorKind::IrrationalTorus, to_string() + " has radical coordinates");
    }
    std::array<BigRational, 2> v{1, 1};
    for (const auto &[p, e] : primes_) {
        for (std::size_t i = 0; i < 2; ++i) {
            v[i] *= rational_pow(BigRational(p), e[i].get_num().get_si());
        }
    }
    for (std::size_t i = 0; i < 2; ++i) {
        if (sign_[i] == 1) {
            v[i] = -v[i];
        }
    }
    return v;
}

TorusElement TorusElement::operator*(const TorusElement &o) const
{
    TorusElement r = *this;
    for (const auto &[p, e] : o.primes_) {
        auto ex = r.primes_[p];
        r.set(p, {ex[0] + e[0], ex[1] + e[1]});
    }
    r.sign_ = {sign_[0] + o.sign_[0], sign_[1] + o.sign_[1]};
    r.normalize_signs();
    return r;
}

TorusElement TorusElement::inverse() const
{
    return pow(BigRational(-1));
}

TorusElement TorusElement::pow(const BigRational &k) const
{
    TorusElement r;
    for (const auto &[p, e] : primes_) {
        r.set(p, {e[0] * k, e[1] * k});
    }
    r.sign_ = {sign_[0] * k, sign_[1] * k};
    r.normalize_signs();
    return r;
}

TorusElement TorusElement::act(const IntMatrix2 &m) const
{
    const BigRational a(m.a);
    const BigRational b(m.b);
    const BigRational c(m.c);
    const BigRational d(m.d);
    TorusElement r;
    for (const auto &[p, e] : primes_) {
        r.set(p, {a * e[0] + b * e[1], c * e[0] + d * e[1]});
    }
    r.sign_ = {a * sign_[0] + b * sign_[1], c * sign_[0] + d * sign_[1]};
    r.normalize_signs();
    return r;
}

std::string TorusElement::to_string() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < 2; ++i) {
        std::string coord;
        if (sign_[i] == 1) {
            coord = "-";
        } else if (sign_[i] != 0) {
            coord = "(-1)^" + exponent_text(sign_[i]) + "*";
        }
        for (const auto &[p, e] : primes_) {
            if (e[i] == 0) {
                continue;
            }
            coord += p.get_str();
            if (e[i] != 1) {
                coord += "^" + exponent_text(e[i]);
            }
            coord += "*";
        }
        coord += (i == 0 ? "x" : "y");
        out += coord;
        out += (i == 0 ? ", " : ")");
    }
    return out;
}

namespace {

// Parser for one torus coordinate "[-] factor * ... * var".
class TorusCoordParser {
public:
    TorusCoordParser(std::string_view text, char var) : s_(text), var_(var) {}

    // Multiplies factors into `acc` at coordinate `coord`.
    void parse(TorusElement &acc, int coord)
    {
        skip();
        if (peek() == '-') {
            ++pos_;
            add(acc, coord, BigRational(-1), BigRational(1));
        }
        bool saw_var = false;
        while (true) {
            skip();
            if (peek() == var_) {
                ++pos_;
                saw_var = true;
            } else {
                const BigRational base = parse_base();
                BigRational e(1);
                skip();
                if (peek() == '^') {
                    ++pos_;
                    e = parse_exponent();
                }
                add(acc, coord, base, e);
            }
            skip();
            if (pos_ == s_.size()) {
                break;
            }
            if (peek() != '*') {
                fail("expected '*'");
            }
            ++pos_;
        }
        if (!saw_var) {
            fail(std::string("missing variable ") + var_);
        }
    }

private:
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw Error(ErrorKind::ParseError, msg + " in torus coordinate \"" + std::string(s_) + "\"");
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])) != 0) {
            ++pos_;
        }
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    BigRational parse_rational_literal()
    {
        skip();
        const std::size_t start = pos_;
        if (peek() == '-' || peek() == '+') {
            ++pos_;
        }
        while (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
            ++pos_;
        }
        if (peek() == '/') {
            ++pos_;
            while (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
                ++pos_;
            }
        }
        std::string lit(s_.substr(start, pos_ - start));
        if (!lit.empty() && lit[0] == '+') {
            lit.erase(0, 1);
        }
        try {
            BigRational q(lit);
            if (q.get_den() == 0) {
                fail("zero denominator");
            }
            q.canonicalize();
            return q;
        } catch (const std::invalid_argument &) {
            fail("malformed number \"" + lit + "\"");
        }
    }

    BigRational parse_base()
    {
        if (peek() == '(') {
            ++pos_;
            BigRational q = parse_rational_literal();
            skip();
            if (peek() != ')') {
                fail("expected ')'");
            }
            ++pos_;
            return q;
        }
        if (std::isdigit(static_cast<unsigned char>(peek())) == 0) {
            fail("expected a base");
        }
        return parse_rational_literal();
    }

    BigRational parse_exponent()
    {
        skip();
        if (peek() == '(') {
            ++pos_;
            BigRational q = parse_rational_literal();
            skip();
            if (peek() != ')') {
                fail("expected ')'");
            }
            ++pos_;
            return q;
        }
        return parse_rational_literal();
    }

    static void add(TorusElement &acc, int coord, const BigRational &base, const BigRational &e)
    {
        if (base == 0) {
            throw Error(ErrorKind::ParseError, "torus coordinate with factor 0");
        }
        const TorusElement t = coord == 0 ? TorusElement::from_rationals(base, 1) : TorusElement::from_rationals(1, base);
        acc = acc * t.pow(e);
    }

    std::string_view s_;
    char var_;
    std::size_t pos_ = 0;
};

} // namespace

TorusElement TorusElement::parse(std::string_view text)
{
    const std::string t = trim_copy(text);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')') {
        throw Error(ErrorKind::ParseError, "expected a torus element \"(c1*x, c2*y)\", got \"" + t + "\"");
    }
    const auto parts = split_top_level(std::string_view(t).substr(1, t.size() - 2), ',');
    if (parts.size() != 2) {
        throw Error(ErrorKind::ParseError, "expected two coordinates in \"" + t + "\"");
    }
    TorusElement acc;
    TorusCoordParser(parts[0], 'x').parse(acc, 0);
    TorusCoordParser(parts[1], 'y').parse(acc, 1);
    return acc;
}

// ---------------------------------------------------------- MonomialElement

MonomialElement::MonomialElement(IntMatrix2 m, TorusElement t) : matrix(std::move(m)), torus(std::move(t))
{
    if (!matrix.is_unimodular()) {
        throw Error(ErrorKind::InvalidArgument, matrix.to_string() + " does not have determinant +-1");
    }
}

MonomialElement MonomialElement::inverse() const
{
    const IntMatrix2 inv = matrix.inverse();
    return {inv, torus.inverse().act(inv)};
}

std::string MonomialElement::to_string() const
{
    return matrix.to_string() + " " + torus.to_string();
}

MonomialElement semidirect_compose(const MonomialElement &g1, const MonomialElement &g2)
{
    return {g1.matrix * g2.matrix, g1.torus * g2.torus.act(g1.matrix)};
}

namespace {

CremonaMap to_cremona_raw(const MonomialElement &g)
{
    const auto c = g.torus.values();
    const IntMatrix2 &a = g.matrix;
    const BigInt mx = std::min({a.a, a.c, BigInt(0)});
    const BigInt my = std::min({a.b, a.d, BigInt(0)});
    const std::array<IntVec2, 3> ex{IntVec2{a.a - mx, a.b - my}, IntVec2{a.c - mx, a.d - my}, IntVec2{-mx, -my}};
    BigInt deg(0);
    for (const auto &e : ex) {
        deg = std::max(deg, BigInt(e[0] + e[1]));
    }
    const Field q = Field::rationals();
    std::array<HomPoly3, 3> f;
    const std::array<BigRational, 3> coeffs{c[0], c[1], BigRational(1)};
    for (std::size_t i = 0; i < 3; ++i) {
        const unsigned i0 = static_cast<unsigned>(to_ulong(ex[i][0], "monomial exponent"));
        const unsigned i1 = static_cast<unsigned>(to_ulong(ex[i][1], "monomial exponent"));
        const unsigned i2 = static_cast<unsigned>(to_ulong(deg - ex[i][0] - ex[i][1], "monomial exponent"));
        f[i] = HomPoly3::monomial(q, coeffs[i], {i0, i1, i2});
    }
    return CremonaMap::normalize(f);
}

} // namespace

CremonaMap to_cremona(const MonomialElement &g)
{
    return to_cremona_raw(g).with_trusted_inverse(to_cremona_raw(g.inverse()));
}

CremonaMap to_cremona(const IntMatrix2 &a)
{
    return to_cremona(MonomialElement(a));
}

BigInt monomial_degree(const IntMatrix2 &a)
{
    const BigInt mx = std::min({a.a, a.c, BigInt(0)});
    const BigInt my = std::min({a.b, a.d, BigInt(0)});
    return std::max({BigInt(a.a - mx + a.b - my), BigInt(a.c - mx + a.d - my), BigInt(-mx - my)});
}

// ----------------------------------------------------------- QuadraticValue

QuadraticValue QuadraticValue::make(const BigRational &a, const BigRational &b, const BigInt &n)
{
    if (n < 0) {
        throw Error(ErrorKind::InvalidArgument, "negative radicand");
    }
    QuadraticValue v(a);
    if (b == 0 || n == 0) {
        return v;
    }
    const auto [s, r] = square_part(n);
    const BigRational coeff = b * BigRational(s);
    if (r == 1) {
        v.a_ += coeff;
        return v;
    }
    v.b_ = coeff;
    v.d_ = r;
    return v;
}

void QuadraticValue::check_compatible(const QuadraticValue &o) const
{
    if (b_ != 0 && o.b_ != 0 && d_ != o.d_) {
        throw Error(ErrorKind::InvalidArgument, "quadratic values in different fields");
    }
}

QuadraticValue QuadraticValue::operator+(const QuadraticValue &o) const
{
    check_compatible(o);
    QuadraticValue r;
    r.a_ = a_ + o.a_;
    r.b_ = b_ + o.b_;
    r.d_ = r.b_ == 0 ? BigInt(0) : (b_ != 0 ? d_ : o.d_);
    return r;
}

QuadraticValue QuadraticValue::operator-() const
{
    QuadraticValue r = *this;
    r.a_ = -a_;
    r.b_ = -b_;
    return r;
}

QuadraticValue QuadraticValue::operator-(const QuadraticValue &o) const
{
    return *this + (-o);
}

QuadraticValue QuadraticValue::operator*(const QuadraticValue &o) const
{
    check_compatible(o);
    const BigInt d = b_ != 0 ? d_ : o.d_;
    QuadraticValue r;
    r.a_ = a_ * o.a_ + b_ * o.b_ * BigRational(d);
    r.b_ = a_ * o.b_ + b_ * o.a_;
    r.d_ = r.b_ == 0 ? BigInt(0) : d;
    return r;
}

QuadraticValue QuadraticValue::pow(unsigned n) const
{
    QuadraticValue r(BigRational(1));
    QuadraticValue base = *this;
    while (n != 0) {
        if ((n & 1U) != 0) {
            r = r * base;
        }
        n >>= 1U;
        if (n != 0) {
            base = base * base;
        }
    }
    return r;
}

QuadraticValue QuadraticValue::conjugate() const
{
    QuadraticValue r = *this;
    r.b_ = -b_;
    return r;
}

int QuadraticValue::sign() const
{
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) {
        return sa;
    }
    if (sa == 0 || sa == sb) {
        return sb;
    }
    const BigRational lhs = a_ * a_;
    const BigRational rhs = b_ * b_ * BigRational(d_);
    return lhs > rhs ? sa : sb;
}

double QuadraticValue::to_double() const
{
    return a_.get_d() + b_.get_d() * std::sqrt(d_.get_d());
}

std::string QuadraticValue::to_string() const
{
    if (b_ == 0) {
        return a_.get_str();
    }
    const BigRational two_a = a_ * 2;
    const BigRational two_b = b_ * 2;
    const bool halves = is_integer(two_a) && is_integer(two_b) && !(is_integer(a_) && is_integer(b_));
    const BigRational p = halves ? two_a : a_;
    const BigRational q = halves ? two_b : b_;
    std::string s;
    if (p != 0) {
        s = p.get_str() + (q < 0 ? " - " : " + ");
    } else if (q < 0) {
        s = "-";
    }
    const BigRational aq = abs(q);
    if (aq != 1) {
        s += aq.get_str() + "*";
    }
    s += "sqrt(" + d_.get_str() + ")";
    return halves ? "(" + s + ")/2" : s;
}

QuadraticValue spectral_radius(const IntMatrix2 &a)
{
    if (!a.is_unimodular()) {
        throw Error(ErrorKind::InvalidArgument, a.to_string() + " does not have determinant +-1");
    }
    const BigInt t = a.trace();
    const BigInt disc = t * t - 4 * a.det();
    if (disc < 0) {
        return QuadraticValue(BigRational(1));
    }
    return QuadraticValue::make(make_rational(abs(t), 2), make_rational(1, 2), disc);
}

bool is_loxodromic(const IntMatrix2 &a)
{
    return spectral_radius(a) > QuadraticValue(BigRational(1));
}

TorusElement solve_commuting_torus(const IntMatrix2 &a, const TorusElement &d)
{
    if (!a.is_unimodular() || !is_loxodromic(a)) {
        throw Error(ErrorKind::NotLoxodromic, a.to_string() + " is not loxodromic");
    }
    const IntMatrix2 m = a - IntMatrix2::identity();
    const BigRational det(m.det());
    // v = -(A - I)^-1 u
    auto solve = [&](const TorusElement::Exponents &u) -> TorusElement::Exponents {
        const BigRational v0 = -(BigRational(m.d) * u[0] - BigRational(m.b) * u[1]) / det;
        const BigRational v1 = -(-BigRational(m.c) * u[0] + BigRational(m.a) * u[1]) / det;
        return {v0, v1};
    };
    TorusElement sol;
    for (const auto &[p, e] : d.prime_exponents()) {
        const auto v = solve(e);
        sol = sol * TorusElement::from_rationals(p, 1).pow(v[0]) * TorusElement::from_rationals(1, p).pow(v[1]);
    }
    {
        const auto v = solve(d.sign_exponents());
        sol = sol * TorusElement::from_rationals(-1, 1).pow(v[0]) * TorusElement::from_rationals(1, -1).pow(v[1]);
    }
    const MonomialElement fa(a);
    const MonomialElement lhs = semidirect_compose(semidirect_compose(MonomialElement(IntMatrix2::identity(), sol.inverse()), MonomialElement(a, d)),
                                                   MonomialElement(IntMatrix2::identity(), sol));
    if (!(lhs == fa)) {
        throw Error(ErrorKind::VerificationFailure, "commuting torus solution failed its check");
    }
    return sol;
}

// ------------------------------------------------------ nonnegative conjugate

NonnegativeConjugate conjugate_to_nonnegative(const IntMatrix2 &a)
{
    if (a.det() != 1) {
        throw Error(ErrorKind::NotSL2, a.to_string() + " is not in SL2(Z)");
    }
    if (!is_loxodromic(a)) {
        throw Error(ErrorKind::NotLoxodromic, a.to_string() + " is not loxodromic");
    }
    const int sign = a.trace() > 0 ? 1 : -1;
    const IntMatrix2 target = sign > 0 ? a : -a;
    IntMatrix2 b = target;
    IntMatrix2 p = IntMatrix2::identity();
    auto conj = [&](const IntMatrix2 &q) {
        b = q.inverse() * b * q;
        p = p * q;
    };
    // Choose k minimizing |base + 2 k step|.
    auto best_k = [](const BigInt &base, const BigInt &step) {
        BigInt k;
        BigInt num = -base;
        BigInt den = 2 * step;
        mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        const BigInt k2 = k + 1;
        return abs(base + 2 * k * step) <= abs(base + 2 * k2 * step) ? k : k2;
    };
    bool use_upper = true;
    for (int guard = 0; b.b * b.c < 0; ++guard) {
        if (guard > 100000) {
            throw Error(ErrorKind::VerificationFailure, "nonnegative conjugation did not terminate");
        }
        if (use_upper) {
            // T^-k B T^k moves d - a by 2 k c
            const BigInt k = best_k(b.d - b.a, b.c);
            conj({1, k, 0, 1});
        } else {
            // U^-k B U^k moves d - a by -2 k b
            const BigInt k = best_k(b.d - b.a, -b.b);
            conj({1, 0, k, 1});
        }
        use_upper = !use_upper;
    }
    if (b.b <= 0 && b.c <= 0 && (b.b != 0 || b.c != 0)) {
        conj({1, 0, 0, -1});
    }
    if (!b.nonnegative() || !(p.inverse() * target * p == b)) {
        throw Error(ErrorKind::VerificationFailure, "nonnegative conjugate failed its check for " + a.to_string());
    }
    return {b, p, sign};
}

// --------------------------------------------------------- conjugacy classes

std::string positive_word(const IntMatrix2 &m)
{
    if (m.det() != 1 || !m.nonnegative()) {
        throw Error(ErrorKind::InvalidArgument, m.to_string() + " is not a nonnegative SL2(Z) matrix");
    }
    std::string w;
    IntMatrix2 x = m;
    while (!(x == IntMatrix2::identity())) {
        if (x.a >= x.c && x.b >= x.d) {
            w += 'R';
            x = {x.a - x.c, x.b - x.d, x.c, x.d};
        } else if (x.c >= x.a && x.d >= x.b) {
            w += 'L';
            x = {x.a, x.b, x.c - x.a, x.d - x.b};
        } else {
            throw Error(ErrorKind::VerificationFailure, "positive word decomposition failed");
        }
    }
    return w;
}

namespace {

IntMatrix2 word_matrix(std::string_view w)
{
    IntMatrix2 m = IntMatrix2::identity();
    for (const char ch : w) {
        m = m * (ch == 'R' ? IntMatrix2{1, 1, 0, 1} : IntMatrix2{1, 0, 1, 1});
    }
    return m;
}

std::string swap_letters(std::string w)
{
    for (auto &ch : w) {
        ch = ch == 'R' ? 'L' : 'R';
    }
    return w;
}

std::string canonical_cyclic(const std::string &w)
{
    std::string best;
    for (const std::string &v : {w, swap_letters(w)}) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::string rot = v.substr(i) + v.substr(0, i);
            if (best.empty() || rot < best) {
                best = rot;
            }
        }
    }
    return best;
}

std::vector<BigInt> divisors(const BigInt &n)
{
    std::vector<BigInt> ds{BigInt(1)};
    for (const auto &[p, e] : factorize(n)) {
        const std::size_t count = ds.size();
        BigInt pk(1);
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < count; ++i) {
                ds.push_back(ds[i] * pk);
            }
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

} // namespace

std::vector<ConjugacyClass> trace_conjugacy_classes(const BigInt &t)
{
    const BigInt at = abs(t);
    if (at <= 2) {
        throw Error(ErrorKind::TraceNotLoxodromic, "trace " + t.get_str() + " has |t| <= 2");
    }
    std::map<std::string, std::vector<std::pair<IntMatrix2, std::string>>> groups;
    for (BigInt a = 1; a < at; ++a) {
        const BigInt d = at - a;
        const BigInt n = a * d - 1;
        for (const BigInt &b : divisors(n)) {
            const IntMatrix2 m{a, b, n / b, d};
            const std::string w = positive_word(m);
            groups[canonical_cyclic(w)].emplace_back(m, w);
        }
    }
    const IntMatrix2 swap{0, 1, 1, 0};
    std::vector<ConjugacyClass> out;
    for (auto &[key, members] : groups) {
        std::sort(members.begin(), members.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
        const auto *rep = &members.front();
        BigInt best = monomial_degree(rep->first);
        for (const auto &m : members) {
            const BigInt deg = monomial_degree(m.first);
            if (deg < best || (deg == best && rep->first < m.first)) {
                rep = &m;
                best = deg;
            }
        }
        ConjugacyClass cls;
        cls.representative = rep->first;
        const std::string &rw = rep->second;
        for (const auto &[m, w] : members) {
            // m = P^-1 rep P with P a prefix of rep's word, possibly after swapping letters.
            std::optional<IntMatrix2> conj;
            for (int swapped = 0; swapped < 2 && !conj; ++swapped) {
                const std::string base = swapped != 0 ? swap_letters(rw) : rw;
                for (std::size_t i = 0; i < base.size() && !conj; ++i) {
                    if (base.substr(i) + base.substr(0, i) == w) {
                        const IntMatrix2 u = word_matrix(std::string_view(base).substr(0, i));
                        conj = swapped != 0 ? swap * u : u;
                    }
                }
            }
            if (!conj || !(conj->inverse() * cls.representative * *conj == m)) {
                throw Error(ErrorKind::VerificationFailure, "missing conjugator for " + m.to_string());
            }
            cls.members.push_back(m);
            cls.conjugators.push_back(*conj);
        }
        if (t < 0) {
            cls.representative = -cls.representative;
            for (auto &m : cls.members) {
                m = -m;
            }
        }
        out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) { return x.representative < y.representative; });
    return out;
}

// ----------------------------------------------------------- dense lattices

IntMatrix2 power_sum_matrix(const IntMatrix2 &a, unsigned long n)
{
    if (n == 0) {
        throw Error(ErrorKind::InvalidArgument, "power sum needs n >= 1");
    }
    IntMatrix2 sum = IntMatrix2::identity();
    IntMatrix2 power = IntMatrix2::identity();
    for (unsigned long i = 1; i < n; ++i) {
        power = power * a;
        sum = sum + power;
    }
    return sum;
}

SmithForm smith_normal_form(const IntMatrix2 &bm)
{
    if (bm.det() == 0) {
        throw Error(ErrorKind::SingularMatrix, bm.to_string() + " is singular");
    }
    IntMatrix2 cur = bm;
    IntMatrix2 u = IntMatrix2::identity();
    IntMatrix2 v = IntMatrix2::identity();
    auto row = [&](const IntMatrix2 &e) {
        cur = e * cur;
        u = e * u;
    };
    auto col = [&](const IntMatrix2 &e) {
        cur = cur * e;
        v = v * e;
    };
    const IntMatrix2 swap{0, 1, 1, 0};
    while (true) {
        // Smallest nonzero entry to the top-left.
        const std::array<const BigInt *, 4> e{&cur.a, &cur.b, &cur.c, &cur.d};
        std::size_t best = 4;
        for (std::size_t i = 0; i < 4; ++i) {
            if (*e[i] != 0 && (best == 4 || abs(*e[i]) < abs(*e[best]))) {
                best = i;
            }
        }
        if (best == 1 || best == 3) {
            col(swap);
        }
        if (best == 2 || best == 3) {
            row(swap);
        }
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), cur.c.get_mpz_t(), cur.a.get_mpz_t());
        row({1, 0, -q, 1});
        mpz_fdiv_q(q.get_mpz_t(), cur.b.get_mpz_t(), cur.a.get_mpz_t());
        col({1, -q, 0, 1});
        if (cur.b != 0 || cur.c != 0) {
            continue;
        }
        if (mpz_divisible_p(cur.d.get_mpz_t(), cur.a.get_mpz_t()) == 0) {
            row({1, 1, 0, 1});
            continue;
        }
        break;
    }
    if (cur.a < 0) {
        row({-1, 0, 0, 1});
    }
    if (cur.d < 0) {
        row({1, 0, 0, -1});
    }
    SmithForm sf{u.inverse(), cur, v.inverse()};
    if (!(sf.m1 * sf.d * sf.m2 == bm)) {
        throw Error(ErrorKind::VerificationFailure, "Smith form reconstruction failed");
    }
    return sf;
}

int zariski_closure_dim(const std::vector<TorusElement> &gens)
{
    std::vector<std::array<BigRational, 2>> rows;
    for (const auto &g : gens) {
        for (const auto &[p, e] : g.prime_exponents()) {
            rows.push_back(e);
        }
    }
    bool nonzero = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][0] != 0 || rows[i][1] != 0) {
            nonzero = true;
        }
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            if (rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0] != 0) {
                return 2;
            }
        }
    }
    return nonzero ? 1 : 0;
}

} // namespace cremona
