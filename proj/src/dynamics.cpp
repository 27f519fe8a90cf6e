#include <cremona/dynamics.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <mpfr.h>

namespace cremona {

namespace {

double log_big(const BigInt &n)
{
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

// RAII wrapper for an mpfr_t.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t bits) { mpfr_init2(x_, bits); }
    ~Mpfr() { mpfr_clear(x_); }
    Mpfr(const Mpfr &) = delete;
    Mpfr &operator=(const Mpfr &) = delete;
    mpfr_ptr get() { return x_; }

private:
    mpfr_t x_;
};

mpfr_prec_t bits_for(unsigned digits)
{
    return static_cast<mpfr_prec_t>(digits * 3.33) + 64;
}

RealApprox approx_of(Mpfr &x, unsigned digits)
{
    RealApprox r;
    r.value = mpfr_get_d(x.get(), MPFR_RNDN);
    char *buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", static_cast<int>(digits), x.get());
    r.decimal = buf;
    mpfr_free_str(buf);
    return r;
}

void set_quadratic(Mpfr &out, const QuadraticValue &q, mpfr_prec_t bits)
{
    mpfr_set_q(out.get(), q.rational_part().get_mpq_t(), MPFR_RNDN);
    if (!q.is_rational()) {
        Mpfr root(bits);
        mpfr_set_z(root.get(), q.radicand().get_mpz_t(), MPFR_RNDN);
        mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
        Mpfr coeff(bits);
        mpfr_set_q(coeff.get(), q.radical_coeff().get_mpq_t(), MPFR_RNDN);
        mpfr_mul(root.get(), root.get(), coeff.get(), MPFR_RNDN);
        mpfr_add(out.get(), out.get(), root.get(), MPFR_RNDN);
    }
}

using RatMatrix = std::vector<std::vector<BigRational>>;

// Solves the square system m x = rhs exactly; InvalidArgument when singular.
std::vector<BigRational> solve(RatMatrix m, std::vector<BigRational> rhs)
{
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) {
            ++piv;
        }
        if (piv == n) {
            throw Error(ErrorKind::InvalidArgument, "singular linear system");
        }
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) {
                continue;
            }
            const BigRational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<BigRational> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rhs[i] / m[i][i];
    }
    return x;
}

std::vector<UPoly> sturm_chain(const UPoly &p)
{
    std::vector<UPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero()) {
        UPoly r = UPoly::divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero()) {
            break;
        }
        chain.push_back(-r);
    }
    if (chain.back().is_zero()) {
        chain.pop_back();
    }
    return chain;
}

int variations(const std::vector<int> &signs)
{
    int v = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) {
            continue;
        }
        if (last != 0 && s != last) {
            ++v;
        }
        last = s;
    }
    return v;
}

int variations_at(const std::vector<UPoly> &chain, const BigRational &x)
{
    std::vector<int> s;
    for (const auto &q : chain) {
        s.push_back(q.sign_at(x));
    }
    return variations(s);
}

int variations_at_infinity(const std::vector<UPoly> &chain)
{
    std::vector<int> s;
    for (const auto &q : chain) {
        s.push_back(sgn(q.leading()));
    }
    return variations(s);
}

UPoly squarefree_part(const UPoly &p)
{
    const UPoly g = UPoly::gcd(p, p.derivative());
    return g.degree() <= 0 ? p : UPoly::exact_div(p, g);
}

RatMatrix to_rational(const IntMatrix &m)
{
    RatMatrix r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (const auto &x : m[i]) {
            r[i].emplace_back(x);
        }
    }
    return r;
}

RatMatrix mat_mul(const RatMatrix &a, const RatMatrix &b)
{
    const std::size_t n = a.size();
    RatMatrix c(n, std::vector<BigRational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return c;
}

std::string vec_label(const IntVec2 &v)
{
    return "(" + v[0].get_str() + "," + v[1].get_str() + ")";
}

} // namespace

// ------------------------------------------------------------ sequences

DegreeSequence degree_sequence(const IntMatrix2 &a, std::size_t n)
{
    if (n == 0) {
        throw Error(ErrorKind::InvalidArgument, "sequence length must be positive");
    }
    DegreeSequence seq;
    seq.source = "monomial " + a.to_string();
    IntMatrix2 p = a;
    for (std::size_t i = 0; i < n; ++i) {
        seq.values.push_back(monomial_degree(p));
        p = p * a;
    }
    return seq;
}

DegreeSequence degree_sequence(const MonomialElement &g, std::size_t n)
{
    DegreeSequence seq = degree_sequence(g.matrix, n);
    seq.source = "monomial " + g.to_string();
    return seq;
}

DegreeSequence degree_sequence(const CremonaMap &f, std::size_t n, unsigned long max_degree)
{
    if (n == 0) {
        throw Error(ErrorKind::InvalidArgument, "sequence length must be positive");
    }
    DegreeSequence seq;
    seq.source = f.to_string();
    CremonaMap cur = f;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            const unsigned long raw = static_cast<unsigned long>(f.degree()) * static_cast<unsigned long>(cur.degree());
            if (raw > max_degree) {
                throw DegreeBudgetExceeded("iterate " + std::to_string(i + 1) + " needs degree " + std::to_string(raw) +
                                               " > " + std::to_string(max_degree),
                                           seq);
            }
            cur = compose(f, cur);
        }
        seq.values.emplace_back(cur.degree());
    }
    return seq;
}

const char *to_string(GrowthReport::Kind kind)
{
    switch (kind) {
    case GrowthReport::Kind::Bounded:
        return "Bounded";
    case GrowthReport::Kind::Linear:
        return "Linear";
    case GrowthReport::Kind::Quadratic:
        return "Quadratic";
    case GrowthReport::Kind::Exponential:
        return "Exponential";
    case GrowthReport::Kind::Inconclusive:
        return "Inconclusive";
    }
    return "?";
}

GrowthReport classify_growth(const DegreeSequence &seq)
{
    const auto &v = seq.values;
    const std::size_t n = v.size();
    if (n < 6) {
        throw Error(ErrorKind::InvalidArgument, "growth classification needs at least 6 terms");
    }
    for (const auto &x : v) {
        if (x < 1) {
            throw Error(ErrorKind::InvalidArgument, "degrees must be positive");
        }
    }
    GrowthReport rep;
    const std::size_t h = n / 2;
    for (std::size_t i = 1; i < n; ++i) {
        rep.ratios.push_back(std::exp(log_big(v[i]) - log_big(v[i - 1])));
    }
    for (std::size_t i = h; i < n; ++i) {
        const double num = log_big(v[i]) - log_big(v[i - 1]);
        const double den = std::log(static_cast<double>(i + 1) / static_cast<double>(i));
        rep.local_exponents.push_back(num / den);
    }

    const BigInt head_max = *std::max_element(v.begin(), v.begin() + static_cast<long>(h));
    const BigInt tail_max = *std::max_element(v.begin() + static_cast<long>(h), v.end());
    if (tail_max <= head_max) {
        rep.kind = GrowthReport::Kind::Bounded;
        rep.lambda_estimate = 1.0;
        rep.reason = "second half bounded by the maximum of the first half";
        return rep;
    }

    bool linear = true;
    bool quadratic = true;
    const BigInt d1 = v[h] - v[h - 1];
    const BigInt d2 = (v[h] - v[h - 1]) - (v[h - 1] - v[h - 2]);
    for (std::size_t i = h; i < n; ++i) {
        const BigInt di = v[i] - v[i - 1];
        linear = linear && di == d1;
        quadratic = quadratic && di - (v[i - 1] - v[i - 2]) == d2;
    }
    if (linear && d1 > 0) {
        rep.kind = GrowthReport::Kind::Linear;
        rep.lambda_estimate = 1.0;
        rep.reason = "constant first differences " + d1.get_str();
        return rep;
    }
    if (quadratic && d2 > 0) {
        rep.kind = GrowthReport::Kind::Quadratic;
        rep.lambda_estimate = 1.0;
        rep.reason = "constant second differences " + d2.get_str();
        return rep;
    }

    const auto &e = rep.local_exponents;
    const bool in_band = std::all_of(e.begin(), e.end(), [](double x) { return x >= 0.5 && x <= 2.5; });
    if (in_band && e.back() - e.front() <= 0.3) {
        const double k = (e[e.size() - 1] + e[e.size() - 2]) / 2;
        if (std::abs(k - 1) <= 0.35) {
            rep.kind = GrowthReport::Kind::Linear;
        } else if (std::abs(k - 2) <= 0.35) {
            rep.kind = GrowthReport::Kind::Quadratic;
        } else {
            rep.reason = "polynomial growth of exponent " + std::to_string(k);
            return rep;
        }
        rep.lambda_estimate = 1.0;
        rep.reason = "local exponent " + std::to_string(k);
        return rep;
    }

    const double delta = 0.05;
    const auto &r = rep.ratios;
    const bool ratios_high = std::all_of(r.end() - 3, r.end(), [&](double x) { return x > 1 + delta; });
    bool exps_increase = true;
    for (std::size_t i = 1; i < e.size(); ++i) {
        exps_increase = exps_increase && e[i] > e[i - 1];
    }
    const bool converged = std::abs(r.back() - r[r.size() - 2]) <= delta * r.back();
    if (ratios_high && exps_increase && converged) {
        rep.kind = GrowthReport::Kind::Exponential;
        rep.lambda_estimate = r.back();
        rep.reason = "ratios converge to " + std::to_string(r.back());
        return rep;
    }
    std::ostringstream why;
    why << "no test applies (ratios_high=" << ratios_high << ", exponents_increase=" << exps_increase
        << ", converged=" << converged << ")";
    rep.reason = why.str();
    return rep;
}

nlohmann::json growth_json(const DegreeSequence &seq, const GrowthReport &report)
{
    nlohmann::json j;
    j["word"] = seq.source;
    j["degrees"] = nlohmann::json::array();
    for (const auto &d : seq.values) {
        j["degrees"].push_back(json_int(d));
    }
    j["class"] = to_string(report.kind);
    j["lambda_estimate"] = report.lambda_estimate ? nlohmann::json(*report.lambda_estimate) : nlohmann::json();
    j["diagnostics"] = {
        {"ratios", report.ratios},
        {"local_exponents", report.local_exponents},
        {"reason", report.reason},
    };
    return j;
}

QuadraticValue dynamical_degree_monomial(const IntMatrix2 &a)
{
    if (!a.is_unimodular()) {
        throw Error(ErrorKind::InvalidArgument, a.to_string() + " does not have determinant +-1");
    }
    return spectral_radius(a);
}

// ---------------------------------------------------------------- Lehmer

UPoly lehmer_polynomial()
{
    std::vector<BigRational> c{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
    return UPoly(Field::rationals(), c);
}

RationalInterval lehmer_number(const BigRational &eps)
{
    if (eps <= 0) {
        throw Error(ErrorKind::InvalidArgument, "precision must be positive");
    }
    const UPoly p = lehmer_polynomial();
    RationalInterval iv{BigRational(1), BigRational(2)};
    const int sign_lo = p.sign_at(iv.lo);
    if (sign_lo == 0 || sign_lo == p.sign_at(iv.hi)) {
        throw Error(ErrorKind::VerificationFailure, "no sign change on [1, 2]");
    }
    while (iv.width() > eps) {
        const BigRational mid = (iv.lo + iv.hi) / 2;
        const int s = p.sign_at(mid);
        if (s == 0) {
            return {mid, mid};
        }
        if (s == sign_lo) {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
    return iv;
}

GapVerdict gap_check(const QuadraticValue &lambda)
{
    if (lambda < QuadraticValue(1)) {
        throw Error(ErrorKind::InvalidArgument, "dynamical degree below 1");
    }
    GapVerdict v;
    if (lambda == QuadraticValue(1)) {
        v.satisfied = true;
        return v;
    }
    static const BigRational lower = lehmer_number(BigRational(1, 1000000000)).lo;
    v.satisfied = lambda >= QuadraticValue(lower);
    const BigRational trace = lambda.rational_part() * 2;
    const BigRational norm = lambda.rational_part() * lambda.rational_part() -
                             lambda.radical_coeff() * lambda.radical_coeff() * BigRational(lambda.radicand());
    const bool integral = lambda.is_rational() ? lambda.rational_part().get_den() == 1
                                               : trace.get_den() == 1 && norm.get_den() == 1;
    if (lambda.is_rational()) {
        v.pisot = integral;
    } else {
        const QuadraticValue c = lambda.conjugate();
        v.pisot = integral && c < QuadraticValue(1) && c > QuadraticValue(-1);
    }
    return v;
}

GapVerdict gap_check(const BigRational &lambda)
{
    return gap_check(QuadraticValue(lambda));
}

RealApprox decimal_approx(const QuadraticValue &q, unsigned digits)
{
    const mpfr_prec_t bits = bits_for(digits);
    Mpfr x(bits);
    set_quadratic(x, q, bits);
    return approx_of(x, digits);
}

RealApprox log_approx(const QuadraticValue &lambda, unsigned digits)
{
    if (lambda.sign() <= 0) {
        throw Error(ErrorKind::InvalidArgument, "logarithm of a non-positive value");
    }
    const mpfr_prec_t bits = bits_for(digits);
    Mpfr x(bits);
    set_quadratic(x, lambda, bits);
    mpfr_log(x.get(), x.get(), MPFR_RNDN);
    return approx_of(x, digits);
}

RealApprox translation_length(const QuadraticValue &lambda, unsigned digits)
{
    if (lambda <= QuadraticValue(1)) {
        throw Error(ErrorKind::NotLoxodromic, "translation length needs lambda > 1, got " + lambda.to_string());
    }
    return log_approx(lambda, digits);
}

// ----------------------------------------------------------- degree bound

BigInt degree_bound_k(const BigInt &r)
{
    BigInt k;
    const BigInt base = 2 * r;
    mpz_pow_ui(k.get_mpz_t(), base.get_mpz_t(), 57);
    return k;
}

DegreeBound degree_bound(unsigned long d)
{
    if (d < 2) {
        throw Error(ErrorKind::InvalidArgument, "degree bound needs d >= 2");
    }
    DegreeBound out;
    for (unsigned long t = 3; t <= d + 1; ++t) {
        for (const long sign : {1L, -1L}) {
            for (const auto &cls : trace_conjugacy_classes(BigInt(sign * static_cast<long>(t)))) {
                out.c = std::max(out.c, monomial_degree(cls.representative));
            }
        }
    }
    out.k = degree_bound_k(std::max(BigInt(d), out.c));
    return out;
}

// ----------------------------------------------------------------- lattices

MinkowskiLattice::MinkowskiLattice(std::size_t n_exceptional)
{
    labels_.emplace_back("e0");
    for (std::size_t i = 1; i <= n_exceptional; ++i) {
        labels_.push_back("e" + std::to_string(i));
    }
}

MinkowskiLattice::MinkowskiLattice(std::vector<std::string> labels) : labels_(std::move(labels))
{
    if (labels_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "lattice needs at least e0");
    }
    std::vector<std::string> sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorKind::InvalidArgument, "duplicate basis label");
    }
}

BigRational MinkowskiLattice::dot(const std::vector<BigRational> &u, const std::vector<BigRational> &v) const
{
    if (u.size() != rank() || v.size() != rank()) {
        throw Error(ErrorKind::InvalidArgument, "vector length does not match lattice rank");
    }
    BigRational s = u[0] * v[0];
    for (std::size_t i = 1; i < u.size(); ++i) {
        s -= u[i] * v[i];
    }
    return s;
}

LatticeIsometry::LatticeIsometry(IntMatrix m) : m_(std::move(m))
{
    const std::size_t n = m_.size();
    for (const auto &row : m_) {
        if (row.size() != n) {
            throw Error(ErrorKind::NotIsometry, "matrix is not square");
        }
    }
    if (n == 0) {
        throw Error(ErrorKind::NotIsometry, "empty matrix");
    }
    auto sign = [](std::size_t i) { return i == 0 ? 1 : -1; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            BigInt s = 0;
            for (std::size_t k = 0; k < n; ++k) {
                s += sign(k) * m_[k][i] * m_[k][j];
            }
            const int expect = i == j ? sign(i) : 0;
            if (s != expect) {
                throw Error(ErrorKind::NotIsometry, "matrix does not preserve the form at (" + std::to_string(i) +
                                                        "," + std::to_string(j) + ")");
            }
        }
    }
    if (m_[0][0] <= 0) {
        throw Error(ErrorKind::NotIsometry, "matrix swaps the two light cones");
    }
}

LatticeIsometry LatticeIsometry::identity(std::size_t rank)
{
    IntMatrix m(rank, std::vector<BigInt>(rank, 0));
    for (std::size_t i = 0; i < rank; ++i) {
        m[i][i] = 1;
    }
    return LatticeIsometry(std::move(m));
}

LatticeIsometry LatticeIsometry::operator*(const LatticeIsometry &o) const
{
    if (rank() != o.rank()) {
        throw Error(ErrorKind::InvalidArgument, "rank mismatch");
    }
    const std::size_t n = rank();
    IntMatrix c(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t j = 0; j < n; ++j) {
                c[i][j] += m_[i][k] * o.m_[k][j];
            }
        }
    }
    return LatticeIsometry(std::move(c));
}

LatticeIsometry LatticeIsometry::inverse() const
{
    const std::size_t n = rank();
    IntMatrix c(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const int s = (i == 0 ? 1 : -1) * (j == 0 ? 1 : -1);
            c[i][j] = s * m_[j][i];
        }
    }
    return LatticeIsometry(std::move(c));
}

std::vector<BigRational> LatticeIsometry::apply(const std::vector<BigRational> &v) const
{
    if (v.size() != rank()) {
        throw Error(ErrorKind::InvalidArgument, "vector length does not match rank");
    }
    std::vector<BigRational> out(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
        for (std::size_t j = 0; j < rank(); ++j) {
            out[i] += BigRational(m_[i][j]) * v[j];
        }
    }
    return out;
}

std::string LatticeIsometry::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m_.size(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m_[i].size(); ++j) {
            os << (j ? "," : "") << m_[i][j].get_str();
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

UPoly characteristic_polynomial(const IntMatrix &m)
{
    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
    const std::size_t n = m.size();
    const RatMatrix a = to_rational(m);
    std::vector<BigRational> c(n + 1);
    c[n] = 1;
    RatMatrix mk(n, std::vector<BigRational>(n));
    for (std::size_t k = 1; k <= n; ++k) {
        RatMatrix next = mat_mul(a, mk);
        for (std::size_t i = 0; i < n; ++i) {
            next[i][i] += c[n - k + 1];
        }
        mk = std::move(next);
        const RatMatrix am = mat_mul(a, mk);
        BigRational tr = 0;
        for (std::size_t i = 0; i < n; ++i) {
            tr += am[i][i];
        }
        c[n - k] = -tr / BigRational(static_cast<long>(k));
    }
    return UPoly(Field::rationals(), c);
}

int sturm_count(const UPoly &p, const BigRational &a, const BigRational &b)
{
    const auto chain = sturm_chain(squarefree_part(p));
    return variations_at(chain, a) - variations_at(chain, b);
}

std::size_t rank_over_q(const std::vector<std::vector<BigRational>> &m0)
{
    RatMatrix m = m0;
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) {
            ++piv;
        }
        if (piv == rows) {
            continue;
        }
        std::swap(m[piv], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][col] == 0) {
                continue;
            }
            const BigRational f = m[r][col] / m[rank][col];
            for (std::size_t c = col; c < cols; ++c) {
                m[r][c] -= f * m[rank][c];
            }
        }
        ++rank;
    }
    return rank;
}

const char *to_string(IsometryType::Kind kind)
{
    switch (kind) {
    case IsometryType::Kind::Elliptic:
        return "Elliptic";
    case IsometryType::Kind::Parabolic:
        return "Parabolic";
    case IsometryType::Kind::Loxodromic:
        return "Loxodromic";
    }
    return "?";
}

IsometryType isometry_type(const LatticeIsometry &m, const BigRational &eps)
{
    const UPoly chi = characteristic_polynomial(m.matrix());
    const UPoly sf = squarefree_part(chi);
    const auto chain = sturm_chain(sf);
    IsometryType out;
    if (variations_at(chain, BigRational(1)) - variations_at_infinity(chain) > 0) {
        out.kind = IsometryType::Kind::Loxodromic;
        BigRational bound = 0;
        for (const auto &c : sf.coeffs()) {
            bound = std::max(bound, BigRational(abs(c / sf.leading())));
        }
        RationalInterval iv{BigRational(1), bound + 1};
        while (iv.width() > eps) {
            const BigRational mid = (iv.lo + iv.hi) / 2;
            if (variations_at(chain, mid) - variations_at(chain, iv.hi) > 0) {
                iv.lo = mid;
            } else {
                iv.hi = mid;
            }
        }
        out.lambda_interval = iv;
        // lambda is a unit, so a quadratic minimal polynomial is x^2 - s x + q with q = +-1.
        for (const long q : {1L, -1L}) {
            const BigRational lo_sum = iv.lo + BigRational(q) / iv.hi;
            const BigInt s0 = BigInt(lo_sum.get_num() / lo_sum.get_den()) - 1;
            for (BigInt s = s0; s <= s0 + 3; ++s) {
                const BigInt disc = s * s - 4 * q;
                if (disc <= 0) {
                    continue;
                }
                const UPoly quad(Field::rationals(), {BigRational(q), BigRational(-s), BigRational(1)});
                if (!UPoly::divmod(chi, quad).second.is_zero()) {
                    continue;
                }
                const QuadraticValue root = QuadraticValue::make(make_rational(s, 2), BigRational(1, 2), disc);
                if (!root.is_rational() && root > QuadraticValue(iv.lo) && root <= QuadraticValue(iv.hi)) {
                    out.lambda = root;
                }
            }
        }
        return out;
    }
    const std::size_t n = m.rank();
    RatMatrix d = to_rational(m.matrix());
    for (std::size_t i = 0; i < n; ++i) {
        d[i][i] -= 1;
    }
    const std::size_t r1 = rank_over_q(d);
    const std::size_t r2 = rank_over_q(mat_mul(d, d));
    out.kind = r2 < r1 ? IsometryType::Kind::Parabolic : IsometryType::Kind::Elliptic;
    return out;
}

RealApprox hyperbolic_distance(const MinkowskiLattice &lattice, const std::vector<BigRational> &u,
                               const std::vector<BigRational> &v, unsigned digits)
{
    for (const auto *w : {&u, &v}) {
        if (w->size() != lattice.rank() || lattice.dot(*w, *w) != 1 || (*w)[0] <= 0) {
            throw Error(ErrorKind::NotOnHyperboloid, "vector is not on the upper sheet of the hyperboloid");
        }
    }
    const BigRational c = lattice.dot(u, v);
    const mpfr_prec_t bits = bits_for(digits);
    Mpfr x(bits);
    mpfr_set_q(x.get(), c.get_mpq_t(), MPFR_RNDN);
    mpfr_acosh(x.get(), x.get(), MPFR_RNDN);
    return approx_of(x, digits);
}

// -------------------------------------------------------- Picard-Manin

namespace {

// Values on every ray of the model's fan of the piecewise linear functions
// H (1 on (-1,-1), 0 on the other two rays of P^2) and E_i (the exceptional
// divisor of step i, pulled back along the later steps).
std::map<IntVec2, std::vector<BigRational>> pl_basis(const ToricSurfaceModel &model)
{
    const std::size_t k = model.history().size();
    std::map<IntVec2, std::vector<BigRational>> val;
    val[IntVec2{1, 0}] = std::vector<BigRational>(k + 1);
    val[IntVec2{0, 1}] = std::vector<BigRational>(k + 1);
    val[IntVec2{-1, -1}] = std::vector<BigRational>(k + 1);
    val[IntVec2{-1, -1}][0] = 1;
    for (std::size_t i = 0; i < k; ++i) {
        const BlowUpStep &st = model.history()[i];
        std::vector<BigRational> w(k + 1);
        for (std::size_t j = 0; j <= k; ++j) {
            w[j] = val.at(st.left)[j] + val.at(st.right)[j];
        }
        w[i + 1] += 1;
        val[st.ray] = std::move(w);
    }
    return val;
}

} // namespace

PicardManinAction pm_action_monomial(const IntMatrix2 &a)
{
    MonomialResolution res = resolve_monomial(a);
    const ToricSurfaceModel &src = res.source;
    const ToricSurfaceModel &tgt = res.target;
    const std::size_t k = src.history().size();
    if (tgt.history().size() != k) {
        throw Error(ErrorKind::VerificationFailure, "source and target models have different ranks");
    }
    const auto sval = pl_basis(src);
    const auto tval = pl_basis(tgt);
    const auto &rays = src.fan().rays();
    // Rows: source rays; unknowns: coefficients of H, E_1..E_k and a linear function.
    RatMatrix sys;
    for (const auto &r : rays) {
        std::vector<BigRational> row = sval.at(r);
        row.emplace_back(r[0]);
        row.emplace_back(r[1]);
        sys.push_back(std::move(row));
    }
    // pull[i][j] = coefficient of source basis i in f^* (target basis j).
    IntMatrix pull(k + 1, std::vector<BigInt>(k + 1));
    for (std::size_t j = 0; j <= k; ++j) {
        std::vector<BigRational> rhs;
        for (const auto &r : rays) {
            rhs.push_back(tval.at(a.apply(r))[j]);
        }
        const auto x = solve(sys, rhs);
        for (std::size_t i = 0; i <= k; ++i) {
            if (x[i].get_den() != 1) {
                throw Error(ErrorKind::VerificationFailure, "pullback is not integral");
            }
            pull[i][j] = x[i].get_num();
        }
    }
    const LatticeIsometry pullback(std::move(pull));
    LatticeIsometry push = pullback.inverse();
    if (!(push * pullback == LatticeIsometry::identity(k + 1))) {
        throw Error(ErrorKind::VerificationFailure, "pushforward is not inverse to pullback");
    }
    std::vector<std::string> labels{"e0"};
    for (const auto &st : src.history()) {
        labels.push_back("e" + vec_label(st.ray));
    }
    return {MinkowskiLattice(std::move(labels)), std::move(push), std::move(res)};
}

} // namespace cremona
