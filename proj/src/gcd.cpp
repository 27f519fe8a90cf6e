// Multivariate gcd of homogeneous polynomials.
//
// Monomial content is split off first. The remaining parts are not divisible
// by z, so they can be dehomogenized at z = 1 without losing information; the
// bivariate gcd is computed as content gcd times the primitive part of the
// last subresultant in the main variable y over K[x].

#include <cremona/hompoly.hpp>
#include <cremona/upoly.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace cremona {

namespace {

// ---- small-modulus helper used by the coprimality certificate ----

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>; // low to high

u64 mulmod(u64 a, u64 b, u64 q)
{
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % q);
}

u64 powmod(u64 a, u64 e, u64 q)
{
    u64 r = 1 % q;
    while (e != 0) {
        if (e & 1U) {
            r = mulmod(r, a, q);
        }
        a = mulmod(a, a, q);
        e >>= 1U;
    }
    return r;
}

void trim(ModPoly &p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

ModPoly mod_mul(const ModPoly &a, const ModPoly &b, u64 q)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + mulmod(a[i], b[j], q)) % q;
        }
    }
    trim(r);
    return r;
}

ModPoly mod_rem(ModPoly a, const ModPoly &b, u64 q)
{
    const u64 inv = powmod(b.back(), q - 2, q);
    while (a.size() >= b.size()) {
        const u64 f = mulmod(a.back(), inv, q);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
            a[shift + j] = (a[shift + j] + q - mulmod(f, b[j], q)) % q;
        }
        trim(a);
    }
    return a;
}

// Degree of gcd over F_q; -1 if both zero.
int mod_gcd_degree(ModPoly a, ModPoly b, u64 q)
{
    while (!b.empty()) {
        ModPoly r = mod_rem(a, b, q);
        a = std::move(b);
        b = std::move(r);
    }
    return static_cast<int>(a.size()) - 1;
}

u64 to_mod(const BigRational &c, u64 q, bool &ok)
{
    const BigInt qq(static_cast<unsigned long>(q));
    const BigInt den = mod_floor(c.get_den(), qq);
    if (den == 0) {
        ok = false;
        return 0;
    }
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), qq.get_mpz_t());
    return mod_floor(c.get_num() * inv, qq).get_ui();
}

// Restriction s -> P(a + s b) over F_q.
ModPoly restrict_to_line(const HomPoly3 &p, const std::array<u64, 3> &a, const std::array<u64, 3> &b, u64 q, bool &ok)
{
    std::array<std::vector<ModPoly>, 3> powers;
    for (std::size_t v = 0; v < 3; ++v) {
        ModPoly lin{a[v], b[v]};
        trim(lin);
        powers[v].push_back(ModPoly{1});
        for (unsigned i = 1; i <= p.max_degree_in(static_cast<int>(v)); ++i) {
            powers[v].push_back(mod_mul(powers[v].back(), lin, q));
        }
    }
    ModPoly acc(static_cast<std::size_t>(std::max(p.degree(), 0)) + 1, 0);
    for (const auto &[e, c] : p.terms()) {
        const u64 cm = to_mod(c, q, ok);
        if (!ok) {
            return {};
        }
        const ModPoly t = mod_mul(mod_mul(powers[0][e[0]], powers[1][e[1]], q), powers[2][e[2]], q);
        for (std::size_t i = 0; i < t.size(); ++i) {
            acc[i] = (acc[i] + mulmod(cm, t[i], q)) % q;
        }
    }
    trim(acc);
    return acc;
}

u64 eval_mod(const HomPoly3 &p, const std::array<u64, 3> &pt, u64 q, bool &ok)
{
    u64 acc = 0;
    for (const auto &[e, c] : p.terms()) {
        const u64 cm = to_mod(c, q, ok);
        if (!ok) {
            return 0;
        }
        u64 t = cm;
        for (std::size_t v = 0; v < 3; ++v) {
            t = mulmod(t, powmod(pt[v], e[v], q), q);
        }
        acc = (acc + t) % q;
    }
    return acc;
}

// Sound certificate that gcd(a, b) is constant: if a(pt) != 0 then every
// factor g of a satisfies g(pt) != 0, so g restricted to the line through
// base in direction pt keeps its full degree and divides both restrictions.
bool certainly_coprime(const HomPoly3 &a, const HomPoly3 &b)
{
    const Field &f = a.field();
    HomPoly3 an = a.normalized();
    HomPoly3 bn = b.normalized();
    u64 q = f.is_rational() ? 2147483629ULL : f.characteristic();
    std::mt19937_64 rng(0x5eed1234ULL);
    for (int attempt = 0; attempt < 4; ++attempt) {
        std::uniform_int_distribution<u64> dist(0, q - 1);
        std::array<u64, 3> dir{dist(rng), dist(rng), dist(rng)};
        std::array<u64, 3> base{dist(rng), dist(rng), dist(rng)};
        bool ok = true;
        if (eval_mod(an, dir, q, ok) == 0 || !ok) {
            continue;
        }
        const ModPoly ra = restrict_to_line(an, base, dir, q, ok);
        const ModPoly rb = restrict_to_line(bn, base, dir, q, ok);
        if (!ok) {
            continue;
        }
        if (!rb.empty() && mod_gcd_degree(ra, rb, q) == 0) {
            return true;
        }
    }
    return false;
}

// ---- bivariate arithmetic in K[x][y] ----

using BPoly = std::vector<UPoly>; // coefficients of y^0, y^1, ... in K[x]

void trim(BPoly &p)
{
    while (!p.empty() && p.back().is_zero()) {
        p.pop_back();
    }
}

int ydeg(const BPoly &p)
{
    return static_cast<int>(p.size()) - 1;
}

BPoly dehomogenize(const HomPoly3 &p)
{
    BPoly r(p.max_degree_in(1) + 1, UPoly(p.field()));
    for (const auto &[e, c] : p.terms()) {
        r[e[1]] = r[e[1]] + UPoly::monomial(p.field(), c, e[0]);
    }
    trim(r);
    return r;
}

HomPoly3 homogenize(const Field &f, const BPoly &p)
{
    unsigned deg = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (!p[j].is_zero()) {
            deg = std::max(deg, static_cast<unsigned>(j) + static_cast<unsigned>(p[j].degree()));
        }
    }
    HomPoly3::TermMap terms;
    for (std::size_t j = 0; j < p.size(); ++j) {
        for (std::size_t i = 0; i < p[j].coeffs().size(); ++i) {
            const BigRational &c = p[j].coeffs()[i];
            if (c != 0) {
                terms.emplace(Exponent{static_cast<unsigned>(i), static_cast<unsigned>(j),
                                       deg - static_cast<unsigned>(i) - static_cast<unsigned>(j)},
                              c);
            }
        }
    }
    return HomPoly3::from_terms(f, terms);
}

UPoly content(const BPoly &p)
{
    UPoly g(p.front().field());
    for (const auto &c : p) {
        g = UPoly::gcd(g, c);
        if (g.degree() == 0) {
            break;
        }
    }
    return g;
}

BPoly divide_coeffs(const BPoly &p, const UPoly &d)
{
    BPoly r;
    r.reserve(p.size());
    for (const auto &c : p) {
        r.push_back(UPoly::exact_div(c, d));
    }
    return r;
}

BPoly primitive_part(const BPoly &p)
{
    return divide_coeffs(p, content(p));
}

BPoly pseudo_remainder(const BPoly &a, const BPoly &b)
{
    const UPoly lcb = b.back();
    int count = ydeg(a) - ydeg(b) + 1;
    BPoly r = a;
    while (!r.empty() && ydeg(r) >= ydeg(b)) {
        const auto shift = static_cast<std::size_t>(ydeg(r) - ydeg(b));
        const UPoly lr = r.back();
        for (auto &c : r) {
            c = c * lcb;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[shift + j] = r[shift + j] - lr * b[j];
        }
        trim(r);
        --count;
    }
    const UPoly factor = pow(lcb, static_cast<unsigned>(std::max(count, 0)));
    for (auto &c : r) {
        c = c * factor;
    }
    return r;
}

BPoly bivariate_gcd(const BPoly &a, const BPoly &b)
{
    const Field f = a.front().field();
    const UPoly ca = content(a);
    const UPoly cb = content(b);
    const UPoly cg = UPoly::gcd(ca, cb);
    BPoly s0 = divide_coeffs(a, ca);
    BPoly s1 = divide_coeffs(b, cb);
    if (ydeg(s0) == 0 || ydeg(s1) == 0) {
        return BPoly{cg};
    }
    if (ydeg(s0) < ydeg(s1)) {
        std::swap(s0, s1);
    }
    UPoly g = UPoly::constant(f, BigRational(1));
    UPoly h = UPoly::constant(f, BigRational(1));
    while (true) {
        const int delta = ydeg(s0) - ydeg(s1);
        BPoly r = pseudo_remainder(s0, s1);
        if (r.empty()) {
            break;
        }
        if (ydeg(r) == 0) {
            return BPoly{cg};
        }
        s0 = std::move(s1);
        s1 = divide_coeffs(r, g * pow(h, static_cast<unsigned>(delta)));
        g = s0.back();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = UPoly::exact_div(pow(g, static_cast<unsigned>(delta)), pow(h, static_cast<unsigned>(delta - 1)));
        }
    }
    BPoly result = primitive_part(s1);
    for (auto &c : result) {
        c = c * cg;
    }
    return result;
}

} // namespace

HomPoly3 gcd(const HomPoly3 &a, const HomPoly3 &b)
{
    if (!(a.field() == b.field())) {
        throw Error(ErrorKind::InvalidArgument, "gcd over mismatched fields");
    }
    if (a.is_zero() && b.is_zero()) {
        throw Error(ErrorKind::InvalidArgument, "gcd(0, 0) is undefined");
    }
    if (a.is_zero()) {
        return b.normalized();
    }
    if (b.is_zero()) {
        return a.normalized();
    }
    const Field &f = a.field();
    Exponent ma{a.min_degree_in(0), a.min_degree_in(1), a.min_degree_in(2)};
    Exponent mb{b.min_degree_in(0), b.min_degree_in(1), b.min_degree_in(2)};
    const Exponent mg{std::min(ma[0], mb[0]), std::min(ma[1], mb[1]), std::min(ma[2], mb[2])};
    const HomPoly3 mono = HomPoly3::monomial(f, BigRational(1), mg);
    const HomPoly3 a1 = a.unshifted(ma);
    const HomPoly3 b1 = b.unshifted(mb);
    if (a1.is_constant() || b1.is_constant()) {
        return mono;
    }
    if (a1 == b1 || a1.normalized() == b1.normalized()) {
        return (a1 * mono).normalized();
    }
    if (certainly_coprime(a1, b1) || certainly_coprime(b1, a1)) {
        return mono;
    }
    // Work in the variable with the smaller degree as the main variable.
    const bool swap_xy = a1.max_degree_in(0) + b1.max_degree_in(0) < a1.max_degree_in(1) + b1.max_degree_in(1);
    const std::array<int, 3> perm{1, 0, 2};
    const HomPoly3 pa = swap_xy ? a1.permuted(perm) : a1;
    const HomPoly3 pb = swap_xy ? b1.permuted(perm) : b1;
    HomPoly3 g = homogenize(f, bivariate_gcd(dehomogenize(pa), dehomogenize(pb)));
    if (swap_xy) {
        g = g.permuted(perm);
    }
    return (g * mono).normalized();
}

} // namespace cremona
