#include <cremona/upoly.hpp>

#include <sstream>

namespace cremona {

UPoly::UPoly(Field field, std::vector<BigRational> coeffs) : field_(field), c_(std::move(coeffs))
{
    for (auto &c : c_) {
        c = field_.reduce(c);
    }
    trim();
}

UPoly UPoly::constant(Field field, const BigRational &c)
{
    return UPoly(field, {c});
}

UPoly UPoly::variable(Field field)
{
    return UPoly(field, {BigRational(0), BigRational(1)});
}

UPoly UPoly::monomial(Field field, const BigRational &c, std::size_t deg)
{
    std::vector<BigRational> v(deg + 1);
    v[deg] = c;
    return UPoly(field, std::move(v));
}

void UPoly::trim()
{
    while (!c_.empty() && c_.back() == 0) {
        c_.pop_back();
    }
}

BigRational UPoly::coeff(std::size_t i) const
{
    return i < c_.size() ? c_[i] : BigRational(0);
}

const BigRational &UPoly::leading() const
{
    if (c_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "leading coefficient of zero polynomial");
    }
    return c_.back();
}

UPoly UPoly::operator+(const UPoly &o) const
{
    UPoly r(field_);
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        r.c_[i] = field_.add(coeff(i), o.coeff(i));
    }
    r.trim();
    return r;
}

UPoly UPoly::operator-(const UPoly &o) const
{
    UPoly r(field_);
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        r.c_[i] = field_.sub(coeff(i), o.coeff(i));
    }
    r.trim();
    return r;
}

UPoly UPoly::operator-() const
{
    UPoly r(field_);
    r.c_.reserve(c_.size());
    for (const auto &c : c_) {
        r.c_.push_back(field_.neg(c));
    }
    return r;
}

UPoly UPoly::operator*(const UPoly &o) const
{
    UPoly r(field_);
    if (c_.empty() || o.c_.empty()) {
        return r;
    }
    r.c_.assign(c_.size() + o.c_.size() - 1, BigRational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            r.c_[i + j] = field_.add(r.c_[i + j], field_.mul(c_[i], o.c_[j]));
        }
    }
    r.trim();
    return r;
}

UPoly UPoly::scaled(const BigRational &s) const
{
    UPoly r(field_);
    const BigRational t = field_.reduce(s);
    if (t == 0) {
        return r;
    }
    r.c_.reserve(c_.size());
    for (const auto &c : c_) {
        r.c_.push_back(field_.mul(c, t));
    }
    return r;
}

UPoly UPoly::monic() const
{
    if (c_.empty()) {
        return *this;
    }
    return scaled(field_.inv(c_.back()));
}

UPoly UPoly::derivative() const
{
    UPoly r(field_);
    for (std::size_t i = 1; i < c_.size(); ++i) {
        r.c_.push_back(field_.mul(c_[i], field_.reduce(BigRational(static_cast<unsigned long>(i)))));
    }
    r.trim();
    return r;
}

BigRational UPoly::eval(const BigRational &t) const
{
    BigRational acc(0);
    const BigRational tt = field_.reduce(t);
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc = field_.add(field_.mul(acc, tt), c_[i]);
    }
    return acc;
}

int UPoly::sign_at(const BigRational &t) const
{
    return sgn(eval(t));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly &a, const UPoly &b)
{
    if (b.is_zero()) {
        throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
    }
    const Field &f = a.field_;
    UPoly q(f);
    UPoly r = a;
    if (r.degree() < b.degree()) {
        return {q, r};
    }
    q.c_.assign(static_cast<std::size_t>(r.degree() - b.degree() + 1), BigRational(0));
    const BigRational lc_inv = f.inv(b.leading());
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const auto shift = static_cast<std::size_t>(r.degree() - b.degree());
        const BigRational factor = f.mul(r.leading(), lc_inv);
        q.c_[shift] = factor;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            r.c_[shift + j] = f.sub(r.c_[shift + j], f.mul(factor, b.c_[j]));
        }
        r.trim();
    }
    q.trim();
    return {q, r};
}

UPoly UPoly::exact_div(const UPoly &a, const UPoly &b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) {
        throw Error(ErrorKind::InvalidArgument, "inexact univariate division");
    }
    return q;
}

UPoly UPoly::gcd(const UPoly &a, const UPoly &b)
{
    UPoly x = a;
    UPoly y = b;
    while (!y.is_zero()) {
        UPoly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

std::string UPoly::to_string(char var) const
{
    if (c_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) {
            continue;
        }
        BigRational c = c_[i];
        if (!first) {
            if (field_.is_rational() && c < 0) {
                os << " - ";
                c = -c;
            } else {
                os << " + ";
            }
        } else if (field_.is_rational() && c < 0) {
            os << "-";
            c = -c;
        }
        first = false;
        if (i == 0) {
            os << c.get_str();
        } else {
            if (c != 1) {
                os << c.get_str() << "*";
            }
            os << var;
            if (i > 1) {
                os << "^" << i;
            }
        }
    }
    return os.str();
}

UPoly pow(const UPoly &p, unsigned e)
{
    UPoly r = UPoly::constant(p.field(), BigRational(1));
    UPoly b = p;
    while (e != 0) {
        if (e & 1U) {
            r = r * b;
        }
        e >>= 1U;
        if (e != 0) {
            b = b * b;
        }
    }
    return r;
}

} // namespace cremona
