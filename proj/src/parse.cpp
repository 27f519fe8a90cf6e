#include <cremona/parse.hpp>

#include <cremona/detail/expr_parser.hpp>

#include <cctype>
#include <map>
#include <optional>

namespace cremona {

namespace {

using Sparse = std::map<Exponent, BigRational>;

// Builds general (not necessarily homogeneous) polynomials in up to three variables.
struct SparseBuilder {
    using Value = Sparse;
    std::string allowed;

    static void add_into(Sparse &acc, const Exponent &e, const BigRational &c)
    {
        auto [it, inserted] = acc.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                acc.erase(it);
            }
        }
    }

    Value number(const BigInt &n) const
    {
        Sparse s;
        if (n != 0) {
            s.emplace(Exponent{0, 0, 0}, BigRational(n));
        }
        return s;
    }

    std::optional<Value> variable(char c) const
    {
        const auto idx = allowed.find(c);
        if (idx == std::string::npos) {
            return std::nullopt;
        }
        const int v = c == 'x' ? 0 : c == 'y' ? 1 : 2;
        Exponent e{0, 0, 0};
        e[static_cast<std::size_t>(v)] = 1;
        return Sparse{{e, BigRational(1)}};
    }

    Value neg(const Value &a) const
    {
        Sparse r = a;
        for (auto &[e, c] : r) {
            c = -c;
        }
        return r;
    }

    Value add(const Value &a, const Value &b) const
    {
        Sparse r = a;
        for (const auto &[e, c] : b) {
            add_into(r, e, c);
        }
        return r;
    }

    Value sub(const Value &a, const Value &b) const { return add(a, neg(b)); }

    Value mul(const Value &a, const Value &b) const
    {
        Sparse r;
        for (const auto &[ea, ca] : a) {
            for (const auto &[eb, cb] : b) {
                add_into(r, Exponent{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
            }
        }
        return r;
    }

    Value div(const Value &a, const Value &b) const
    {
        if (b.size() != 1 || b.begin()->first != Exponent{0, 0, 0}) {
            throw Error(ErrorKind::ParseError, "division is only allowed by nonzero constants");
        }
        const BigRational inv = 1 / b.begin()->second;
        Sparse r = a;
        for (auto &[e, c] : r) {
            c *= inv;
        }
        return r;
    }

    Value pow(const Value &a, unsigned e) const
    {
        Sparse r = number(BigInt(1));
        for (unsigned i = 0; i < e; ++i) {
            r = mul(r, a);
        }
        return r;
    }
};

Sparse parse_sparse(std::string_view text, std::string allowed)
{
    SparseBuilder b{std::move(allowed)};
    detail::ExprParser<SparseBuilder> parser(text, b);
    return parser.parse();
}

} // namespace

std::string trim_copy(std::string_view text)
{
    std::size_t a = 0;
    std::size_t b = text.size();
    while (a < b && std::isspace(static_cast<unsigned char>(text[a])) != 0) {
        ++a;
    }
    while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1])) != 0) {
        --b;
    }
    return std::string(text.substr(a, b - a));
}

HomPoly3 parse_hompoly(std::string_view text, Field field)
{
    const Sparse s = parse_sparse(text, "xyz");
    HomPoly3::TermMap terms(s.begin(), s.end());
    try {
        return HomPoly3::from_terms(field, terms);
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::DegreeMismatch) {
            throw Error(ErrorKind::ParseError, "polynomial \"" + std::string(text) + "\" is not homogeneous");
        }
        throw;
    }
}

UPoly parse_univariate(std::string_view text, char var, Field field)
{
    const Sparse s = parse_sparse(text, std::string(1, var));
    const std::size_t idx = var == 'x' ? 0 : var == 'y' ? 1 : 2;
    std::vector<BigRational> coeffs;
    for (const auto &[e, c] : s) {
        const unsigned d = e[idx];
        if (coeffs.size() <= d) {
            coeffs.resize(d + 1);
        }
        coeffs[d] += c;
    }
    return UPoly(field, std::move(coeffs));
}

std::vector<std::string> split_top_level(std::string_view text, char sep)
{
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '(' || c == '[') {
            ++depth;
        } else if (c == ')' || c == ']') {
            --depth;
        } else if (c == sep && depth == 0) {
            parts.push_back(trim_copy(text.substr(start, i - start)));
            start = i + 1;
        }
    }
    parts.push_back(trim_copy(text.substr(start)));
    return parts;
}

std::array<std::string, 3> split_bracket_triple(std::string_view text)
{
    const std::string t = trim_copy(text);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
        throw Error(ErrorKind::ParseError, "expected a bracketed triple \"[f0 : f1 : f2]\", got \"" + t + "\"");
    }
    const auto parts = split_top_level(std::string_view(t).substr(1, t.size() - 2), ':');
    if (parts.size() != 3) {
        throw Error(ErrorKind::ParseError, "expected three ':'-separated components in \"" + t + "\"");
    }
    return {parts[0], parts[1], parts[2]};
}

} // namespace cremona
