#include <cremona/modp.hpp>

#include <random>
#include <regex>
#include <sstream>

#include <cremona/parse.hpp>
#include <cremona/toric.hpp>

namespace cremona {

namespace {

void add_coefficients(std::set<BigRational> &t, const HomPoly3 &p)
{
    for (const auto &[e, c] : p.terms()) {
        if (c != 0) {
            t.insert(c);
        }
    }
}

Triple substitute_triple(const Triple &f, const Triple &g)
{
    return {substitute(f[0], g), substitute(f[1], g), substitute(f[2], g)};
}

std::array<HomPoly3, 3> minors_of(const Triple &g1, const Triple &g2)
{
    return {g1[0] * g2[1] - g1[1] * g2[0], g1[0] * g2[2] - g1[2] * g2[0], g1[1] * g2[2] - g1[2] * g2[1]};
}

Triple identity_triple(Field field)
{
    return {HomPoly3::variable(field, 0), HomPoly3::variable(field, 1), HomPoly3::variable(field, 2)};
}

bool divides(unsigned long p, const BigInt &n)
{
    return mpz_divisible_ui_p(n.get_mpz_t(), p) != 0;
}

// P with f = P (x, y, z), if f has that shape.
std::optional<HomPoly3> scalar_factor(const Triple &f)
{
    const Field field = f[0].field();
    const auto p = divide_exact(f[0], HomPoly3::variable(field, 0));
    if (!p || p->is_zero()) {
        return std::nullopt;
    }
    if (f[1] != *p * HomPoly3::variable(field, 1) || f[2] != *p * HomPoly3::variable(field, 2)) {
        return std::nullopt;
    }
    return p;
}

const std::string name_re = "([A-Za-z_][A-Za-z0-9_']*)";

} // namespace

// --------------------------------------------------------- GeneratorSystem

GeneratorSystem GeneratorSystem::make(const std::vector<Input> &gens,
                                      const std::vector<std::pair<std::string, std::string>> &pairs)
{
    GeneratorSystem sys;
    for (const auto &in : gens) {
        if (sys.index_of(in.name)) {
            throw Error(ErrorKind::InvalidArgument, "generator " + in.name + " defined twice");
        }
        for (const auto &c : in.lift) {
            if (!c.field().is_rational()) {
                throw Error(ErrorKind::InvalidArgument, "generator " + in.name + " is not defined over Q");
            }
        }
        Generator g{in.name, in.lift, CremonaMap::normalize(in.lift), 0};
        if (g.map.is_identity()) {
            throw Error(ErrorKind::InvalidArgument, "generator " + in.name + " is the identity");
        }
        sys.gens_.push_back(std::move(g));
    }
    std::vector<std::optional<std::size_t>> inv(sys.gens_.size());
    for (const auto &[a, b] : pairs) {
        const auto ia = sys.index_of(a);
        const auto ib = sys.index_of(b);
        if (!ia || !ib) {
            throw Error(ErrorKind::InvalidArgument, "inverse pair names unknown generator " + (ia ? b : a));
        }
        for (const auto &[x, y] : {std::pair{*ia, *ib}, std::pair{*ib, *ia}}) {
            if (inv[x] && *inv[x] != y) {
                throw Error(ErrorKind::InvalidArgument, "generator " + sys.gens_[x].name + " paired twice");
            }
            inv[x] = y;
        }
    }
    for (std::size_t i = 0; i < inv.size(); ++i) {
        if (!inv[i]) {
            throw Error(ErrorKind::InvalidArgument, "generator " + sys.gens_[i].name + " has no inverse");
        }
        sys.gens_[i].inverse = *inv[i];
    }
    std::vector<CremonaMap> witnessed;
    for (const auto &g : sys.gens_) {
        const Generator &h = sys.gens_[g.inverse];
        try {
            witnessed.push_back(g.map.with_inverse(h.map));
        } catch (const Error &) {
            throw Error(ErrorKind::InvalidArgument, h.name + " is not the inverse of " + g.name);
        }
    }
    for (std::size_t i = 0; i < witnessed.size(); ++i) {
        sys.gens_[i].map = witnessed[i];
    }
    return sys;
}

GeneratorSystem GeneratorSystem::parse(std::string_view text)
{
    static const std::regex gen_line("^gen\\s+" + name_re + "\\s*=\\s*(\\[.*\\])$");
    static const std::regex inv_line("^inverse\\s+" + name_re + "\\s+" + name_re + "$");
    std::vector<Input> gens;
    std::vector<std::pair<std::string, std::string>> pairs;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim_copy(raw.substr(0, raw.find('#')));
        if (line.empty()) {
            continue;
        }
        std::smatch m;
        if (std::regex_match(line, m, gen_line)) {
            Input g;
            g.name = m[1].str();
            try {
                const auto parts = split_bracket_triple(m[2].str());
                for (std::size_t i = 0; i < 3; ++i) {
                    g.lift[i] = parse_hompoly(parts[i]);
                }
            } catch (const Error &e) {
                throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ", generator " + g.name + ": " + e.what());
            }
            gens.push_back(std::move(g));
        } else if (std::regex_match(line, m, inv_line)) {
            pairs.emplace_back(m[1].str(), m[2].str());
        } else {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": cannot read \"" + line + "\"");
        }
    }
    try {
        return make(gens, pairs);
    } catch (const Error &e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

std::optional<std::size_t> GeneratorSystem::index_of(const std::string &name) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

Word GeneratorSystem::parse_word(std::string_view text) const
{
    std::string s(text);
    for (auto &c : s) {
        if (c == '*') {
            c = ' ';
        }
    }
    std::istringstream in(s);
    Word w;
    std::string tok;
    while (in >> tok) {
        if (tok == "1") {
            continue;
        }
        const auto i = index_of(tok);
        if (!i) {
            throw Error(ErrorKind::ParseError, "unknown generator " + tok + " in word");
        }
        w.push_back(*i);
    }
    return w;
}

std::string GeneratorSystem::word_to_string(const Word &w) const
{
    if (w.empty()) {
        return "1";
    }
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        s += (i ? " " : "") + gens_.at(w[i]).name;
    }
    return s;
}

CremonaMap evaluate_word(const GeneratorSystem &sys, const Word &w)
{
    CremonaMap cur = CremonaMap::identity();
    for (std::size_t i = w.size(); i-- > 0;) {
        cur = compose(sys.generators().at(w[i]).map, cur);
    }
    return cur;
}

// ------------------------------------------------------------------ bad set

BadSet collect_bad_set(const GeneratorSystem &sys)
{
    BadSet bad;
    const auto &gens = sys.generators();
    for (const auto &g : gens) {
        for (const auto &c : g.lift) {
            add_coefficients(bad.t, c);
        }
    }
    for (const auto &g : gens) {
        const Triple f = substitute_triple(g.lift, gens[g.inverse].lift);
        const auto p = scalar_factor(f);
        if (!p) {
            throw Error(ErrorKind::VerificationFailure, "lift of " + g.name + " composed with its inverse is not P (x, y, z)");
        }
        for (const auto &c : f) {
            add_coefficients(bad.t, c);
        }
        bad.p.push_back(*p);
    }
    if (!gens.empty()) {
        bool found = false;
        for (std::size_t i = 0; i < gens.size() && !found; ++i) {
            for (std::size_t j = i + 1; j < gens.size() && !found; ++j) {
                if (!(gens[i].map == gens[j].map)) {
                    bad.first = i;
                    bad.second = j;
                    found = true;
                }
            }
        }
        const Triple g2 = bad.second ? gens[*bad.second].lift : identity_triple(Field::rationals());
        bad.minors = minors_of(gens[bad.first].lift, g2);
        bool witnessed = false;
        for (std::size_t k = 0; k < 3; ++k) {
            add_coefficients(bad.t, bad.minors[k]);
            if (!witnessed && !bad.minors[k].is_zero()) {
                bad.witness = k;
                witnessed = true;
            }
        }
        if (!witnessed) {
            throw Error(ErrorKind::VerificationFailure, "distinguishing pair has vanishing minors");
        }
    }
    for (const auto &q : bad.t) {
        bad.r *= q;
    }
    return bad;
}

bool is_admissible(const BadSet &bad, unsigned long p)
{
    if (!is_prime(p)) {
        return false;
    }
    for (const auto &q : bad.t) {
        if (divides(p, q.get_num()) || divides(p, q.get_den())) {
            return false;
        }
    }
    return true;
}

unsigned long choose_prime(const BadSet &bad, const PrimeStrategy &strategy)
{
    if (strategy.kind == PrimeStrategy::Kind::Seeded) {
        std::mt19937_64 rng(strategy.seed);
        std::uniform_int_distribution<unsigned long> pick(2, (1UL << 20) - 1);
        for (int i = 0; i < 1000000; ++i) {
            const unsigned long p = pick(rng);
            if (is_admissible(bad, p)) {
                return p;
            }
        }
    }
    for (unsigned long p = 2;; ++p) {
        if (is_admissible(bad, p)) {
            return p;
        }
    }
}

// -------------------------------------------------------------- reduction

ReductionHom reduce_system(const GeneratorSystem &sys, const BadSet &bad, unsigned long p)
{
    if (!is_prime(p)) {
        throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
    }
    const auto &gens = sys.generators();
    if (bad.p.size() != gens.size()) {
        throw Error(ErrorKind::InvalidArgument, "bad set does not belong to this system");
    }
    const Field fp = Field::prime(p);
    ReductionHom hom;
    hom.p = p;
    for (const auto &g : gens) {
        Triple r;
        for (std::size_t k = 0; k < 3; ++k) {
            r[k] = g.lift[k].reduce_mod(p);
        }
        if (r[0].is_zero() && r[1].is_zero() && r[2].is_zero()) {
            throw Error(ErrorKind::BadPrime, "generator " + g.name + " vanishes mod " + std::to_string(p));
        }
        CremonaMap m = CremonaMap::normalize(r);
        if (m.degree() < g.map.degree()) {
            hom.drops.push_back({g.name, g.map.degree(), m.degree()});
        }
        hom.lifts.push_back(std::move(r));
        hom.maps.push_back(std::move(m));
        hom.inverse.push_back(g.inverse);
        hom.names.push_back(g.name);
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::size_t j = hom.inverse[i];
        const HomPoly3 pi = bad.p[i].reduce_mod(p);
        const Triple f = substitute_triple(hom.lifts[i], hom.lifts[j]);
        const Triple expect{pi * HomPoly3::variable(fp, 0), pi * HomPoly3::variable(fp, 1), pi * HomPoly3::variable(fp, 2)};
        if (pi.is_zero() || f != expect) {
            throw Error(ErrorKind::BadPrime, "inverse identity for " + gens[i].name + " fails mod " + std::to_string(p));
        }
        if (!compose(hom.maps[i], hom.maps[j]).is_identity()) {
            throw Error(ErrorKind::BadPrime, "reduced " + gens[i].name + " is not inverse to reduced " + gens[j].name);
        }
    }
    if (!gens.empty()) {
        const Triple g2 = bad.second ? hom.lifts[*bad.second] : identity_triple(fp);
        const HomPoly3 w = minors_of(hom.lifts[bad.first], g2)[bad.witness];
        if (w.is_zero() || w != bad.minors[bad.witness].reduce_mod(p)) {
            throw Error(ErrorKind::BadPrime, "distinguishing minor vanishes mod " + std::to_string(p));
        }
        hom.witness = w;
    }
    return hom;
}

CremonaMap evaluate_word(const ReductionHom &hom, const Word &w)
{
    CremonaMap cur = CremonaMap::identity(Field::prime(hom.p));
    for (std::size_t i = w.size(); i-- > 0;) {
        cur = compose(hom.maps.at(w[i]), cur);
    }
    return cur;
}

WordCheck check_word(const GeneratorSystem &sys, const ReductionHom &hom, const Word &w)
{
    const CremonaMap q = evaluate_word(sys, w);
    const CremonaMap r = evaluate_word(hom, w);
    return {q.reduce_mod(hom.p) == r, q.degree(), r.degree()};
}

std::vector<Word> random_words(std::size_t n_generators, std::size_t count, std::size_t max_length,
                               std::uint64_t seed)
{
    std::vector<Word> out;
    if (n_generators == 0 || max_length == 0) {
        return std::vector<Word>(count);
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> len(1, max_length);
    std::uniform_int_distribution<std::size_t> letter(0, n_generators - 1);
    for (std::size_t i = 0; i < count; ++i) {
        Word w(len(rng));
        for (auto &x : w) {
            x = letter(rng);
        }
        out.push_back(std::move(w));
    }
    return out;
}

// ----------------------------------------------------------- finite image

ImageReport finite_image_experiment(const ReductionHom &hom, int k, std::size_t max_length)
{
    ImageReport rep;
    rep.p = hom.p;
    rep.degree_bound = k;
    const CremonaMap id = CremonaMap::identity(Field::prime(hom.p));
    std::set<std::string> seen{id.to_string()};
    std::vector<CremonaMap> frontier{id};
    for (std::size_t len = 1; len <= max_length; ++len) {
        std::vector<CremonaMap> next;
        for (const auto &x : frontier) {
            for (const auto &g : hom.maps) {
                CremonaMap y = compose(g, x);
                if (y.degree() <= k && seen.insert(y.to_string()).second) {
                    next.push_back(std::move(y));
                }
            }
        }
        rep.word_length = len;
        rep.new_per_length.push_back(next.size());
        if (next.empty()) {
            rep.closure = true;
            break;
        }
        frontier = std::move(next);
    }
    rep.image_size = seen.size();
    rep.elements.assign(seen.begin(), seen.end());
    if (!rep.closure) {
        throw ImageBudgetExceeded("no closure within words of length " + std::to_string(max_length), rep);
    }
    return rep;
}

nlohmann::json to_json(const ImageReport &report)
{
    nlohmann::json j{
        {"p", report.p},
        {"degree_bound", report.degree_bound},
        {"image_size", report.image_size},
        {"closure", report.closure},
        {"word_length", report.word_length},
        {"new_per_length", report.new_per_length},
    };
    if (report.elements.size() <= 100) {
        j["elements"] = report.elements;
    }
    return j;
}

nlohmann::json modp_report_json(const GeneratorSystem &sys, const BadSet &bad, const ReductionHom &hom)
{
    nlohmann::json gens = nlohmann::json::array();
    for (std::size_t i = 0; i < sys.size(); ++i) {
        const Generator &g = sys.generators()[i];
        gens.push_back({
            {"name", g.name},
            {"map", g.map.to_string()},
            {"inverse", sys.generators()[g.inverse].name},
            {"degree", g.map.degree()},
            {"reduced", hom.maps[i].to_string()},
            {"reduced_degree", hom.maps[i].degree()},
        });
    }
    nlohmann::json drops = nlohmann::json::array();
    for (const auto &d : hom.drops) {
        drops.push_back({{"generator", d.generator}, {"from", d.from}, {"to", d.to}});
    }
    nlohmann::json t = nlohmann::json::array();
    for (const auto &q : bad.t) {
        t.push_back(q.get_str());
    }
    nlohmann::json j{
        {"p", hom.p},
        {"bad_set_size", bad.t.size()},
        {"bad_set", t},
        {"generators", gens},
        {"degree_drops", drops},
    };
    if (hom.witness) {
        j["witness"] = {
            {"pair", {sys.generators()[bad.first].name, bad.second ? sys.generators()[*bad.second].name : "identity"}},
            {"minor", hom.witness->to_string()},
        };
    }
    return j;
}

} // namespace cremona
