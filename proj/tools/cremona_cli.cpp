// cremona: command-line front end.
//
//   cremona [global flags] classify MAP [-n N]
//   cremona [global flags] monomial-conj nonneg MATRIX
//   cremona [global flags] monomial-conj classes T
//   cremona [global flags] monomial-conj torus-solve MATRIX TORUS
//   cremona [global flags] modp FILE [--prime P] [--seeded] [--samples N] [--experiment K]
//   cremona [global flags] fan-trace MATRIX [--blowups B] [--steps S]
//
// Exit codes: 0 success, 2 parse or validation error, 3 budget exceeded,
// 4 a certificate failed its re-verification.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <cremona/dynamics.hpp>
#include <cremona/modp.hpp>
#include <cremona/monomial.hpp>
#include <cremona/parse.hpp>
#include <cremona/toric.hpp>

using namespace cremona;
using nlohmann::json;

namespace {

struct RunConfig {
    std::uint64_t seed = 0;
    unsigned long budget_degree = 256;
    std::size_t budget_words = 6;
    std::string format = "json";
    unsigned precision = 20;
};

enum Exit { Ok = 0, Validation = 2, Budget = 3, Verification = 4 };

// Raised when an in-process re-check of a certificate fails.
void verify(bool ok, const std::string &what)
{
    if (!ok) {
        throw Error(ErrorKind::VerificationFailure, what);
    }
}

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::BudgetExceeded:
        return Budget;
    case ErrorKind::VerificationFailure:
        return Verification;
    default:
        return Validation;
    }
}

void flatten(const json &j, const std::string &prefix, std::ostream &out)
{
    if (j.is_object()) {
        for (const auto &[k, v] : j.items()) {
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
        }
        return;
    }
    if (j.is_array()) {
        bool scalar = true;
        for (const auto &v : j) {
            scalar = scalar && !v.is_structured();
        }
        if (scalar) {
            out << prefix << ":";
            for (const auto &v : j) {
                out << " " << (v.is_string() ? v.get<std::string>() : v.dump());
            }
            out << "\n";
            return;
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
        }
        return;
    }
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

void emit(const RunConfig &cfg, json report)
{
    report["schema"] = 1;
    if (cfg.format == "text") {
        flatten(report, "", std::cout);
    } else {
        std::cout << report.dump(2) << "\n";
    }
}

void emit_csv(const DegreeSequence &seq)
{
    std::cout << "n,degree\n";
    for (std::size_t i = 0; i < seq.values.size(); ++i) {
        std::cout << i + 1 << "," << seq.values[i].get_str() << "\n";
    }
}

json matrix_json(const IntMatrix2 &m)
{
    return json::array({json::array({json_int(m.a), json_int(m.b)}), json::array({json_int(m.c), json_int(m.d)})});
}

json approx_json(const RealApprox &r) { return json{{"decimal", r.decimal}, {"value", r.value}}; }

std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::ParseError, "cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_matrix_text(const std::string &s)
{
    const std::string t = trim_copy(s);
    return t.rfind("[[", 0) == 0 || t.rfind("((", 0) == 0;
}

int cmd_classify(const RunConfig &cfg, const std::string &text, std::size_t n)
{
    DegreeSequence seq;
    std::optional<IntMatrix2> mono;
    if (is_matrix_text(text)) {
        const IntMatrix2 a = IntMatrix2::parse(text);
        if (!a.is_unimodular()) {
            throw Error(ErrorKind::NotSL2, "matrix " + a.to_string() + " is not in GL2(Z)");
        }
        mono = a;
        seq = degree_sequence(a, n);
        // The first term is re-derived from the polynomial map.
        verify(BigInt(to_cremona(a).degree()) == seq.values.front(), "combinatorial degree disagrees with f_A");
    } else {
        const CremonaMap f = CremonaMap::parse(text);
        try {
            seq = degree_sequence(f, n, cfg.budget_degree);
        } catch (const DegreeBudgetExceeded &e) {
            if (cfg.format == "csv") {
                emit_csv(e.partial());
            } else {
                json j{{"command", "classify"}, {"error", e.what()}, {"degrees", json::array()}};
                for (const auto &v : e.partial().values) {
                    j["degrees"].push_back(json_int(v));
                }
                emit(cfg, j);
            }
            return Budget;
        }
    }
    if (cfg.format == "csv") {
        emit_csv(seq);
        return Ok;
    }
    const GrowthReport g = classify_growth(seq);
    json j = growth_json(seq, g);
    j["command"] = "classify";
    j["input"] = text;
    if (mono) {
        const QuadraticValue lambda = dynamical_degree_monomial(*mono);
        json l{{"exact", lambda.to_string()}, {"approx", approx_json(decimal_approx(lambda, cfg.precision))}};
        const GapVerdict gap = gap_check(lambda);
        l["gap_property"] = gap.satisfied;
        if (gap.pisot) {
            l["pisot"] = *gap.pisot;
        }
        if (lambda > QuadraticValue(BigRational(1))) {
            l["translation_length"] = approx_json(translation_length(lambda, cfg.precision));
        }
        j["lambda"] = l;
    }
    emit(cfg, j);
    return Ok;
}

int cmd_nonneg(const RunConfig &cfg, const std::string &text)
{
    const IntMatrix2 a = IntMatrix2::parse(text);
    const NonnegativeConjugate c = conjugate_to_nonnegative(a);
    verify(c.b.nonnegative(), "conjugate has a negative entry");
    verify(c.p.is_unimodular(), "conjugator is not in GL2(Z)");
    verify(c.p.inverse() * a.scaled(c.sign) * c.p == c.b, "B != P^-1 (sign A) P");
    emit(cfg, json{{"command", "monomial-conj nonneg"},
                   {"a", matrix_json(a)},
                   {"b", matrix_json(c.b)},
                   {"p", matrix_json(c.p)},
                   {"sign", c.sign},
                   {"word", c.b.det() == 1 ? json(positive_word(c.b)) : json(nullptr)},
                   {"verified", true}});
    return Ok;
}

int cmd_classes(const RunConfig &cfg, const std::string &text)
{
    const BigInt t(trim_copy(text));
    const auto classes = trace_conjugacy_classes(t);
    json out = json::array();
    for (const auto &cls : classes) {
        verify(cls.representative.det() == 1 && cls.representative.trace() == t, "representative has wrong trace");
        json members = json::array();
        for (std::size_t i = 0; i < cls.members.size(); ++i) {
            const IntMatrix2 &q = cls.conjugators[i];
            verify(q.is_unimodular() && q.inverse() * cls.representative * q == cls.members[i],
                   "class member is not conjugate to its representative");
            members.push_back(json{{"matrix", matrix_json(cls.members[i])}, {"conjugator", matrix_json(q)}});
        }
        out.push_back(json{{"representative", matrix_json(cls.representative)}, {"members", members}});
    }
    emit(cfg, json{{"command", "monomial-conj classes"},
                   {"trace", json_int(t)},
                   {"count", classes.size()},
                   {"classes", out},
                   {"verified", true}});
    return Ok;
}

int cmd_torus_solve(const RunConfig &cfg, const std::string &mtext, const std::string &dtext)
{
    const IntMatrix2 a = IntMatrix2::parse(mtext);
    const TorusElement d = TorusElement::parse(dtext);
    const TorusElement dp = solve_commuting_torus(a, d);
    // d'^-1 (A, d) d' in the semidirect product must be (A, 1).
    const MonomialElement lhs =
        semidirect_compose(semidirect_compose(MonomialElement(IntMatrix2::identity(), dp.inverse()), MonomialElement(a, d)),
                           MonomialElement(IntMatrix2::identity(), dp));
    verify(lhs == MonomialElement(a), "d'^-1 d f_A d' != f_A");
    emit(cfg, json{{"command", "monomial-conj torus-solve"},
                   {"a", matrix_json(a)},
                   {"d", d.to_string()},
                   {"d_prime", dp.to_string()},
                   {"rational", dp.is_rational()},
                   {"verified", true}});
    return Ok;
}

struct ModpOptions {
    std::optional<unsigned long> prime;
    bool seeded = false;
    std::size_t samples = 50;
    std::optional<std::string> experiment;
};

int parse_experiment(const std::string &s)
{
    std::string t = trim_copy(s);
    if (t.rfind("K=", 0) == 0 || t.rfind("k=", 0) == 0) {
        t = t.substr(2);
    }
    try {
        std::size_t used = 0;
        const int k = std::stoi(t, &used);
        if (used == t.size() && k >= 1) {
            return k;
        }
    } catch (const std::exception &) {
    }
    throw Error(ErrorKind::InvalidArgument, "--experiment expects K=<positive integer>, got '" + s + "'");
}

int cmd_modp(const RunConfig &cfg, const std::string &path, const ModpOptions &opt)
{
    const std::optional<int> k = opt.experiment ? std::optional<int>(parse_experiment(*opt.experiment)) : std::nullopt;
    const GeneratorSystem sys = GeneratorSystem::parse(read_file(path));
    const BadSet bad = collect_bad_set(sys);
    unsigned long p = 0;
    if (opt.prime) {
        p = *opt.prime;
        if (!is_admissible(bad, p)) {
            throw Error(ErrorKind::BadPrime, std::to_string(p) + " is not an admissible prime for " + path);
        }
    } else {
        p = choose_prime(bad, {opt.seeded ? PrimeStrategy::Kind::Seeded : PrimeStrategy::Kind::Smallest, cfg.seed});
    }
    ReductionHom hom;
    try {
        hom = reduce_system(sys, bad, p);
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::BadPrime && !opt.prime) {
            throw Error(ErrorKind::VerificationFailure, std::string("chosen prime rejected: ") + e.what());
        }
        throw;
    }

    std::size_t checked = 0;
    bool monotone = true;
    json failures = json::array();
    for (const auto &w : random_words(sys.size(), opt.samples, cfg.budget_words, cfg.seed)) {
        const WordCheck c = check_word(sys, hom, w);
        ++checked;
        monotone = monotone && c.degree_p <= c.degree_q;
        if (!c.commutes) {
            failures.push_back(sys.word_to_string(w));
        }
    }
    verify(failures.empty(), "reduction does not commute with composition on " + failures.dump());
    verify(sys.size() == 0 || (hom.witness && !hom.witness->is_zero()), "nontriviality witness vanished");

    json j = modp_report_json(sys, bad, hom);
    j["command"] = "modp";
    j["file"] = path;
    j["verification"] = json{{"words_checked", checked},
                             {"max_word_length", cfg.budget_words},
                             {"commuting", true},
                             {"degree_monotone", monotone}};
    int code = Ok;
    if (k) {
        try {
            j["experiment"] = to_json(finite_image_experiment(hom, *k, cfg.budget_words));
        } catch (const ImageBudgetExceeded &e) {
            j["experiment"] = to_json(e.partial());
            j["experiment"]["error"] = e.what();
            code = Budget;
        }
        j["image_size"] = j["experiment"]["image_size"];
        j["closure"] = j["experiment"]["closure"];
    }
    emit(cfg, j);
    return code;
}

int cmd_fan_trace(const RunConfig &cfg, const std::string &text, std::size_t blowups, std::size_t steps)
{
    const IntMatrix2 a = IntMatrix2::parse(text);
    if (!a.is_unimodular()) {
        throw Error(ErrorKind::NotSL2, "matrix " + a.to_string() + " is not in GL2(Z)");
    }
    if (a == IntMatrix2::identity()) {
        throw Error(ErrorKind::NotLoxodromic, "the identity has no boundary dynamics to trace");
    }
    std::mt19937_64 rng(cfg.seed);
    ToricSurfaceModel model = ToricSurfaceModel::p2();
    for (std::size_t i = 0; i < blowups; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, model.fan().size() - 1);
        model = model.blow_up_cone(pick(rng));
    }
    const Fan2D &fan = model.fan();

    json images = json::array();
    int contracted = 0;
    for (const auto &r : fan.rays()) {
        const RayImage im = ray_image(a, r, fan);
        contracted += im.contracted() ? 1 : 0;
        json e = to_json(im);
        e["ray"] = to_json(r);
        images.push_back(e);
    }
    json j{{"command", "fan-trace"},
           {"matrix", matrix_json(a)},
           {"model", to_json(model)},
           {"ray_images", images},
           {"contracted", contracted},
           {"loxodromic", is_loxodromic(a)}};
    if (blowups == 0) {
        verify(contracted == E_of_monomial(a), "ray images disagree with E(f_A)");
        j["E"] = contracted;
    }
    if (is_loxodromic(a)) {
        json orbits = json::array();
        for (const auto &r : fan.rays()) {
            const OrbitReport rep = boundary_orbit(a, r, fan, steps);
            verify(!rep.fixed_at, "ray " + to_json(r).dump() + " is fixed by a loxodromic matrix");
            orbits.push_back(to_json(rep));
        }
        j["orbits"] = orbits;
        j["fixed_ray"] = false;
    } else {
        j["orbits"] = nullptr;
        j["note"] = "not loxodromic: one-step ray images only";
    }
    emit(cfg, j);
    return Ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact computations in the plane Cremona group"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "Seed for every random choice")->capture_default_str();
    app.add_option("--budget-degree", cfg.budget_degree, "Largest iterate degree computed by composition")
        ->capture_default_str();
    app.add_option("--budget-words", cfg.budget_words, "Largest word length for random words and enumeration")
        ->capture_default_str();
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--precision", cfg.precision, "Significant digits of real outputs")
        ->check(CLI::Range(1U, 1000U))
        ->capture_default_str();

    std::string map_text;
    std::size_t n_iter = 12;
    auto *classify = app.add_subcommand("classify", "Degree sequence and growth class of a map or monomial matrix");
    classify->add_option("map", map_text, "[f0 : f1 : f2] or [[a,b],[c,d]]")->required();
    classify->add_option("-n,--iterates", n_iter, "Number of iterates")->check(CLI::Range(6, 100000))->capture_default_str();

    auto *conj = app.add_subcommand("monomial-conj", "Conjugacy algorithms for monomial maps");
    conj->require_subcommand(1);
    conj->fallthrough();
    std::string conj_matrix, conj_trace, conj_torus;
    auto *nonneg = conj->add_subcommand("nonneg", "Conjugate a loxodromic SL2 matrix to a nonnegative one");
    nonneg->add_option("matrix", conj_matrix)->required();
    auto *classes = conj->add_subcommand("classes", "GL2(Z) conjugacy classes of SL2 matrices of trace T");
    classes->add_option("trace", conj_trace)->required();
    auto *torus = conj->add_subcommand("torus-solve", "d' with d'^-1 d f_A d' = f_A");
    torus->add_option("matrix", conj_matrix)->required();
    torus->add_option("torus", conj_torus, "(c1*x, c2*y)")->required();

    std::string gens_path;
    ModpOptions modp_opt;
    auto *modp = app.add_subcommand("modp", "Reduction of a generator system modulo a prime");
    modp->add_option("file", gens_path, "Generator file")->required();
    modp->add_option("--prime", modp_opt.prime, "Use this prime instead of choosing one");
    modp->add_flag("--seeded", modp_opt.seeded, "Choose a pseudo-random admissible prime from --seed");
    modp->add_option("--samples", modp_opt.samples, "Random words checked")->capture_default_str();
    modp->add_option("--experiment", modp_opt.experiment, "Finite image experiment with degree bound K=<k>");

    std::string fan_matrix;
    std::size_t blowups = 0, steps = 10;
    auto *fan = app.add_subcommand("fan-trace", "Boundary ray orbits of a monomial map");
    fan->add_option("matrix", fan_matrix)->required();
    fan->add_option("--blowups", blowups, "Random toric blow-ups of P^2")->capture_default_str();
    fan->add_option("--steps", steps, "Orbit steps per ray")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : Validation;
    }

    try {
        if (cfg.format == "csv" && !classify->parsed()) {
            throw Error(ErrorKind::InvalidArgument, "csv output is only available for degree sequences (classify)");
        }
        if (classify->parsed()) {
            return cmd_classify(cfg, map_text, n_iter);
        }
        if (nonneg->parsed()) {
            return cmd_nonneg(cfg, conj_matrix);
        }
        if (classes->parsed()) {
            return cmd_classes(cfg, conj_trace);
        }
        if (torus->parsed()) {
            return cmd_torus_solve(cfg, conj_matrix, conj_torus);
        }
        if (modp->parsed()) {
            return cmd_modp(cfg, gens_path, modp_opt);
        }
        if (fan->parsed()) {
            return cmd_fan_trace(cfg, fan_matrix, blowups, steps);
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: ParseError: " << e.what() << "\n";
        return Validation;
    }
    return Validation;
}
