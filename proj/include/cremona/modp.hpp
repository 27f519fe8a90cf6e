#ifndef CREMONA_MODP_HPP
#define CREMONA_MODP_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <cremona/cremona.hpp>

namespace cremona {

using Triple = std::array<HomPoly3, 3>;
// Generator indices; the word g_{w0} g_{w1} ... acts as g_{w0} o g_{w1} o ...
using Word = std::vector<std::size_t>;

struct Generator {
    std::string name;
    Triple lift;      // as written, not normalized
    CremonaMap map;   // normalized, carries the inverse generator as witness
    std::size_t inverse = 0;
};

// Symmetric generating set over Q: every generator is paired with its
// inverse (possibly itself), and no generator is the identity.
class GeneratorSystem {
public:
    struct Input {
        std::string name;
        Triple lift;
    };

    GeneratorSystem() = default;
    // `pairs` lists (a, b) with b = a^-1 by name. InvalidArgument on a
    // missing or inconsistent pairing, identity generator, or failed
    // composition check.
    static GeneratorSystem make(const std::vector<Input> &gens,
                                const std::vector<std::pair<std::string, std::string>> &pairs);

    // File format:
    //   line    := blank | comment | gen | inverse
    //   comment := '#' any text
    //   gen     := "gen" NAME '=' '[' poly ':' poly ':' poly ']'
    //   inverse := "inverse" NAME NAME        (NAME NAME for an involution)
    //   NAME    := [A-Za-z_][A-Za-z0-9_']*
    // '#' also starts a trailing comment. Every generator must appear in
    // exactly one inverse line. Errors are ParseError naming the line or
    // generator.
    static GeneratorSystem parse(std::string_view text);

    const std::vector<Generator> &generators() const noexcept { return gens_; }
    std::size_t size() const noexcept { return gens_.size(); }
    std::optional<std::size_t> index_of(const std::string &name) const;

    Word parse_word(std::string_view text) const; // names separated by spaces or '*'
    std::string word_to_string(const Word &w) const;

private:
    std::vector<Generator> gens_;
};

// Normalized image over Q of a word; the empty word is the identity.
CremonaMap evaluate_word(const GeneratorSystem &sys, const Word &w);

struct BadSet {
    std::set<BigRational> t;
    BigRational r{1};
    // P_i with lift_i o lift_{i^-1} = P_i (x, y, z), one per generator.
    std::vector<HomPoly3> p;
    // Distinguishing pair: generator `first` against `second`, or against the
    // identity when every generator is the same map.
    std::size_t first = 0;
    std::optional<std::size_t> second;
    // The three minors G1a G2b - G1b G2a for (a, b) = (0,1), (0,2), (1,2).
    std::array<HomPoly3, 3> minors;
    std::size_t witness = 0; // index of the first nonzero minor
};

BadSet collect_bad_set(const GeneratorSystem &sys);

struct PrimeStrategy {
    enum class Kind { Smallest, Seeded };
    Kind kind = Kind::Smallest;
    std::uint64_t seed = 0;
};

// Smallest prime (or, for Seeded, a reproducible pseudo-random prime below
// 2^20) dividing no numerator and no denominator of T.
unsigned long choose_prime(const BadSet &bad, const PrimeStrategy &strategy = {});
bool is_admissible(const BadSet &bad, unsigned long p);

struct DegreeDrop {
    std::string generator;
    int from = 0;
    int to = 0;
};

struct ReductionHom {
    unsigned long p = 0;
    std::vector<Triple> lifts;      // coefficientwise images of the lifts
    std::vector<CremonaMap> maps;   // normalized over F_p
    std::vector<std::size_t> inverse;
    std::vector<std::string> names;
    std::optional<HomPoly3> witness; // reduced distinguishing minor, nonzero
    std::vector<DegreeDrop> drops;
};

// Reduces every lift mod p and verifies lift_i(lift_j) = psi(P_i) (x, y, z)
// for each inverse pair, that the normalized maps compose to the identity,
// and that the distinguishing minor stays nonzero. BadPrime on any failure.
ReductionHom reduce_system(const GeneratorSystem &sys, const BadSet &bad, unsigned long p);

CremonaMap evaluate_word(const ReductionHom &hom, const Word &w);

struct WordCheck {
    bool commutes = false; // reduce(evaluate(w)) == evaluate(reduce(w))
    int degree_q = 0;
    int degree_p = 0;
};

WordCheck check_word(const GeneratorSystem &sys, const ReductionHom &hom, const Word &w);

// `count` words of length 1..max_length, uniform letters, reproducible from seed.
std::vector<Word> random_words(std::size_t n_generators, std::size_t count, std::size_t max_length,
                               std::uint64_t seed);

struct ImageReport {
    unsigned long p = 0;
    int degree_bound = 0;
    std::size_t image_size = 0;
    bool closure = false;
    std::size_t word_length = 0;       // length of the last frontier explored
    std::vector<std::size_t> new_per_length; // new elements found at length 1, 2, ...
    std::vector<std::string> elements;  // sorted text of the image elements
};

class ImageBudgetExceeded : public Error {
public:
    ImageBudgetExceeded(const std::string &what, ImageReport partial)
        : Error(ErrorKind::BudgetExceeded, what), partial_(std::move(partial))
    {
    }
    const ImageReport &partial() const noexcept { return partial_; }

private:
    ImageReport partial_;
};

// Breadth-first enumeration of the images of words, by length, generators in
// file order, keeping elements of degree <= k. Closure is certified when a
// whole frontier adds nothing new; reaching max_length first throws
// ImageBudgetExceeded.
ImageReport finite_image_experiment(const ReductionHom &hom, int k, std::size_t max_length);

nlohmann::json to_json(const ImageReport &report);
nlohmann::json modp_report_json(const GeneratorSystem &sys, const BadSet &bad, const ReductionHom &hom);

} // namespace cremona

#endif
