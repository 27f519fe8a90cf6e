#ifndef CREMONA_ERROR_HPP
#define CREMONA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cremona {

enum class ErrorKind {
    DegreeMismatch,
    AllZero,
    NotBirational,
    NotSquarefree,
    ZeroModP,
    IrrationalTorus,
    NotLoxodromic,
    NotSL2,
    TraceNotLoxodromic,
    SingularMatrix,
    NotAdjacent,
    BudgetExceeded,
    NotIsometry,
    NotOnHyperboloid,
    BadPrime,
    ParseError,
    InvalidArgument,
    VerificationFailure,
};

const char *to_string(ErrorKind kind);

// All library failures are reported through this type; kind() is stable
// and used by the CLI to pick exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace cremona

#endif
