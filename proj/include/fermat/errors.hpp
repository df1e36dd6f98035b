#pragma once

#include <stdexcept>
#include <string>

namespace fermat {

// Error taxonomy shared by the library and the CLI. The CLI maps
// InputError to exit code 2 (bad request) and NumericError to exit
// code 3 (computation could not be completed at the required accuracy).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : Error {
    using Error::Error;
};

struct NumericError : Error {
    using Error::Error;
};

struct NotPrimeError : InputError {
    explicit NotPrimeError(const std::string& what) : InputError(what) {}
};

struct TooLargeError : InputError {
    explicit TooLargeError(const std::string& what) : InputError(what) {}
};

struct DivisionByZeroError : InputError {
    explicit DivisionByZeroError(const std::string& what) : InputError(what) {}
};

struct OrderMismatchError : InputError {
    explicit OrderMismatchError(const std::string& what) : InputError(what) {}
};

struct FieldMismatchError : InputError {
    explicit FieldMismatchError(const std::string& what) : InputError(what) {}
};

struct DegenerateCurveError : InputError {
    explicit DegenerateCurveError(const std::string& what) : InputError(what) {}
};

struct UnsupportedError : InputError {
    explicit UnsupportedError(const std::string& what) : InputError(what) {}
};

struct WrongCountError : InputError {
    explicit WrongCountError(const std::string& what) : InputError(what) {}
};

struct CongruenceViolationError : InputError {
    explicit CongruenceViolationError(const std::string& what) : InputError(what) {}
};

struct EmptyPairSetError : InputError {
    explicit EmptyPairSetError(const std::string& what) : InputError(what) {}
};

struct ParseError : InputError {
    explicit ParseError(const std::string& what) : InputError(what) {}
};

struct RoundingBudgetError : NumericError {
    explicit RoundingBudgetError(const std::string& what) : NumericError(what) {}
};

struct SingularMatrixError : NumericError {
    explicit SingularMatrixError(const std::string& what) : NumericError(what) {}
};

}  // namespace fermat
