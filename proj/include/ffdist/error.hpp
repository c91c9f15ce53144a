#pragma once

#include <stdexcept>
#include <string>

namespace ffdist {

// Base for all library errors. Subclasses exist so callers (and tests) can
// catch the precise failure class.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotPrimeError : Error {
    using Error::Error;
};
struct EvenCharacteristicError : Error {
    using Error::Error;
};
struct TooLargeError : Error {
    using Error::Error;
};
struct IndexOutOfRangeError : Error {
    using Error::Error;
};
struct DimensionMismatchError : Error {
    using Error::Error;
};
struct ZeroLabelError : Error {
    using Error::Error;
};
struct DegenerateFormError : Error {
    using Error::Error;
};
struct ZeroParameterError : Error {
    using Error::Error;
};
struct NonCanonicalFormError : Error {
    using Error::Error;
};
struct NotATreeError : Error {
    using Error::Error;
};
struct BudgetExceededError : Error {
    using Error::Error;
};
struct ConfigParseError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

}  // namespace ffdist
