#ifndef PROJFORCE_ERRORS_HPP
#define PROJFORCE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace projforce {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested field order is not a prime power.
class NotPrimePowerError : public Error {
public:
    using Error::Error;
};

/// The requested field order exceeds the supported table.
class UnsupportedOrderError : public Error {
public:
    using Error::Error;
};

class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

class LengthMismatchError : public Error {
public:
    using Error::Error;
};

/// The point count (q^k - 1)/(q - 1) exceeds the configured size cap.
class OverflowError : public Error {
public:
    using Error::Error;
};

class RankDeficientError : public Error {
public:
    using Error::Error;
};

/// A multiset has the wrong cardinality for the given (q, k).
class SizeMismatchError : public Error {
public:
    using Error::Error;
};

/// A difference vector was requested from a non-integral inverse image.
class NonIntegralError : public Error {
public:
    using Error::Error;
};

/// Input exceeds a hard cap of a brute-force oracle.
class TooLargeError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace projforce

#endif
