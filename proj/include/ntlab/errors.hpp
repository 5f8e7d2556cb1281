#pragma once

#include <stdexcept>
#include <string>

namespace ntlab {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can map categories onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested table size is zero or above the configured ceiling.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Argument outside the range covered by a table or an operation.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Residue not reduced modulo the modulus.
class NormalizationError : public Error {
public:
    using Error::Error;
};

/// Two series with different index ranges were combined.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Bad call pattern: empty grids, experiments outside their preconditions.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Complex argument outside the region an evaluator is valid on.
class DomainError : public Error {
public:
    using Error::Error;
};

class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

class UnsupportedOrderError : public Error {
public:
    using Error::Error;
};

} // namespace ntlab
