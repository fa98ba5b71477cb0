#pragma once

#include <stdexcept>
#include <string>

namespace domkit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// Well-formed input that does not type-check against its carrier.
class TypeError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// Condition (*): G is not dense in the group generated by G and the witness.
class DensityError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class OracleError : public Error {
public:
    using Error::Error;
};

}  // namespace domkit
