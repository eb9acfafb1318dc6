#pragma once

#include <stdexcept>
#include <string>

namespace adaptfv {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mismatched lengths, cardinalities or endpoints.
class SizeError : public Error {
public:
    using Error::Error;
};

// Non-finite input or output values.
class NumericError : public Error {
public:
    using Error::Error;
};

// Caller violated a documented precondition (e.g. the displacement cap).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Time step exceeds the admissible bound.
class CflError : public Error {
public:
    using Error::Error;
};

// The mesh-movement condition cannot be met even with a frozen mesh.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Should be unreachable; indicates a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace adaptfv
