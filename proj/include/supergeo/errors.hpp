#pragma once

#include <stdexcept>
#include <string>

namespace supergeo {

// Base class for every error this library throws on purpose.  Anything not
// derived from Error escaping a public entry point is a bug.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Two operands built over different generator contexts.
struct ContextMismatchError : Error {
    explicit ContextMismatchError(const std::string& what) : Error(what) {}
};

// A variable name that the active context does not declare.
struct UnknownVariableError : Error {
    explicit UnknownVariableError(const std::string& what) : Error(what) {}
};

// Inversion of an element with odd-parity terms where evenness is required.
struct OddInverseError : Error {
    explicit OddInverseError(const std::string& what) : Error(what) {}
};

// Inversion of an element whose nilpotent-free part vanishes.
struct NonInvertibleBodyError : Error {
    explicit NonInvertibleBodyError(const std::string& what) : Error(what) {}
};

// Matrix elimination could not find a pivot with invertible body.
struct SingularBodyError : Error {
    explicit SingularBodyError(const std::string& what) : Error(what) {}
};

// Row/column parity layout does not match the operation's requirement.
struct ParityMismatchError : Error {
    explicit ParityMismatchError(const std::string& what) : Error(what) {}
};

// An exact-sequence dimension chase with more than one consistent solution.
struct AmbiguousExactSequenceError : Error {
    explicit AmbiguousExactSequenceError(const std::string& what) : Error(what) {}
};

// A degree-bounded ansatz whose solution changed when the bound was raised.
struct BoundTooSmallError : Error {
    explicit BoundTooSmallError(const std::string& what) : Error(what) {}
};

// Input violates a structural precondition (bad subset sizes, wrong chart, ...).
struct ConstraintViolationError : Error {
    explicit ConstraintViolationError(const std::string& what) : Error(what) {}
};

// A configured resource cap (term count, matrix size) was exceeded.
struct ResourceCapError : Error {
    explicit ResourceCapError(const std::string& what) : Error(what) {}
};

// Malformed serialized data.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace supergeo
