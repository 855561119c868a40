#pragma once

#include <stdexcept>
#include <string>

namespace ontorules {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed document text (bad JSON, bad identifier, wrong value shape).
class ParseError : public Error {
public:
    using Error::Error;
};

// Structurally well-formed input that violates a model invariant or an
// operation precondition (cycles, unknown ids, bad outcome sets, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Exact integer arithmetic left the 64-bit range. Counts are never wrapped
// or saturated.
class OverflowError : public Error {
public:
    using Error::Error;
};

// A rule set and tree that should agree do not. Points at a bug or at
// tampered data, not at user input.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace ontorules
