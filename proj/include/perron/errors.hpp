#pragma once

#include <stdexcept>
#include <string>

namespace perron {

// Raised when an input violates a documented precondition (wrong shape,
// negative entries where nonnegativity is required, a graph that is not a
// tree, ...).  Callers that map errors to process exit codes treat this as
// "bad input".
class HypothesisError : public std::runtime_error {
public:
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when input text cannot be parsed at all (malformed file, missing
// field).  Distinct from HypothesisError so front ends can distinguish
// "could not read" from "read fine but violates a documented hypothesis".
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an iterative method exhausts its iteration budget before
// reaching the requested tolerance.  Carries the best bracket found so the
// caller can still report partial information.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double lower, double upper, int iterations)
        : std::runtime_error(what), lower(lower), upper(upper), iterations(iterations) {}
    double lower;
    double upper;
    int iterations;
};

// Raised when an internal invariant fails (a bug, not a user error).
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace perron
