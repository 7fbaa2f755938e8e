#pragma once

#include <stdexcept>
#include <string>

namespace logtower {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Algebraic operation has no result in the field (division by zero,
// logderiv of zero, fractional power of a non-monomial element, ...).
struct AlgebraError : Error {
    using Error::Error;
};

// compose_log / compose_exp requested outside their domain of definition.
struct UnsupportedComposition : Error {
    using Error::Error;
};

// Tokenizer / grammar failure; carries the byte offset into the input.
struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

// Parse tree is well formed but does not lower to a field element /
// differential polynomial; the message names the offending subterm.
struct LoweringError : Error {
    using Error::Error;
};

// Numeric evaluation requested at a point where the element is undefined
// (iterated log not yet positive, fractional power of a negative value).
struct DomainError : Error {
    double threshold;  // evaluation is safe for t strictly above this
    DomainError(const std::string& msg, double thr) : Error(msg), threshold(thr) {}
};

// Denominator vanished (or underflowed) at the evaluation point.
struct PoleError : Error {
    using Error::Error;
};

// Adaptive integrator could not meet the tolerance with a representable step.
struct StepSizeUnderflow : Error {
    using Error::Error;
};

}  // namespace logtower
