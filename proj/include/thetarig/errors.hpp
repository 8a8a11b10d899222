#pragma once

#include <stdexcept>
#include <string>

namespace thetarig {

// Base class for all evaluator errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid mathematical input (tau outside the upper half-plane, bad shift, ...).
struct domain_error : error {
    using error::error;
};

// A requested evaluation cannot meet the configured precision (non-finite
// intermediate, truncation failure).
struct precision_error : error {
    using error::error;
};

// Evaluation landed on (or numerically indistinguishable from) a zero of a
// theta function appearing in a denominator. The message names the zero.
struct pole_error : error {
    using error::error;
};

// Derivative/coefficient list shorter than the jet composition needs.
struct arity_error : error {
    using error::error;
};

// Multiplicative inversion of a series/jet whose constant term is zero.
struct inversion_error : error {
    using error::error;
};

// An infinite product whose factors do not tend to 1 below the truncation.
struct divergence_error : error {
    using error::error;
};

// Inputs inconsistent with the selected dimension class / bundle case.
struct case_error : error {
    using error::error;
};

// Quadrature failed its self-check (doubling the points moved the result).
struct quadrature_error : error {
    using error::error;
};

// A product would carry two odd-degree form factors.
struct parity_error : error {
    using error::error;
};

// Malformed instance file / CLI input.
struct input_error : error {
    using error::error;
};

} // namespace thetarig
