#pragma once

#include <stdexcept>
#include <string>

namespace sosggm {

// tau <= 2 has no theta in (0,1); the model is defined for tau > 2 only.
struct InvalidTemperature : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The positivity constraint u_{-1} + u_1 < tau was violated.
struct ConstraintViolation : std::domain_error {
    using std::domain_error::domain_error;
};

// Degenerate input (e.g. a degree-0 polynomial handed to a root isolator).
struct EmptyProblem : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// deflate_by_root was asked to divide out a value that is not a root.
struct NotARoot : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A count-change bisection was started on an interval with equal counts.
struct NoTransition : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A marginal table would exceed the enumeration guard.
struct OversizedEnumeration : std::length_error {
    using std::length_error::length_error;
};

// Tree-ball radius beyond the combinatorial guard.
struct BallTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace sosggm
