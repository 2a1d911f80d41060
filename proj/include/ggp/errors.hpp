// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ggp {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct OverflowError : std::range_error {
    using std::range_error::range_error;
};

struct NonConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivergenceError : std::domain_error {
    using std::domain_error::domain_error;
};

// Mellin strips that fail to intersect, or map outside a factor's domain.
struct EmptyStripError : std::domain_error {
    using std::domain_error::domain_error;
};

// Malformed process expressions (e.g. a real-valued clock).
struct ExprError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Finite-difference grid touching a flagged singular point.
struct GridSingularityError : std::domain_error {
    using std::domain_error::domain_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ggp
