#pragma once

#include <stdexcept>
#include <string>

namespace oneshot {

// Input fails a type invariant (non-Hermitian entries, negative mass, ...).
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parameter outside its documented domain (epsilon, rate, delta, ...).
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operands with incompatible dimensions.
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested object exceeds the configured size caps.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iterative solver stopped before reaching its target; carries the last gap.
struct convergence_error : std::runtime_error {
    double last_gap;
    convergence_error(const std::string& what, double gap)
        : std::runtime_error(what), last_gap(gap) {}
};

// Constraint system with no feasible point.
struct infeasible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Size caps. ONESHOT_MAX_DIM overrides both at process start.
int max_matrix_dim();
long long max_outcomes();

}  // namespace oneshot
