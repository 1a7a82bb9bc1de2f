#pragma once

#include <vector>

#include "oneshot/matrix.hpp"

namespace oneshot {

// Eigensystem of a Hermitian matrix. Eigenvalues sorted descending; column k
// of `vectors` pairs with eigenvalue k. For degenerate clusters the
// individual vectors are basis-dependent; downstream code works with
// spectral projectors only.
struct Spectrum {
    std::vector<double> values;
    CMat vectors;

    CMat projector_onto(const std::vector<int>& which) const;
};

// Cyclic Jacobi rotations. Converges when the off-diagonal Frobenius norm
// drops below 1e-12 * dim (relative to the input scale), capped at 100
// sweeps. Deterministic for identical input.
Spectrum eigendecompose(const CMat& h);

// Kronecker product. Result dimension capped by max_matrix_dim().
CMat kron(const CMat& a, const CMat& b);

// True iff every eigenvalue of A lies in [-tol, 1+tol].
bool is_decision_operator(const CMat& a, double tol);

// sum_{lambda_k > 0} lambda_k v_k v_k^dagger.
CMat positive_part(const CMat& h);

// Convenience built on the spectrum.
double min_eigenvalue(const CMat& h);
double max_eigenvalue(const CMat& h);
CMat hermitian_inverse(const CMat& h);

}  // namespace oneshot
