#pragma once

#include <complex>
#include <vector>

#include "oneshot/errors.hpp"

namespace oneshot {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Small and value-semantic; everything at
// desk scale, no attempt at blocking or sparsity.
class CMat {
  public:
    CMat() = default;
    CMat(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols) {}

    static CMat identity(int n);
    static CMat zero(int rows, int cols) { return CMat(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return data_[size_t(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return data_[size_t(i) * cols_ + j]; }

    CMat& operator+=(const CMat& rhs);
    CMat& operator-=(const CMat& rhs);
    CMat& operator*=(cplx s);

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(cplx s, CMat a) { return a *= s; }
    friend CMat operator*(CMat a, cplx s) { return a *= s; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

CMat matmul(const CMat& a, const CMat& b);
CMat adjoint(const CMat& a);
// (A + A^dagger)/2; scrubs rounding-level conjugate asymmetry from sums of
// scaled Hermitian terms.
CMat hermitize(const CMat& a);

cplx trace(const CMat& a);
// Re <A, B> = Re Tr(A^dagger B); the Frobenius inner product.
double inner_real(const CMat& a, const CMat& b);
double fro_norm(const CMat& a);

bool is_hermitian(const CMat& a, double tol = 1e-12);
// Throws validation_error when the Hermitian invariant fails.
void require_hermitian(const CMat& a, double tol = 1e-12, const char* who = "matrix");

}  // namespace oneshot
