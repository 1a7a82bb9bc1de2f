#include "oneshot/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace oneshot {

namespace {

long long env_cap() {
    const char* s = std::getenv("ONESHOT_MAX_DIM");
    if (!s) return -1;
    char* end = nullptr;
    long long v = std::strtoll(s, &end, 10);
    if (end == s || v <= 0) return -1;
    return v;
}

}  // namespace

int max_matrix_dim() {
    static const int cap = [] {
        long long v = env_cap();
        if (v > 0 && v < (1 << 30)) return int(v);
        return 4096;
    }();
    return cap;
}

long long max_outcomes() {
    static const long long cap = [] {
        long long v = env_cap();
        if (v > 0) return v;
        return 1LL << 22;
    }();
    return cap;
}

CMat CMat::identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat& CMat::operator+=(const CMat& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw dimension_error("matrix add: shape mismatch");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

CMat& CMat::operator-=(const CMat& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw dimension_error("matrix sub: shape mismatch");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

CMat& CMat::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

CMat matmul(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows()) throw dimension_error("matmul: inner dimension mismatch");
    CMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

CMat adjoint(const CMat& a) {
    CMat c(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

CMat hermitize(const CMat& a) {
    if (a.rows() != a.cols()) throw dimension_error("hermitize: non-square matrix");
    CMat h = a;
    h += adjoint(a);
    h *= 0.5;
    return h;
}

cplx trace(const CMat& a) {
    if (a.rows() != a.cols()) throw dimension_error("trace: non-square matrix");
    cplx t = 0.0;
    for (int i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

double inner_real(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_error("inner product: shape mismatch");
    double s = 0.0;
    const auto& x = a.data();
    const auto& y = b.data();
    for (size_t i = 0; i < x.size(); ++i)
        s += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    return s;
}

double fro_norm(const CMat& a) {
    double s = 0.0;
    for (const auto& v : a.data()) s += std::norm(v);
    return std::sqrt(s);
}

bool is_hermitian(const CMat& a, double tol) {
    if (a.rows() != a.cols()) return false;
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = i; j < a.cols(); ++j) {
            const cplx d = a(i, j) - std::conj(a(j, i));
            if (std::abs(d.real()) > tol || std::abs(d.imag()) > tol) return false;
        }
    }
    return true;
}

void require_hermitian(const CMat& a, double tol, const char* who) {
    if (!is_hermitian(a, tol))
        throw validation_error(std::string(who) + ": not Hermitian within tolerance");
}

}  // namespace oneshot
