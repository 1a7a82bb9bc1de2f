#include "oneshot/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oneshot {

namespace {

double offdiag_norm(const CMat& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

CMat Spectrum::projector_onto(const std::vector<int>& which) const {
    const int d = vectors.rows();
    CMat p(d, d);
    for (int k : which)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                p(i, j) += vectors(i, k) * std::conj(vectors(j, k));
    return p;
}

Spectrum eigendecompose(const CMat& h) {
    require_hermitian(h, 1e-12, "eigendecompose");
    const int n = h.rows();
    CMat a = h;
    CMat v = CMat::identity(n);

    const double scale = std::max(1.0, fro_norm(a));
    const double thresh = 1e-12 * n * scale;

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (offdiag_norm(a) <= thresh) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double b = std::abs(a(p, q));
                if (b <= thresh / (n * n + 1.0)) continue;
                const cplx u = a(p, q) / b;  // phase factor
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * b);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * u * akp - s * akq;
                    a(k, q) = s * u * akp + c * akq;
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                a(p, p) = app - t * b;
                a(q, q) = aqq + t * b;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                for (int k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * u * vkp - s * vkq;
                    v(k, q) = s * u * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    Spectrum out;
    out.values.resize(n);
    out.vectors = CMat(n, n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

CMat kron(const CMat& a, const CMat& b) {
    const long long rr = (long long)a.rows() * b.rows();
    const long long cc = (long long)a.cols() * b.cols();
    if (rr > max_matrix_dim() || cc > max_matrix_dim())
        throw capacity_error("kron: result dimension exceeds cap");
    CMat c(static_cast<int>(rr), static_cast<int>(cc));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

bool is_decision_operator(const CMat& a, double tol) {
    require_hermitian(a, 1e-9, "is_decision_operator");
    const Spectrum s = eigendecompose(a);
    for (double lam : s.values)
        if (lam < -tol || lam > 1.0 + tol) return false;
    return true;
}

CMat positive_part(const CMat& h) {
    const Spectrum s = eigendecompose(h);
    const int n = h.rows();
    CMat out(n, n);
    for (int k = 0; k < n; ++k) {
        if (s.values[k] <= 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out(i, j) += s.values[k] * s.vectors(i, k) * std::conj(s.vectors(j, k));
    }
    return out;
}

double min_eigenvalue(const CMat& h) {
    const Spectrum s = eigendecompose(h);
    return s.values.back();
}

double max_eigenvalue(const CMat& h) {
    const Spectrum s = eigendecompose(h);
    return s.values.front();
}

CMat hermitian_inverse(const CMat& h) {
    const Spectrum s = eigendecompose(h);
    const int n = h.rows();
    CMat out(n, n);
    for (int k = 0; k < n; ++k) {
        const double inv = 1.0 / s.values[k];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out(i, j) += inv * s.vectors(i, k) * std::conj(s.vectors(j, k));
    }
    return out;
}

}  // namespace oneshot
