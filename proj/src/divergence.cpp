#include "oneshot/divergence.hpp"

#include <cmath>
#include <limits>

#include "oneshot/hyptest.hpp"

namespace oneshot {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double kl(const ClassicalDistribution& p0, const ClassicalDistribution& p1) {
    if (p0.is_sub_normalized() || p1.is_sub_normalized())
        throw validation_error("kl: inputs must be normalized");
    if (p0.size() != p1.size()) throw dimension_error("kl: alphabet size mismatch");
    double d = 0.0;
    for (int y = 0; y < p0.size(); ++y) {
        if (p0[y] == 0.0) continue;
        if (p1[y] == 0.0) return kInf;
        d += p0[y] * std::log2(p0[y] / p1[y]);
    }
    return d;
}

double quantum_relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim())
        throw dimension_error("quantum_relative_entropy: dimension mismatch");
    const Spectrum rs = eigendecompose(rho.matrix());
    const Spectrum ss = eigendecompose(sigma.matrix());
    const int d = rho.dim();
    const double tol = 1e-12;

    double entropy_term = 0.0;
    for (double p : rs.values)
        if (p > tol) entropy_term += p * std::log2(p);

    double cross_term = 0.0;
    for (int j = 0; j < d; ++j) {
        const double q = ss.values[static_cast<size_t>(j)];
        // rho-mass seen by sigma's j-th eigenvector
        double mass = 0.0;
        for (int i = 0; i < d; ++i) {
            const double p = rs.values[static_cast<size_t>(i)];
            if (p <= tol) continue;
            cplx ov = 0.0;
            for (int r = 0; r < d; ++r)
                ov += std::conj(rs.vectors(r, i)) * ss.vectors(r, j);
            mass += p * std::norm(ov);
        }
        if (q <= tol) {
            if (mass > 1e-10) return kInf;
            continue;
        }
        cross_term += mass * std::log2(q);
    }
    return entropy_term - cross_term;
}

double bits_to_nats(double bits) { return bits * std::log(2.0); }

RateCurve stein_rate_curve(const ClassicalDistribution& p0, const ClassicalDistribution& p1,
                           double epsilon, int n_max) {
    if (n_max < 1) throw domain_error("stein_rate_curve: n_max must be positive");
    RateCurve curve;
    curve.epsilon = epsilon;
    curve.reference_bits = kl(p0, p1);
    for (int n = 1; n <= n_max; ++n) {
        const ClassicalDistribution b0 = iid_power(p0, n);
        const ClassicalDistribution b1 = iid_power(p1, n);
        curve.points.push_back({n, dhte(b0, b1, epsilon) / n});
    }
    return curve;
}

double laser_example_kl(int power, int c, int s, int g, double q, double delta, int n) {
    if (!(q > 0.0 && q < 1.0)) throw domain_error("laser_example_kl: q must lie in (0,1)");
    if (!(delta > 0.0 && delta < 1.0))
        throw domain_error("laser_example_kl: delta must lie in (0,1)");
    if (c < 0 || s < 0 || s > g) throw domain_error("laser_example_kl: need 0 <= s <= g, c >= 0");
    if (n < 1) throw domain_error("laser_example_kl: need n >= 1");
    if (power < 0 || power > g)
        throw domain_error("laser_example_kl: power outside the alphabet");
    if (power == c) return 0.0;
    if (!(c < power && power < g - s + c))
        throw domain_error("laser_example_kl: power outside (c, g-s+c)");

    double seq_count = 1.0;
    for (int i = 0; i < n; ++i) seq_count *= double(g + 1);
    const double kappa = delta / seq_count;
    const double nats =
        -(1.0 - delta + kappa) * std::log(kappa / (1.0 - delta + kappa)) -
        kappa * (std::log(1.0 + (1.0 - delta) * (1.0 - q) / kappa) +
                 2.0 * std::log(1.0 + q * (1.0 - delta) / (2.0 * kappa)));
    return nats / std::log(2.0);
}

}  // namespace oneshot
