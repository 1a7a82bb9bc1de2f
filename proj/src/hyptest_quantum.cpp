#include <algorithm>
#include <cmath>

#include "oneshot/hyptest.hpp"

namespace oneshot {

namespace {

// Projector built from eigenvalue selection plus a fractional weight on the
// near-zero band of the pencil rho - t*sigma.
struct PencilSplit {
    CMat plus;        // strictly positive eigenspace projector
    CMat band;        // near-zero eigenspace projector
    double rho_plus;  // <rho, plus>
    double rho_band;  // <rho, band>
};

PencilSplit split_pencil(const CMat& pencil, const CMat& rho, double band_width) {
    const Spectrum s = eigendecompose(hermitize(pencil));
    std::vector<int> plus_idx;
    std::vector<int> band_idx;
    for (int k = 0; k < int(s.values.size()); ++k) {
        if (s.values[k] > band_width)
            plus_idx.push_back(k);
        else if (s.values[k] >= -band_width)
            band_idx.push_back(k);
    }
    PencilSplit out;
    out.plus = s.projector_onto(plus_idx);
    out.band = s.projector_onto(band_idx);
    out.rho_plus = inner_real(rho, out.plus);
    out.rho_band = inner_real(rho, out.band);
    return out;
}

double accept_mass(const CMat& rho, const CMat& sigma, double t, double band_width) {
    CMat pencil = rho;
    pencil -= t * sigma;
    return split_pencil(pencil, rho, band_width).rho_plus;
}

}  // namespace

TestCertificate solve_quantum(const DensityOperator& rho_in, const DensityOperator& sigma_in,
                              double epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw domain_error("epsilon must lie in [0,1)");
    const CMat& rho = rho_in.matrix();
    const CMat& sigma = sigma_in.matrix();
    if (rho.rows() != sigma.rows())
        throw dimension_error("solve_quantum: state dimension mismatch");
    const int d = rho.rows();
    const double target = 1.0 - epsilon;
    if (trace(rho).real() < target - 1e-12)
        throw infeasible_error("solve_quantum: null trace below 1 - epsilon");

    TestCertificate cert;
    cert.epsilon = epsilon;
    cert.dual.v = {1.0};

    // If the null puts at least 1-eps of its mass on ker(sigma), a decision
    // supported there reaches beta = 0.
    const Spectrum sspec = eigendecompose(sigma);
    const double sigma_scale = std::max(1.0, std::abs(sspec.values.front()));
    std::vector<int> kernel_idx;
    double lambda_min_pos = 0.0;
    for (int k = 0; k < d; ++k) {
        if (sspec.values[k] <= 1e-12 * sigma_scale)
            kernel_idx.push_back(k);
        else
            lambda_min_pos = sspec.values[k];
    }
    if (!kernel_idx.empty()) {
        const CMat pk = sspec.projector_onto(kernel_idx);
        const double mass = inner_real(rho, pk);
        if (mass >= target) {
            const double c = target / mass;
            CMat a = pk;
            a *= c;
            cert.beta = 0.0;
            cert.alpha = epsilon;
            cert.dual_value = 0.0;
            cert.gap = 0.0;
            cert.dual.z = {0.0};
            cert.dual.zpart = CMat::zero(d, d);
            cert.decision = DecisionFunction::quantum(std::move(a));
            return cert;
        }
    }

    // Bisection over the pencil threshold. accept_mass is non-increasing in
    // t; extend the bracket if the spectral bound is not yet on the low side.
    const double band0 = 1e-13 * std::max(1.0, fro_norm(rho));
    double hi = max_eigenvalue(rho) / (lambda_min_pos > 0.0 ? lambda_min_pos : 1.0) + 1.0;
    int iters = 0;
    while (accept_mass(rho, sigma, hi, band0) >= target && hi < 1e12) {
        hi *= 2.0;
        ++iters;
    }
    double lo = 0.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (accept_mass(rho, sigma, mid, band0) >= target)
            lo = mid;
        else
            hi = mid;
        ++iters;
    }

    const double t_hat = 0.5 * (lo + hi);
    CMat pencil = rho;
    pencil -= t_hat * sigma;
    // Band wide enough to capture any eigenvalue crossing inside the final
    // bracket.
    const double band =
        std::max(1e-11 * std::max(1.0, fro_norm(pencil)), 2.0 * (hi - lo) * fro_norm(sigma));
    const PencilSplit split = split_pencil(pencil, rho, band);

    double c = 0.0;
    if (split.rho_band > 1e-300)
        c = std::clamp((target - split.rho_plus) / split.rho_band, 0.0, 1.0);
    CMat a = split.plus;
    if (c > 0.0) {
        CMat frac = split.band;
        frac *= c;
        a += frac;
    }

    cert.beta = inner_real(sigma, a);
    cert.alpha = 1.0 - inner_real(rho, a);
    cert.iterations = iters;

    // Singleton dual: multiplier z = 1/t on the type-I constraint, cap dual
    // Z = (z rho - sigma)^+. Feasible by construction.
    const double z = 1.0 / std::max(t_hat, 1e-12);
    CMat m = rho;
    m *= z;
    m -= sigma;
    CMat zmat = positive_part(hermitize(m));
    cert.dual_value = target * z - trace(zmat).real();
    cert.gap = cert.beta - cert.dual_value;
    cert.dual.z = {z};
    cert.dual.zpart = std::move(zmat);
    cert.decision = DecisionFunction::quantum(std::move(a));
    return cert;
}

}  // namespace oneshot
