#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "oneshot/hyptest.hpp"

namespace oneshot {

double DualVariables::zpart_trace() const {
    if (z_is_diagonal()) {
        const auto& d = std::get<std::vector<double>>(zpart);
        double s = 0.0;
        for (double v : d) s += v;
        return s;
    }
    return trace(std::get<CMat>(zpart)).real();
}

namespace {

void check_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw domain_error("epsilon must lie in [0,1)");
}

}  // namespace

TestCertificate solve_classical(const ClassicalDistribution& p0,
                                const ClassicalDistribution& p1, double epsilon) {
    check_epsilon(epsilon);
    if (p0.size() != p1.size())
        throw dimension_error("solve_classical: alphabet size mismatch");
    const int n = p0.size();
    const double target = 1.0 - epsilon;
    if (p0.total() < target - 1e-12)
        throw infeasible_error("solve_classical: null mass below 1 - epsilon");

    // Outcomes with no mass under either hypothesis are free acceptance
    // mass; outcomes outside supp(P0) but inside supp(P1) only hurt.
    std::vector<int> ranked;
    std::vector<double> weights(static_cast<size_t>(n), 0.0);
    for (int y = 0; y < n; ++y) {
        if (p0[y] > 0.0)
            ranked.push_back(y);
        else if (p1[y] == 0.0)
            weights[static_cast<size_t>(y)] = 1.0;
    }

    // Ascending likelihood ratio, compared by cross products so equal
    // ratios land in one block.
    auto less_ratio = [&](int a, int b) { return p1[a] * p0[b] < p1[b] * p0[a]; };
    auto same_ratio = [&](int a, int b) { return p1[a] * p0[b] == p1[b] * p0[a]; };
    std::stable_sort(ranked.begin(), ranked.end(), less_ratio);

    double cum = 0.0;
    double boundary_ratio = 0.0;
    size_t pos = 0;
    while (pos < ranked.size() && cum < target) {
        size_t end = pos + 1;
        while (end < ranked.size() && same_ratio(ranked[pos], ranked[end])) ++end;
        double mass0 = 0.0;
        double mass1 = 0.0;
        for (size_t k = pos; k < end; ++k) {
            mass0 += p0[ranked[k]];
            mass1 += p1[ranked[k]];
        }
        boundary_ratio = mass1 / mass0;
        if (cum + mass0 <= target) {
            for (size_t k = pos; k < end; ++k) weights[static_cast<size_t>(ranked[k])] = 1.0;
            cum += mass0;
        } else {
            const double w = (target - cum) / mass0;
            for (size_t k = pos; k < end; ++k) weights[static_cast<size_t>(ranked[k])] = w;
            cum = target;
        }
        pos = end;
    }
    if (cum < target - 1e-12)
        throw infeasible_error("solve_classical: could not reach the type-I budget");

    double beta = 0.0;
    double accepted0 = 0.0;
    for (int y = 0; y < n; ++y) {
        beta += weights[static_cast<size_t>(y)] * p1[y];
        accepted0 += weights[static_cast<size_t>(y)] * p0[y];
    }

    // Complementary-slackness dual: threshold multiplier = boundary ratio,
    // per-outcome cap duals u_y = max(z*P0(y) - P1(y), 0).
    const double zstar = boundary_ratio;
    std::vector<double> udiag(static_cast<size_t>(n), 0.0);
    double usum = 0.0;
    for (int y = 0; y < n; ++y) {
        const double u = std::max(zstar * p0[y] - p1[y], 0.0);
        udiag[static_cast<size_t>(y)] = u;
        usum += u;
    }

    TestCertificate cert;
    cert.epsilon = epsilon;
    cert.beta = beta;
    cert.alpha = 1.0 - accepted0;
    cert.dual_value = target * zstar - usum;
    cert.gap = cert.beta - cert.dual_value;
    cert.dual.z = {zstar};
    cert.dual.v = {1.0};
    cert.dual.zpart = std::move(udiag);
    cert.decision = DecisionFunction::classical(std::move(weights));
    cert.iterations = 1;
    return cert;
}

std::pair<double, double> evaluate_errors(const DecisionFunction& a,
                                          const ClassicalDistribution& p0,
                                          const ClassicalDistribution& p1) {
    if (!a.is_classical())
        return evaluate_errors(a, classical_to_density(p0), classical_to_density(p1));
    if (a.dim() != p0.size() || p0.size() != p1.size())
        throw dimension_error("evaluate_errors: size mismatch");
    double acc0 = 0.0;
    double acc1 = 0.0;
    for (int y = 0; y < p0.size(); ++y) {
        acc0 += a.weights()[static_cast<size_t>(y)] * p0[y];
        acc1 += a.weights()[static_cast<size_t>(y)] * p1[y];
    }
    return {1.0 - acc0, acc1};
}

std::pair<double, double> evaluate_errors(const DecisionFunction& a, const DensityOperator& rho,
                                          const DensityOperator& sigma) {
    const CMat am = a.as_matrix();
    if (am.rows() != rho.dim() || rho.dim() != sigma.dim())
        throw dimension_error("evaluate_errors: dimension mismatch");
    return {1.0 - inner_real(rho.matrix(), am), inner_real(sigma.matrix(), am)};
}

double dhte(const ClassicalDistribution& p0, const ClassicalDistribution& p1, double epsilon) {
    const double beta = solve_classical(p0, p1, epsilon).beta;
    if (beta <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log2(beta);
}

double dhte(const DensityOperator& rho, const DensityOperator& sigma, double epsilon) {
    const double beta = solve_quantum(rho, sigma, epsilon).beta;
    if (beta <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log2(beta);
}

}  // namespace oneshot
