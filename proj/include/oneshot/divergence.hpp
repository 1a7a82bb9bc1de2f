#pragma once

#include <vector>

#include "oneshot/distribution.hpp"

namespace oneshot {

// Block-length scan of the one-shot rate (1/n) D^eps_H(P0^n || P1^n)
// against the relative-entropy reference it converges to.
struct RateCurve {
    struct Point {
        int n;
        double rate_bits;
    };
    double epsilon = 0.0;
    std::vector<Point> points;       // sorted by n
    double reference_bits = 0.0;     // D(P0||P1)
};

// Relative entropy in bits, with the 0 log 0 convention and a +infinity
// sentinel when supp(P0) escapes supp(P1).
double kl(const ClassicalDistribution& p0, const ClassicalDistribution& p1);

// Tr rho (log2 rho - log2 sigma) on the support of rho; +infinity when the
// support containment fails.
double quantum_relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

double bits_to_nats(double bits);

RateCurve stein_rate_curve(const ClassicalDistribution& p0, const ClassicalDistribution& p1,
                           double epsilon, int n_max);

// Closed form for the jittered-pulse example: the relative entropy between
// the noise-only and pulsed hypotheses after loss c, saturating solar
// background s, and uniform mixing delta over (g+1)^n sequences. Constant in
// the pulse power P throughout c < P < g-s+c, and zero at P = c.
double laser_example_kl(int power, int c, int s, int g, double q, double delta, int n);

}  // namespace oneshot
