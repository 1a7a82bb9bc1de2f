#pragma once

#include <optional>
#include <vector>

#include "oneshot/hyptest.hpp"

namespace oneshot {

// Sweep of the extra-meteor detection problem: truncated Poisson null
// against the same process with k deterministic extra counts.
struct MeteorScenario {
    std::vector<double> lambda_values{3.0, 6.0};
    std::vector<double> epsilon_values{0.05, 0.01, 0.001};
    std::vector<int> k_range;  // defaults to 0..15
    double fold_tolerance = 1e-12;

    MeteorScenario();
    MeteorScenario(std::vector<double> lambdas, std::vector<double> epsilons,
                   std::vector<int> ks, double fold_tol = 1e-12);
};

struct MeteorRow {
    double lambda;
    double epsilon;
    int k;
    double beta;
};

std::vector<MeteorRow> meteor_experiment(const MeteorScenario& scenario);

// The k-count shift of a folded distribution, re-folded at the same cutoff.
ClassicalDistribution shift_and_refold(const ClassicalDistribution& p, int k);

struct LaserRow {
    int power;
    double kl_bits;
    double reference_bits;
};

// Builds both hypotheses through the loss / saturating-add / uniform-mix
// stack for each pulse power and reports the relative entropy next to the
// closed form.
std::vector<LaserRow> laser_experiment(int g, int s, int c, double q, double delta, int n,
                                       const std::vector<int>& powers);

// Already-measured outcome d checked against candidate models: each model
// must give d nonzero probability.
struct MeasuredDataCase {
    long long observed = 0;
    ClassicalDistribution null_hypothesis;
    std::vector<ClassicalDistribution> models;
    double epsilon = 0.0;

    MeasuredDataCase(long long observed_outcome, ClassicalDistribution null_dist,
                     std::vector<ClassicalDistribution> model_dists, double eps);
};

struct ModelVerdict {
    int model_index;
    bool in_kernel;             // acceptance weight of d is 0: not evidence
    double acceptance_weight;   // weight the optimal test puts on d
    double beta;                // solver value for this model
    bool accepted;              // randomized step with the supplied draw
};

// One verdict per model; `random_values` supplies the randomness for the
// final accept/reject step (one draw per model, in [0,1)).
std::vector<ModelVerdict> analyze_measured_data(const MeasuredDataCase& c,
                                                const std::vector<double>& random_values);

}  // namespace oneshot
