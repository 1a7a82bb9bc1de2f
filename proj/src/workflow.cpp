#include "oneshot/workflow.hpp"

#include <cmath>

#include "oneshot/channel.hpp"
#include "oneshot/divergence.hpp"

namespace oneshot {

MeteorScenario::MeteorScenario() {
    for (int k = 0; k <= 15; ++k) k_range.push_back(k);
}

MeteorScenario::MeteorScenario(std::vector<double> lambdas, std::vector<double> epsilons,
                               std::vector<int> ks, double fold_tol)
    : lambda_values(std::move(lambdas)),
      epsilon_values(std::move(epsilons)),
      k_range(std::move(ks)),
      fold_tolerance(fold_tol) {
    if (lambda_values.empty() || epsilon_values.empty() || k_range.empty())
        throw validation_error("meteor scenario: empty sweep");
    for (double l : lambda_values)
        if (!(l >= 0.0)) throw validation_error("meteor scenario: negative rate");
    for (double e : epsilon_values)
        if (!(e > 0.0 && e < 1.0)) throw validation_error("meteor scenario: epsilon outside (0,1)");
    for (int k : k_range)
        if (k < 0) throw validation_error("meteor scenario: negative extra count");
    if (!(fold_tolerance > 0.0)) throw validation_error("meteor scenario: bad fold tolerance");
}

ClassicalDistribution shift_and_refold(const ClassicalDistribution& p, int k) {
    if (k < 0) throw domain_error("shift_and_refold: negative shift");
    const int top = p.size() - 1;
    std::vector<double> out(static_cast<size_t>(top) + 1, 0.0);
    for (int m = 0; m < p.size(); ++m) {
        const int shifted = m + k;
        out[static_cast<size_t>(std::min(shifted, top))] += p[m];
    }
    return p.is_sub_normalized() ? ClassicalDistribution::sub_normalized(std::move(out))
                                 : ClassicalDistribution(std::move(out));
}

std::vector<MeteorRow> meteor_experiment(const MeteorScenario& scenario) {
    std::vector<MeteorRow> rows;
    for (double lambda : scenario.lambda_values) {
        const int fold = poisson_default_fold_point(lambda, scenario.fold_tolerance);
        const ClassicalDistribution p0 = poisson_truncated(lambda, fold);
        for (double eps : scenario.epsilon_values) {
            for (int k : scenario.k_range) {
                const ClassicalDistribution p1 = shift_and_refold(p0, k);
                rows.push_back({lambda, eps, k, solve_classical(p0, p1, eps).beta});
            }
        }
    }
    return rows;
}

std::vector<LaserRow> laser_experiment(int g, int s, int c, double q, double delta, int n,
                                       const std::vector<int>& powers) {
    if (n < 3) throw domain_error("laser_experiment: need at least 3 slots for jitter");
    for (int p : powers)
        if (!(c < p && p < g - s + c))
            throw domain_error("laser_experiment: power outside (c, g-s+c)");

    const ClassicalChannel travel = loss_map(c, g);
    const ClassicalChannel solar = saturating_add_map(s, g);
    const SequenceSpace space(g + 1, n);

    // device off: the all-zeros sequence
    std::vector<double> offmass(static_cast<size_t>(space.dimension()), 0.0);
    offmass[0] = 1.0;
    const ClassicalDistribution star(space, std::move(offmass));
    const ClassicalDistribution p0 =
        apply_uniform_mix(delta, apply_slotwise(solar, apply_slotwise(travel, star)));

    std::vector<LaserRow> rows;
    for (int p : powers) {
        const ClassicalDistribution init = jittered_pulse(p, q, g, n, n / 2);
        const ClassicalDistribution p1 =
            apply_uniform_mix(delta, apply_slotwise(solar, apply_slotwise(travel, init)));
        rows.push_back({p, kl(p0, p1), laser_example_kl(p, c, s, g, q, delta, n)});
    }
    return rows;
}

MeasuredDataCase::MeasuredDataCase(long long observed_outcome, ClassicalDistribution null_dist,
                                   std::vector<ClassicalDistribution> model_dists, double eps)
    : observed(observed_outcome),
      null_hypothesis(std::move(null_dist)),
      models(std::move(model_dists)),
      epsilon(eps) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw domain_error("measured data: epsilon outside (0,1)");
    if (observed < 0 || observed >= null_hypothesis.size())
        throw domain_error("measured data: observed outcome outside the alphabet");
    if (models.empty()) throw validation_error("measured data: no candidate models");
    for (const auto& m : models) {
        if (m.size() != null_hypothesis.size())
            throw dimension_error("measured data: model alphabet mismatch");
        if (!(m[int(observed)] > 0.0))
            throw validation_error("measured data: model gives the observed outcome zero mass");
    }
}

std::vector<ModelVerdict> analyze_measured_data(const MeasuredDataCase& c,
                                                const std::vector<double>& random_values) {
    if (random_values.size() != c.models.size())
        throw dimension_error("analyze_measured_data: one random draw per model required");
    std::vector<ModelVerdict> verdicts;
    for (size_t i = 0; i < c.models.size(); ++i) {
        const TestCertificate cert = solve_classical(c.null_hypothesis, c.models[i], c.epsilon);
        const double w = cert.decision.weights()[static_cast<size_t>(c.observed)];
        ModelVerdict v;
        v.model_index = int(i);
        v.acceptance_weight = w;
        v.beta = cert.beta;
        v.in_kernel = w <= 1e-12;
        // accepting the null here means "not evidence for this model"
        v.accepted = !v.in_kernel && random_values[i] < w;
        verdicts.push_back(v);
    }
    return verdicts;
}

}  // namespace oneshot
