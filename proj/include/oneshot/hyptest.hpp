#pragma once

#include <variant>
#include <vector>

#include "oneshot/decision.hpp"
#include "oneshot/distribution.hpp"

namespace oneshot {

// Dual certificate (z, v, Z) for the hypothesis-testing program. Z is kept
// diagonal for classical instances.
struct DualVariables {
    std::vector<double> z;  // one per null hypothesis
    std::vector<double> v;  // one per alternative hypothesis
    std::variant<std::vector<double>, CMat> zpart;

    bool z_is_diagonal() const { return zpart.index() == 0; }
    double zpart_trace() const;
};

// Primal/dual solution of the minimum type-II-error program at type-I bound
// epsilon. `beta` is the primal value achieved by `decision`; `dual_value`
// comes from a dual-feasible point, so gap = beta - dual_value >= 0 up to
// rounding.
struct TestCertificate {
    double epsilon = 0.0;
    double beta = 0.0;
    double alpha = 0.0;
    double dual_value = 0.0;
    double gap = 0.0;
    DualVariables dual;
    DecisionFunction decision;
    int iterations = 0;
};

// Exact Neyman-Pearson linear program: outcomes sorted by likelihood ratio
// P1(y)/P0(y), acceptance mass assigned greedily until the type-I budget is
// spent, one fractional block at the boundary. The dual is reconstructed
// from complementary slackness.
TestCertificate solve_classical(const ClassicalDistribution& p0,
                                const ClassicalDistribution& p1, double epsilon);

// Quantum Neyman-Pearson family: bisection over the threshold t of the
// pencil rho - t*sigma, with a closed-form fractional weight on the
// threshold eigenspace so that Tr(rho A) hits 1 - epsilon exactly.
TestCertificate solve_quantum(const DensityOperator& rho, const DensityOperator& sigma,
                              double epsilon);

// Composite program over finite null/alternative sets: minimize gamma
// subject to <X,P0_i> >= 1-eps, <X,P1_j> <= gamma, 0 <= X <= I. Solved by a
// log-barrier interior-point method; the returned dual variables are
// feasible by construction and certify the gap.
TestCertificate solve_composite(const std::vector<DensityOperator>& nulls,
                                const std::vector<DensityOperator>& alts, double epsilon);

// Asymptotic type-II error for finite-length signals that return to an
// i.i.d. null: builds {rho^(x)k : rho in eta} and runs solve_composite
// against the signal set. The value is already the n -> infinity limit.
TestCertificate finite_time_beta(const std::vector<DensityOperator>& eta,
                                 const std::vector<DensityOperator>& signals, double epsilon);

std::pair<double, double> evaluate_errors(const DecisionFunction& a,
                                          const ClassicalDistribution& p0,
                                          const ClassicalDistribution& p1);
std::pair<double, double> evaluate_errors(const DecisionFunction& a, const DensityOperator& rho,
                                          const DensityOperator& sigma);

// -log2 of the solver's beta; +infinity when beta = 0.
double dhte(const ClassicalDistribution& p0, const ClassicalDistribution& p1, double epsilon);
double dhte(const DensityOperator& rho, const DensityOperator& sigma, double epsilon);

}  // namespace oneshot
