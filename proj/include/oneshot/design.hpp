#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "oneshot/channel.hpp"
#include "oneshot/hyptest.hpp"

namespace oneshot {

// a . x <= b
struct LinearInequality {
    std::vector<double> a;
    double b = 0.0;
};

// Device distributions live on the probability simplex; user inequalities
// cut it further. Bounded by construction; a feasibility solve at
// construction rejects empty polytopes.
class ConstraintPolytope {
  public:
    ConstraintPolytope(int dimension, std::vector<LinearInequality> inequalities);

    int dimension() const { return dim_; }
    const std::vector<LinearInequality>& inequalities() const { return ineqs_; }

    bool contains(const std::vector<double>& x, double tol = 1e-9) const;

    // All vertices (basic feasible points), deduplicated, sorted
    // lexicographically. Exact maximization of a convex objective scans
    // these. Dimension capped at 12.
    std::vector<std::vector<double>> vertices() const;

    // Dykstra projection onto simplex + halfspaces.
    std::vector<double> project(std::vector<double> x) const;

  private:
    int dim_ = 0;
    std::vector<LinearInequality> ineqs_;
};

enum class DesignMethod { vertex_enumeration, multi_start_gradient, alternating };

struct DesignResult {
    ClassicalDistribution best_device;
    double objective_bits = 0.0;  // may be +infinity
    DesignMethod method = DesignMethod::vertex_enumeration;
    int iterations = 0;
};

// max_{x in C} D(N(star) || N(x)). The objective is convex in x, so the
// maximum over the polytope sits at a vertex; scanning vertices is exact.
// Returns +infinity with a witness vertex when supp N(star) escapes
// supp N(x).
DesignResult optimize_source_exact(const ClassicalChannel& channel,
                                   const ClassicalDistribution& star,
                                   const ConstraintPolytope& polytope);

// Projected-gradient-ascent heuristic for the same objective; best of
// `restarts` seeded starts, bit-identical for a fixed seed.
DesignResult optimize_source_gradient(const ClassicalChannel& channel,
                                      const ClassicalDistribution& star,
                                      const ConstraintPolytope& polytope, int restarts,
                                      std::uint64_t seed);

// Average-power (linear) and peak-power (support cap) constraints over the
// stack receiver . transmission . sender, then exact vertex optimization.
DesignResult em_power_design(const ClassicalChannel& sender, const ClassicalChannel& transmission,
                             const ClassicalChannel& receiver, const ClassicalDistribution& star,
                             double avg_power, double peak_power,
                             const std::vector<double>& power_cost);

// Alternating design/test optimization for a noisy designed signal under an
// energy budget: inner exact test for fixed device, outer linear program
// over the energy polytope for fixed test. Stationary point only; no global
// claim.
std::pair<DesignResult, TestCertificate> inscribed_matter_design(
    const ClassicalChannel& noise, const ClassicalDistribution& null_hypothesis, double epsilon,
    const std::vector<double>& energy, double budget);

}  // namespace oneshot
