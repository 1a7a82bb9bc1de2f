#pragma once

#include <functional>
#include <vector>

#include "oneshot/decision.hpp"
#include "oneshot/distribution.hpp"

namespace oneshot {

// Substochastic transition matrix: column y holds the image of input symbol
// y; every column sums to at most 1. Trace non-increasing by construction;
// stochastic (trace-preserving) iff every column sums to exactly 1.
class ClassicalChannel {
  public:
    ClassicalChannel() = default;
    ClassicalChannel(int out_dim, int in_dim, std::vector<double> weights);

    int in_dim() const { return in_dim_; }
    int out_dim() const { return out_dim_; }
    bool is_stochastic() const { return stochastic_; }
    double weight(int out, int in) const { return weights_[size_t(out) * in_dim_ + in]; }

    static ClassicalChannel identity(int dim);

  private:
    int in_dim_ = 0;
    int out_dim_ = 0;
    std::vector<double> weights_;  // row-major, out x in
    bool stochastic_ = false;
};

// Kraus family {K_k}; completely positive, trace non-increasing
// (sum K^dagger K <= I), trace-preserving iff equality.
class QuantumChannel {
  public:
    QuantumChannel() = default;
    explicit QuantumChannel(std::vector<CMat> kraus);

    int in_dim() const { return kraus_.front().cols(); }
    int out_dim() const { return kraus_.front().rows(); }
    bool is_trace_preserving() const { return trace_preserving_; }
    const std::vector<CMat>& kraus() const { return kraus_; }

    static QuantumChannel identity(int dim);

  private:
    std::vector<CMat> kraus_;
    bool trace_preserving_ = false;
};

ClassicalDistribution apply(const ClassicalChannel& c, const ClassicalDistribution& p);
DensityOperator apply(const QuantumChannel& c, const DensityOperator& rho);

// Applies a single-slot channel to every slot of a sequence-structured
// distribution without materializing the lifted sequence-space matrix.
ClassicalDistribution apply_slotwise(const ClassicalChannel& per_slot,
                                     const ClassicalDistribution& p);

ClassicalChannel compose(const ClassicalChannel& outer, const ClassicalChannel& inner);
QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner);

// N^dagger(A): transpose action classically, sum K^dagger A K quantumly.
// Maps decision functions to decision functions for trace non-increasing N.
DecisionFunction adjoint_apply(const ClassicalChannel& c, const DecisionFunction& a);
DecisionFunction adjoint_apply(const QuantumChannel& c, const DecisionFunction& a);

// Named per-slot noise maps on the power alphabet {0..g}.
ClassicalChannel loss_map(int c, int g);
ClassicalChannel saturating_add_map(int s, int g);
ClassicalChannel uniform_mix_map(double delta, int dim);
ClassicalChannel truncate_projection(int dim, const std::function<bool(int)>& keep);

// The uniform-mix action (1-delta) p + delta/dim applied directly; identical
// to apply(uniform_mix_map(...), p) but without materializing the matrix, so
// it works on full sequence spaces.
ClassicalDistribution apply_uniform_mix(double delta, const ClassicalDistribution& p);

// Square pulse of height `power` in slot `center` of `n_slots`, shifted one
// slot early/late with probability q/2 each.
ClassicalDistribution jittered_pulse(int power, double q, int g, int n_slots, int center);

}  // namespace oneshot
