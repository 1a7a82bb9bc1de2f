#pragma once

#include <vector>

#include "oneshot/matrix.hpp"

namespace oneshot {

// Acceptance test: classical per-outcome weights in [0,1], or a quantum
// operator A with 0 <= A <= I. Accepting means "declare the null".
class DecisionFunction {
  public:
    DecisionFunction() = default;

    static DecisionFunction classical(std::vector<double> weights);
    static DecisionFunction quantum(CMat a);

    bool is_classical() const { return is_classical_; }
    int dim() const;
    const std::vector<double>& weights() const;
    const CMat& matrix() const;

    // Diagonal lift of classical weights; identity for quantum decisions.
    CMat as_matrix() const;

  private:
    bool is_classical_ = true;
    std::vector<double> weights_;
    CMat matrix_;
};

}  // namespace oneshot
