#include "oneshot/decision.hpp"

#include "oneshot/hermitian.hpp"

namespace oneshot {

DecisionFunction DecisionFunction::classical(std::vector<double> weights) {
    for (double w : weights)
        if (!(w >= -1e-12 && w <= 1.0 + 1e-12))
            throw validation_error("decision function: weight outside [0,1]");
    DecisionFunction d;
    d.is_classical_ = true;
    d.weights_ = std::move(weights);
    return d;
}

DecisionFunction DecisionFunction::quantum(CMat a) {
    if (!is_decision_operator(a, 1e-9))
        throw validation_error("decision function: operator outside [0, I]");
    DecisionFunction d;
    d.is_classical_ = false;
    d.matrix_ = std::move(a);
    return d;
}

int DecisionFunction::dim() const {
    return is_classical_ ? int(weights_.size()) : matrix_.rows();
}

const std::vector<double>& DecisionFunction::weights() const {
    if (!is_classical_) throw validation_error("decision function: not classical");
    return weights_;
}

const CMat& DecisionFunction::matrix() const {
    if (is_classical_) throw validation_error("decision function: not quantum");
    return matrix_;
}

CMat DecisionFunction::as_matrix() const {
    if (!is_classical_) return matrix_;
    CMat m(dim(), dim());
    for (int i = 0; i < dim(); ++i) m(i, i) = weights_[static_cast<size_t>(i)];
    return m;
}

}  // namespace oneshot
