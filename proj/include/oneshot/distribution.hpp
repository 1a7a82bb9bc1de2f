#pragma once

#include <optional>
#include <vector>

#include "oneshot/hermitian.hpp"

namespace oneshot {

// Finite sequence alphabet: `base` symbols per slot, `length` slots.
// Outcomes map to integers in base `base`, most significant slot first.
struct SequenceSpace {
    int base = 0;
    int length = 0;

    SequenceSpace() = default;
    SequenceSpace(int base_alphabet, int n);

    long long dimension() const;
    long long index_of(const std::vector<int>& symbols) const;
    std::vector<int> symbols_of(long long index) const;
};

// Probability vector over a finite (possibly sequence-structured) alphabet.
// Sub-normalized variants are produced only by trace non-increasing maps and
// carry an explicit flag.
class ClassicalDistribution {
  public:
    ClassicalDistribution() = default;
    explicit ClassicalDistribution(std::vector<double> mass);
    ClassicalDistribution(SequenceSpace space, std::vector<double> mass);

    static ClassicalDistribution sub_normalized(std::vector<double> mass);
    static ClassicalDistribution sub_normalized(SequenceSpace space, std::vector<double> mass);

    int size() const { return int(mass_.size()); }
    double operator[](int i) const { return mass_[size_t(i)]; }
    const std::vector<double>& mass() const { return mass_; }
    bool is_sub_normalized() const { return sub_normalized_; }
    double total() const;
    const std::optional<SequenceSpace>& space() const { return space_; }

  private:
    ClassicalDistribution(std::vector<double> mass, std::optional<SequenceSpace> space,
                          bool sub_normalized, bool validate);

    std::vector<double> mass_;
    std::optional<SequenceSpace> space_;
    bool sub_normalized_ = false;
};

// Hermitian positive-semidefinite matrix of unit trace (trace <= 1 when
// flagged sub-normalized).
class DensityOperator {
  public:
    DensityOperator() = default;
    explicit DensityOperator(CMat matrix);
    static DensityOperator sub_normalized(CMat matrix);

    int dim() const { return matrix_.rows(); }
    const CMat& matrix() const { return matrix_; }
    bool is_sub_normalized() const { return sub_normalized_; }

  private:
    CMat matrix_;
    bool sub_normalized_ = false;
};

// Poisson pmf on {0..cutoff} with the tail mass from fold_point upward
// folded onto fold_point; entries above fold_point are zero.
ClassicalDistribution poisson_truncated(double rate, int fold_point, int cutoff);
ClassicalDistribution poisson_truncated(double rate, int fold_point);

// Smallest fold point whose tail mass 1 - F(n-1) is at most tail_tol.
int poisson_default_fold_point(double rate, double tail_tol = 1e-12);

ClassicalDistribution iid_power(const ClassicalDistribution& p, int n);
DensityOperator iid_power(const DensityOperator& rho, int n);

// sum_nu Pr[nu] (null^nu (x) signal (x) null^(n-k-nu)); the unknown-arrival
// mixture over placements of a k-slot signal in n slots.
ClassicalDistribution embed_signal_with_arrival(const ClassicalDistribution& signal,
                                                const ClassicalDistribution& null_symbol,
                                                const ClassicalDistribution& arrival,
                                                int total_slots);

DensityOperator classical_to_density(const ClassicalDistribution& p);
ClassicalDistribution pinch(const DensityOperator& rho);

}  // namespace oneshot
