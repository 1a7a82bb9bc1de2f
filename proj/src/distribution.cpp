#include "oneshot/distribution.hpp"

#include <cmath>
#include <utility>

namespace oneshot {

SequenceSpace::SequenceSpace(int base_alphabet, int n) : base(base_alphabet), length(n) {
    if (base <= 0 || length <= 0)
        throw domain_error("SequenceSpace: base and length must be positive");
    dimension();  // capacity check
}

long long SequenceSpace::dimension() const {
    long long d = 1;
    for (int i = 0; i < length; ++i) {
        d *= base;
        if (d > max_outcomes())
            throw capacity_error("SequenceSpace: dimension exceeds outcome cap");
    }
    return d;
}

long long SequenceSpace::index_of(const std::vector<int>& symbols) const {
    if (int(symbols.size()) != length)
        throw dimension_error("SequenceSpace: wrong sequence length");
    long long idx = 0;
    for (int s : symbols) {
        if (s < 0 || s >= base) throw domain_error("SequenceSpace: symbol out of range");
        idx = idx * base + s;
    }
    return idx;
}

std::vector<int> SequenceSpace::symbols_of(long long index) const {
    std::vector<int> s(static_cast<size_t>(length));
    for (int i = length - 1; i >= 0; --i) {
        s[static_cast<size_t>(i)] = int(index % base);
        index /= base;
    }
    return s;
}

ClassicalDistribution::ClassicalDistribution(std::vector<double> mass,
                                             std::optional<SequenceSpace> space,
                                             bool sub_normalized, bool validate)
    : mass_(std::move(mass)), space_(space), sub_normalized_(sub_normalized) {
    if (!validate) return;
    if (mass_.empty()) throw validation_error("distribution: empty mass vector");
    if (space_ && space_->dimension() != int64_t(mass_.size()))
        throw dimension_error("distribution: mass size does not match sequence space");
    double sum = 0.0;
    for (double m : mass_) {
        if (!(m >= 0.0)) throw validation_error("distribution: negative or NaN mass entry");
        sum += m;
    }
    if (sub_normalized_) {
        if (sum > 1.0 + 1e-12) throw validation_error("distribution: mass exceeds 1");
    } else {
        if (std::abs(sum - 1.0) > 1e-12)
            throw validation_error("distribution: mass does not sum to 1");
    }
}

ClassicalDistribution::ClassicalDistribution(std::vector<double> mass)
    : ClassicalDistribution(std::move(mass), std::nullopt, false, true) {}

ClassicalDistribution::ClassicalDistribution(SequenceSpace space, std::vector<double> mass)
    : ClassicalDistribution(std::move(mass), space, false, true) {}

ClassicalDistribution ClassicalDistribution::sub_normalized(std::vector<double> mass) {
    return ClassicalDistribution(std::move(mass), std::nullopt, true, true);
}

ClassicalDistribution ClassicalDistribution::sub_normalized(SequenceSpace space,
                                                            std::vector<double> mass) {
    return ClassicalDistribution(std::move(mass), space, true, true);
}

double ClassicalDistribution::total() const {
    double s = 0.0;
    for (double m : mass_) s += m;
    return s;
}

DensityOperator::DensityOperator(CMat matrix) : matrix_(std::move(matrix)) {
    require_hermitian(matrix_, 1e-12, "density operator");
    if (min_eigenvalue(matrix_) < -1e-10)
        throw validation_error("density operator: not positive semidefinite");
    if (std::abs(trace(matrix_).real() - 1.0) > 1e-10)
        throw validation_error("density operator: trace is not 1");
}

DensityOperator DensityOperator::sub_normalized(CMat matrix) {
    DensityOperator rho;
    require_hermitian(matrix, 1e-12, "density operator");
    if (min_eigenvalue(matrix) < -1e-10)
        throw validation_error("density operator: not positive semidefinite");
    if (trace(matrix).real() > 1.0 + 1e-10)
        throw validation_error("density operator: trace exceeds 1");
    rho.matrix_ = std::move(matrix);
    rho.sub_normalized_ = true;
    return rho;
}

ClassicalDistribution poisson_truncated(double rate, int fold_point, int cutoff) {
    if (!(rate >= 0.0)) throw domain_error("poisson_truncated: rate must be >= 0");
    if (fold_point < 0 || fold_point > cutoff)
        throw domain_error("poisson_truncated: need 0 <= fold_point <= cutoff");
    std::vector<double> mass(static_cast<size_t>(cutoff) + 1, 0.0);
    double pmf = std::exp(-rate);
    double cum = 0.0;
    for (int k = 0; k < fold_point; ++k) {
        mass[static_cast<size_t>(k)] = pmf;
        cum += pmf;
        pmf *= rate / double(k + 1);
    }
    mass[static_cast<size_t>(fold_point)] = std::max(0.0, 1.0 - cum);
    return ClassicalDistribution(std::move(mass));
}

ClassicalDistribution poisson_truncated(double rate, int fold_point) {
    return poisson_truncated(rate, fold_point, fold_point);
}

int poisson_default_fold_point(double rate, double tail_tol) {
    if (!(rate >= 0.0)) throw domain_error("poisson fold point: rate must be >= 0");
    double pmf = std::exp(-rate);
    double cum = 0.0;
    for (int n = 0; n < 4096; ++n) {
        // tail above n-1, i.e. 1 - F(n-1), with F(-1) = 0
        if (1.0 - cum <= tail_tol) return n;
        cum += pmf;
        pmf *= rate / double(n + 1);
    }
    throw capacity_error("poisson fold point: tail does not reach tolerance");
}

namespace {

std::vector<double> kron_vec(const std::vector<double>& a, const std::vector<double>& b) {
    if (int64_t(a.size()) * int64_t(b.size()) > max_outcomes())
        throw capacity_error("distribution product exceeds outcome cap");
    std::vector<double> out(a.size() * b.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
    return out;
}

}  // namespace

ClassicalDistribution iid_power(const ClassicalDistribution& p, int n) {
    if (n <= 0) throw domain_error("iid_power: n must be positive");
    std::vector<double> out = p.mass();
    for (int i = 1; i < n; ++i) out = kron_vec(out, p.mass());
    const int base = p.space() ? p.space()->base : p.size();
    const int len = p.space() ? p.space()->length * n : n;
    SequenceSpace space(base, len);
    return p.is_sub_normalized() ? ClassicalDistribution::sub_normalized(space, std::move(out))
                                 : ClassicalDistribution(space, std::move(out));
}

DensityOperator iid_power(const DensityOperator& rho, int n) {
    if (n <= 0) throw domain_error("iid_power: n must be positive");
    CMat out = rho.matrix();
    for (int i = 1; i < n; ++i) out = kron(out, rho.matrix());
    return rho.is_sub_normalized() ? DensityOperator::sub_normalized(std::move(out))
                                   : DensityOperator(std::move(out));
}

ClassicalDistribution embed_signal_with_arrival(const ClassicalDistribution& signal,
                                                const ClassicalDistribution& null_symbol,
                                                const ClassicalDistribution& arrival,
                                                int total_slots) {
    const int base = null_symbol.size();
    if (!signal.space() || signal.space()->base != base)
        throw dimension_error("embed: signal must be a sequence over the null alphabet");
    const int k = signal.space()->length;
    if (total_slots < k) throw domain_error("embed: total slots shorter than signal");
    const int max_shift = total_slots - k;
    if (arrival.size() > max_shift + 1)
        throw domain_error("embed: arrival support exceeds total_slots - k");
    if (arrival.is_sub_normalized() || signal.is_sub_normalized() ||
        null_symbol.is_sub_normalized())
        throw validation_error("embed: inputs must be normalized");

    SequenceSpace space(base, total_slots);
    std::vector<double> out(static_cast<size_t>(space.dimension()), 0.0);
    for (int nu = 0; nu < arrival.size(); ++nu) {
        const double w = arrival[nu];
        if (w == 0.0) continue;
        std::vector<double> placed{1.0};
        for (int i = 0; i < nu; ++i) placed = kron_vec(placed, null_symbol.mass());
        placed = kron_vec(placed, signal.mass());
        for (int i = 0; i < total_slots - k - nu; ++i)
            placed = kron_vec(placed, null_symbol.mass());
        for (size_t y = 0; y < out.size(); ++y) out[y] += w * placed[y];
    }
    return ClassicalDistribution(space, std::move(out));
}

DensityOperator classical_to_density(const ClassicalDistribution& p) {
    if (p.size() > max_matrix_dim())
        throw capacity_error("classical_to_density: dimension exceeds matrix cap");
    CMat m(p.size(), p.size());
    for (int i = 0; i < p.size(); ++i) m(i, i) = p[i];
    return p.is_sub_normalized() ? DensityOperator::sub_normalized(std::move(m))
                                 : DensityOperator(std::move(m));
}

ClassicalDistribution pinch(const DensityOperator& rho) {
    std::vector<double> mass(static_cast<size_t>(rho.dim()));
    double sum = 0.0;
    for (int i = 0; i < rho.dim(); ++i) {
        double v = rho.matrix()(i, i).real();
        if (v < 0.0) v = 0.0;  // PSD diagonal, rounding only
        mass[static_cast<size_t>(i)] = v;
        sum += v;
    }
    if (rho.is_sub_normalized())
        return ClassicalDistribution::sub_normalized(std::move(mass));
    for (double& v : mass) v /= sum;
    return ClassicalDistribution(std::move(mass));
}

}  // namespace oneshot
