#include "oneshot/channel.hpp"

#include <cmath>
#include <utility>

namespace oneshot {

ClassicalChannel::ClassicalChannel(int out_dim, int in_dim, std::vector<double> weights)
    : in_dim_(in_dim), out_dim_(out_dim), weights_(std::move(weights)) {
    if (in_dim_ <= 0 || out_dim_ <= 0 || weights_.size() != static_cast<size_t>(in_dim_) * out_dim_)
        throw dimension_error("classical channel: bad shape");
    if (in_dim_ > max_matrix_dim() || out_dim_ > max_matrix_dim())
        throw capacity_error("classical channel: dimension exceeds cap");
    stochastic_ = true;
    for (int x = 0; x < in_dim_; ++x) {
        double col = 0.0;
        for (int y = 0; y < out_dim_; ++y) {
            const double w = weight(y, x);
            if (!(w >= 0.0)) throw validation_error("classical channel: negative weight");
            col += w;
        }
        if (col > 1.0 + 1e-12)
            throw validation_error("classical channel: column sum exceeds 1");
        if (std::abs(col - 1.0) > 1e-12) stochastic_ = false;
    }
}

ClassicalChannel ClassicalChannel::identity(int dim) {
    std::vector<double> w(static_cast<size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i) w[static_cast<size_t>(i) * dim + i] = 1.0;
    return ClassicalChannel(dim, dim, std::move(w));
}

QuantumChannel::QuantumChannel(std::vector<CMat> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw validation_error("quantum channel: empty Kraus family");
    const int in = kraus_.front().cols();
    const int out = kraus_.front().rows();
    for (const auto& k : kraus_)
        if (k.cols() != in || k.rows() != out)
            throw dimension_error("quantum channel: Kraus shapes differ");
    CMat sum(in, in);
    for (const auto& k : kraus_) sum += matmul(adjoint(k), k);
    const Spectrum s = eigendecompose(sum);
    for (double lam : s.values)
        if (lam > 1.0 + 1e-10)
            throw validation_error("quantum channel: sum K^dagger K exceeds identity");
    trace_preserving_ = true;
    for (double lam : s.values)
        if (std::abs(lam - 1.0) > 1e-10) trace_preserving_ = false;
}

QuantumChannel QuantumChannel::identity(int dim) {
    return QuantumChannel({CMat::identity(dim)});
}

ClassicalDistribution apply(const ClassicalChannel& c, const ClassicalDistribution& p) {
    if (p.size() != c.in_dim()) throw dimension_error("apply: channel/input size mismatch");
    std::vector<double> out(static_cast<size_t>(c.out_dim()), 0.0);
    for (int x = 0; x < c.in_dim(); ++x) {
        const double px = p[x];
        if (px == 0.0) continue;
        for (int y = 0; y < c.out_dim(); ++y) out[static_cast<size_t>(y)] += c.weight(y, x) * px;
    }
    if (c.is_stochastic() && !p.is_sub_normalized())
        return ClassicalDistribution(std::move(out));
    return ClassicalDistribution::sub_normalized(std::move(out));
}

DensityOperator apply(const QuantumChannel& c, const DensityOperator& rho) {
    if (rho.dim() != c.in_dim()) throw dimension_error("apply: channel/state dim mismatch");
    CMat out(c.out_dim(), c.out_dim());
    for (const auto& k : c.kraus()) out += matmul(matmul(k, rho.matrix()), adjoint(k));
    if (c.is_trace_preserving() && !rho.is_sub_normalized())
        return DensityOperator(std::move(out));
    return DensityOperator::sub_normalized(std::move(out));
}

ClassicalDistribution apply_slotwise(const ClassicalChannel& per_slot,
                                     const ClassicalDistribution& p) {
    if (!p.space()) throw dimension_error("apply_slotwise: input has no sequence structure");
    const int b_in = per_slot.in_dim();
    const int b_out = per_slot.out_dim();
    const int n = p.space()->length;
    if (p.space()->base != b_in)
        throw dimension_error("apply_slotwise: slot alphabet mismatch");
    SequenceSpace out_space(b_out, n);

    std::vector<double> cur = p.mass();
    // After transforming slot i, layout is [b_out^(i+1), b_in^(n-1-i)].
    for (int slot = 0; slot < n; ++slot) {
        long long pre = 1;
        for (int i = 0; i < slot; ++i) pre *= b_out;
        long long post = 1;
        for (int i = slot + 1; i < n; ++i) post *= b_in;
        std::vector<double> next(static_cast<size_t>(pre) * b_out * post, 0.0);
        for (long long a = 0; a < pre; ++a)
            for (int x = 0; x < b_in; ++x)
                for (long long c = 0; c < post; ++c) {
                    const double v = cur[static_cast<size_t>((a * b_in + x) * post + c)];
                    if (v == 0.0) continue;
                    for (int y = 0; y < b_out; ++y)
                        next[static_cast<size_t>((a * b_out + y) * post + c)] += per_slot.weight(y, x) * v;
                }
        cur = std::move(next);
    }
    if (per_slot.is_stochastic() && !p.is_sub_normalized())
        return ClassicalDistribution(out_space, std::move(cur));
    return ClassicalDistribution::sub_normalized(out_space, std::move(cur));
}

ClassicalChannel compose(const ClassicalChannel& outer, const ClassicalChannel& inner) {
    if (inner.out_dim() != outer.in_dim())
        throw dimension_error("compose: inner output does not match outer input");
    std::vector<double> w(static_cast<size_t>(outer.out_dim()) * inner.in_dim(), 0.0);
    for (int y = 0; y < outer.out_dim(); ++y)
        for (int x = 0; x < inner.in_dim(); ++x) {
            double s = 0.0;
            for (int m = 0; m < inner.out_dim(); ++m)
                s += outer.weight(y, m) * inner.weight(m, x);
            w[static_cast<size_t>(y) * inner.in_dim() + x] = s;
        }
    return ClassicalChannel(outer.out_dim(), inner.in_dim(), std::move(w));
}

QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner) {
    if (inner.out_dim() != outer.in_dim())
        throw dimension_error("compose: inner output does not match outer input");
    std::vector<CMat> ks;
    ks.reserve(outer.kraus().size() * inner.kraus().size());
    for (const auto& ko : outer.kraus())
        for (const auto& ki : inner.kraus()) ks.push_back(matmul(ko, ki));
    return QuantumChannel(std::move(ks));
}

DecisionFunction adjoint_apply(const ClassicalChannel& c, const DecisionFunction& a) {
    const auto& w = a.weights();
    if (int(w.size()) != c.out_dim())
        throw dimension_error("adjoint_apply: decision size mismatch");
    std::vector<double> out(static_cast<size_t>(c.in_dim()), 0.0);
    for (int x = 0; x < c.in_dim(); ++x) {
        double s = 0.0;
        for (int y = 0; y < c.out_dim(); ++y) s += c.weight(y, x) * w[static_cast<size_t>(y)];
        out[static_cast<size_t>(x)] = s;
    }
    return DecisionFunction::classical(std::move(out));
}

DecisionFunction adjoint_apply(const QuantumChannel& c, const DecisionFunction& a) {
    const CMat am = a.as_matrix();
    if (am.rows() != c.out_dim())
        throw dimension_error("adjoint_apply: decision dim mismatch");
    CMat out(c.in_dim(), c.in_dim());
    for (const auto& k : c.kraus()) out += matmul(matmul(adjoint(k), am), k);
    return DecisionFunction::quantum(std::move(out));
}

ClassicalChannel loss_map(int c, int g) {
    if (c < 0 || g < 0) throw domain_error("loss_map: need c >= 0, g >= 0");
    const int d = g + 1;
    std::vector<double> w(static_cast<size_t>(d) * d, 0.0);
    for (int y = 0; y < d; ++y) w[static_cast<size_t>(std::max(y - c, 0)) * d + y] = 1.0;
    return ClassicalChannel(d, d, std::move(w));
}

ClassicalChannel saturating_add_map(int s, int g) {
    if (s < 0 || s > g) throw domain_error("saturating_add_map: need 0 <= s <= g");
    const int d = g + 1;
    std::vector<double> w(static_cast<size_t>(d) * d, 0.0);
    for (int y = 0; y < d; ++y) w[static_cast<size_t>(std::min(y + s, g)) * d + y] = 1.0;
    return ClassicalChannel(d, d, std::move(w));
}

ClassicalChannel uniform_mix_map(double delta, int dim) {
    if (!(delta > 0.0 && delta < 1.0))
        throw domain_error("uniform_mix_map: delta must lie in (0,1)");
    if (dim > max_matrix_dim())
        throw capacity_error("uniform_mix_map: use apply_uniform_mix beyond the matrix cap");
    std::vector<double> w(static_cast<size_t>(dim) * dim, delta / dim);
    for (int i = 0; i < dim; ++i) w[static_cast<size_t>(i) * dim + i] += 1.0 - delta;
    return ClassicalChannel(dim, dim, std::move(w));
}

ClassicalChannel truncate_projection(int dim, const std::function<bool(int)>& keep) {
    std::vector<double> w(static_cast<size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i)
        if (keep(i)) w[static_cast<size_t>(i) * dim + i] = 1.0;
    return ClassicalChannel(dim, dim, std::move(w));
}

ClassicalDistribution apply_uniform_mix(double delta, const ClassicalDistribution& p) {
    if (!(delta > 0.0 && delta < 1.0))
        throw domain_error("apply_uniform_mix: delta must lie in (0,1)");
    std::vector<double> out(p.mass());
    const double fill = delta / double(p.size()) * p.total();
    for (double& v : out) v = (1.0 - delta) * v + fill;
    if (p.is_sub_normalized()) {
        if (p.space()) return ClassicalDistribution::sub_normalized(*p.space(), std::move(out));
        return ClassicalDistribution::sub_normalized(std::move(out));
    }
    if (p.space()) return ClassicalDistribution(*p.space(), std::move(out));
    return ClassicalDistribution(std::move(out));
}

ClassicalDistribution jittered_pulse(int power, double q, int g, int n_slots, int center) {
    if (!(q > 0.0 && q < 1.0)) throw domain_error("jittered_pulse: q must lie in (0,1)");
    if (power < 0 || power > g) throw domain_error("jittered_pulse: power outside [0,g]");
    if (center < 1 || center > n_slots - 2)
        throw domain_error("jittered_pulse: jitter must stay inside the window");
    SequenceSpace space(g + 1, n_slots);
    std::vector<double> mass(static_cast<size_t>(space.dimension()), 0.0);
    auto pulse_at = [&](int slot) {
        std::vector<int> seq(static_cast<size_t>(n_slots), 0);
        seq[static_cast<size_t>(slot)] = power;
        return space.index_of(seq);
    };
    mass[static_cast<size_t>(pulse_at(center))] += 1.0 - q;
    mass[static_cast<size_t>(pulse_at(center - 1))] += q / 2.0;
    mass[static_cast<size_t>(pulse_at(center + 1))] += q / 2.0;
    return ClassicalDistribution(space, std::move(mass));
}

}  // namespace oneshot
