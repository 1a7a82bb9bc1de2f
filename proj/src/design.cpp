#include "oneshot/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "oneshot/divergence.hpp"

namespace oneshot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    // largest prefix whose common shift keeps every kept entry positive
    double cum = 0.0;
    double tau = 0.0;
    for (int j = 0; j < int(u.size()); ++j) {
        cum += u[static_cast<size_t>(j)];
        const double cand = (1.0 - cum) / double(j + 1);
        if (u[static_cast<size_t>(j)] + cand > 0.0) tau = cand;
    }
    for (double& x : v) x = std::max(x + tau, 0.0);
    return v;
}

std::vector<double> clean_simplex_point(std::vector<double> x) {
    double sum = 0.0;
    for (double& v : x) {
        if (v < 0.0) v = 0.0;
        sum += v;
    }
    for (double& v : x) v /= sum;
    return x;
}

// Solves m x m dense systems for basic points; returns false when singular.
bool solve_dense(std::vector<double> a, std::vector<double> b, int m,
                 std::vector<double>& out) {
    std::vector<int> piv(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) piv[static_cast<size_t>(i)] = i;
    for (int col = 0; col < m; ++col) {
        int best = col;
        double mag = std::abs(a[static_cast<size_t>(col) * m + col]);
        for (int r = col + 1; r < m; ++r) {
            const double v = std::abs(a[static_cast<size_t>(r) * m + col]);
            if (v > mag) {
                mag = v;
                best = r;
            }
        }
        if (mag < 1e-12) return false;
        if (best != col) {
            for (int k = 0; k < m; ++k)
                std::swap(a[static_cast<size_t>(col) * m + k], a[static_cast<size_t>(best) * m + k]);
            std::swap(b[static_cast<size_t>(col)], b[static_cast<size_t>(best)]);
        }
        for (int r = col + 1; r < m; ++r) {
            const double f = a[static_cast<size_t>(r) * m + col] / a[static_cast<size_t>(col) * m + col];
            if (f == 0.0) continue;
            for (int k = col; k < m; ++k) a[static_cast<size_t>(r) * m + k] -= f * a[static_cast<size_t>(col) * m + k];
            b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
        }
    }
    out.assign(static_cast<size_t>(m), 0.0);
    for (int r = m - 1; r >= 0; --r) {
        double s = b[static_cast<size_t>(r)];
        for (int k = r + 1; k < m; ++k) s -= a[static_cast<size_t>(r) * m + k] * out[static_cast<size_t>(k)];
        out[static_cast<size_t>(r)] = s / a[static_cast<size_t>(r) * m + r];
    }
    return true;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

ConstraintPolytope::ConstraintPolytope(int dimension, std::vector<LinearInequality> inequalities)
    : dim_(dimension), ineqs_(std::move(inequalities)) {
    if (dim_ <= 0) throw domain_error("polytope: dimension must be positive");
    for (const auto& q : ineqs_)
        if (int(q.a.size()) != dim_)
            throw dimension_error("polytope: inequality coefficient size mismatch");
    if (dim_ <= 12) {
        if (vertices().empty()) throw infeasible_error("polytope: no feasible point");
    } else {
        std::vector<double> probe(static_cast<size_t>(dim_), 1.0 / dim_);
        if (!contains(project(std::move(probe)), 1e-7))
            throw infeasible_error("polytope: no feasible point found by projection");
    }
}

bool ConstraintPolytope::contains(const std::vector<double>& x, double tol) const {
    if (int(x.size()) != dim_) return false;
    double sum = 0.0;
    for (double v : x) {
        if (v < -tol) return false;
        sum += v;
    }
    if (std::abs(sum - 1.0) > tol * dim_) return false;
    for (const auto& q : ineqs_)
        if (dot(q.a, x) > q.b + tol) return false;
    return true;
}

std::vector<std::vector<double>> ConstraintPolytope::vertices() const {
    if (dim_ > 12) throw capacity_error("polytope: vertex enumeration capped at dimension 12");
    const int m = dim_;
    // Constraint pool: coordinate planes x_i = 0, then a_k . x = b_k; the
    // normalization sum x = 1 is always active.
    const int pool = m + int(ineqs_.size());
    std::vector<std::vector<double>> verts;

    std::vector<int> pick(static_cast<size_t>(std::max(m - 1, 0)));
    std::vector<double> a(static_cast<size_t>(m) * m), rhs(static_cast<size_t>(m)), x;

    auto try_combination = [&]() {
        for (int k = 0; k < m; ++k) a[static_cast<size_t>(0) * m + k] = 1.0;
        rhs[0] = 1.0;
        for (int r = 0; r < m - 1; ++r) {
            const int c = pick[static_cast<size_t>(r)];
            if (c < m) {
                for (int k = 0; k < m; ++k) a[static_cast<size_t>(r + 1) * m + k] = (k == c) ? 1.0 : 0.0;
                rhs[static_cast<size_t>(r + 1)] = 0.0;
            } else {
                const auto& q = ineqs_[static_cast<size_t>(c - m)];
                for (int k = 0; k < m; ++k) a[static_cast<size_t>(r + 1) * m + k] = q.a[static_cast<size_t>(k)];
                rhs[static_cast<size_t>(r + 1)] = q.b;
            }
        }
        if (!solve_dense(a, rhs, m, x)) return;
        for (double v : x)
            if (!(v >= -1e-9)) return;
        for (const auto& q : ineqs_)
            if (dot(q.a, x) > q.b + 1e-9) return;
        for (const auto& known : verts) {
            double dist = 0.0;
            for (int k = 0; k < m; ++k) dist = std::max(dist, std::abs(known[static_cast<size_t>(k)] - x[static_cast<size_t>(k)]));
            if (dist < 1e-9) return;
        }
        verts.push_back(x);
    };

    if (m == 1) {
        x = {1.0};
        bool ok = true;
        for (const auto& q : ineqs_)
            if (dot(q.a, x) > q.b + 1e-9) ok = false;
        if (ok) verts.push_back(x);
    } else {
        for (int i = 0; i < m - 1; ++i) pick[static_cast<size_t>(i)] = i;
        while (true) {
            try_combination();
            int i = m - 2;
            while (i >= 0 && pick[static_cast<size_t>(i)] == pool - (m - 1 - i)) --i;
            if (i < 0) break;
            ++pick[static_cast<size_t>(i)];
            for (int j = i + 1; j < m - 1; ++j) pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
        }
    }
    std::sort(verts.begin(), verts.end());
    return verts;
}

std::vector<double> ConstraintPolytope::project(std::vector<double> x) const {
    if (int(x.size()) != dim_) throw dimension_error("polytope: projection size mismatch");
    const size_t sets = 1 + ineqs_.size();
    std::vector<std::vector<double>> corrections(sets, std::vector<double>(static_cast<size_t>(dim_), 0.0));
    for (int pass = 0; pass < 2000; ++pass) {
        double change = 0.0;
        for (size_t s = 0; s < sets; ++s) {
            std::vector<double> y(static_cast<size_t>(dim_));
            for (int k = 0; k < dim_; ++k)
                y[static_cast<size_t>(k)] = x[static_cast<size_t>(k)] + corrections[s][static_cast<size_t>(k)];
            std::vector<double> projected;
            if (s == 0) {
                projected = project_simplex(y);
            } else {
                const auto& q = ineqs_[s - 1];
                projected = y;
                const double viol = dot(q.a, y) - q.b;
                if (viol > 0.0) {
                    const double nn = dot(q.a, q.a);
                    if (nn > 0.0)
                        for (int k = 0; k < dim_; ++k)
                            projected[static_cast<size_t>(k)] -= viol / nn * q.a[static_cast<size_t>(k)];
                }
            }
            for (int k = 0; k < dim_; ++k) {
                corrections[s][static_cast<size_t>(k)] = y[static_cast<size_t>(k)] - projected[static_cast<size_t>(k)];
                change = std::max(change, std::abs(projected[static_cast<size_t>(k)] - x[static_cast<size_t>(k)]));
                x[static_cast<size_t>(k)] = projected[static_cast<size_t>(k)];
            }
        }
        if (change < 1e-13) break;
    }
    return x;
}

DesignResult optimize_source_exact(const ClassicalChannel& channel,
                                   const ClassicalDistribution& star,
                                   const ConstraintPolytope& polytope) {
    if (polytope.dimension() > 12)
        throw capacity_error("optimize_source_exact: dimension above the enumeration bound");
    if (channel.in_dim() != polytope.dimension() || channel.in_dim() != star.size())
        throw dimension_error("optimize_source_exact: channel/star/polytope size mismatch");
    const ClassicalDistribution ref = apply(channel, star);

    const auto verts = polytope.vertices();
    if (verts.empty()) throw infeasible_error("optimize_source_exact: empty polytope");
    double best = -kInf;
    size_t best_idx = 0;
    for (size_t i = 0; i < verts.size(); ++i) {
        const ClassicalDistribution device(clean_simplex_point(verts[i]));
        const double obj = kl(ref, apply(channel, device));
        if (obj > best) {
            best = obj;
            best_idx = i;
        }
    }
    DesignResult r;
    r.best_device = ClassicalDistribution(clean_simplex_point(verts[best_idx]));
    r.objective_bits = best;
    r.method = DesignMethod::vertex_enumeration;
    r.iterations = int(verts.size());
    return r;
}

namespace {

double design_objective(const ClassicalChannel& channel, const ClassicalDistribution& ref,
                        const std::vector<double>& x) {
    double sum = 0.0;
    for (double v : x) {
        if (v < -1e-9) return -kInf;
        sum += std::max(v, 0.0);
    }
    if (std::abs(sum - 1.0) > 1e-6) return -kInf;
    return kl(ref, apply(channel, ClassicalDistribution(clean_simplex_point(x))));
}

}  // namespace

DesignResult optimize_source_gradient(const ClassicalChannel& channel,
                                      const ClassicalDistribution& star,
                                      const ConstraintPolytope& polytope, int restarts,
                                      std::uint64_t seed) {
    if (restarts < 1) throw domain_error("optimize_source_gradient: restarts must be >= 1");
    if (channel.in_dim() != polytope.dimension() || channel.in_dim() != star.size())
        throw dimension_error("optimize_source_gradient: size mismatch");
    const ClassicalDistribution ref = apply(channel, star);
    const int m = polytope.dimension();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(1e-12, 1.0);

    std::vector<double> best_x;
    double best_f = -kInf;
    int total_steps = 0;

    for (int run = 0; run < restarts; ++run) {
        std::vector<double> x(static_cast<size_t>(m), 1.0 / m);
        if (run > 0) {
            double sum = 0.0;
            for (double& v : x) {
                v = -std::log(unif(rng));
                sum += v;
            }
            for (double& v : x) v /= sum;
        }
        x = polytope.project(std::move(x));
        double f = design_objective(channel, ref, x);
        if (!std::isfinite(f)) continue;

        for (int itn = 0; itn < 300; ++itn) {
            ++total_steps;
            const ClassicalDistribution out = apply(channel, ClassicalDistribution(clean_simplex_point(x)));
            std::vector<double> grad(static_cast<size_t>(m), 0.0);
            for (int k = 0; k < m; ++k) {
                double gk = 0.0;
                for (int y = 0; y < channel.out_dim(); ++y) {
                    if (ref[y] == 0.0) continue;
                    gk -= ref[y] * channel.weight(y, k) / out[y];
                }
                grad[static_cast<size_t>(k)] = gk / std::log(2.0);
            }

            double step = 1.0;
            bool moved = false;
            for (int bt = 0; bt < 40; ++bt) {
                std::vector<double> cand(static_cast<size_t>(m));
                for (int k = 0; k < m; ++k) cand[static_cast<size_t>(k)] = x[static_cast<size_t>(k)] + step * grad[static_cast<size_t>(k)];
                cand = polytope.project(std::move(cand));
                std::vector<double> delta(static_cast<size_t>(m));
                for (int k = 0; k < m; ++k) delta[static_cast<size_t>(k)] = cand[static_cast<size_t>(k)] - x[static_cast<size_t>(k)];
                const double ascent = dot(grad, delta);
                if (ascent <= 1e-14) break;
                const double fc = design_objective(channel, ref, cand);
                // steps that exit the support-safe region come back infinite
                // or invalid and are rejected
                if (std::isfinite(fc) && fc >= f + 1e-4 * ascent) {
                    x = std::move(cand);
                    f = fc;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
        }
        if (f > best_f || (f == best_f && (best_x.empty() || x < best_x))) {
            best_f = f;
            best_x = x;
        }
    }
    if (best_x.empty()) throw convergence_error("optimize_source_gradient: no finite start", 0.0);

    DesignResult r;
    r.best_device = ClassicalDistribution(clean_simplex_point(best_x));
    r.objective_bits = best_f;
    r.method = DesignMethod::multi_start_gradient;
    r.iterations = total_steps;
    return r;
}

DesignResult em_power_design(const ClassicalChannel& sender, const ClassicalChannel& transmission,
                             const ClassicalChannel& receiver, const ClassicalDistribution& star,
                             double avg_power, double peak_power,
                             const std::vector<double>& power_cost) {
    const ClassicalChannel stack = compose(receiver, compose(transmission, sender));
    const int m = stack.in_dim();
    if (int(power_cost.size()) != m)
        throw dimension_error("em_power_design: power cost size mismatch");

    std::vector<LinearInequality> ineqs;
    ineqs.push_back({power_cost, avg_power});
    for (int k = 0; k < m; ++k) {
        if (power_cost[static_cast<size_t>(k)] > peak_power) {
            std::vector<double> row(static_cast<size_t>(m), 0.0);
            row[static_cast<size_t>(k)] = 1.0;
            ineqs.push_back({std::move(row), 0.0});
        }
    }
    ConstraintPolytope polytope(m, std::move(ineqs));
    return optimize_source_exact(stack, star, polytope);
}

std::pair<DesignResult, TestCertificate> inscribed_matter_design(
    const ClassicalChannel& noise, const ClassicalDistribution& null_hypothesis, double epsilon,
    const std::vector<double>& energy, double budget) {
    const int m = noise.in_dim();
    if (int(energy.size()) != m)
        throw dimension_error("inscribed_matter_design: energy form size mismatch");
    if (noise.out_dim() != null_hypothesis.size())
        throw dimension_error("inscribed_matter_design: noise output/null size mismatch");
    double emin = kInf;
    for (double e : energy) emin = std::min(emin, e);
    if (emin > budget) throw infeasible_error("inscribed_matter_design: budget infeasible");

    ConstraintPolytope polytope(m, {LinearInequality{energy, budget}});
    const auto verts = polytope.vertices();

    // Deterministic multi-start: every feasible corner plus the projected
    // uniform point.
    std::vector<std::vector<double>> starts;
    for (int k = 0; k < m; ++k) {
        if (energy[static_cast<size_t>(k)] <= budget) {
            std::vector<double> corner(static_cast<size_t>(m), 0.0);
            corner[static_cast<size_t>(k)] = 1.0;
            starts.push_back(std::move(corner));
        }
    }
    starts.push_back(polytope.project(std::vector<double>(static_cast<size_t>(m), 1.0 / m)));

    double best_beta = kInf;
    std::vector<double> best_x;
    TestCertificate best_cert;
    int rounds_total = 0;

    for (const auto& start : starts) {
        std::vector<double> x = start;
        double beta_prev = kInf;
        TestCertificate cert;
        for (int round = 0; round < 100; ++round) {
            ++rounds_total;
            const ClassicalDistribution device(clean_simplex_point(x));
            cert = solve_classical(null_hypothesis, apply(noise, device), epsilon);
            if (std::abs(beta_prev - cert.beta) < 1e-10) break;
            beta_prev = cert.beta;

            // inner linear program: minimize <N(x), A> over the polytope
            const auto pull = adjoint_apply(noise, cert.decision).weights();
            double vbest = kInf;
            size_t vidx = 0;
            for (size_t i = 0; i < verts.size(); ++i) {
                const double val = dot(pull, verts[i]);
                if (val < vbest - 1e-15) {
                    vbest = val;
                    vidx = i;
                }
            }
            x = verts[vidx];
        }
        if (cert.beta < best_beta || best_x.empty()) {
            best_beta = cert.beta;
            best_x = x;
            best_cert = cert;
        }
    }

    DesignResult r;
    r.best_device = ClassicalDistribution(clean_simplex_point(best_x));
    r.objective_bits = best_beta > 0.0 ? -std::log2(best_beta) : kInf;
    r.method = DesignMethod::alternating;
    r.iterations = rounds_total;
    return {std::move(r), std::move(best_cert)};
}

}  // namespace oneshot
