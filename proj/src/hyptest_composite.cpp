#include <algorithm>
#include <cmath>
#include <limits>

#include "oneshot/hyptest.hpp"

namespace oneshot {

namespace {

// Real coordinates for Hermitian matrices: diagonal entries first, then
// sqrt(2)-scaled real and imaginary parts of the upper triangle. Isometric
// for the Frobenius inner product.
struct SvecLayout {
    int d;
    int size() const { return d * d; }
};

std::vector<double> svec(const SvecLayout& ly, const CMat& h) {
    std::vector<double> x(static_cast<size_t>(ly.size()));
    const double r2 = std::sqrt(2.0);
    int k = 0;
    for (int i = 0; i < ly.d; ++i) x[static_cast<size_t>(k++)] = h(i, i).real();
    for (int i = 0; i < ly.d; ++i)
        for (int j = i + 1; j < ly.d; ++j) {
            x[static_cast<size_t>(k++)] = r2 * h(i, j).real();
            x[static_cast<size_t>(k++)] = r2 * h(i, j).imag();
        }
    return x;
}

CMat unsvec(const SvecLayout& ly, const std::vector<double>& x) {
    CMat h(ly.d, ly.d);
    const double ir2 = 1.0 / std::sqrt(2.0);
    int k = 0;
    for (int i = 0; i < ly.d; ++i) h(i, i) = x[static_cast<size_t>(k++)];
    for (int i = 0; i < ly.d; ++i)
        for (int j = i + 1; j < ly.d; ++j) {
            const double re = x[static_cast<size_t>(k++)] * ir2;
            const double im = x[static_cast<size_t>(k++)] * ir2;
            h(i, j) = cplx(re, im);
            h(j, i) = cplx(re, -im);
        }
    return h;
}

// Matrix of the map dX -> S dX S in svec coordinates (S Hermitian).
// Column l is svec(S E_l S), assembled from outer products of S's columns.
std::vector<double> quad_rep(const SvecLayout& ly, const CMat& s) {
    const int d = ly.d;
    const int n = ly.size();
    std::vector<double> k(static_cast<size_t>(n) * n);
    const double r2 = std::sqrt(2.0);

    std::vector<std::vector<cplx>> col(static_cast<size_t>(d), std::vector<cplx>(static_cast<size_t>(d)));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) col[static_cast<size_t>(j)][static_cast<size_t>(i)] = s(i, j);

    CMat c(d, d);
    auto emit = [&](int l) {
        int r = 0;
        for (int i = 0; i < d; ++i) k[static_cast<size_t>(r++) * n + l] = c(i, i).real();
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                k[static_cast<size_t>(r++) * n + l] = r2 * c(i, j).real();
                k[static_cast<size_t>(r++) * n + l] = r2 * c(i, j).imag();
            }
    };

    int l = 0;
    for (int p = 0; p < d; ++p) {
        const auto& u = col[static_cast<size_t>(p)];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) c(i, j) = u[static_cast<size_t>(i)] * std::conj(u[static_cast<size_t>(j)]);
        emit(l++);
    }
    const double ir2 = 1.0 / std::sqrt(2.0);
    for (int p = 0; p < d; ++p)
        for (int q = p + 1; q < d; ++q) {
            const auto& u = col[static_cast<size_t>(p)];
            const auto& w = col[static_cast<size_t>(q)];
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    const cplx uw = u[static_cast<size_t>(i)] * std::conj(w[static_cast<size_t>(j)]);
                    const cplx wu = w[static_cast<size_t>(i)] * std::conj(u[static_cast<size_t>(j)]);
                    c(i, j) = ir2 * (uw + wu);
                }
            emit(l++);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    const cplx uw = u[static_cast<size_t>(i)] * std::conj(w[static_cast<size_t>(j)]);
                    const cplx wu = w[static_cast<size_t>(i)] * std::conj(u[static_cast<size_t>(j)]);
                    c(i, j) = cplx(0.0, 1.0) * ir2 * (uw - wu);
                }
            emit(l++);
        }
    return k;
}

// Dense symmetric positive definite solve; adds a diagonal ridge and
// retries when a pivot fails.
bool cholesky_solve(std::vector<double> a, std::vector<double> b, int n,
                    std::vector<double>& out) {
    for (int attempt = 0; attempt < 4; ++attempt) {
        std::vector<double> l = a;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            for (int j = 0; j <= i; ++j) {
                double s = l[static_cast<size_t>(i) * n + j];
                for (int k = 0; k < j; ++k) s -= l[static_cast<size_t>(i) * n + k] * l[static_cast<size_t>(j) * n + k];
                if (i == j) {
                    if (s <= 0.0) {
                        ok = false;
                        break;
                    }
                    l[static_cast<size_t>(i) * n + j] = std::sqrt(s);
                } else {
                    l[static_cast<size_t>(i) * n + j] = s / l[static_cast<size_t>(j) * n + j];
                }
            }
        }
        if (ok) {
            std::vector<double> y(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) {
                double s = b[static_cast<size_t>(i)];
                for (int k = 0; k < i; ++k) s -= l[static_cast<size_t>(i) * n + k] * y[static_cast<size_t>(k)];
                y[static_cast<size_t>(i)] = s / l[static_cast<size_t>(i) * n + i];
            }
            out.assign(static_cast<size_t>(n), 0.0);
            for (int i = n - 1; i >= 0; --i) {
                double s = y[static_cast<size_t>(i)];
                for (int k = i + 1; k < n; ++k) s -= l[static_cast<size_t>(k) * n + i] * out[static_cast<size_t>(k)];
                out[static_cast<size_t>(i)] = s / l[static_cast<size_t>(i) * n + i];
            }
            return true;
        }
        double dmax = 0.0;
        for (int i = 0; i < n; ++i) dmax = std::max(dmax, std::abs(a[static_cast<size_t>(i) * n + i]));
        const double ridge = std::max(1e-14, 1e-12 * dmax) * std::pow(10.0, attempt);
        for (int i = 0; i < n; ++i) a[static_cast<size_t>(i) * n + i] += ridge;
    }
    return false;
}

struct CompositeProblem {
    int d = 0;
    double epsilon = 0.0;
    double target = 0.0;
    std::vector<CMat> p0;
    std::vector<CMat> p1;
    std::vector<std::vector<double>> p0v;
    std::vector<std::vector<double>> p1v;
    SvecLayout ly;
};

struct Iterate {
    CMat x;
    double gamma = 0.0;
    Spectrum xs;               // spectrum of x, refreshed with x
    std::vector<double> s;     // null slacks
    std::vector<double> t;     // alternative slacks
    bool interior = false;
};

void refresh(const CompositeProblem& pb, Iterate& it) {
    it.xs = eigendecompose(it.x);
    it.interior = true;
    for (double lam : it.xs.values)
        if (!(lam > 0.0 && lam < 1.0)) it.interior = false;
    it.s.assign(pb.p0.size(), 0.0);
    it.t.assign(pb.p1.size(), 0.0);
    for (size_t i = 0; i < pb.p0.size(); ++i) {
        it.s[i] = inner_real(pb.p0[i], it.x) - pb.target;
        if (!(it.s[i] > 0.0)) it.interior = false;
    }
    for (size_t j = 0; j < pb.p1.size(); ++j) {
        it.t[j] = it.gamma - inner_real(pb.p1[j], it.x);
        if (!(it.t[j] > 0.0)) it.interior = false;
    }
    if (!(it.gamma > 0.0)) it.interior = false;
}

double barrier_value(const Iterate& it, double mu) {
    if (!it.interior) return std::numeric_limits<double>::infinity();
    double phi = it.gamma / mu - std::log(it.gamma);
    for (double lam : it.xs.values) phi -= std::log(lam) + std::log(1.0 - lam);
    for (double s : it.s) phi -= std::log(s);
    for (double t : it.t) phi -= std::log(t);
    return phi;
}

CMat spectral_apply(const Spectrum& sp, const std::vector<double>& f) {
    const int d = sp.vectors.rows();
    CMat out(d, d);
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                out(i, j) += f[static_cast<size_t>(k)] * sp.vectors(i, k) * std::conj(sp.vectors(j, k));
    return out;
}

// Largest step keeping X + a*dX strictly inside [0, I]: bound from the
// spectrum of X^(-1/2) dX X^(-1/2) and its (I-X) counterpart.
double max_step_psd(const Iterate& it, const CMat& dx) {
    const int d = it.x.rows();
    std::vector<double> inv_sqrt(static_cast<size_t>(d)), inv_sqrt_c(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
        inv_sqrt[static_cast<size_t>(k)] = 1.0 / std::sqrt(it.xs.values[static_cast<size_t>(k)]);
        inv_sqrt_c[static_cast<size_t>(k)] = 1.0 / std::sqrt(1.0 - it.xs.values[static_cast<size_t>(k)]);
    }
    const CMat w = spectral_apply(it.xs, inv_sqrt);
    const CMat wc = spectral_apply(it.xs, inv_sqrt_c);
    double amax = std::numeric_limits<double>::infinity();
    const double lo = min_eigenvalue(hermitize(matmul(matmul(w, dx), w)));
    if (lo < 0.0) amax = std::min(amax, -1.0 / lo);
    CMat neg = dx;
    neg *= -1.0;
    const double hi = min_eigenvalue(hermitize(matmul(matmul(wc, neg), wc)));
    if (hi < 0.0) amax = std::min(amax, -1.0 / hi);
    return amax;
}

TestCertificate extract_certificate(const CompositeProblem& pb, const Iterate& it, double mu,
                                    int iterations) {
    // Dual estimates from the barrier gradient, then an exact-feasible
    // completion: Z is the positive part of sum z_i P0_i - sum v_j P1_j.
    std::vector<double> z(pb.p0.size()), v(pb.p1.size());
    for (size_t i = 0; i < z.size(); ++i) z[i] = mu / it.s[i];
    double vsum = 0.0;
    for (size_t j = 0; j < v.size(); ++j) {
        v[j] = mu / it.t[j];
        vsum += v[j];
    }
    if (vsum > 1.0) {
        for (double& vj : v) vj *= (1.0 - 1e-15) / vsum;
    }
    CMat m(pb.d, pb.d);
    for (size_t i = 0; i < z.size(); ++i) {
        CMat term = pb.p0[i];
        term *= z[i];
        m += term;
    }
    for (size_t j = 0; j < v.size(); ++j) {
        CMat term = pb.p1[j];
        term *= v[j];
        m -= term;
    }
    CMat zmat = positive_part(hermitize(m));
    double zsum = 0.0;
    for (double zi : z) zsum += zi;
    const double dual_value = pb.target * zsum - trace(zmat).real();

    // Primal repair: clip eigenvalues into [0,1], then blend toward the
    // identity until every type-I constraint holds exactly.
    std::vector<double> clipped(it.xs.values.size());
    for (size_t k = 0; k < clipped.size(); ++k)
        clipped[k] = std::clamp(it.xs.values[k], 0.0, 1.0);
    CMat xhat = spectral_apply(it.xs, clipped);
    double theta = 0.0;
    for (size_t i = 0; i < pb.p0.size(); ++i) {
        const double a = inner_real(pb.p0[i], xhat);
        const double tr = trace(pb.p0[i]).real();
        if (a < pb.target && tr > a)
            theta = std::max(theta, (pb.target - a) / (tr - a));
    }
    theta = std::clamp(theta, 0.0, 1.0);
    if (theta > 0.0) {
        xhat *= (1.0 - theta);
        CMat eye = CMat::identity(pb.d);
        eye *= theta;
        xhat += eye;
    }

    double beta = 0.0;
    for (const auto& p1 : pb.p1) beta = std::max(beta, inner_real(p1, xhat));
    double accept0 = 1.0;
    for (const auto& p0 : pb.p0) accept0 = std::min(accept0, inner_real(p0, xhat));

    TestCertificate cert;
    cert.epsilon = pb.epsilon;
    cert.beta = beta;
    cert.alpha = 1.0 - accept0;
    cert.dual_value = dual_value;
    cert.gap = beta - dual_value;
    cert.dual.z = std::move(z);
    cert.dual.v = std::move(v);
    cert.dual.zpart = std::move(zmat);
    cert.decision = DecisionFunction::quantum(std::move(xhat));
    cert.iterations = iterations;
    return cert;
}

// eps = 0 closed form: X must act as the identity on the span of the null
// supports, and anything off that span only increases beta. The dual is a
// large-multiplier limit along the mean null.
TestCertificate composite_eps_zero(const CompositeProblem& pb) {
    for (const auto& p0 : pb.p0)
        if (trace(p0).real() < 1.0 - 1e-12)
            throw infeasible_error("solve_composite: eps = 0 with sub-normalized null");
    CMat pbar(pb.d, pb.d);
    for (const auto& p0 : pb.p0) pbar += p0;
    pbar *= 1.0 / double(pb.p0.size());
    const Spectrum sp = eigendecompose(hermitize(pbar));
    std::vector<int> keep;
    for (int k = 0; k < pb.d; ++k)
        if (sp.values[static_cast<size_t>(k)] > 1e-12) keep.push_back(k);
    const CMat proj = sp.projector_onto(keep);

    double beta = -1.0;
    size_t jstar = 0;
    for (size_t j = 0; j < pb.p1.size(); ++j) {
        const double b = inner_real(pb.p1[j], proj);
        if (b > beta) {
            beta = b;
            jstar = j;
        }
    }
    double accept0 = 1.0;
    for (const auto& p0 : pb.p0) accept0 = std::min(accept0, inner_real(p0, proj));

    const double big = 1e7;
    CMat m = pbar;
    m *= big;
    m -= pb.p1[jstar];
    const Spectrum ms = eigendecompose(hermitize(m));
    double negsum = 0.0;
    for (double lam : ms.values) negsum += std::max(-lam, 0.0);

    TestCertificate cert;
    cert.epsilon = 0.0;
    cert.beta = beta;
    cert.alpha = 1.0 - accept0;
    cert.dual_value = trace(pb.p1[jstar]).real() - negsum;
    cert.gap = cert.beta - cert.dual_value;
    cert.dual.z.assign(pb.p0.size(), big / double(pb.p0.size()));
    cert.dual.v.assign(pb.p1.size(), 0.0);
    cert.dual.v[jstar] = 1.0;
    cert.dual.zpart = positive_part(hermitize(m));
    cert.decision = DecisionFunction::quantum(proj);
    cert.iterations = 1;
    return cert;
}

}  // namespace

TestCertificate solve_composite(const std::vector<DensityOperator>& nulls,
                                const std::vector<DensityOperator>& alts, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw domain_error("epsilon must lie in [0,1)");
    if (nulls.empty() || alts.empty())
        throw validation_error("solve_composite: hypothesis sets must be nonempty");
    const int d = nulls.front().dim();
    for (const auto& r : nulls)
        if (r.dim() != d) throw dimension_error("solve_composite: dimension mismatch");
    for (const auto& r : alts)
        if (r.dim() != d) throw dimension_error("solve_composite: dimension mismatch");
    if (d > 64) throw capacity_error("solve_composite: dimension above cap 64");

    CompositeProblem pb;
    pb.d = d;
    pb.epsilon = epsilon;
    pb.target = 1.0 - epsilon;
    pb.ly = SvecLayout{d};
    for (const auto& r : nulls) {
        pb.p0.push_back(r.matrix());
        pb.p0v.push_back(svec(pb.ly, r.matrix()));
    }
    for (const auto& r : alts) {
        pb.p1.push_back(r.matrix());
        pb.p1v.push_back(svec(pb.ly, r.matrix()));
    }

    if (epsilon == 0.0) return composite_eps_zero(pb);

    double min_tr = 1.0;
    for (const auto& p0 : pb.p0) min_tr = std::min(min_tr, trace(p0).real());
    const double lowc = pb.target / min_tr;
    if (!(lowc < 1.0))
        throw infeasible_error("solve_composite: null trace too small for epsilon");

    const int n = pb.ly.size() + 1;  // svec(X) then gamma
    const int n_newton_cap = 200;

    Iterate it;
    it.x = CMat::identity(d);
    it.x *= 0.5 * (lowc + 1.0);
    it.gamma = 0.25;
    for (const auto& p1 : pb.p1)
        it.gamma = std::max(it.gamma, inner_real(p1, it.x) + 0.25);
    refresh(pb, it);

    double mu = 0.5;
    int newton_total = 0;
    TestCertificate best;
    best.gap = std::numeric_limits<double>::infinity();

    const double nu_total = 2.0 * d + double(pb.p0.size()) + double(pb.p1.size()) + 1.0;

    for (int stage = 0; stage < 80; ++stage) {
        // loose centering while far from the target gap, tight once the
        // dual estimates start to matter
        const double center_tol2 = (mu * nu_total > 1e-5) ? 1e-4 : 1e-10;
        for (int inner = 0; inner < 60; ++inner) {
            if (newton_total >= n_newton_cap) break;
            ++newton_total;

            std::vector<double> inv_l(static_cast<size_t>(d)), inv_u(static_cast<size_t>(d));
            for (int k = 0; k < d; ++k) {
                inv_l[static_cast<size_t>(k)] = 1.0 / it.xs.values[static_cast<size_t>(k)];
                inv_u[static_cast<size_t>(k)] = 1.0 / (1.0 - it.xs.values[static_cast<size_t>(k)]);
            }
            const CMat xinv = spectral_apply(it.xs, inv_l);
            const CMat yinv = spectral_apply(it.xs, inv_u);

            CMat gm = yinv;
            gm -= xinv;
            for (size_t i = 0; i < pb.p0.size(); ++i) {
                CMat term = pb.p0[i];
                term *= 1.0 / it.s[i];
                gm -= term;
            }
            for (size_t j = 0; j < pb.p1.size(); ++j) {
                CMat term = pb.p1[j];
                term *= 1.0 / it.t[j];
                gm += term;
            }
            std::vector<double> g = svec(pb.ly, gm);
            g.push_back(1.0 / mu - 1.0 / it.gamma);
            for (size_t j = 0; j < pb.p1.size(); ++j) g.back() -= 1.0 / it.t[j];

            const std::vector<double> kx = quad_rep(pb.ly, xinv);
            const std::vector<double> ky = quad_rep(pb.ly, yinv);
            std::vector<double> h(static_cast<size_t>(n) * n, 0.0);
            const int m = pb.ly.size();
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c)
                    h[static_cast<size_t>(r) * n + c] = kx[static_cast<size_t>(r) * m + c] + ky[static_cast<size_t>(r) * m + c];
            for (size_t i = 0; i < pb.p0.size(); ++i) {
                const double w = 1.0 / (it.s[i] * it.s[i]);
                for (int r = 0; r < m; ++r)
                    for (int c = 0; c < m; ++c)
                        h[static_cast<size_t>(r) * n + c] += w * pb.p0v[i][static_cast<size_t>(r)] * pb.p0v[i][static_cast<size_t>(c)];
            }
            double hgg = 1.0 / (it.gamma * it.gamma);
            for (size_t j = 0; j < pb.p1.size(); ++j) {
                const double w = 1.0 / (it.t[j] * it.t[j]);
                for (int r = 0; r < m; ++r) {
                    for (int c = 0; c < m; ++c)
                        h[static_cast<size_t>(r) * n + c] += w * pb.p1v[j][static_cast<size_t>(r)] * pb.p1v[j][static_cast<size_t>(c)];
                    h[static_cast<size_t>(r) * n + (n - 1)] -= w * pb.p1v[j][static_cast<size_t>(r)];
                    h[static_cast<size_t>(n - 1) * n + r] -= w * pb.p1v[j][static_cast<size_t>(r)];
                }
                hgg += w;
            }
            h[static_cast<size_t>(n - 1) * n + (n - 1)] = hgg;

            std::vector<double> rhs(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) rhs[static_cast<size_t>(i)] = -g[static_cast<size_t>(i)];
            std::vector<double> step;
            if (!cholesky_solve(h, rhs, n, step))
                throw convergence_error("solve_composite: Newton system not solvable",
                                        best.gap);

            double decrement2 = 0.0;
            for (int i = 0; i < n; ++i) decrement2 -= g[static_cast<size_t>(i)] * step[static_cast<size_t>(i)];
            // centered: the mu/s, mu/t dual reads are then accurate and the
            // certified gap tracks mu times the barrier parameter
            if (decrement2 <= center_tol2) break;

            std::vector<double> dxv(step.begin(), step.end() - 1);
            const CMat dx = unsvec(pb.ly, dxv);
            const double dgamma = step[static_cast<size_t>(n) - 1];

            double amax = max_step_psd(it, dx);
            for (size_t i = 0; i < pb.p0.size(); ++i) {
                const double ds = inner_real(pb.p0[i], dx);
                if (ds < 0.0) amax = std::min(amax, -it.s[i] / ds);
            }
            for (size_t j = 0; j < pb.p1.size(); ++j) {
                const double dt = dgamma - inner_real(pb.p1[j], dx);
                if (dt < 0.0) amax = std::min(amax, -it.t[j] / dt);
            }
            if (dgamma < 0.0) amax = std::min(amax, -it.gamma / dgamma);

            if (decrement2 <= 0.15 * 0.15) {
                // quadratic zone of the self-concordant barrier: a damped
                // near-full step always descends, so skip the line search
                // (whose objective comparison drowns in rounding here)
                const double alpha = std::min(1.0, 0.9 * amax);
                Iterate trial = it;
                CMat sdx = dx;
                sdx *= alpha;
                trial.x += sdx;
                trial.gamma = it.gamma + alpha * dgamma;
                refresh(pb, trial);
                if (!trial.interior) break;
                it = trial;
                continue;
            }

            double alpha = std::min(1.0, 0.995 * amax);
            const double phi0 = barrier_value(it, mu);
            const double slope = -decrement2;
            Iterate trial = it;
            bool moved = false;
            for (int bt = 0; bt < 60; ++bt) {
                trial.x = it.x;
                CMat sdx = dx;
                sdx *= alpha;
                trial.x += sdx;
                trial.gamma = it.gamma + alpha * dgamma;
                refresh(pb, trial);
                const double phi1 = barrier_value(trial, mu);
                if (trial.interior && phi1 <= phi0 + 1e-4 * alpha * slope) {
                    it = trial;
                    moved = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!moved) break;
        }

        TestCertificate cert = extract_certificate(pb, it, mu, newton_total);
        if (cert.gap < best.gap) best = cert;
        if (best.gap <= 1e-8) return best;
        if (newton_total >= n_newton_cap || mu <= 1e-13) break;
        mu = std::max(mu * 0.15, 1e-13);
    }

    if (best.gap <= 1e-6) return best;
    throw convergence_error("solve_composite: duality gap above tolerance", best.gap);
}

TestCertificate finite_time_beta(const std::vector<DensityOperator>& eta,
                                 const std::vector<DensityOperator>& signals, double epsilon) {
    if (eta.empty() || signals.empty())
        throw validation_error("finite_time_beta: hypothesis sets must be nonempty");
    const int base = eta.front().dim();
    for (const auto& r : eta)
        if (r.dim() != base)
            throw dimension_error("finite_time_beta: null slot dimensions differ");
    const int sig_dim = signals.front().dim();
    int k = 0;
    long long cur = 1;
    while (cur < sig_dim) {
        cur *= base;
        ++k;
        if (cur > max_matrix_dim())
            throw capacity_error("finite_time_beta: signal space exceeds cap");
    }
    if (cur != sig_dim || k == 0)
        throw dimension_error("finite_time_beta: signal dim is not a power of the slot dim");

    std::vector<DensityOperator> nulls;
    nulls.reserve(eta.size());
    for (const auto& rho : eta) nulls.push_back(iid_power(rho, k));
    return solve_composite(nulls, signals, epsilon);
}

}  // namespace oneshot
