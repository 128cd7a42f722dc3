#include "decoy/bounds.hpp"

#include <algorithm>

#include "decoy/errors.hpp"
#include "decoy/symfunc.hpp"

namespace decoy {

std::vector<real> solve_moment_system(const std::vector<real>& mu, const std::vector<real>& rhs) {
    const std::size_t M = mu.size();
    std::vector<std::vector<real>> a(M, std::vector<real>(M + 1));
    for (std::size_t i = 0; i < M; ++i) {
        real fact = 1;
        real power = 1;
        for (std::size_t n = 1; n <= M; ++n) {
            power *= mu[i];
            fact *= n;
            a[i][n - 1] = power / fact;
        }
        a[i][M] = rhs[i];
    }
    for (std::size_t col = 0; col < M; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < M; ++r) {
            if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
        }
        if (a[piv][col] == 0) throw DegenerateIntensities("solve: singular constraint matrix");
        std::swap(a[piv], a[col]);
        for (std::size_t r = 0; r < M; ++r) {
            if (r == col) continue;
            real f = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= M; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<real> y(M);
    for (std::size_t n = 0; n < M; ++n) y[n] = a[n][M] / a[n][n];
    return y;
}

namespace {

real lagrange_x1(const std::vector<real>& rhs, const std::vector<real>& mu) {
    real x1 = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        real term = rhs[i] / mu[i];
        for (std::size_t j = 0; j < mu.size(); ++j) {
            if (j != i) term *= mu[j] / (mu[j] - mu[i]);
        }
        x1 += term;
    }
    return x1;
}

std::vector<real> rhs_from_qplus(const std::vector<real>& qplus, const std::vector<real>& mu) {
    std::vector<real> rhs(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) rhs[i] = exp(mu[i]) * qplus[i];
    return rhs;
}

}  // namespace

XConfiguration compute_x(const std::vector<real>& qplus, const std::vector<real>& mu,
                         const PrecisionConfig& cfg) {
    PrecisionScope scope(cfg);
    check_intensities(mu, cfg.degeneracy_gap);
    if (qplus.size() != mu.size()) throw ValidationError("compute_x: data size mismatch");

    XConfiguration x;
    x.mu = mu;
    x.rhs = rhs_from_qplus(qplus, mu);
    x.values = solve_moment_system(mu, x.rhs);

    // Product form is the primary value for n = 1; the solver is the cross-check.
    real x1 = lagrange_x1(x.rhs, mu);
    real scale = abs(x1);
    if (abs(x.values[0]) > scale) scale = abs(x.values[0]);
    if (scale > 0 && abs(x1 - x.values[0]) > real("1e-20") * scale) {
        throw Error("compute_x: Lagrange and Cramer paths disagree beyond 1e-20");
    }
    x.values[0] = x1;
    return x;
}

WVector w_vector(unsigned m, const std::vector<real>& mu, const PrecisionConfig& cfg) {
    PrecisionScope scope(cfg);
    const unsigned M = static_cast<unsigned>(mu.size());
    if (m <= M) throw ValidationError("w_vector: requires m > M");
    check_intensities(mu, cfg.degeneracy_gap);

    WVector w;
    w.m = m;
    w.head.resize(M);
    for (unsigned n = 1; n <= M; ++n) {
        // n!/m! as a running reciprocal product.
        real ratio = 1;
        for (unsigned k = n + 1; k <= m; ++k) ratio /= k;
        real s = schur_hook(m - M, M - n, mu);
        int sign = ((M - n + 1) % 2 == 0) ? 1 : -1;
        w.head[n - 1] = sign * ratio * s;
    }
    return w;
}

real g_function(const real& mu, unsigned L, const real& a, const real& qplus) {
    return exp(mu) * qplus - (exp_tail(mu, L) + pow_ui(mu, L) / factorial_real(L) * a);
}

std::vector<real> z_vector(unsigned L, const real& a, const std::vector<real>& qplus,
                           const std::vector<real>& mu, const PrecisionConfig& cfg) {
    PrecisionScope scope(cfg);
    const unsigned M = static_cast<unsigned>(mu.size());
    if (L <= M) throw ValidationError("z_vector: requires L > M");
    check_intensities(mu, cfg.degeneracy_gap);
    std::vector<real> rhs(M);
    for (unsigned i = 0; i < M; ++i) rhs[i] = g_function(mu[i], L, a, qplus[i]);
    return solve_moment_system(mu, rhs);
}

unsigned l0_cap(const real& x_M, unsigned M, unsigned user_cap, bool mu_le_one) {
    if (!mu_le_one || x_M <= 0) return user_cap;
    real budget = M * exp(real(1)) / x_M;
    unsigned L = M + 1;
    real lhs = L;  // L * (L-M)! starting at (M+1) * 1!
    unsigned best = M + 1;
    while (L <= user_cap) {
        if (lhs > budget) break;
        best = L;
        ++L;
        lhs = lhs / (L - 1) * L * (L - M);
    }
    return std::max(best, M + 1u);
}

std::pair<unsigned, real> find_l0_a0(const std::vector<real>& qplus, const std::vector<real>& mu,
                                     const PrecisionConfig& cfg, unsigned user_cap) {
    PrecisionScope scope(cfg);
    const unsigned M = static_cast<unsigned>(mu.size());
    if (user_cap < M + 1) throw ValidationError("find_l0_a0: cap must be >= M+1");

    bool le_one = true;
    for (const real& m : mu)
        if (m > 1) le_one = false;

    XConfiguration x = compute_x(qplus, mu, cfg);
    const unsigned cap = std::min(user_cap, l0_cap(x.values[M - 1], M, user_cap, le_one));

    auto z_m = [&](unsigned L, const real& a) {
        return z_vector(L, a, qplus, mu, cfg)[M - 1];
    };

    real z_top = z_m(M + 1, real(1));
    if (z_top >= 0) return {M + 1, real(1)};

    // Walk the (L, a) ordering: z_M(L, 0) coincides with z_M(L+1, 1), and
    // z_M is affine decreasing in a, so the first L whose a-segment crosses
    // zero carries the minimal pair.
    unsigned L = M + 1;
    real z_at_one = z_top;
    while (true) {
        real z_at_zero = z_m(L, real(0));
        if (z_at_zero >= 0) {
            if (z_at_zero == 0) return {L + 1, real(1)};  // boundary: pair degenerates to (L+1, 1)
            real a0 = z_at_zero / (z_at_zero - z_at_one);
            if (a0 > 1) a0 = 1;
            return {L, a0};
        }
        ++L;
        if (L > cap) {
            throw CapExceeded("find_l0_a0: search cap " + std::to_string(cap) +
                              " exceeded; data inconsistent with any feasible yield vector");
        }
        z_at_one = z_at_zero;
    }
}

ZConfiguration compute_z(const std::vector<real>& qplus, const std::vector<real>& mu,
                         const PrecisionConfig& cfg, unsigned user_cap) {
    PrecisionScope scope(cfg);
    auto [L0, a0] = find_l0_a0(qplus, mu, cfg, user_cap);
    ZConfiguration z;
    z.L0 = L0;
    z.a0 = a0;
    z.branch = (L0 == mu.size() + 1 && a0 == 1) ? ZBranch::saturated : ZBranch::equality;
    z.values = z_vector(L0, a0, qplus, mu, cfg);
    return z;
}

Interval bound_interval(unsigned n, const XConfiguration& x, const ZConfiguration& z,
                        bool mu_le_one) {
    const unsigned M = static_cast<unsigned>(x.values.size());
    if (n < 1 || n > M) throw ValidationError("bound_interval: n must lie in [1, M]");
    Interval iv;
    if ((M - n) % 2 == 1) {
        iv.lo = x.values[n - 1];
        iv.hi = z.values[n - 1];
    } else {
        iv.lo = z.values[n - 1];
        iv.hi = x.values[n - 1];
    }
    iv.exact = mu_le_one;
    return iv;
}

BoundsReport compute_bounds(const std::vector<real>& qplus, const std::vector<real>& mu,
                            const PrecisionConfig& cfg, unsigned user_cap) {
    PrecisionScope scope(cfg);
    const unsigned M = static_cast<unsigned>(mu.size());
    BoundsReport rep;
    rep.mu = mu;

    bool le_one = true;
    for (const real& m : mu)
        if (m > 1) le_one = false;
    if (!le_one) {
        rep.warnings.push_back("mu_M > 1: reported values are bounds, not extrema");
    }
    rep.exact = le_one;

    rep.x = compute_x(qplus, mu, cfg);
    rep.z = compute_z(qplus, mu, cfg, user_cap);

    const real slack = pow(real(10), -static_cast<int>(real::default_precision()) / 2);
    if (rep.z.values[M - 1] < -slack) {
        rep.feasible = false;
        rep.warnings.push_back("Z_M < 0: data infeasible under the box constraints");
    }
    if (le_one) {
        for (unsigned n = 1; n <= M; ++n) {
            if (rep.x.values[n - 1] < -slack || rep.x.values[n - 1] > 1 + slack ||
                rep.z.values[n - 1] < -slack || rep.z.values[n - 1] > 1 + slack) {
                rep.feasible = false;
                rep.warnings.push_back("X_" + std::to_string(n) + " or Z_" + std::to_string(n) +
                                       " outside [0,1]: data infeasible under the model assumptions");
                break;
            }
        }
    }
    for (unsigned n = 1; n <= M; ++n) {
        rep.intervals.push_back(bound_interval(n, rep.x, rep.z, le_one));
    }
    return rep;
}

}  // namespace decoy
