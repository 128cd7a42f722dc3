#include "decoy/oracle.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "decoy/errors.hpp"
#include "decoy/symfunc.hpp"

namespace decoy {

namespace {

enum class VarStatus { lower, upper, basic };

struct SimplexState {
    unsigned M, N;                       // rows, structural columns
    std::vector<std::vector<real>> col;  // N + M columns of length M (artificials last)
    std::vector<real> b;
    std::vector<real> ub;                // per-variable upper bound (lower is 0)
    std::vector<bool> bounded;           // false: no upper bound (phase-1 artificials)
    std::vector<VarStatus> status;
    std::vector<unsigned> basis;         // row -> variable
    std::vector<real> xb;                // basic values
    real eps;

    unsigned total() const { return N + M; }

    // Solve B y = rhs (transpose=false) or B^T y = rhs over the current basis.
    std::vector<real> solve_basis(std::vector<real> rhs, bool transpose) const {
        std::vector<std::vector<real>> a(M, std::vector<real>(M + 1));
        for (unsigned i = 0; i < M; ++i) {
            for (unsigned k = 0; k < M; ++k) {
                a[i][k] = transpose ? col[basis[i]][k] : col[basis[k]][i];
            }
            a[i][M] = rhs[i];
        }
        for (unsigned c = 0; c < M; ++c) {
            unsigned piv = c;
            for (unsigned r = c + 1; r < M; ++r)
                if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
            if (a[piv][c] == 0) throw Error("simplex: singular basis");
            std::swap(a[piv], a[c]);
            for (unsigned r = 0; r < M; ++r) {
                if (r == c) continue;
                real f = a[r][c] / a[c][c];
                for (unsigned k = c; k <= M; ++k) a[r][k] -= f * a[c][k];
            }
        }
        std::vector<real> y(M);
        for (unsigned i = 0; i < M; ++i) y[i] = a[i][M] / a[i][i];
        return y;
    }

    void refresh_basic_values() {
        std::vector<real> rhs = b;
        for (unsigned j = 0; j < total(); ++j) {
            if (status[j] == VarStatus::upper) {
                for (unsigned i = 0; i < M; ++i) rhs[i] -= col[j][i] * ub[j];
            }
        }
        xb = solve_basis(std::move(rhs), false);
    }

    real value_of(unsigned j) const {
        if (status[j] == VarStatus::basic) {
            for (unsigned i = 0; i < M; ++i)
                if (basis[i] == j) return xb[i];
        }
        return status[j] == VarStatus::upper ? ub[j] : real(0);
    }

    // Minimize c.x over the current bounds. `allowed` masks entering columns.
    void optimize(const std::vector<real>& c, const std::vector<bool>& allowed) {
        while (true) {
            refresh_basic_values();
            std::vector<real> cb(M);
            for (unsigned i = 0; i < M; ++i) cb[i] = c[basis[i]];
            std::vector<real> duals = solve_basis(std::move(cb), true);

            // Bland: smallest eligible index enters.
            unsigned enter = total();
            int dir = 0;
            for (unsigned j = 0; j < total(); ++j) {
                if (status[j] == VarStatus::basic || !allowed[j]) continue;
                real d = c[j];
                for (unsigned i = 0; i < M; ++i) d -= duals[i] * col[j][i];
                if (status[j] == VarStatus::lower && d < -eps) {
                    enter = j;
                    dir = +1;
                    break;
                }
                if (status[j] == VarStatus::upper && d > eps) {
                    enter = j;
                    dir = -1;
                    break;
                }
            }
            if (enter == total()) return;  // optimal

            std::vector<real> w = solve_basis(col[enter], false);

            // Step length: entering moves by t along dir; basics move by -dir*w.
            real t_best = bounded[enter] ? ub[enter] : real(-1);
            int leave_row = -1;  // -1: bound flip of the entering variable
            for (unsigned i = 0; i < M; ++i) {
                real delta = -dir * w[i];
                real limit;
                if (delta < -eps) {
                    limit = xb[i] / (-delta);
                } else if (delta > eps) {
                    if (!bounded[basis[i]]) continue;
                    limit = (ub[basis[i]] - xb[i]) / delta;
                } else {
                    continue;
                }
                if (limit < 0) limit = 0;
                bool better = (t_best < 0) || (limit < t_best) ||
                              (limit == t_best && leave_row >= 0 && basis[i] < basis[leave_row]);
                if (better) {
                    t_best = limit;
                    leave_row = static_cast<int>(i);
                }
            }
            if (t_best < 0) throw Error("simplex: unbounded direction (should be impossible)");

            if (leave_row < 0) {
                // Entering variable flips to its opposite bound.
                status[enter] = (dir > 0) ? VarStatus::upper : VarStatus::lower;
                continue;
            }
            unsigned leave = basis[static_cast<unsigned>(leave_row)];
            real delta_leave = -dir * w[static_cast<unsigned>(leave_row)];
            status[leave] = (delta_leave > 0) ? VarStatus::upper : VarStatus::lower;
            basis[static_cast<unsigned>(leave_row)] = enter;
            status[enter] = VarStatus::basic;
        }
    }
};

}  // namespace

LPResult lp_extremize(const TruncatedLP& lp, const PrecisionConfig& cfg) {
    PrecisionScope scope(cfg);
    check_intensities(lp.mu, cfg.degeneracy_gap);
    const unsigned M = static_cast<unsigned>(lp.mu.size());
    if (lp.N < M) throw ValidationError("lp: truncation N must be >= M");
    if (lp.objective < 1 || lp.objective > lp.N) throw ValidationError("lp: objective out of range");

    SimplexState s;
    s.M = M;
    s.N = lp.N;
    s.eps = pow(real(10), -static_cast<int>(real::default_precision()) / 2);
    s.col.assign(s.total(), std::vector<real>(M, real(0)));
    s.b = lp.rhs;
    s.ub.assign(s.total(), real(1));
    s.bounded.assign(s.total(), true);
    s.status.assign(s.total(), VarStatus::lower);
    for (unsigned i = 0; i < M; ++i) {
        real power = 1;
        real fact = 1;
        for (unsigned n = 1; n <= lp.N; ++n) {
            power *= lp.mu[i];
            fact *= n;
            s.col[n - 1][i] = power / fact;
        }
    }
    for (unsigned i = 0; i < M; ++i) {
        unsigned art = lp.N + i;
        if (s.b[i] < 0) {
            s.b[i] = -s.b[i];
            for (unsigned j = 0; j < lp.N; ++j) s.col[j][i] = -s.col[j][i];
        }
        s.col[art][i] = 1;
        s.bounded[art] = false;
        s.status[art] = VarStatus::basic;
        s.basis.push_back(art);
    }

    // Phase 1: drive the artificials to zero.
    std::vector<real> c1(s.total(), real(0));
    std::vector<bool> all(s.total(), true);
    for (unsigned i = 0; i < M; ++i) c1[lp.N + i] = 1;
    s.optimize(c1, all);
    s.refresh_basic_values();
    real art_sum = 0;
    for (unsigned i = 0; i < M; ++i)
        if (s.basis[i] >= lp.N) art_sum += abs(s.xb[i]);
    real bmax = 0;
    for (unsigned i = 0; i < M; ++i) {
        real ab = abs(s.b[i]);
        if (ab > bmax) bmax = ab;
    }
    if (art_sum > s.eps * (1 + bmax)) throw Infeasible("lp: phase-1 optimum positive");

    // Pivot any residual zero-valued artificials out of the basis.
    for (unsigned i = 0; i < M; ++i) {
        if (s.basis[i] < lp.N) continue;
        for (unsigned j = 0; j < lp.N; ++j) {
            if (s.status[j] == VarStatus::basic) continue;
            std::vector<real> w = s.solve_basis(s.col[j], false);
            if (abs(w[i]) > s.eps) {
                s.status[s.basis[i]] = VarStatus::lower;
                s.basis[i] = j;
                s.status[j] = VarStatus::basic;
                break;
            }
        }
        if (s.basis[i] >= lp.N) throw Error("lp: rank-deficient constraint matrix");
    }
    // Artificials fixed at zero for phase 2.
    std::vector<bool> structural(s.total(), true);
    for (unsigned i = 0; i < M; ++i) {
        structural[lp.N + i] = false;
        s.ub[lp.N + i] = 0;
        s.bounded[lp.N + i] = true;
    }

    std::vector<real> c2(s.total(), real(0));
    c2[lp.objective - 1] = lp.maximize ? -1 : 1;
    s.optimize(c2, structural);
    s.refresh_basic_values();

    LPResult res;
    res.point.resize(lp.N);
    for (unsigned j = 0; j < lp.N; ++j) res.point[j] = s.value_of(j);
    res.value = res.point[lp.objective - 1];
    return res;
}

LPResult lp_enumerate(const TruncatedLP& lp, const PrecisionConfig& cfg) {
    PrecisionScope scope(cfg);
    const unsigned M = static_cast<unsigned>(lp.mu.size());
    const unsigned N = lp.N;
    if (N < M) throw ValidationError("lp: truncation N must be >= M");
    if (N > 14) throw EnumerationTooLarge("lp_enumerate: capped at N <= 14");

    std::vector<std::vector<real>> col(N, std::vector<real>(M));
    for (unsigned i = 0; i < M; ++i) {
        real power = 1, fact = 1;
        for (unsigned n = 1; n <= N; ++n) {
            power *= lp.mu[i];
            fact *= n;
            col[n - 1][i] = power / fact;
        }
    }
    const real eps = pow(real(10), -static_cast<int>(real::default_precision()) / 2);

    std::optional<LPResult> best;
    std::vector<unsigned> sel(M);
    // All basis subsets, all 0/1 patterns on the remaining variables.
    std::vector<unsigned> free_idx(N - M);
    auto consider = [&](const std::vector<real>& y) {
        real v = y[lp.objective - 1];
        if (!best || (lp.maximize ? v > best->value : v < best->value)) {
            best = LPResult{v, y};
        }
    };
    std::vector<bool> in_basis(N, false);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned start, unsigned k) {
        if (k == M) {
            unsigned f = 0;
            for (unsigned j = 0; j < N; ++j)
                if (!in_basis[j]) free_idx[f++] = j;
            const unsigned patterns = 1u << (N - M);
            for (unsigned mask = 0; mask < patterns; ++mask) {
                std::vector<real> rhs = lp.rhs;
                for (unsigned t = 0; t < N - M; ++t) {
                    if (mask & (1u << t)) {
                        for (unsigned i = 0; i < M; ++i) rhs[i] -= col[free_idx[t]][i];
                    }
                }
                // Solve the M x M system over the selected columns.
                std::vector<std::vector<real>> a(M, std::vector<real>(M + 1));
                for (unsigned i = 0; i < M; ++i) {
                    for (unsigned k2 = 0; k2 < M; ++k2) a[i][k2] = col[sel[k2]][i];
                    a[i][M] = rhs[i];
                }
                bool singular = false;
                for (unsigned c = 0; c < M && !singular; ++c) {
                    unsigned piv = c;
                    for (unsigned r = c + 1; r < M; ++r)
                        if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
                    if (abs(a[piv][c]) < eps * eps) {
                        singular = true;
                        break;
                    }
                    std::swap(a[piv], a[c]);
                    for (unsigned r = 0; r < M; ++r) {
                        if (r == c) continue;
                        real fct = a[r][c] / a[c][c];
                        for (unsigned k2 = c; k2 <= M; ++k2) a[r][k2] -= fct * a[c][k2];
                    }
                }
                if (singular) continue;
                std::vector<real> y(N, real(0));
                bool ok = true;
                for (unsigned i = 0; i < M; ++i) {
                    real v = a[i][M] / a[i][i];
                    if (v < -eps || v > 1 + eps) {
                        ok = false;
                        break;
                    }
                    y[sel[i]] = v;
                }
                if (!ok) continue;
                for (unsigned t = 0; t < N - M; ++t)
                    if (mask & (1u << t)) y[free_idx[t]] = 1;
                consider(y);
            }
            return;
        }
        for (unsigned j = start; j < N; ++j) {
            sel[k] = j;
            in_basis[j] = true;
            rec(j + 1, k + 1);
            in_basis[j] = false;
        }
    };
    rec(0, 0);
    if (!best) throw Infeasible("lp_enumerate: no feasible vertex");
    return *best;
}

std::vector<std::vector<real>> sample_feasible(unsigned N, unsigned count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<real>> out;
    out.reserve(count);
    for (unsigned k = 0; k < count; ++k) {
        std::vector<real> y(N);
        for (unsigned n = 0; n < N; ++n) {
            y[n] = real(static_cast<double>(rng() >> 11) * 0x1p-53);
        }
        out.push_back(std::move(y));
    }
    return out;
}

std::vector<real> push_forward_qplus(const std::vector<real>& y, const std::vector<real>& mu) {
    std::vector<real> qp(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        real sum = 0, power = 1, fact = 1;
        for (std::size_t n = 1; n <= y.size(); ++n) {
            power *= mu[i];
            fact *= n;
            sum += power / fact * y[n - 1];
        }
        qp[i] = exp(-mu[i]) * sum;
    }
    return qp;
}

}  // namespace decoy
