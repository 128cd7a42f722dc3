#pragma once

#include <string>
#include <utility>
#include <vector>

#include "decoy/model.hpp"
#include "decoy/precision.hpp"

namespace decoy {

// Extremal yield configurations. X solves the M x M constraint system with
// y_n = 0 for n > M; Z has zeros on (M, L0), the value a0 at L0 and an
// all-ones tail. Which of the two is the lower end of the interval for y_n
// depends on the parity of M - n.

struct XConfiguration {
    std::vector<real> values;  // X_1..X_M
    std::vector<real> mu;
    std::vector<real> rhs;     // e^{mu_i} Q_+(mu_i)
};

enum class ZBranch {
    equality,   // z_M(L0, a0) = 0 achieved with 0 < a0 <= 1
    saturated,  // z_M(M+1, 1) >= 0: all-ones tail, Z_M may stay positive
};

struct ZConfiguration {
    std::vector<real> values;  // Z_1..Z_M
    unsigned L0 = 0;
    real a0;
    ZBranch branch = ZBranch::equality;
};

// Kernel basis vector w^{(m)}: w_m = 1, w_n for n <= M given by hook-shape
// Schur polynomials, all other entries zero.
struct WVector {
    unsigned m;
    std::vector<real> head;  // w_1..w_M
};

struct Interval {
    real lo;
    real hi;
    bool exact = false;
};

struct BoundsReport {
    std::vector<real> mu;
    XConfiguration x;
    ZConfiguration z;
    std::vector<Interval> intervals;  // index n-1 for n = 1..M
    bool exact = false;               // mu_M <= 1 (and model domain when known)
    bool feasible = true;
    std::vector<std::string> warnings;
};

// Solve sum_{n=1}^{M} (mu_i^n / n!) y_n = rhs_i. Gaussian elimination at the
// ambient precision; throws DegenerateIntensities via the caller's checks.
std::vector<real> solve_moment_system(const std::vector<real>& mu, const std::vector<real>& rhs);

// X from Q_+ data. X_1 is taken from the Lagrange product form and
// cross-checked against the linear-solve value to 1e-20 relative.
XConfiguration compute_x(const std::vector<real>& qplus, const std::vector<real>& mu,
                         const PrecisionConfig& cfg = {});

WVector w_vector(unsigned m, const std::vector<real>& mu, const PrecisionConfig& cfg = {});

// G(mu; L, a) = e^mu Q_+ - (sum_{n>L} mu^n/n! + (mu^L/L!) a); the constraint
// right-hand side once the tail of z(L, a) is folded in.
real g_function(const real& mu, unsigned L, const real& a, const real& qplus);

// z_1..z_M of the configuration z(L, a).
std::vector<real> z_vector(unsigned L, const real& a, const std::vector<real>& qplus,
                           const std::vector<real>& mu, const PrecisionConfig& cfg = {});

// Largest L with L (L-M)! <= M e / x_M (Appendix-style search cap); returns
// user_cap when the mu <= 1 hypothesis fails, and never less than M+1.
unsigned l0_cap(const real& x_M, unsigned M, unsigned user_cap, bool mu_le_one);

// Smallest (L, a) in the (L up, a down) ordering with z_M(L, a) >= 0.
// Throws CapExceeded when the search passes min(user_cap, l0_cap).
std::pair<unsigned, real> find_l0_a0(const std::vector<real>& qplus, const std::vector<real>& mu,
                                     const PrecisionConfig& cfg = {}, unsigned user_cap = 200);

ZConfiguration compute_z(const std::vector<real>& qplus, const std::vector<real>& mu,
                         const PrecisionConfig& cfg = {}, unsigned user_cap = 200);

// (X_n, Z_n) when M-n is odd, (Z_n, X_n) when even.
Interval bound_interval(unsigned n, const XConfiguration& x, const ZConfiguration& z,
                        bool mu_le_one);

// Full pipeline over Q_+ data: X, Z, per-n intervals, feasibility diagnostics.
BoundsReport compute_bounds(const std::vector<real>& qplus, const std::vector<real>& mu,
                            const PrecisionConfig& cfg = {}, unsigned user_cap = 200);

}  // namespace decoy
