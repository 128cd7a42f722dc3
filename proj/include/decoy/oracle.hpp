#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "decoy/precision.hpp"

namespace decoy {

// Brute-force check of the bounds engine: truncate the yield vector at N and
// solve min/max y_{n*} subject to sum_{n<=N} (mu_i^n/n!) y_n = rhs_i and
// 0 <= y_n <= 1 directly with a bounded-variable simplex.

struct TruncatedLP {
    unsigned N = 0;
    std::vector<real> mu;
    std::vector<real> rhs;      // e^{mu_i} Q_+(mu_i)
    unsigned objective = 1;     // 1-based index n*
    bool maximize = false;
};

struct LPResult {
    real value;
    std::vector<real> point;  // length N
};

// Bland's rule throughout, so termination is guaranteed; ties in the ratio
// test break toward the lowest variable index.
LPResult lp_extremize(const TruncatedLP& lp, const PrecisionConfig& cfg = {});

// Exhaustive vertex enumeration; test oracle for the simplex itself (N <= 14).
LPResult lp_enumerate(const TruncatedLP& lp, const PrecisionConfig& cfg = {});

// Random yield vectors in [0,1]^N, deterministic per seed.
std::vector<std::vector<real>> sample_feasible(unsigned N, unsigned count, std::uint64_t seed);

// Q_+(mu) = e^{-mu} sum_{n=1}^{N} (mu^n/n!) y_n for a finite-support y.
std::vector<real> push_forward_qplus(const std::vector<real>& y, const std::vector<real>& mu);

}  // namespace decoy
