#pragma once

#include <vector>

#include "decoy/partition.hpp"
#include "decoy/precision.hpp"

namespace decoy {

// Schur polynomial and Vandermonde evaluation. Three independent routes are
// kept for cross-validation:
//   - bialternant determinant ratio (general partitions),
//   - positive-sum branching recurrence (hook shapes only; no cancellation),
//   - semistandard tableau enumeration (small weights; test oracle).
// All callers are expected to hold a PrecisionScope, or pass a config to the
// overloads that open one themselves.

// Throws DegenerateIntensities when min |mu_j - mu_i| / max mu < gap.
void check_intensities(const std::vector<real>& mu, double gap);

// prod_{i<j} (mu_j - mu_i); 1 for a single intensity.
real vandermonde(const std::vector<real>& mu, const PrecisionConfig& cfg = {});

// Generalized alternant over Vandermonde. Requires length(lambda) <= M.
real schur_bialternant(const Partition& lambda, const std::vector<real>& mu,
                       const PrecisionConfig& cfg = {});

// Sum over semistandard tableaux with entries in {1..M}. Capped at
// weight <= 20 and M <= 6 (EnumerationTooLarge beyond).
real schur_tableaux(const Partition& lambda, const std::vector<real>& mu);

// s_lambda(1,...,1) in exact rational arithmetic; equals the number of
// semistandard tableaux of shape lambda with entries in {1..M}.
rational schur_at_ones(const Partition& lambda, unsigned M);

// (mu_max)^d * s_lambda(1,...,1) with d = weight(lambda).
real schur_upper_bound(const Partition& lambda, const std::vector<real>& mu);

// s_{alpha(a,b)}(mu) through the variable-by-variable branching recurrence.
// Positive summands only, so no catastrophic cancellation; this is the path
// the bounds engine uses. b must be <= M-1.
real schur_hook(unsigned a, unsigned b, const std::vector<real>& mu);

// K_m = s_{alpha(m-M, M-1)} / s_{(m-M)} for m > M; strictly increasing in m.
real k_ratio(unsigned m, const std::vector<real>& mu, const PrecisionConfig& cfg = {});

// Determinant by Gaussian elimination with partial pivoting (row-major square).
real determinant(std::vector<std::vector<real>> a);

}  // namespace decoy
