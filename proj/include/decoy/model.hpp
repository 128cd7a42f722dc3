#pragma once

#include <optional>
#include <vector>

#include "decoy/precision.hpp"

namespace decoy {

// Channel/detector model: in the absence of Eve the n-photon yield is
// q_n = A (1 - (1-eta)^n) + B.
struct ChannelParams {
    real A;
    real B;
    real eta;

    // Strict mode enforces 0 <= A <= 1, 0 <= B <= eta <= 1/10; the extremality
    // guarantees for X/Z depend on this domain. Pass strict=false to bypass.
    void validate(bool strict = true) const;
};

struct IntensitySet {
    std::vector<real> mu;  // strictly increasing, positive
    real y0 = 0;           // vacuum yield

    unsigned M() const { return static_cast<unsigned>(mu.size()); }
    bool all_le_one() const;
    void validate() const;
};

struct MeasurementRecord {
    std::vector<real> Q;                    // overall detection rate per intensity
    std::optional<std::vector<real>> E;     // overall error rate per intensity
};

// q_n for n >= 1 (unclamped; synthesis clamps to 1 where it matters).
real yield_q(unsigned n, const ChannelParams& p);

// Q_+(mu) = e^{-mu} sum_{n>=1} (mu^n/n!) q_n = A(1 - e^{-eta mu}) + B(1 - e^{-mu}).
real synth_qplus(const real& mu, const ChannelParams& p);

// Q(mu) E(mu) = e_det (1 - e^{-eta mu}) + p_dark / 2.
real synth_error_rhs(const real& mu, const real& e_det, const real& p_dark, const real& eta);

// Q_+(mu_i) = Q_i - e^{-mu_i} y0 per intensity; throws NegativeQPlus.
std::vector<real> qplus_from_record(const MeasurementRecord& rec, const IntensitySet& set);

// Error-rate analogue: Q_i E_i - (1/2) e^{-mu_i} y0 (the b_n constraint data).
std::vector<real> qplus_from_errors(const MeasurementRecord& rec, const IntensitySet& set);

// Right-hand sides e^{mu_i} Q_+(mu_i) of the Vandermonde constraint system.
std::vector<real> to_constraint_rhs(const MeasurementRecord& rec, const IntensitySet& set);
std::vector<real> to_error_rhs(const MeasurementRecord& rec, const IntensitySet& set);

// Model-synthesized record: Q_i = e^{-mu_i} y0 + Q_+(mu_i), E from the error
// model when e_det/p_dark are given. y0 defaults to q_0 = B.
MeasurementRecord synth_record(const IntensitySet& set, const ChannelParams& p,
                               const std::optional<real>& e_det = std::nullopt,
                               const std::optional<real>& p_dark = std::nullopt);

}  // namespace decoy
