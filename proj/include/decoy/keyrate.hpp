#pragma once

#include "decoy/precision.hpp"

namespace decoy {

struct KeyRateInput {
    real Q;         // overall detection rate at the signal intensity
    real E;         // overall error rate
    real Q0;        // vacuum contribution e^{-mu} y0
    real Q1;        // single-photon contribution e^{-mu} mu y1_min
    real e1_upper;  // single-photon error bound
    real f = real("1.22");  // error-correction inefficiency
};

// Binary entropy, -e log2 e - (1-e) log2(1-e); DomainError outside [0,1].
real h2(const real& e);

// GLLP-style rate: R = -Q f H2(E) + Q0 + Q1 (1 - H2(e1_upper)). The
// error-correction term is subtracted (syndrome cost); may be negative.
real key_rate(const KeyRateInput& in);

// min(0.5, b1_max / y1_min); DegenerateYield when y1_min <= 0.
real e1_upper(const real& b1_max, const real& y1_min);

}  // namespace decoy
