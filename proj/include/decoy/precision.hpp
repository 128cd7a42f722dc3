#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <string>

#include "decoy/errors.hpp"

namespace decoy {

// All determinant / bounds arithmetic runs on MPFR with a configurable
// significand. The default precision is thread-local, so parallel sweeps
// must open a PrecisionScope per thread.
using real = boost::multiprecision::mpfr_float;
using rational = boost::multiprecision::mpq_rational;
using bigint = boost::multiprecision::mpz_int;

struct PrecisionConfig {
    unsigned significand_bits = 256;
    // Reject mu sets with min |mu_j - mu_i| / max mu below this.
    double degeneracy_gap = 1e-6;
};

inline unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 2;
}

// RAII guard: sets the thread-default mpfr precision, restores on exit.
class PrecisionScope {
  public:
    explicit PrecisionScope(const PrecisionConfig& cfg) : saved_(real::default_precision()) {
        if (cfg.significand_bits < 64) {
            throw ValidationError("precision: significand_bits must be >= 64");
        }
        real::default_precision(bits_to_digits10(cfg.significand_bits));
    }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;
    ~PrecisionScope() { real::default_precision(saved_); }

  private:
    unsigned saved_;
};

inline real factorial_real(unsigned n) {
    real f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

inline real pow_ui(const real& x, unsigned e) {
    real r = 1;
    real base = x;
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// sum_{n>L} mu^n / n!, summed directly to avoid the cancellation in
// e^mu - (partial sum) once the tail drops below working precision.
inline real exp_tail(const real& mu, unsigned L) {
    real term = pow_ui(mu, L + 1) / factorial_real(L + 1);
    real sum = term;
    const real cutoff = pow(real(10), -static_cast<int>(real::default_precision()) - 10);
    unsigned n = L + 1;
    while (true) {
        ++n;
        term *= mu / n;
        sum += term;
        if (term < sum * cutoff) break;
    }
    return sum;
}

}  // namespace decoy
