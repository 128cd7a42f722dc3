#include "decoy/keyrate.hpp"

#include "decoy/errors.hpp"

namespace decoy {

real h2(const real& e) {
    if (e < 0 || e > 1) throw DomainError("h2: argument outside [0,1]");
    if (e == 0 || e == 1) return real(0);
    const real ln2 = log(real(2));
    return (-e * log(e) - (1 - e) * log(1 - e)) / ln2;
}

real key_rate(const KeyRateInput& in) {
    if (in.Q < 0 || in.Q > 1 || in.Q0 < 0 || in.Q0 > 1 || in.Q1 < 0 || in.Q1 > 1) {
        throw ValidationError("key_rate: rates must lie in [0,1]");
    }
    if (in.E < 0 || in.E > real(1) / 2) throw ValidationError("key_rate: E must lie in [0, 0.5]");
    if (in.e1_upper < 0 || in.e1_upper > real(1) / 2) {
        throw ValidationError("key_rate: e1_upper must lie in [0, 0.5]");
    }
    if (in.f < 1) throw ValidationError("key_rate: f must be >= 1");
    return -in.Q * in.f * h2(in.E) + in.Q0 + in.Q1 * (1 - h2(in.e1_upper));
}

real e1_upper(const real& b1_max, const real& y1_min) {
    if (y1_min <= 0) throw DegenerateYield("e1_upper: y1_min must be positive");
    real e = b1_max / y1_min;
    if (e > real(1) / 2) e = real(1) / 2;
    if (e < 0) e = 0;
    return e;
}

}  // namespace decoy
