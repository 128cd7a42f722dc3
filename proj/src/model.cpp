#include "decoy/model.hpp"

#include "decoy/errors.hpp"

namespace decoy {

void ChannelParams::validate(bool strict) const {
    if (!strict) return;
    if (A < 0 || A > 1) throw ValidationError("model: A must lie in [0,1]");
    if (B < 0 || B > eta) throw ValidationError("model: B must lie in [0, eta]");
    if (eta > real(1) / 10) throw ValidationError("model: eta must be <= 1/10");
}

bool IntensitySet::all_le_one() const {
    for (const real& m : mu)
        if (m > 1) return false;
    return true;
}

void IntensitySet::validate() const {
    if (mu.empty()) throw ValidationError("intensities: empty list");
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] <= 0) throw ValidationError("intensities: all mu must be positive");
        if (i + 1 < mu.size()) {
            if (mu[i] == mu[i + 1]) throw DegenerateIntensities("intensities: duplicate mu");
            if (mu[i] > mu[i + 1]) {
                throw ValidationError("intensities: mu must be strictly increasing");
            }
        }
    }
    if (y0 < 0 || y0 > 1) throw ValidationError("intensities: y0 must lie in [0,1]");
}

real yield_q(unsigned n, const ChannelParams& p) {
    if (n == 0) return p.B;
    return p.A * (1 - pow_ui(1 - p.eta, n)) + p.B;
}

real synth_qplus(const real& mu, const ChannelParams& p) {
    return p.A * (1 - exp(-p.eta * mu)) + p.B * (1 - exp(-mu));
}

real synth_error_rhs(const real& mu, const real& e_det, const real& p_dark, const real& eta) {
    if (e_det < 0 || e_det > real(1) / 2) throw ValidationError("model: e_det must lie in [0, 0.5]");
    return e_det * (1 - exp(-eta * mu)) + p_dark / 2;
}

std::vector<real> qplus_from_record(const MeasurementRecord& rec, const IntensitySet& set) {
    if (rec.Q.size() != set.mu.size()) throw ValidationError("record: Q size mismatch");
    std::vector<real> qp(set.mu.size());
    for (std::size_t i = 0; i < set.mu.size(); ++i) {
        qp[i] = rec.Q[i] - exp(-set.mu[i]) * set.y0;
        if (qp[i] < 0) throw NegativeQPlus("record: Q(mu) < e^{-mu} y0");
    }
    return qp;
}

std::vector<real> qplus_from_errors(const MeasurementRecord& rec, const IntensitySet& set) {
    if (!rec.E) throw ValidationError("record: error rates missing");
    if (rec.Q.size() != set.mu.size() || rec.E->size() != set.mu.size()) {
        throw ValidationError("record: Q/E size mismatch");
    }
    std::vector<real> qp(set.mu.size());
    for (std::size_t i = 0; i < set.mu.size(); ++i) {
        qp[i] = rec.Q[i] * (*rec.E)[i] - exp(-set.mu[i]) * set.y0 / 2;
        if (qp[i] < 0) throw NegativeQPlus("record: Q(mu)E(mu) < e^{-mu} y0 / 2");
    }
    return qp;
}

std::vector<real> to_constraint_rhs(const MeasurementRecord& rec, const IntensitySet& set) {
    std::vector<real> rhs = qplus_from_record(rec, set);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] *= exp(set.mu[i]);
    return rhs;
}

std::vector<real> to_error_rhs(const MeasurementRecord& rec, const IntensitySet& set) {
    std::vector<real> rhs = qplus_from_errors(rec, set);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] *= exp(set.mu[i]);
    return rhs;
}

MeasurementRecord synth_record(const IntensitySet& set, const ChannelParams& p,
                               const std::optional<real>& e_det,
                               const std::optional<real>& p_dark) {
    MeasurementRecord rec;
    rec.Q.reserve(set.mu.size());
    for (const real& m : set.mu) rec.Q.push_back(exp(-m) * set.y0 + synth_qplus(m, p));
    if (e_det && p_dark) {
        std::vector<real> e;
        e.reserve(set.mu.size());
        for (std::size_t i = 0; i < set.mu.size(); ++i) {
            e.push_back(synth_error_rhs(set.mu[i], *e_det, *p_dark, p.eta) / rec.Q[i]);
        }
        rec.E = std::move(e);
    }
    return rec;
}

}  // namespace decoy
