#pragma once

#include <cstdint>
#include <vector>

#include "decoy/bounds.hpp"
#include "decoy/precision.hpp"

namespace decoy {

// Batch verification sweeps over random model instances. Draws are seeded
// independently, so the OpenMP kernel and the serial reference produce
// identical results; the serial path stays as the test oracle and the
// benchmark baseline.

struct SweepConfig {
    unsigned draws = 100;
    std::uint64_t seed = 1;
    unsigned m_min = 2;
    unsigned m_max = 5;
    PrecisionConfig prec;
};

struct SweepOutcome {
    unsigned draws = 0;
    unsigned violations = 0;  // X_n or Z_n outside [0,1]
    real min_value;           // smallest X/Z entry seen
    real max_value;           // largest X/Z entry seen
};

// One random instance: valid (A, B, eta), sorted mu <= 1, model-synthesized
// data, X and Z computed; returns all 2M configuration entries.
std::vector<real> box_sweep_draw(std::uint64_t seed, unsigned index, unsigned m_min,
                                 unsigned m_max, const PrecisionConfig& prec);

SweepOutcome box_sweep_serial(const SweepConfig& cfg);
SweepOutcome box_sweep_parallel(const SweepConfig& cfg);

}  // namespace decoy
