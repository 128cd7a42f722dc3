#include "decoy/sweep.hpp"

#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "decoy/model.hpp"

namespace decoy {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

}  // namespace

std::vector<real> box_sweep_draw(std::uint64_t seed, unsigned index, unsigned m_min,
                                 unsigned m_max, const PrecisionConfig& prec) {
    PrecisionScope scope(prec);
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));

    const unsigned M = m_min + static_cast<unsigned>(rng() % (m_max - m_min + 1));
    ChannelParams p;
    p.eta = real(1e-3 + unit(rng) * (0.1 - 1e-3));
    p.B = real(unit(rng)) * p.eta;
    p.A = real(unit(rng));

    std::vector<real> mu;
    while (true) {
        std::vector<double> d(M);
        for (auto& v : d) v = 0.03 + unit(rng) * 0.97;
        std::sort(d.begin(), d.end());
        bool ok = true;
        for (unsigned i = 0; i + 1 < M; ++i)
            if (d[i + 1] - d[i] < 1e-2) ok = false;
        if (!ok) continue;
        mu.assign(d.begin(), d.end());
        break;
    }

    std::vector<real> qplus(M);
    for (unsigned i = 0; i < M; ++i) qplus[i] = synth_qplus(mu[i], p);

    XConfiguration x = compute_x(qplus, mu, prec);
    ZConfiguration z = compute_z(qplus, mu, prec);

    std::vector<real> out;
    out.reserve(2 * M);
    for (const real& v : x.values) out.push_back(v);
    for (const real& v : z.values) out.push_back(v);
    return out;
}

namespace {

void fold(SweepOutcome& o, const std::vector<real>& vals, const real& slack) {
    for (const real& v : vals) {
        if (v < -slack || v > 1 + slack) ++o.violations;
        if (o.draws == 0 && o.min_value.is_zero() && o.max_value.is_zero()) {
            o.min_value = v;
            o.max_value = v;
        }
        if (v < o.min_value) o.min_value = v;
        if (v > o.max_value) o.max_value = v;
    }
    ++o.draws;
}

}  // namespace

SweepOutcome box_sweep_serial(const SweepConfig& cfg) {
    PrecisionScope scope(cfg.prec);
    SweepOutcome o;
    const real slack = pow(real(10), -50);
    for (unsigned i = 0; i < cfg.draws; ++i) {
        fold(o, box_sweep_draw(cfg.seed, i, cfg.m_min, cfg.m_max, cfg.prec), slack);
    }
    return o;
}

SweepOutcome box_sweep_parallel(const SweepConfig& cfg) {
    std::vector<std::vector<real>> results(cfg.draws);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(cfg.draws); ++i) {
        // box_sweep_draw opens its own PrecisionScope, so each OpenMP thread
        // gets the right thread-local mpfr precision.
        results[i] = box_sweep_draw(cfg.seed, static_cast<unsigned>(i), cfg.m_min, cfg.m_max,
                                    cfg.prec);
    }
    PrecisionScope scope(cfg.prec);
    SweepOutcome o;
    const real slack = pow(real(10), -50);
    for (const auto& vals : results) fold(o, vals, slack);
    return o;
}

}  // namespace decoy
