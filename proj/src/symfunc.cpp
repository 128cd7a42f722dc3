#include "decoy/symfunc.hpp"

#include <algorithm>
#include <cstdlib>

namespace decoy {

void check_intensities(const std::vector<real>& mu, double gap) {
    if (mu.empty()) throw ValidationError("intensities: empty list");
    real mu_max = 0;
    for (const real& m : mu) {
        if (m <= 0) throw ValidationError("intensities: all mu must be positive");
        if (m > mu_max) mu_max = m;
    }
    for (std::size_t i = 0; i < mu.size(); ++i) {
        for (std::size_t j = i + 1; j < mu.size(); ++j) {
            if (abs(mu[j] - mu[i]) < gap * mu_max) {
                throw DegenerateIntensities("intensities: relative gap below threshold");
            }
        }
    }
}

real determinant(std::vector<std::vector<real>> a) {
    const std::size_t n = a.size();
    real det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
        }
        if (a[piv][col] == 0) return real(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            real f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

real vandermonde(const std::vector<real>& mu, const PrecisionConfig& cfg) {
    PrecisionScope scope(cfg);
    check_intensities(mu, cfg.degeneracy_gap);
    real prod = 1;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        for (std::size_t j = i + 1; j < mu.size(); ++j) prod *= mu[j] - mu[i];
    }
    return prod;
}

real schur_bialternant(const Partition& lambda, const std::vector<real>& mu,
                       const PrecisionConfig& cfg) {
    PrecisionScope scope(cfg);
    const unsigned M = static_cast<unsigned>(mu.size());
    if (lambda.length() > M) throw PartitionTooLong("schur: length(lambda) > M");
    check_intensities(mu, cfg.degeneracy_gap);

    // Column k carries exponent k + lambda_{M-k} (parts padded with zeros).
    std::vector<std::vector<real>> alt(M, std::vector<real>(M));
    for (unsigned i = 0; i < M; ++i) {
        for (unsigned k = 0; k < M; ++k) {
            alt[i][k] = pow_ui(mu[i], k + lambda.part(M - k));
        }
    }
    real denom = 1;
    for (unsigned i = 0; i < M; ++i) {
        for (unsigned j = i + 1; j < M; ++j) denom *= mu[j] - mu[i];
    }
    return determinant(std::move(alt)) / denom;
}

namespace {

void tableaux_rec(const std::vector<unsigned>& shape, std::vector<std::vector<unsigned>>& t,
                  unsigned r, unsigned c, unsigned M, const std::vector<real>& mu,
                  const real& monomial, real& sum) {
    if (r == shape.size()) {
        sum += monomial;
        return;
    }
    unsigned nr = r, nc = c + 1;
    if (nc == shape[r]) {
        nr = r + 1;
        nc = 0;
    }
    unsigned lo = 1;
    if (c > 0) lo = std::max(lo, t[r][c - 1]);       // weakly increasing rows
    if (r > 0) lo = std::max(lo, t[r - 1][c] + 1);   // strictly increasing columns
    for (unsigned v = lo; v <= M; ++v) {
        t[r][c] = v;
        tableaux_rec(shape, t, nr, nc, M, mu, monomial * mu[v - 1], sum);
    }
}

}  // namespace

real schur_tableaux(const Partition& lambda, const std::vector<real>& mu) {
    const unsigned M = static_cast<unsigned>(mu.size());
    if (lambda.length() > M) throw PartitionTooLong("schur: length(lambda) > M");
    if (lambda.weight() > 20 || M > 6) {
        throw EnumerationTooLarge("schur: tableau enumeration capped at weight 20, M <= 6");
    }
    if (lambda.empty()) return real(1);
    std::vector<std::vector<unsigned>> t;
    for (unsigned p : lambda.parts()) t.emplace_back(p, 0u);
    real sum = 0;
    tableaux_rec(lambda.parts(), t, 0, 0, M, mu, real(1), sum);
    return sum;
}

rational schur_at_ones(const Partition& lambda, unsigned M) {
    if (lambda.length() > M) throw PartitionTooLong("schur: length(lambda) > M");
    // Hook-content style product: prod_{i<j} (l_i - l_j + j - i) / (j - i).
    rational r = 1;
    for (unsigned i = 1; i <= M; ++i) {
        for (unsigned j = i + 1; j <= M; ++j) {
            long num = static_cast<long>(lambda.part(i)) - static_cast<long>(lambda.part(j)) +
                       static_cast<long>(j) - static_cast<long>(i);
            r *= rational(num, static_cast<long>(j - i));
        }
    }
    return r;
}

real schur_upper_bound(const Partition& lambda, const std::vector<real>& mu) {
    real mu_max = 0;
    for (const real& m : mu) {
        if (m <= 0) throw ValidationError("intensities: all mu must be positive");
        if (m > mu_max) mu_max = m;
    }
    real ones(schur_at_ones(lambda, static_cast<unsigned>(mu.size())).convert_to<real>());
    return pow_ui(mu_max, lambda.weight()) * ones;
}

real schur_hook(unsigned a, unsigned b, const std::vector<real>& mu) {
    const unsigned M = static_cast<unsigned>(mu.size());
    if (a == 0) throw ValidationError("schur_hook: arm must be >= 1");
    if (b + 1 > M) throw PartitionTooLong("schur_hook: hook has more rows than variables");

    // f[c][j] = s over semistandard tableaux of shape (c, 1^j) using the
    // variables seen so far; f[0][0] tracks the empty shape. Adding variable x
    // appends a horizontal strip: row-1 boxes plus optionally the bottom box
    // of the first column.
    std::vector<std::vector<real>> f(a + 1, std::vector<real>(b + 1, real(0)));
    f[0][0] = 1;
    std::vector<std::vector<real>> nf(a + 1, std::vector<real>(b + 1));
    std::vector<real> prefix(b + 1);  // P_j(c) = sum_{c'<=c} f[c'][j] x^{c-c'}, c' >= 1
    for (unsigned i = 0; i < M; ++i) {
        const real& x = mu[i];
        for (unsigned j = 0; j <= b; ++j) {
            prefix[j] = 0;
            nf[0][j] = 0;
        }
        nf[0][0] = f[0][0];
        real empty_pow = f[0][0];  // f[0][0] * x^c, updated per c
        for (unsigned c = 1; c <= a; ++c) {
            empty_pow *= x;
            for (unsigned j = 0; j <= b; ++j) prefix[j] = prefix[j] * x + f[c][j];
            nf[c][0] = prefix[0] + empty_pow;
            for (unsigned j = 1; j <= b; ++j) nf[c][j] = prefix[j] + x * prefix[j - 1];
        }
        std::swap(f, nf);
    }
    return f[a][b];
}

real k_ratio(unsigned m, const std::vector<real>& mu, const PrecisionConfig& cfg) {
    PrecisionScope scope(cfg);
    const unsigned M = static_cast<unsigned>(mu.size());
    if (m <= M) throw ValidationError("k_ratio: requires m > M");
    check_intensities(mu, cfg.degeneracy_gap);
    if (M == 1) return real(1);
    return schur_hook(m - M, M - 1, mu) / schur_hook(m - M, 0, mu);
}

}  // namespace decoy
