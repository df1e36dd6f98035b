#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fermat/errors.hpp"
#include "fermat/moments.hpp"
#include "fermat/numeric.hpp"
#include "fermat/parallel.hpp"
#include "fermat/polyfit.hpp"

namespace fermat {

// Configuration of the exponent-fit sweep over admissible (p, ell)
// pairs; seed only matters when the admissible set is larger than
// pair_cap and must be sampled.
struct SweepConfig {
    std::uint64_t p_min = 211;
    std::uint64_t p_max = 600;
    std::uint32_t ell_min = 13;
    std::uint32_t ell_max = 600;
    std::uint32_t k_max = 10;
    std::size_t pair_cap = 2000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

// Least-squares exponents of log|z_k| ~ c + alpha log p + beta log ell
// over the pairs with z_k != 0, plus the worst observed |z_k| / bound.
struct ExponentFit {
    std::uint32_t k = 0;
    std::size_t pair_count = 0;  // pairs entering the fit
    double alpha = 0.0;
    double beta = 0.0;
    double max_bound_ratio = 0.0;
    bool degenerate = false;  // no nonzero moments to fit
};

inline std::vector<PrimePair> admissible_pairs(const SweepConfig& config) {
    if (config.p_min > config.p_max || config.ell_min > config.ell_max) {
        throw InputError("empty sweep range");
    }
    std::vector<PrimePair> pairs;
    for (std::uint64_t p : primes_up_to(config.p_max)) {
        if (p < config.p_min) continue;
        for (std::uint64_t ell : prime_factors(p - 1)) {
            if (ell < config.ell_min || ell > config.ell_max) continue;
            pairs.push_back({p, static_cast<std::uint32_t>(ell)});
        }
    }
    if (pairs.empty()) throw EmptyPairSetError("no admissible (p, ell) pairs in range");
    if (pairs.size() > config.pair_cap) {
        // seeded partial Fisher-Yates, then restore (p, ell) order
        std::mt19937_64 rng(config.seed);
        for (std::size_t i = 0; i < config.pair_cap; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng() % (pairs.size() - i));
            std::swap(pairs[i], pairs[j]);
        }
        pairs.resize(config.pair_cap);
        std::sort(pairs.begin(), pairs.end(), [](const PrimePair& a, const PrimePair& b) {
            return a.p != b.p ? a.p < b.p : a.ell < b.ell;
        });
    }
    return pairs;
}

namespace detail {

inline double log_bigint_abs(const BigInt& v) {
    BigFloat f(abs(v));
    return static_cast<double>(log(f));
}

// |z| / bound as a double; exact 1.0 when equality holds exactly.
inline double bound_ratio(std::uint64_t q, std::uint32_t ell, std::uint32_t k, const BigInt& z) {
    if (z == 0) return 0.0;
    BigInt tuples = (k == 1) ? BigInt(0) : count_char_tuples(ell, k - 1, TupleMethod::closed);
    BigInt rest = BigInt(q - 1) * BigInt(q - 1) * bigint_pow(BigInt(ell - 2), k - 1) * tuples;
    BigInt lhs = z * z;
    BigInt rhs = bigint_pow(BigInt(q), k) * rest * rest;
    if (lhs == rhs) return 1.0;
    return static_cast<double>(sqrt(BigFloat(lhs) / BigFloat(rhs)));
}

// 3-parameter least squares for log|z| = c + alpha log p + beta log ell.
inline bool fit_exponents(const std::vector<std::array<double, 3>>& samples, double& alpha, double& beta) {
    // normal equations for design (1, log p, log ell)
    double s[3][3] = {};
    double t[3] = {};
    for (const auto& row : samples) {
        double x[3] = {1.0, row[0], row[1]};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) s[i][j] += x[i] * x[j];
            t[i] += x[i] * row[2];
        }
    }
    // solve the 3x3 system by elimination
    double m[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m[i][j] = s[i][j];
        m[i][3] = t[i];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        }
        if (std::abs(m[piv][col]) < 1e-12) return false;
        std::swap(m[piv], m[col]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            double f = m[r][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[r][j] -= f * m[col][j];
        }
    }
    alpha = m[1][3] / m[1][1];
    beta = m[2][3] / m[2][2];
    return true;
}

}  // namespace detail

// Runs the sweep: exact moments per pair up to k_max, then per-k
// exponent fits and worst-case bound ratios.
inline std::vector<ExponentFit> sweep_and_fit(const SweepConfig& config) {
    if (config.k_max == 0) throw InputError("k_max must be >= 1");
    auto pairs = admissible_pairs(config);

    std::vector<std::vector<BigInt>> moments(pairs.size());
    parallel_for(pairs.size(), config.workers, [&](std::size_t i) {
        Field field(pairs[i].p, 1);
        ClassCountTable table(field, pairs[i].ell);
        moments[i].reserve(config.k_max);
        for (std::uint32_t k = 1; k <= config.k_max; ++k) {
            moments[i].push_back(moment_brute(table, k).value);
        }
    });

    std::vector<ExponentFit> fits;
    for (std::uint32_t k = 1; k <= config.k_max; ++k) {
        ExponentFit fit;
        fit.k = k;
        std::vector<std::array<double, 3>> samples;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const BigInt& z = moments[i][k - 1];
            double ratio = detail::bound_ratio(pairs[i].p, pairs[i].ell, k, z);
            if (ratio > fit.max_bound_ratio) fit.max_bound_ratio = ratio;
            if (z != 0) {
                samples.push_back({std::log(static_cast<double>(pairs[i].p)),
                                   std::log(static_cast<double>(pairs[i].ell)),
                                   detail::log_bigint_abs(z)});
            }
        }
        fit.pair_count = samples.size();
        if (samples.size() < 3 || !detail::fit_exponents(samples, fit.alpha, fit.beta)) {
            fit.degenerate = true;
            fit.alpha = fit.beta = 0.0;
        }
        fits.push_back(fit);
    }
    return fits;
}

// CSV rows: k, pair_count, alpha, beta, max_bound_ratio (degenerate
// rows leave the exponents empty). Byte-stable for fixed inputs.
inline std::string sweep_csv(const std::vector<ExponentFit>& fits) {
    std::string out = "k,pair_count,alpha,beta,max_bound_ratio\n";
    char buf[128];
    for (const ExponentFit& fit : fits) {
        if (fit.degenerate) {
            std::snprintf(buf, sizeof(buf), "%u,%zu,,,%.6f\n", fit.k, fit.pair_count, fit.max_bound_ratio);
        } else {
            std::snprintf(buf, sizeof(buf), "%u,%zu,%.4f,%.4f,%.6f\n", fit.k, fit.pair_count, fit.alpha, fit.beta,
                          fit.max_bound_ratio);
        }
        out += buf;
    }
    return out;
}

// Rough work estimate (total field elements touched); printed by the
// CLI before long sweeps.
inline double sweep_cost_estimate(const std::vector<PrimePair>& pairs) {
    double cost = 0;
    for (const PrimePair& pair : pairs) cost += static_cast<double>(pair.p);
    return cost;
}

}  // namespace fermat
