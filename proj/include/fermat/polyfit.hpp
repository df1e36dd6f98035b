#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fermat/errors.hpp"
#include "fermat/field.hpp"
#include "fermat/moments.hpp"
#include "fermat/numeric.hpp"

namespace fermat {

// Working precision for the interpolation experiment: 50 decimal digits
// (168-bit mantissa), comfortably past the 128-bit floor the verdict
// thresholds assume.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

struct PrimePair {
    std::uint64_t p = 0;
    std::uint32_t ell = 0;
    bool operator==(const PrimePair&) const = default;
};

// Unknowns of a candidate moment polynomial sum c_{i,j} x^{i/2} y^j
// with 0 <= i <= k+4 and 0 <= j <= 2k-2.
inline std::size_t system_dimension(std::uint32_t k) {
    return static_cast<std::size_t>(k + 5) * (2 * k - 1);
}

// Square interpolation system: row per pair (p, ell), column per
// monomial p^{i/2} ell^j (i fastest), right-hand side the exact moment.
struct InterpolationSystem {
    std::uint32_t k = 0;
    std::vector<PrimePair> pairs;
    std::vector<std::vector<BigFloat>> matrix;
    std::vector<BigInt> rhs;
};

inline std::vector<BigFloat> monomial_row(std::uint32_t k, const PrimePair& pair) {
    std::size_t cols = system_dimension(k);
    std::vector<BigFloat> row(cols);
    BigFloat sqrt_p = sqrt(BigFloat(pair.p));
    std::vector<BigFloat> ppow(k + 5), lpow(2 * k - 1);
    ppow[0] = 1;
    for (std::uint32_t i = 1; i <= k + 4; ++i) ppow[i] = ppow[i - 1] * sqrt_p;
    lpow[0] = 1;
    for (std::uint32_t j = 1; j <= 2 * k - 2; ++j) lpow[j] = lpow[j - 1] * pair.ell;
    for (std::uint32_t j = 0; j <= 2 * k - 2; ++j) {
        for (std::uint32_t i = 0; i <= k + 4; ++i) {
            row[static_cast<std::size_t>(j) * (k + 5) + i] = ppow[i] * lpow[j];
        }
    }
    return row;
}

inline InterpolationSystem build_system(std::uint32_t k, std::span<const PrimePair> pairs) {
    if (k == 0) throw InputError("moment order must be >= 1");
    std::size_t need = system_dimension(k);
    if (pairs.size() != need) {
        throw WrongCountError("k = " + std::to_string(k) + " needs exactly " + std::to_string(need) +
                              " pairs, got " + std::to_string(pairs.size()));
    }
    InterpolationSystem sys;
    sys.k = k;
    for (const PrimePair& pair : pairs) {
        if (!is_prime(pair.p) || !is_prime(pair.ell)) {
            throw CongruenceViolationError("pair (" + std::to_string(pair.p) + ", " + std::to_string(pair.ell) +
                                           ") must consist of primes");
        }
        if ((pair.p - 1) % pair.ell != 0) {
            throw CongruenceViolationError("ell = " + std::to_string(pair.ell) + " does not divide p-1 for p = " +
                                           std::to_string(pair.p));
        }
        sys.pairs.push_back(pair);
        sys.matrix.push_back(monomial_row(k, pair));
        Field field(pair.p, 1);
        sys.rhs.push_back(moment_brute(field, pair.ell, k).value);
    }
    return sys;
}

namespace detail {

inline BigFloat inf_norm(const std::vector<std::vector<BigFloat>>& m) {
    BigFloat best = 0;
    for (const auto& row : m) {
        BigFloat s = 0;
        for (const BigFloat& v : row) s += abs(v);
        if (s > best) best = s;
    }
    return best;
}

// Gauss-Jordan with partial pivoting on [A | I | b]; returns both the
// solution and the inverse so the condition estimate costs nothing
// extra at these dimensions.
struct DenseSolve {
    std::vector<BigFloat> solution;
    BigFloat condition;
    BigFloat residual;  // ||Ax - b||_inf / ||b||_inf
};

inline DenseSolve solve_with_condition(const std::vector<std::vector<BigFloat>>& A,
                                       const std::vector<BigFloat>& b) {
    const std::size_t n = A.size();
    std::vector<std::vector<BigFloat>> work(n, std::vector<BigFloat>(2 * n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) work[i][j] = A[i][j];
        work[i][n + i] = 1;
        work[i][2 * n] = b[i];
    }

    BigFloat scale = inf_norm(A);
    BigFloat pivot_floor = scale * std::numeric_limits<BigFloat>::epsilon() * n;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (abs(work[r][col]) > abs(work[pivot][col])) pivot = r;
        }
        if (abs(work[pivot][col]) <= pivot_floor) {
            throw SingularMatrixError("matrix is numerically rank deficient at column " + std::to_string(col));
        }
        std::swap(work[pivot], work[col]);
        BigFloat inv = 1 / work[col][col];
        for (std::size_t j = col; j <= 2 * n; ++j) work[col][j] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            BigFloat f = work[r][col];
            if (f == 0) continue;
            for (std::size_t j = col; j <= 2 * n; ++j) work[r][j] -= f * work[col][j];
        }
    }

    DenseSolve out;
    out.solution.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.solution[i] = work[i][2 * n];

    BigFloat inv_norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
        BigFloat s = 0;
        for (std::size_t j = 0; j < n; ++j) s += abs(work[i][n + j]);
        if (s > inv_norm) inv_norm = s;
    }
    out.condition = scale * inv_norm;

    BigFloat rmax = 0, bmax = 0;
    for (std::size_t i = 0; i < n; ++i) {
        BigFloat r = -b[i];
        for (std::size_t j = 0; j < n; ++j) r += A[i][j] * out.solution[j];
        if (abs(r) > rmax) rmax = abs(r);
        if (abs(b[i]) > bmax) bmax = abs(b[i]);
    }
    out.residual = bmax > 0 ? rmax / bmax : rmax;
    return out;
}

}  // namespace detail

struct SolveResult {
    std::vector<BigFloat> coeffs;
    BigFloat condition;
    BigFloat residual;
};

// High-precision solve of the square system; demands a backward-stable
// residual so a quietly useless solution cannot slip through.
inline SolveResult solve_coeffs(const InterpolationSystem& sys) {
    std::vector<BigFloat> b;
    b.reserve(sys.rhs.size());
    for (const BigInt& v : sys.rhs) b.push_back(BigFloat(v));
    auto solved = detail::solve_with_condition(sys.matrix, b);
    if (solved.residual > BigFloat("1e-20")) {
        throw SingularMatrixError("solve residual exceeds 1e-20; re-choose the pair set");
    }
    return {std::move(solved.solution), solved.condition, solved.residual};
}

enum class FitOutcome { inconsistent, consistent, ill_conditioned };

inline std::string to_string(FitOutcome v) {
    switch (v) {
        case FitOutcome::inconsistent: return "inconsistent";
        case FitOutcome::consistent: return "consistent";
        default: return "ill_conditioned";
    }
}

// Verdict of the two-system comparison. With exact right-hand sides,
// two solved systems agree to roundoff-level error exactly when one
// polynomial explains both data sets; the threshold is scaled by the
// observed conditioning.
struct FitVerdict {
    std::uint32_t k = 0;
    std::vector<BigFloat> coeffs1, coeffs2;
    BigFloat max_abs_diff;
    BigFloat cond1, cond2;
    BigFloat threshold;  // theta = 1e6 * max(cond) * unit roundoff
    FitOutcome verdict = FitOutcome::ill_conditioned;
};

inline FitVerdict consistency_test(std::uint32_t k, std::span<const PrimePair> set1,
                                   std::span<const PrimePair> set2) {
    for (const PrimePair& a : set1) {
        for (const PrimePair& b : set2) {
            if (a == b) throw InputError("pair sets must be disjoint");
        }
    }
    auto sys1 = build_system(k, set1);
    auto sys2 = build_system(k, set2);
    auto sol1 = solve_coeffs(sys1);
    auto sol2 = solve_coeffs(sys2);

    FitVerdict out;
    out.k = k;
    out.coeffs1 = sol1.coeffs;
    out.coeffs2 = sol2.coeffs;
    out.cond1 = sol1.condition;
    out.cond2 = sol2.condition;
    out.max_abs_diff = 0;
    for (std::size_t i = 0; i < out.coeffs1.size(); ++i) {
        BigFloat d = abs(out.coeffs1[i] - out.coeffs2[i]);
        if (d > out.max_abs_diff) out.max_abs_diff = d;
    }
    BigFloat cond = out.cond1 > out.cond2 ? out.cond1 : out.cond2;
    out.threshold = BigFloat(1e6) * cond * std::numeric_limits<BigFloat>::epsilon();
    if (out.max_abs_diff > out.threshold) {
        out.verdict = FitOutcome::inconsistent;
    } else if (out.max_abs_diff < out.threshold / BigFloat(1e6)) {
        out.verdict = FitOutcome::consistent;
    } else {
        out.verdict = FitOutcome::ill_conditioned;
    }
    return out;
}

// Deterministic pair selection: admissible (p, ell) pairs with p >= 11
// enumerated by increasing p, then increasing prime ell | p-1, skipping
// rows that would be numerically dependent on the ones already taken.
// which = 0 and which = 1 give the first and second disjoint sets.
inline std::vector<PrimePair> default_pair_set(std::uint32_t k, int which) {
    std::size_t need = system_dimension(k);
    std::vector<std::vector<BigFloat>> echelon;  // normalized reduced rows
    std::vector<PrimePair> selected;
    std::size_t skipped_sets = 0;

    auto try_take = [&](const PrimePair& pair) {
        std::vector<BigFloat> row = monomial_row(k, pair);
        BigFloat norm = 0;
        for (const BigFloat& v : row) {
            if (abs(v) > norm) norm = abs(v);
        }
        for (BigFloat& v : row) v /= norm;
        for (const auto& e : echelon) {
            // eliminate against the pivot (largest entry) of e
            std::size_t piv = 0;
            for (std::size_t i = 1; i < e.size(); ++i) {
                if (abs(e[i]) > abs(e[piv])) piv = i;
            }
            BigFloat f = row[piv] / e[piv];
            for (std::size_t i = 0; i < row.size(); ++i) row[i] -= f * e[i];
        }
        BigFloat rem = 0;
        for (const BigFloat& v : row) {
            if (abs(v) > rem) rem = abs(v);
        }
        if (rem < BigFloat("1e-30")) return false;  // dependent: skip
        echelon.push_back(std::move(row));
        selected.push_back(pair);
        return true;
    };

    for (std::uint64_t p = 11;; ++p) {
        if (!is_prime(p)) continue;
        for (std::uint64_t ell : prime_factors(p - 1)) {
            PrimePair pair{p, static_cast<std::uint32_t>(ell)};
            if (!try_take(pair)) continue;
            if (selected.size() == need) {
                if (static_cast<int>(skipped_sets) == which) return selected;
                ++skipped_sets;
                selected.clear();
                echelon.clear();
            }
        }
    }
}

// Least-squares corroboration on a doubled row count, solved by modified
// Gram-Schmidt QR at working precision.
struct LeastSquaresFit {
    std::vector<PrimePair> pairs;
    std::vector<BigFloat> coeffs;
    BigFloat rel_residual;  // ||A c - b||_2 / ||b||_2
};

inline LeastSquaresFit overdetermined_fit(std::uint32_t k, std::span<const PrimePair> pairs) {
    std::size_t cols = system_dimension(k);
    if (pairs.size() < cols) throw WrongCountError("need at least as many pairs as unknowns");
    std::size_t rows = pairs.size();

    std::vector<std::vector<BigFloat>> A;
    std::vector<BigFloat> b;
    for (const PrimePair& pair : pairs) {
        if (!is_prime(pair.p) || !is_prime(pair.ell) || (pair.p - 1) % pair.ell != 0) {
            throw CongruenceViolationError("inadmissible pair in least-squares set");
        }
        A.push_back(monomial_row(k, pair));
        Field field(pair.p, 1);
        b.push_back(BigFloat(moment_brute(field, pair.ell, k).value));
    }

    // modified Gram-Schmidt: A = QR with Q (rows x cols), R upper
    std::vector<std::vector<BigFloat>> Q(cols, std::vector<BigFloat>(rows));
    std::vector<std::vector<BigFloat>> R(cols, std::vector<BigFloat>(cols));
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t r = 0; r < rows; ++r) Q[j][r] = A[r][j];
        for (std::size_t i = 0; i < j; ++i) {
            BigFloat dot = 0;
            for (std::size_t r = 0; r < rows; ++r) dot += Q[i][r] * Q[j][r];
            R[i][j] = dot;
            for (std::size_t r = 0; r < rows; ++r) Q[j][r] -= dot * Q[i][r];
        }
        BigFloat nrm = 0;
        for (std::size_t r = 0; r < rows; ++r) nrm += Q[j][r] * Q[j][r];
        nrm = sqrt(nrm);
        if (nrm == 0) throw SingularMatrixError("rank-deficient least-squares system");
        R[j][j] = nrm;
        for (std::size_t r = 0; r < rows; ++r) Q[j][r] /= nrm;
    }

    // R c = Q^T b by back substitution
    std::vector<BigFloat> qtb(cols);
    for (std::size_t i = 0; i < cols; ++i) {
        BigFloat dot = 0;
        for (std::size_t r = 0; r < rows; ++r) dot += Q[i][r] * b[r];
        qtb[i] = dot;
    }
    std::vector<BigFloat> c(cols);
    for (std::size_t i = cols; i-- > 0;) {
        BigFloat acc = qtb[i];
        for (std::size_t j = i + 1; j < cols; ++j) acc -= R[i][j] * c[j];
        c[i] = acc / R[i][i];
    }

    BigFloat rnorm = 0, bnorm = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        BigFloat resid = -b[r];
        for (std::size_t j = 0; j < cols; ++j) resid += A[r][j] * c[j];
        rnorm += resid * resid;
        bnorm += b[r] * b[r];
    }
    LeastSquaresFit out;
    out.pairs.assign(pairs.begin(), pairs.end());
    out.coeffs = std::move(c);
    out.rel_residual = bnorm > 0 ? sqrt(rnorm / bnorm) : sqrt(rnorm);
    return out;
}

// First 2n admissible pairs for the overdetermined corroboration.
inline std::vector<PrimePair> default_overdetermined_pairs(std::uint32_t k) {
    std::size_t need = 2 * system_dimension(k);
    std::vector<PrimePair> out;
    for (std::uint64_t p = 11; out.size() < need; ++p) {
        if (!is_prime(p)) continue;
        for (std::uint64_t ell : prime_factors(p - 1)) {
            if (out.size() == need) break;
            out.push_back({p, static_cast<std::uint32_t>(ell)});
        }
    }
    return out;
}

}  // namespace fermat
