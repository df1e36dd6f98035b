#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

#include "fermat/curve.hpp"
#include "fermat/errors.hpp"
#include "fermat/field.hpp"

namespace fermat {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

enum class MomentMethod { brute, closed, geometric };

// One k-th moment sum_{A,B in F_q^x} a_{q,ell}(A,B)^k with provenance.
struct MomentRecord {
    std::uint64_t q = 0;
    std::uint32_t ell = 0;
    std::uint32_t k = 0;
    BigInt value;
    MomentMethod method = MomentMethod::brute;
};

inline BigInt bigint_pow(BigInt base, std::uint32_t e) {
    BigInt r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// Exact k-th moment from the ell^2 class counts: each class pair stands
// for ((q-1)/ell)^2 coefficient pairs.
inline MomentRecord moment_brute(const ClassCountTable& table, std::uint32_t k) {
    if (k == 0) throw InputError("moment order must be >= 1");
    const std::uint64_t q = table.field().q();
    const std::uint32_t ell = table.ell();
    BigInt sum = 0;
    for (std::uint32_t ca = 0; ca < ell; ++ca) {
        for (std::uint32_t cb = 0; cb < ell; ++cb) {
            sum += bigint_pow(BigInt(table.trace_term(ca, cb)), k);
        }
    }
    BigInt weight = BigInt((q - 1) / ell) * BigInt((q - 1) / ell);
    return {q, ell, k, weight * sum, MomentMethod::brute};
}

inline MomentRecord moment_brute(const Field& field, std::uint32_t ell, std::uint32_t k) {
    return moment_brute(ClassCountTable(field, ell), k);
}

// Closed formulas: 0 for k = 1 and q(q-1)^2(ell-1)(ell-2) for k = 2.
// No closed polynomial exists in this family for k >= 3.
inline MomentRecord moment_closed(std::uint64_t q, std::uint32_t ell, std::uint32_t k) {
    if (k == 1) return {q, ell, k, BigInt(0), MomentMethod::closed};
    if (k == 2) {
        BigInt v = BigInt(q) * BigInt(q - 1) * BigInt(q - 1) * BigInt(ell - 1) * BigInt(ell - 2);
        return {q, ell, k, v, MomentMethod::closed};
    }
    throw UnsupportedError("no closed moment formula for k = " + std::to_string(k));
}

enum class TupleMethod { enumerate, closed };

// S(m): the number of m-tuples of nontrivial characters of order
// dividing ell whose product is also nontrivial. Closed form
// (ell-1)((ell-1)^m - (-1)^m)/ell; enumeration walks the (ell-1)^m
// exponent tuples directly and is capped at 10^7 of them.
inline BigInt count_char_tuples(std::uint32_t ell, std::uint32_t m, TupleMethod method) {
    if (!is_prime(ell)) throw NotPrimeError("ell must be prime");
    if (m == 0) throw InputError("tuple length must be >= 1");
    if (method == TupleMethod::closed) {
        BigInt pw = bigint_pow(BigInt(ell - 1), m);
        BigInt num = (m % 2 == 0) ? BigInt(pw - 1) : BigInt(pw + 1);
        BigInt val = BigInt(ell - 1) * num;
        return val / ell;  // exact: (ell-1)^m == (-1)^m mod ell
    }
    double size = std::pow(static_cast<double>(ell - 1), static_cast<double>(m));
    if (size > 1e7) throw TooLargeError("enumeration over (ell-1)^m tuples exceeds 10^7");
    std::vector<std::uint32_t> j(m, 1);
    std::uint64_t total = 0;
    while (true) {
        std::uint64_t prod = 0;
        for (std::uint32_t v : j) prod += v;
        if (prod % ell != 0) ++total;
        std::size_t pos = 0;
        while (pos < m) {
            if (++j[pos] < ell) break;
            j[pos] = 1;
            ++pos;
        }
        if (pos == m) break;
    }
    return BigInt(total);
}

// Triangle-inequality upper bound on the k-th moment,
//   q^{k/2} (q-1)^2 (ell-2)^{k-1} S(k-1),
// from expanding a(A,B)^k into Gauss-sum ratios of modulus sqrt(q).
// For odd k the value q^{k/2} is irrational; the returned rational
// rounds sqrt(q) upward at 64 fractional bits so the result still
// dominates the true bound. Use moment_within_bound for exact
// comparisons.
inline BigRat moment_bound(std::uint64_t q, std::uint32_t ell, std::uint32_t k) {
    if (k == 0) throw InputError("moment order must be >= 1");
    // S(0) = 0: the empty product is trivial
    BigInt tuples = (k == 1) ? BigInt(0) : count_char_tuples(ell, k - 1, TupleMethod::closed);
    BigInt rest = BigInt(q - 1) * BigInt(q - 1) * bigint_pow(BigInt(ell - 2), k - 1) * tuples;
    BigRat qpow;
    if (k % 2 == 0) {
        qpow = BigRat(bigint_pow(BigInt(q), k / 2));
    } else {
        BigInt scaled = bigint_pow(BigInt(q), k) << 128;  // q^k * 2^128
        BigInt root = sqrt(scaled);
        if (root * root < scaled) ++root;  // ceil, so the bound stays valid
        qpow = BigRat(root, BigInt(1) << 64);
    }
    return qpow * BigRat(rest);
}

// Exact test |value| <= q^{k/2} * rest via squaring, no rounding at all.
inline bool moment_within_bound(std::uint64_t q, std::uint32_t ell, std::uint32_t k, const BigInt& value) {
    if (k == 0) throw InputError("moment order must be >= 1");
    BigInt tuples = (k == 1) ? BigInt(0) : count_char_tuples(ell, k - 1, TupleMethod::closed);
    BigInt rest = BigInt(q - 1) * BigInt(q - 1) * bigint_pow(BigInt(ell - 2), k - 1) * tuples;
    BigInt lhs = value * value;
    BigInt rhs = bigint_pow(BigInt(q), k) * rest * rest;
    return lhs <= rhs;
}

// sum over projective coefficient representatives [A:B:C] of N(A,B,C)^k.
// smooth_only keeps ABC != 0; those classes are normalized to C = -1, so
// they biject with affine pairs (A,B) in (F_q^x)^2.
struct FibreCount {
    std::uint64_t q = 0;
    std::uint32_t ell = 0;
    std::uint32_t k = 0;
    bool smooth_only = true;
    BigInt count;
};

inline FibreCount fibre_count(const Field& field, std::uint32_t ell, std::uint32_t k, bool smooth_only) {
    ClassCountTable table(field, ell);
    const std::uint64_t q = field.q();
    BigInt total = 0;
    BigInt weight = BigInt((q - 1) / ell) * BigInt((q - 1) / ell);
    for (std::uint32_t ca = 0; ca < ell; ++ca) {
        for (std::uint32_t cb = 0; cb < ell; ++cb) {
            total += weight * bigint_pow(BigInt(table.count(ca, cb)), k);
        }
    }
    if (!smooth_only) {
        // exactly one zero coefficient: [1:b:0], [1:0:c], [0:1:c] with b, c != 0
        for (std::uint64_t v = 1; v < q; ++v) {
            FieldElement e{static_cast<std::uint32_t>(v)};
            FieldElement one = field.one(), zero = field.zero();
            total += bigint_pow(BigInt(count_brute({&field, ell, one, e, zero}).N), k);
            total += bigint_pow(BigInt(count_brute({&field, ell, one, zero, e}).N), k);
            total += bigint_pow(BigInt(count_brute({&field, ell, zero, one, e}).N), k);
        }
        // two zero coefficients: coordinate lines, q+1 points each
        total += 3 * bigint_pow(BigInt(q + 1), k);
    }
    return {q, ell, k, smooth_only, total};
}

// k-th moment recovered from smooth fibre counts via the binomial
// expansion of (N - (q+1))^k; the j = 0 term contributes the count of
// coefficient pairs, (q-1)^2.
inline MomentRecord moment_geometric(const Field& field, std::uint32_t ell, std::uint32_t k) {
    if (k == 0) throw InputError("moment order must be >= 1");
    const std::uint64_t q = field.q();
    ClassCountTable table(field, ell);
    BigInt weight = BigInt((q - 1) / ell) * BigInt((q - 1) / ell);

    std::vector<BigInt> fibre(k + 1);  // fibre[j] = sum N^j over smooth pairs
    for (std::uint32_t j = 0; j <= k; ++j) {
        BigInt s = 0;
        for (std::uint32_t ca = 0; ca < ell; ++ca) {
            for (std::uint32_t cb = 0; cb < ell; ++cb) {
                s += bigint_pow(BigInt(table.count(ca, cb)), j);
            }
        }
        fibre[j] = weight * s;
    }

    BigInt total = 0;
    BigInt binom = 1;  // C(k, j)
    for (std::uint32_t j = 0; j <= k; ++j) {
        BigInt term = binom * fibre[j] * bigint_pow(BigInt(q + 1), k - j);
        if ((k - j) % 2 == 1) total -= term;
        else total += term;
        binom = binom * (k - j) / (j + 1);
    }
    return {q, ell, k, total, MomentMethod::geometric};
}

}  // namespace fermat
