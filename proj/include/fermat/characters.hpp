#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "fermat/errors.hpp"
#include "fermat/field.hpp"

namespace fermat {

using Complex = std::complex<double>;

// Multiplicative character chi_j of order dividing ell on F_q^x, with
// chi_j(g^m) = exp(2*pi*i*j*m/ell) for the field generator g. All
// characters vanish at 0; j = 0 is the trivial character.
struct Character {
    const Field* field = nullptr;
    std::uint32_t ell = 0;
    std::uint32_t j = 0;

    bool is_trivial() const { return j == 0; }
};

inline Character character(const Field& field, std::uint32_t ell, std::uint32_t j) {
    if (!is_prime(ell)) {
        throw NotPrimeError("character order must be prime, got " + std::to_string(ell));
    }
    if ((field.q() - 1) % ell != 0) {
        throw OrderMismatchError(std::to_string(ell) + " does not divide q-1 = " + std::to_string(field.q() - 1));
    }
    if (j >= ell) {
        throw InputError("character exponent must lie in [0, ell)");
    }
    return {&field, ell, j};
}

inline Character conjugate(const Character& chi) {
    return {chi.field, chi.ell, chi.j == 0 ? 0u : chi.ell - chi.j};
}

inline Character product(const Character& a, const Character& b) {
    if (a.field != b.field) throw FieldMismatchError("characters live on different fields");
    if (a.ell != b.ell) throw OrderMismatchError("characters have different order bound");
    return {a.field, a.ell, (a.j + b.j) % a.ell};
}

// exp(2*pi*i*t/m) for t = 0..m-1.
inline std::vector<Complex> roots_of_unity(std::uint32_t m) {
    std::vector<Complex> r(m);
    for (std::uint32_t t = 0; t < m; ++t) {
        double arg = 2.0 * std::numbers::pi * t / m;
        r[t] = Complex(std::cos(arg), std::sin(arg));
    }
    return r;
}

inline Complex eval_char(const Character& chi, FieldElement x) {
    if (chi.field->is_zero(x)) return {0.0, 0.0};
    std::uint64_t t = chi.j * (chi.field->dlog(x) % chi.ell) % chi.ell;
    double arg = 2.0 * std::numbers::pi * static_cast<double>(t) / chi.ell;
    return {std::cos(arg), std::sin(arg)};
}

// Compensated (Kahan) accumulator; keeps the long character sums at
// roundoff-level error regardless of q.
struct KahanComplex {
    Complex sum{0.0, 0.0};
    Complex carry{0.0, 0.0};

    void add(Complex v) {
        Complex y = v - carry;
        Complex t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// Integral quantities computed through complex arithmetic must land
// within this absolute budget of an integer.
inline double integer_budget(double magnitude) { return 1e-6 * std::abs(magnitude) + 1e-9; }

// Nearest integer, throwing RoundingBudgetError when the value (or a
// residual imaginary part) strays beyond the budget.
inline std::int64_t round_to_integer(Complex value) {
    double budget = integer_budget(std::abs(value));
    double rounded = std::round(value.real());
    if (std::abs(value.real() - rounded) > budget || std::abs(value.imag()) > budget) {
        throw RoundingBudgetError("complex value is not integral within budget");
    }
    return static_cast<std::int64_t>(rounded);
}

// Gauss sum g(chi) = sum_{a in F_q} chi(a) psi(a) with the canonical
// additive character psi(a) = exp(2*pi*i*Tr(a)/p). Terms are accumulated
// in ascending discrete-log order.
inline Complex gauss_sum(const Character& chi) {
    const Field& F = *chi.field;
    auto rl = roots_of_unity(chi.ell);
    auto rp = roots_of_unity(static_cast<std::uint32_t>(F.p()));
    KahanComplex acc;
    for (std::uint64_t m = 0; m + 1 < F.q(); ++m) {
        FieldElement alpha = F.exp_of(m);
        acc.add(rl[chi.j * (m % chi.ell) % chi.ell] * rp[F.trace(alpha)]);
    }
    return acc.sum;
}

namespace detail {

inline void check_same_field(std::span<const Character> chis) {
    if (chis.size() < 2) throw InputError("Jacobi sums need at least two characters");
    for (const Character& c : chis) {
        if (c.field != chis.front().field) {
            throw FieldMismatchError("characters live on different fields");
        }
    }
}

// Sum over tuples (a_1,...,a_k) with a_1+...+a_k = target of the product
// of character values; every character vanishes at 0.
inline Complex jacobi_sum_target(std::span<const Character> chis, FieldElement target) {
    check_same_field(chis);
    const Field& F = *chis.front().field;
    std::size_t k = chis.size();
    std::vector<FieldElement> tuple(k);
    KahanComplex acc;

    // odometer over the first k-1 coordinates; the last is forced
    std::vector<std::uint32_t> idx(k - 1, 0);
    while (true) {
        FieldElement s = F.zero();
        for (std::size_t i = 0; i + 1 < k; ++i) {
            tuple[i] = {idx[i]};
            s = F.add(s, tuple[i]);
        }
        tuple[k - 1] = F.sub(target, s);

        Complex term{1.0, 0.0};
        bool zero = false;
        for (std::size_t i = 0; i < k; ++i) {
            if (F.is_zero(tuple[i])) {
                zero = true;
                break;
            }
            term *= eval_char(chis[i], tuple[i]);
        }
        if (!zero) acc.add(term);

        std::size_t pos = 0;
        while (pos < idx.size()) {
            if (++idx[pos] < F.q()) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == idx.size()) break;
    }
    return acc.sum;
}

}  // namespace detail

// J(chi_1,...,chi_k): sum over tuples with coordinate sum 1.
inline Complex jacobi_J(std::span<const Character> chis) {
    detail::check_same_field(chis);
    const Field& F = *chis.front().field;
    return detail::jacobi_sum_target(chis, F.one());
}

// J_0(chi_1,...,chi_k): sum over tuples with coordinate sum 0.
inline Complex jacobi_J0(std::span<const Character> chis) {
    detail::check_same_field(chis);
    const Field& F = *chis.front().field;
    return detail::jacobi_sum_target(chis, F.zero());
}

inline Complex jacobi_J(std::initializer_list<Character> chis) {
    return jacobi_J(std::span<const Character>(chis.begin(), chis.size()));
}

inline Complex jacobi_J0(std::initializer_list<Character> chis) {
    return jacobi_J0(std::span<const Character>(chis.begin(), chis.size()));
}

}  // namespace fermat
