#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fermat/numeric.hpp"

namespace fermat::testing {

// All (q, ell) with q = p^n <= q_cap a prime power and ell a prime
// divisor of q-1 drawn from ell_choices (empty = every prime divisor).
inline std::vector<std::pair<std::uint64_t, std::uint32_t>> field_suite(
    std::uint64_t q_cap, const std::vector<std::uint32_t>& ell_choices = {}) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
    for (std::uint64_t q = 3; q <= q_cap; ++q) {
        if (!prime_power_decompose(q)) continue;
        for (std::uint64_t ell : prime_factors(q - 1)) {
            if (!ell_choices.empty() &&
                std::find(ell_choices.begin(), ell_choices.end(), ell) == ell_choices.end()) {
                continue;
            }
            out.emplace_back(q, static_cast<std::uint32_t>(ell));
        }
    }
    return out;
}

}  // namespace fermat::testing
