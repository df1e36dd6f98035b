#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermat/curve.hpp"
#include "fermat/errors.hpp"
#include "fermat/field.hpp"
#include "fermat/numeric.hpp"
#include "fermat/parallel.hpp"

namespace fermat {

// Census of pointless coefficient classes for one (q, ell): the class
// pairs with N = 0, the resulting count of pointless (A, B) pairs, and
// one witness pair when the census is nonempty.
struct ScanReport {
    std::uint64_t q = 0;
    std::uint64_t p = 0;
    unsigned n = 1;
    std::uint32_t ell = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pointless_classes;
    std::uint64_t E_size = 0;
    std::optional<std::pair<std::string, std::string>> witness;  // canonical element text
};

inline ScanReport pointless_pairs(const Field& field, std::uint32_t ell) {
    ClassCountTable table(field, ell);
    ScanReport report;
    report.q = field.q();
    report.p = field.p();
    report.n = field.n();
    report.ell = ell;
    for (std::uint32_t ca = 0; ca < ell; ++ca) {
        for (std::uint32_t cb = 0; cb < ell; ++cb) {
            if (table.count(ca, cb) == 0) report.pointless_classes.emplace_back(ca, cb);
        }
    }
    std::uint64_t per_class = (field.q() - 1) / ell;
    report.E_size = report.pointless_classes.size() * per_class * per_class;
    if (!report.pointless_classes.empty()) {
        auto [ca, cb] = report.pointless_classes.front();
        report.witness = std::make_pair(field.format(field.exp_of(ca)), field.format(field.exp_of(cb)));
    }
    return report;
}

// Largest q compatible with a pointless curve under the Hasse-Weil
// bound: N = 0 forces q + 1 <= (ell-1)(ell-2) sqrt(q). Solved exactly
// by checking (q+1)^2 <= ((ell-1)(ell-2))^2 q around the quadratic
// root.
inline std::uint64_t hasse_weil_ceiling(std::uint32_t ell) {
    if (ell < 3) {
        throw UnsupportedError("Hasse-Weil ceiling degenerates for ell = 2 (conics always have points)");
    }
    using boost::multiprecision::cpp_int;
    cpp_int D = cpp_int(ell - 1) * (ell - 2);
    auto holds = [&](std::uint64_t q) {
        cpp_int lhs = cpp_int(q + 1) * (q + 1);
        return lhs <= D * D * q;
    };
    double d = static_cast<double>((ell - 1)) * (ell - 2);
    double root = (d + std::sqrt(d * d - 4.0)) / 2.0;
    auto guess = static_cast<std::uint64_t>(root * root);
    std::uint64_t q = guess > 4 ? guess - 4 : 1;
    while (holds(q + 1)) ++q;
    while (q > 1 && !holds(q)) --q;
    return q;
}

// All prime powers q = p^m <= limit with q == 1 mod ell, ascending.
inline std::vector<std::pair<std::uint64_t, unsigned>> prime_powers(std::uint32_t ell, std::uint64_t limit) {
    if (limit < static_cast<std::uint64_t>(ell) + 1) {
        throw InputError("no prime power q == 1 mod ell exists below ell + 1");
    }
    struct Entry {
        std::uint64_t q, p;
        unsigned m;
    };
    std::vector<Entry> entries;
    for (std::uint64_t p : primes_up_to(limit)) {
        std::uint64_t q = p;
        unsigned m = 1;
        while (q <= limit) {
            if (q % ell == 1) entries.push_back({q, p, m});
            if (q > limit / p) break;
            q *= p;
            ++m;
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.q < b.q; });
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    out.reserve(entries.size());
    for (const Entry& e : entries) out.emplace_back(e.p, e.m);
    return out;
}

// Q(ell) sweep: every admissible prime power up to the Hasse-Weil
// ceiling is scanned, and q_max is the largest q whose census is
// nonempty.
struct QReport {
    std::uint32_t ell = 0;
    std::uint64_t bound = 0;
    std::vector<std::uint64_t> checked;
    std::optional<std::uint64_t> q_max;
    std::vector<ScanReport> rows;
    // Scanned q <= ell^2/2 with an empty census; the constructive
    // lower-bound argument predicts none for large enough q.
    std::vector<std::uint64_t> regime_gaps;
};

inline QReport q_max(std::uint32_t ell, unsigned workers = 1) {
    if (ell < 3) throw UnsupportedError("q_max needs ell >= 3");
    QReport report;
    report.ell = ell;
    report.bound = hasse_weil_ceiling(ell);
    if (report.bound < static_cast<std::uint64_t>(ell) + 1) return report;

    auto qs = prime_powers(ell, report.bound);
    report.rows.resize(qs.size());
    parallel_for(qs.size(), workers, [&](std::size_t i) {
        Field field(qs[i].first, qs[i].second);
        report.rows[i] = pointless_pairs(field, ell);
    });
    for (const ScanReport& row : report.rows) {
        report.checked.push_back(row.q);
        if (row.E_size > 0) {
            if (!report.q_max || row.q > *report.q_max) report.q_max = row.q;
        } else if (2 * row.q <= static_cast<std::uint64_t>(ell) * ell) {
            report.regime_gaps.push_back(row.q);
        }
    }
    return report;
}

// Constructive search for a pointless pair: fix a non-power B, build
// the value set {z^ell - B y^ell : y, z in F_q}, and pick any A outside
// it. Such an A is automatically a non-power as well.
inline std::optional<std::pair<FieldElement, FieldElement>> find_pointless(const Field& field, std::uint32_t ell) {
    if (!is_prime(ell)) throw NotPrimeError("ell must be prime");
    const std::uint64_t q = field.q();
    if ((q - 1) % ell != 0) {
        throw OrderMismatchError(std::to_string(ell) + " does not divide q-1");
    }
    if (ell == 2) return std::nullopt;  // conics always have points

    // ell-th powers including 0
    std::vector<FieldElement> powers;
    powers.reserve((q - 1) / ell + 1);
    powers.push_back(field.zero());
    for (std::uint64_t m = 0; m < q - 1; m += ell) powers.push_back(field.exp_of(m));

    std::vector<bool> value_set(q);
    for (std::uint32_t cb = 1; cb < ell; ++cb) {
        FieldElement B = field.exp_of(cb);
        std::fill(value_set.begin(), value_set.end(), false);
        for (FieldElement zpow : powers) {
            for (FieldElement ypow : powers) {
                value_set[field.sub(zpow, field.mul(B, ypow)).idx] = true;
            }
        }
        for (std::uint64_t a = 1; a < q; ++a) {
            if (!value_set[a]) return std::make_pair(FieldElement{static_cast<std::uint32_t>(a)}, B);
        }
    }
    return std::nullopt;
}

}  // namespace fermat
