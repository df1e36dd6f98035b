#include <catch2/catch_amalgamated.hpp>

#include "fermat/polyfit.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

using namespace fermat;

namespace {

// exact expansion of q (q-1)^2 (ell-1)(ell-2) in the monomial basis
// x^{i/2} y^j, i <= 6, j <= 2 (column = j*7 + i)
std::vector<long> lemma_coefficients() {
    std::vector<long> c(21, 0);
    const long qpart[4] = {0, 1, -2, 1};   // q^3 - 2 q^2 + q, indexed by power of q
    const long lpart[3] = {2, -3, 1};      // ell^2 - 3 ell + 2
    for (int dq = 1; dq <= 3; ++dq) {
        for (int dl = 0; dl <= 2; ++dl) {
            c[static_cast<std::size_t>(dl) * 7 + 2 * dq] = qpart[dq] * lpart[dl];
        }
    }
    return c;
}

}  // namespace

TEST_CASE("system dimensions follow (k+5)(2k-1)") {
    CHECK(system_dimension(1) == 6);
    CHECK(system_dimension(2) == 21);
    CHECK(system_dimension(3) == 40);
    CHECK(system_dimension(4) == 63);
}

TEST_CASE("build_system validates the pair list") {
    auto set1 = default_pair_set(3, 0);
    REQUIRE(set1.size() == 40);
    CHECK_NOTHROW(build_system(3, set1));

    std::vector<PrimePair> short_list(set1.begin(), set1.end() - 1);
    CHECK_THROWS_AS(build_system(3, short_list), WrongCountError);

    auto bad = set1;
    bad[0] = {11, 3};  // 3 does not divide 10
    CHECK_THROWS_AS(build_system(3, bad), CongruenceViolationError);
    bad[0] = {12, 2};
    CHECK_THROWS_AS(build_system(3, bad), CongruenceViolationError);
}

TEST_CASE("default pair sets are deterministic, admissible, and disjoint") {
    auto s1 = default_pair_set(3, 0);
    auto s2 = default_pair_set(3, 1);
    CHECK(s1 == default_pair_set(3, 0));
    CHECK(s1.size() == 40);
    CHECK(s2.size() == 40);
    for (const PrimePair& a : s1) {
        CHECK(a.p >= 11);
        CHECK(is_prime(a.p));
        CHECK(is_prime(a.ell));
        CHECK((a.p - 1) % a.ell == 0);
        CHECK(std::find(s2.begin(), s2.end(), a) == s2.end());
    }
}

TEST_CASE("k = 2 control recovers the closed second-moment polynomial") {
    auto set1 = default_pair_set(2, 0);
    auto sys = build_system(2, set1);
    auto solved = solve_coeffs(sys);
    REQUIRE(solved.coeffs.size() == 21);

    auto expected = lemma_coefficients();
    for (std::size_t i = 0; i < 21; ++i) {
        CHECK(abs(solved.coeffs[i] - BigFloat(expected[i])) < BigFloat("1e-10"));
    }
}

TEST_CASE("k = 2 consistency across disjoint pair sets") {
    auto verdict = consistency_test(2, default_pair_set(2, 0), default_pair_set(2, 1));
    CHECK(verdict.verdict == FitOutcome::consistent);
    auto expected = lemma_coefficients();
    for (std::size_t i = 0; i < 21; ++i) {
        CHECK(abs(verdict.coeffs1[i] - BigFloat(expected[i])) < BigFloat("1e-10"));
        CHECK(abs(verdict.coeffs2[i] - BigFloat(expected[i])) < BigFloat("1e-10"));
    }
}

TEST_CASE("k = 3: disjoint 40-pair systems disagree") {
    auto verdict = consistency_test(3, default_pair_set(3, 0), default_pair_set(3, 1));
    CHECK(verdict.verdict == FitOutcome::inconsistent);
    CHECK(verdict.max_abs_diff > verdict.threshold);
}

TEST_CASE("k = 1 analog solves to the zero polynomial") {
    auto sys = build_system(1, default_pair_set(1, 0));
    auto solved = solve_coeffs(sys);
    for (const BigFloat& c : solved.coeffs) CHECK(c == 0);
}

TEST_CASE("duplicated pair makes the system singular") {
    auto set = default_pair_set(2, 0);
    set[set.size() - 1] = set[0];
    auto sys = build_system(2, set);
    CHECK_THROWS_AS(solve_coeffs(sys), SingularMatrixError);
}

TEST_CASE("overlapping sets are rejected") {
    auto s1 = default_pair_set(2, 0);
    auto s2 = default_pair_set(2, 1);
    s2[0] = s1[0];
    CHECK_THROWS_AS(consistency_test(2, s1, s2), InputError);
}

TEST_CASE("verdicts are invariant under row permutation") {
    auto s1 = default_pair_set(2, 0);
    auto s2 = default_pair_set(2, 1);
    auto base = consistency_test(2, s1, s2);
    std::reverse(s1.begin(), s1.end());
    std::rotate(s2.begin(), s2.begin() + 7, s2.end());
    auto permuted = consistency_test(2, s1, s2);
    CHECK(base.verdict == permuted.verdict);

    auto t1 = default_pair_set(3, 0);
    auto t2 = default_pair_set(3, 1);
    auto base3 = consistency_test(3, t1, t2);
    std::reverse(t1.begin(), t1.end());
    std::reverse(t2.begin(), t2.end());
    auto permuted3 = consistency_test(3, t1, t2);
    CHECK(base3.verdict == FitOutcome::inconsistent);
    CHECK(permuted3.verdict == FitOutcome::inconsistent);
}

TEST_CASE("overdetermined corroboration: tiny residual only when a polynomial exists") {
    auto fit2 = overdetermined_fit(2, default_overdetermined_pairs(2));
    CHECK(fit2.rel_residual < BigFloat("1e-30"));
    auto fit3 = overdetermined_fit(3, default_overdetermined_pairs(3));
    CHECK(fit3.rel_residual > BigFloat("1e-9"));
}

TEST_CASE("k = 4: disjoint 63-pair systems disagree") {
    auto verdict = consistency_test(4, default_pair_set(4, 0), default_pair_set(4, 1));
    CHECK(verdict.verdict == FitOutcome::inconsistent);
}
