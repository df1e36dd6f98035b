#include <catch2/catch_amalgamated.hpp>

#include "fermat/curve.hpp"

#include "helpers.hpp"

#include <cmath>
#include <set>

using namespace fermat;

TEST_CASE("the pointless example: no points on 9 x^5 + 4 y^5 = z^5 over F_11") {
    Field f11(11, 1);
    CurveId id = make_curve(f11, 5, {9}, {4});
    auto brute = count_brute(id);
    CHECK(brute.N == 0);
    CHECK(brute.a == -12);
    auto charsum = a_charsum(id);
    CHECK(charsum.N == 0);
    CHECK(charsum.a == -12);
}

TEST_CASE("Fermat cubic over F_7 has 9 points") {
    Field f7(7, 1);
    CurveId id = make_curve(f7, 3, {1}, {1});
    auto brute = count_brute(id);
    CHECK(brute.N == 9);
    CHECK(brute.a == 1);
    CHECK(a_charsum(id).a == 1);
}

TEST_CASE("conics always have q+1 points; the ell = 2 character sum is empty") {
    Field f11(11, 1);
    for (std::uint32_t a = 1; a < 11; ++a) {
        for (std::uint32_t b = 1; b < 11; ++b) {
            CurveId id = make_curve(f11, 2, {a}, {b});
            CHECK(count_brute(id).N == 12);
            auto cs = a_charsum(id);
            CHECK(cs.a == 0);  // no (chi1, chi2) with chi1, chi2, chi1 chi2 nontrivial
            CHECK(cs.N == 12);
        }
    }
}

TEST_CASE("count_brute handles degenerate coefficient patterns") {
    Field f11(11, 1);
    // coordinate line: A = B = 0 gives the line z = 0 with q+1 points
    CHECK(count_brute({&f11, 5, {0}, {0}, {1}}).N == 12);
    CHECK(count_brute({&f11, 5, {1}, {0}, {0}}).N == 12);
    // one zero coefficient: C = 0 gives 1 + q ell [(-A/B) an ell-th power]
    for (std::uint32_t b = 1; b < 11; ++b) {
        std::uint64_t n = count_brute({&f11, 5, {1}, {b}, {0}}).N;
        bool power = coset_class(f11, 5, f11.neg(f11.inv({b}))) == 0;
        CHECK(n == (power ? 1 + 11 * 5 : 1));
    }
    CHECK_THROWS_AS(count_brute({&f11, 5, {0}, {0}, {0}}), DegenerateCurveError);
}

TEST_CASE("a_charsum rescales C != -1 and rejects C = 0") {
    Field f11(11, 1);
    for (std::uint32_t c = 1; c < 11; ++c) {
        CurveId id{&f11, 5, {9}, {4}, {c}};
        CHECK(a_charsum(id).N == count_brute(id).N);
    }
    CurveId degenerate{&f11, 5, {9}, {4}, {0}};
    CHECK_THROWS_AS(a_charsum(degenerate), DegenerateCurveError);
    CurveId zero_coeff{&f11, 5, {0}, {4}, f11.minus_one()};
    CHECK_THROWS_AS(a_charsum(zero_coeff), DegenerateCurveError);
}

TEST_CASE("make_curve validates ell") {
    Field f11(11, 1);
    CHECK_THROWS_AS(make_curve(f11, 3, {1}, {1}), OrderMismatchError);
    CHECK_THROWS_AS(make_curve(f11, 10, {1}, {1}), NotPrimeError);
}

TEST_CASE("coset classes: dlog mod ell") {
    Field f11(11, 1);
    CHECK(coset_class(f11, 5, {2}) == 1);  // dlog(2) = 1
    CHECK_THROWS_AS(coset_class(f11, 5, {0}), DivisionByZeroError);

    // fifth powers mod 11 are exactly {1, 10}
    std::set<std::uint32_t> fifth_powers;
    for (std::uint32_t x = 1; x < 11; ++x) {
        std::uint64_t v = 1;
        for (int i = 0; i < 5; ++i) v = v * x % 11;
        fifth_powers.insert(static_cast<std::uint32_t>(v));
    }
    CHECK(fifth_powers == std::set<std::uint32_t>{1, 10});
    for (std::uint32_t x : fifth_powers) CHECK(coset_class(f11, 5, {x}) == 0);

    // ratio within a class is an ell-th power
    for (std::uint32_t x = 1; x < 11; ++x) {
        for (std::uint32_t y = 1; y < 11; ++y) {
            bool same = coset_class(f11, 5, {x}) == coset_class(f11, 5, {y});
            CHECK(same == (fifth_powers.count(f11.div({x}, {y}).idx) > 0));
        }
    }
}

TEST_CASE("oracle equivalence and coset invariance on small fields") {
    for (auto [q, ell] : testing::field_suite(64)) {
        auto pn = prime_power_decompose(q);
        Field field(pn->first, pn->second);
        CharsumContext ctx(field, ell);
        ClassCountTable table(field, ell);
        double hasse = (ell - 1.0) * (ell - 2.0) * std::sqrt(static_cast<double>(q));
        for (std::uint32_t a = 1; a < q; ++a) {
            for (std::uint32_t b = 1; b < q; ++b) {
                CurveId id{&field, ell, {a}, {b}, field.minus_one()};
                auto brute = count_brute(id);
                auto fast = ctx.count_for({a}, {b});
                auto cls = table.count_for({a}, {b});
                REQUIRE(brute.N == fast.N);
                REQUIRE(brute.N == cls.N);
                REQUIRE(std::abs(static_cast<double>(brute.a)) <= hasse + 1e-9);
            }
        }
    }
}

TEST_CASE("pointless curves have no ell-th power among A, B, -A/B") {
    Field f11(11, 1);
    for (std::uint32_t a = 1; a < 11; ++a) {
        for (std::uint32_t b = 1; b < 11; ++b) {
            if (count_brute(make_curve(f11, 5, {a}, {b})).N != 0) continue;
            CHECK(coset_class(f11, 5, {a}) != 0);
            CHECK(coset_class(f11, 5, {b}) != 0);
            CHECK(coset_class(f11, 5, f11.neg(f11.div({a}, {b}))) != 0);
        }
    }
}

TEST_CASE("class count table matches per-class brute counts") {
    for (auto [q, ell] : testing::field_suite(81, {3, 5, 7, 11})) {
        auto pn = prime_power_decompose(q);
        Field field(pn->first, pn->second);
        ClassCountTable table(field, ell);
        for (std::uint32_t ca = 0; ca < ell; ++ca) {
            for (std::uint32_t cb = 0; cb < ell; ++cb) {
                CurveId rep = make_curve(field, ell, field.exp_of(ca), field.exp_of(cb));
                CHECK(table.count(ca, cb) == count_brute(rep).N);
            }
        }
    }
}
