#pragma once

#include <cstdint>
#include <vector>

#include "fermat/characters.hpp"
#include "fermat/errors.hpp"
#include "fermat/field.hpp"

namespace fermat {

// The projective plane curve A x^ell + B y^ell + C z^ell = 0. The
// default C = -1 matches the normal form A x^ell + B y^ell = z^ell.
struct CurveId {
    const Field* field = nullptr;
    std::uint32_t ell = 0;
    FieldElement A, B, C;
};

inline CurveId make_curve(const Field& field, std::uint32_t ell, FieldElement A, FieldElement B) {
    if (!is_prime(ell)) throw NotPrimeError("curve exponent must be prime");
    if ((field.q() - 1) % ell != 0) {
        throw OrderMismatchError(std::to_string(ell) + " does not divide q-1");
    }
    return {&field, ell, A, B, field.minus_one()};
}

inline CurveId make_curve(const Field& field, std::uint32_t ell, FieldElement A, FieldElement B, FieldElement C) {
    CurveId id = make_curve(field, ell, A, B);
    id.C = C;
    return id;
}

enum class CountMethod { brute, charsum };

struct CountResult {
    std::uint64_t N = 0;   // projective point count
    std::int64_t a = 0;    // N - (q+1)
    CountMethod method = CountMethod::brute;
};

// Exact projective point count by enumeration of canonical
// representatives: z = 1; z = 0, y = 1; z = y = 0, x = 1. The inner
// y-loop is collapsed into a value-count table, which keeps a single
// call at O(q) field operations. Degenerate curves (some coefficients
// zero) are handled by the same enumeration.
inline CountResult count_brute(const CurveId& id) {
    const Field& F = *id.field;
    if (F.is_zero(id.A) && F.is_zero(id.B) && F.is_zero(id.C)) {
        throw DegenerateCurveError("A = B = C = 0 does not define a curve");
    }
    const std::uint64_t q = F.q();

    // x^ell for every x, then A*x^ell and a histogram of B*y^ell
    std::vector<FieldElement> powl(q);
    for (std::uint64_t i = 0; i < q; ++i) powl[i] = F.pow({static_cast<std::uint32_t>(i)}, id.ell);
    std::vector<std::uint32_t> b_hist(q, 0);
    for (std::uint64_t i = 0; i < q; ++i) b_hist[F.mul(id.B, powl[i]).idx]++;

    std::uint64_t count = 0;
    FieldElement negC = F.neg(id.C);
    for (std::uint64_t x = 0; x < q; ++x) {
        FieldElement want = F.sub(negC, F.mul(id.A, powl[x]));
        count += b_hist[want.idx];
    }
    // z = 0, y = 1: A x^ell + B = 0
    FieldElement negB = F.neg(id.B);
    for (std::uint64_t x = 0; x < q; ++x) {
        if (F.mul(id.A, powl[x]) == negB) ++count;
    }
    // z = y = 0, x = 1: A = 0
    if (F.is_zero(id.A)) ++count;

    return {count, static_cast<std::int64_t>(count) - static_cast<std::int64_t>(q + 1), CountMethod::brute};
}

// Class of x in F_q^x / (F_q^x)^ell, i.e. dlog(x) mod ell. Two elements
// share the class exactly when their ratio is an ell-th power.
inline std::uint32_t coset_class(const Field& field, std::uint32_t ell, FieldElement x) {
    if (field.is_zero(x)) throw DivisionByZeroError("coset class of zero");
    return static_cast<std::uint32_t>(field.dlog(x) % ell);
}

// Point counts N(A, B) with C = -1 depend only on the coset classes of
// A and B (substitute x -> t x). This table computes all ell^2 class
// counts exactly from one O(q) pass: with P the set of ell-th powers,
// the affine solutions of A x^ell + B y^ell = 1 split over the
// positions of u = A x^ell, 1-u = B y^ell, so counting u by the class
// pair (class(u), class(1-u)) suffices.
class ClassCountTable {
public:
    ClassCountTable(const Field& field, std::uint32_t ell) : field_(&field), ell_(ell) {
        if (!is_prime(ell)) throw NotPrimeError("curve exponent must be prime");
        const std::uint64_t q = field.q();
        if ((q - 1) % ell != 0) {
            throw OrderMismatchError(std::to_string(ell) + " does not divide q-1");
        }
        std::vector<std::uint32_t> pair_hist(static_cast<std::size_t>(ell) * ell, 0);
        FieldElement one = field.one();
        for (std::uint64_t u = 1; u < q; ++u) {
            if (u == one.idx) continue;
            FieldElement fu{static_cast<std::uint32_t>(u)};
            FieldElement v = field.sub(one, fu);
            std::uint32_t cu = static_cast<std::uint32_t>(field.dlog(fu) % ell);
            std::uint32_t cv = static_cast<std::uint32_t>(field.dlog(v) % ell);
            pair_hist[cu * ell + cv]++;
        }
        std::uint32_t cm1 = static_cast<std::uint32_t>(field.dlog(field.minus_one()) % ell);

        counts_.resize(static_cast<std::size_t>(ell) * ell);
        for (std::uint32_t ca = 0; ca < ell; ++ca) {
            for (std::uint32_t cb = 0; cb < ell; ++cb) {
                std::uint64_t affine = static_cast<std::uint64_t>(ell) * ell * pair_hist[ca * ell + cb];
                if (ca == 0) affine += ell;
                if (cb == 0) affine += ell;
                std::uint64_t infinity = ((cm1 + ca + ell - cb) % ell == 0) ? ell : 0;
                counts_[ca * ell + cb] = affine + infinity;
            }
        }
    }

    const Field& field() const { return *field_; }
    std::uint32_t ell() const { return ell_; }

    std::uint64_t count(std::uint32_t class_a, std::uint32_t class_b) const {
        return counts_[class_a * ell_ + class_b];
    }

    std::int64_t trace_term(std::uint32_t class_a, std::uint32_t class_b) const {
        return static_cast<std::int64_t>(count(class_a, class_b)) -
               static_cast<std::int64_t>(field_->q() + 1);
    }

    CountResult count_for(FieldElement A, FieldElement B) const {
        std::uint64_t N = count(coset_class(*field_, ell_, A), coset_class(*field_, ell_, B));
        return {N, static_cast<std::int64_t>(N) - static_cast<std::int64_t>(field_->q() + 1), CountMethod::brute};
    }

private:
    const Field* field_;
    std::uint32_t ell_;
    std::vector<std::uint64_t> counts_;
};

// Character-sum evaluation of a(A, B) = N - (q+1) for C = -1:
//
//   a = sum over chi_1, chi_2 nontrivial of order ell with
//       chi_1 chi_2 nontrivial of
//       conj(chi_1)(A) conj(chi_2)(B) g(chi_1) g(chi_2) / g(chi_1 chi_2)
//
// The Gauss sums (and the Jacobi-sum ratios) are cached per (field, ell)
// so sweeps over many (A, B) pairs stay cheap.
class CharsumContext {
public:
    CharsumContext(const Field& field, std::uint32_t ell) : field_(&field), ell_(ell) {
        if (!is_prime(ell)) throw NotPrimeError("curve exponent must be prime");
        if ((field.q() - 1) % ell != 0) {
            throw OrderMismatchError(std::to_string(ell) + " does not divide q-1");
        }
        roots_ = roots_of_unity(ell);
        gauss_.resize(ell);
        for (std::uint32_t j = 1; j < ell; ++j) gauss_[j] = gauss_sum(character(field, ell, j));
        jacobi_.assign(static_cast<std::size_t>(ell) * ell, Complex{0.0, 0.0});
        for (std::uint32_t j1 = 1; j1 < ell; ++j1) {
            for (std::uint32_t j2 = 1; j2 < ell; ++j2) {
                if ((j1 + j2) % ell == 0) continue;
                jacobi_[j1 * ell + j2] = gauss_[j1] * gauss_[j2] / gauss_[(j1 + j2) % ell];
            }
        }
    }

    const Field& field() const { return *field_; }
    std::uint32_t ell() const { return ell_; }

    // a as an unrounded complex value; useful for tolerance diagnostics.
    Complex trace_sum(FieldElement A, FieldElement B) const {
        const Field& F = *field_;
        if (F.is_zero(A) || F.is_zero(B)) throw DegenerateCurveError("charsum path needs A, B nonzero");
        std::uint32_t da = static_cast<std::uint32_t>(F.dlog(A) % ell_);
        std::uint32_t db = static_cast<std::uint32_t>(F.dlog(B) % ell_);
        KahanComplex acc;
        for (std::uint32_t j1 = 1; j1 < ell_; ++j1) {
            for (std::uint32_t j2 = 1; j2 < ell_; ++j2) {
                if ((j1 + j2) % ell_ == 0) continue;
                // conj(chi_j)(g^d) = root[-j*d mod ell]
                std::uint32_t t1 = (ell_ - static_cast<std::uint32_t>((static_cast<std::uint64_t>(j1) * da) % ell_)) % ell_;
                std::uint32_t t2 = (ell_ - static_cast<std::uint32_t>((static_cast<std::uint64_t>(j2) * db) % ell_)) % ell_;
                acc.add(roots_[t1] * roots_[t2] * jacobi_[j1 * ell_ + j2]);
            }
        }
        return acc.sum;
    }

    CountResult count_for(FieldElement A, FieldElement B) const {
        std::int64_t a = round_to_integer(trace_sum(A, B));
        std::uint64_t N = static_cast<std::uint64_t>(a + static_cast<std::int64_t>(field_->q() + 1));
        return {N, a, CountMethod::charsum};
    }

private:
    const Field* field_;
    std::uint32_t ell_;
    std::vector<Complex> roots_;
    std::vector<Complex> gauss_;
    std::vector<Complex> jacobi_;
};

// One-shot character-sum count. Curves with C != -1 are rescaled to the
// normal form first; C = 0 has no normal form and is rejected.
inline CountResult a_charsum(const CurveId& id) {
    const Field& F = *id.field;
    if (F.is_zero(id.C)) throw DegenerateCurveError("charsum path needs C nonzero");
    FieldElement A = id.A, B = id.B;
    if (!(id.C == F.minus_one())) {
        FieldElement scale = F.inv(F.neg(id.C));
        A = F.mul(A, scale);
        B = F.mul(B, scale);
    }
    CharsumContext ctx(F, id.ell);
    return ctx.count_for(A, B);
}

}  // namespace fermat
