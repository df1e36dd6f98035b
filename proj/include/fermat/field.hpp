#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fermat/errors.hpp"
#include "fermat/numeric.hpp"

namespace fermat {

// An element of F_q in canonical index form: the index encodes the
// coefficient vector (c_0, ..., c_{n-1}) of the residue polynomial as
// sum c_i * p^i. For prime fields the index is simply the residue.
struct FieldElement {
    std::uint32_t idx = 0;
    constexpr bool operator==(const FieldElement&) const = default;
};

// F_q for q = p^n, built once and immutable afterwards, so a single
// instance can be shared freely across threads.
//
// Construction is deterministic: the modulus is the first monic
// irreducible of degree n in ascending canonical-index order of its
// coefficient block, and the generator is the nonzero element of full
// multiplicative order with the smallest canonical index. Multiplication,
// inversion and powering run off exp/dlog tables; addition is digitwise.
class Field {
public:
    static constexpr std::uint64_t kDefaultSizeLimit = std::uint64_t{1} << 20;
    static constexpr std::uint32_t kNoDlog = std::numeric_limits<std::uint32_t>::max();

    Field(std::uint64_t p, unsigned n, std::uint64_t size_limit = kDefaultSizeLimit) {
        if (!is_prime(p)) {
            throw NotPrimeError("field characteristic must be prime, got " + std::to_string(p));
        }
        if (n == 0) {
            throw InputError("extension degree must be >= 1");
        }
        q_ = checked_pow(p, n, size_limit);
        p_ = p;
        n_ = n;
        pow_p_.resize(n_ + 1);
        pow_p_[0] = 1;
        for (unsigned i = 1; i <= n_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;

        choose_modulus();
        choose_generator();
        build_log_tables();
        build_trace_table();
    }

    std::uint64_t p() const { return p_; }
    unsigned n() const { return n_; }
    std::uint64_t q() const { return q_; }

    // Monic modulus polynomial, n+1 coefficients, constant term first.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    FieldElement generator() const { return generator_; }
    FieldElement minus_one() const { return neg(one()); }

    bool is_zero(FieldElement x) const { return x.idx == 0; }

    // Embedding of an integer residue through the prime subfield.
    FieldElement from_residue(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return {static_cast<std::uint32_t>(r)};
    }

    FieldElement element_from_coeffs(std::span<const std::uint32_t> coeffs) const {
        if (coeffs.size() != n_) {
            throw InputError("coefficient vector must have length n");
        }
        std::uint64_t idx = 0;
        for (unsigned i = 0; i < n_; ++i) {
            if (coeffs[i] >= p_) throw InputError("coefficient out of range [0, p)");
            idx += coeffs[i] * pow_p_[i];
        }
        return {static_cast<std::uint32_t>(idx)};
    }

    std::vector<std::uint32_t> coeffs(FieldElement x) const {
        std::vector<std::uint32_t> c(n_);
        std::uint64_t rest = x.idx;
        for (unsigned i = 0; i < n_; ++i) {
            c[i] = static_cast<std::uint32_t>(rest % p_);
            rest /= p_;
        }
        return c;
    }

    FieldElement add(FieldElement a, FieldElement b) const {
        if (n_ == 1) {
            std::uint64_t s = static_cast<std::uint64_t>(a.idx) + b.idx;
            if (s >= p_) s -= p_;
            return {static_cast<std::uint32_t>(s)};
        }
        return digitwise(a, b, /*subtract=*/false);
    }

    FieldElement sub(FieldElement a, FieldElement b) const {
        if (n_ == 1) {
            std::uint64_t s = static_cast<std::uint64_t>(a.idx) + p_ - b.idx;
            if (s >= p_) s -= p_;
            return {static_cast<std::uint32_t>(s)};
        }
        return digitwise(a, b, /*subtract=*/true);
    }

    FieldElement neg(FieldElement a) const { return sub(zero(), a); }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a.idx == 0 || b.idx == 0) return zero();
        std::uint64_t k = static_cast<std::uint64_t>(dlog_[a.idx]) + dlog_[b.idx];
        if (k >= q_ - 1) k -= q_ - 1;
        return exp_[k];
    }

    FieldElement inv(FieldElement a) const {
        if (a.idx == 0) throw DivisionByZeroError("inverse of zero");
        std::uint64_t k = dlog_[a.idx];
        return exp_[k == 0 ? 0 : q_ - 1 - k];
    }

    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

    // x^e with x^0 = 1 (also for x = 0) and negative e meaning powers of
    // the inverse.
    FieldElement pow(FieldElement x, std::int64_t e) const {
        if (e == 0) return one();
        if (x.idx == 0) return zero();
        std::int64_t m = static_cast<std::int64_t>(q_ - 1);
        std::int64_t r = e % m;
        if (r < 0) r += m;
        std::uint64_t k = (static_cast<std::uint64_t>(dlog_[x.idx]) * static_cast<std::uint64_t>(r)) % (q_ - 1);
        return exp_[k];
    }

    // Discrete logarithm base generator(), in [0, q-2].
    std::uint64_t dlog(FieldElement x) const {
        if (x.idx == 0) throw DivisionByZeroError("discrete log of zero");
        return dlog_[x.idx];
    }

    // generator()^k, k reduced mod q-1.
    FieldElement exp_of(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

    // Absolute trace Tr_{F_q/F_p}, as an integer in [0, p).
    std::uint64_t trace(FieldElement x) const { return trace_[x.idx]; }

    // Canonical text form: decimal residue for n = 1, bracketed
    // low-to-high coefficient list for n > 1, e.g. "[2,1]".
    std::string format(FieldElement x) const {
        if (n_ == 1) return std::to_string(x.idx);
        auto c = coeffs(x);
        std::string out = "[";
        for (unsigned i = 0; i < n_; ++i) {
            if (i) out += ',';
            out += std::to_string(c[i]);
        }
        out += ']';
        return out;
    }

    FieldElement parse(std::string_view text) const {
        auto strip = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
            return s;
        };
        text = strip(text);
        if (text.empty()) throw ParseError("empty field element");
        if (text.front() == '[') {
            if (text.back() != ']') throw ParseError("unterminated coefficient list");
            std::string body(text.substr(1, text.size() - 2));
            std::vector<std::uint32_t> c;
            std::stringstream ss(body);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                c.push_back(static_cast<std::uint32_t>(parse_residue(strip(tok))));
            }
            if (c.size() > n_) throw ParseError("too many coefficients for degree-" + std::to_string(n_) + " field");
            c.resize(n_, 0);  // omitted high coefficients are zero
            return element_from_coeffs(c);
        }
        return {static_cast<std::uint32_t>(parse_residue(text))};
    }

private:
    using Poly = std::vector<std::uint32_t>;  // dense, constant term first

    std::uint64_t parse_residue(std::string_view tok) const {
        if (tok.empty()) throw ParseError("empty coefficient");
        std::int64_t v = 0;
        bool negative = false;
        std::size_t i = 0;
        if (tok[0] == '-' || tok[0] == '+') {
            negative = tok[0] == '-';
            i = 1;
        }
        if (i == tok.size()) throw ParseError("malformed integer");
        for (; i < tok.size(); ++i) {
            if (tok[i] < '0' || tok[i] > '9') throw ParseError("malformed integer");
            v = v * 10 + (tok[i] - '0');
            if (v > (std::int64_t{1} << 40)) throw ParseError("coefficient out of range");
        }
        if (negative) v = -v;
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return static_cast<std::uint64_t>(r);
    }

    FieldElement digitwise(FieldElement a, FieldElement b, bool subtract) const {
        std::uint64_t ia = a.idx, ib = b.idx, out = 0;
        for (unsigned i = 0; i < n_; ++i) {
            std::uint64_t da = ia % p_, db = ib % p_;
            ia /= p_;
            ib /= p_;
            std::uint64_t d = subtract ? (da + p_ - db) : (da + db);
            if (d >= p_) d -= p_;
            out += d * pow_p_[i];
        }
        return {static_cast<std::uint32_t>(out)};
    }

    // --- construction-time polynomial arithmetic over F_p -------------

    static void poly_trim(Poly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    Poly poly_mul_mod(const Poly& a, const Poly& b) const {
        std::vector<std::uint64_t> prod(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p_;
            }
        }
        // reduce by the monic modulus
        for (std::size_t d = prod.size(); d-- > n_;) {
            std::uint64_t c = prod[d];
            if (c == 0) continue;
            prod[d] = 0;
            for (unsigned i = 0; i < n_; ++i) {
                std::uint64_t t = prod[d - n_ + i] + (p_ - modulus_[i]) % p_ * c % p_;
                prod[d - n_ + i] = t % p_;
            }
        }
        Poly out(n_, 0);
        for (unsigned i = 0; i < n_ && i < prod.size(); ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
        return out;
    }

    Poly poly_pow_mod(Poly base, std::uint64_t e) const {
        Poly result(n_, 0);
        result[0] = 1;
        while (e > 0) {
            if (e & 1) result = poly_mul_mod(result, base);
            base = poly_mul_mod(base, base);
            e >>= 1;
        }
        return result;
    }

    bool poly_is_one(const Poly& a) const {
        if (a.empty() || a[0] != 1) return false;
        for (std::size_t i = 1; i < a.size(); ++i) {
            if (a[i] != 0) return false;
        }
        return true;
    }

    // gcd of dense polynomials over F_p (inputs need not be monic).
    Poly poly_gcd(Poly a, Poly b) const {
        poly_trim(a);
        poly_trim(b);
        while (!b.empty()) {
            // a mod b
            std::uint64_t lead_inv = mod_inverse(b.back());
            while (a.size() >= b.size()) {
                std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p_;
                if (c != 0) {
                    std::size_t shift = a.size() - b.size();
                    for (std::size_t i = 0; i < b.size(); ++i) {
                        std::uint64_t t = a[shift + i] + (p_ - c * b[i] % p_);
                        a[shift + i] = static_cast<std::uint32_t>(t % p_);
                    }
                }
                a.pop_back();
                poly_trim(a);
                if (a.empty()) break;
            }
            std::swap(a, b);
        }
        return a;
    }

    std::uint64_t mod_inverse(std::uint64_t a) const {
        // Fermat: a^{p-2} mod p
        std::uint64_t r = 1, base = a % p_, e = p_ - 2;
        while (e > 0) {
            if (e & 1) r = r * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return r;
    }

    // f monic of degree n is irreducible over F_p iff x^{p^n} == x mod f
    // and gcd(x^{p^{n/t}} - x, f) = 1 for every prime t | n.
    bool is_irreducible(const Poly& candidate) {
        modulus_ = candidate;  // poly_mul_mod reduces by modulus_
        Poly x(n_, 0);
        if (n_ == 1) return true;
        x[1] = 1;

        std::vector<Poly> frob(n_ + 1);  // frob[d] = x^{p^d} mod f
        frob[0] = x;
        for (unsigned d = 1; d <= n_; ++d) frob[d] = poly_pow_mod(frob[d - 1], p_);

        Poly diff_n = frob[n_];
        bool fixed = true;
        for (unsigned i = 0; i < n_; ++i) {
            if (diff_n[i] != x[i]) fixed = false;
        }
        if (!fixed) return false;

        for (std::uint64_t t : prime_factors(n_)) {
            unsigned d = n_ / static_cast<unsigned>(t);
            Poly diff(n_, 0);
            for (unsigned i = 0; i < n_; ++i) {
                std::uint64_t v = frob[d][i] + (p_ - x[i]);
                diff[i] = static_cast<std::uint32_t>(v % p_);
            }
            Poly full(modulus_);
            Poly g = poly_gcd(diff, full);
            if (!(g.size() == 1)) return false;  // gcd must be a nonzero constant
        }
        return true;
    }

    void choose_modulus() {
        if (n_ == 1) {
            modulus_ = {0, 1};  // x
            return;
        }
        // monic f = x^n + sum c_i x^i, coefficient block enumerated by
        // ascending canonical index
        for (std::uint64_t m = 0; m < pow_p_[n_]; ++m) {
            Poly f(n_ + 1, 0);
            std::uint64_t rest = m;
            for (unsigned i = 0; i < n_; ++i) {
                f[i] = static_cast<std::uint32_t>(rest % p_);
                rest /= p_;
            }
            f[n_] = 1;
            if (is_irreducible(f)) {
                modulus_ = f;
                return;
            }
        }
        throw Error("no irreducible polynomial found");  // unreachable
    }

    Poly poly_of_index(std::uint64_t idx) const {
        Poly a(n_, 0);
        for (unsigned i = 0; i < n_; ++i) {
            a[i] = static_cast<std::uint32_t>(idx % p_);
            idx /= p_;
        }
        return a;
    }

    std::uint64_t index_of_poly(const Poly& a) const {
        std::uint64_t idx = 0;
        for (unsigned i = 0; i < n_ && i < a.size(); ++i) idx += a[i] * pow_p_[i];
        return idx;
    }

    void choose_generator() {
        auto factors = prime_factors(q_ - 1);
        for (std::uint64_t idx = 1; idx < q_; ++idx) {
            Poly cand = poly_of_index(idx);
            bool full_order = true;
            for (std::uint64_t r : factors) {
                if (poly_is_one(poly_pow_mod(cand, (q_ - 1) / r))) {
                    full_order = false;
                    break;
                }
            }
            if (full_order) {
                generator_ = {static_cast<std::uint32_t>(idx)};
                return;
            }
        }
        throw Error("no generator found");  // unreachable
    }

    void build_log_tables() {
        exp_.resize(q_ - 1);
        dlog_.assign(q_, kNoDlog);
        Poly g = poly_of_index(generator_.idx);
        Poly cur(n_, 0);
        cur[0] = 1;
        for (std::uint64_t k = 0; k < q_ - 1; ++k) {
            std::uint64_t idx = index_of_poly(cur);
            exp_[k] = {static_cast<std::uint32_t>(idx)};
            dlog_[idx] = static_cast<std::uint32_t>(k);
            cur = poly_mul_mod(cur, g);
        }
    }

    void build_trace_table() {
        trace_.assign(q_, 0);
        if (n_ == 1) {
            for (std::uint64_t i = 0; i < q_; ++i) trace_[i] = static_cast<std::uint32_t>(i);
            return;
        }
        for (std::uint64_t idx = 1; idx < q_; ++idx) {
            std::uint64_t t = dlog_[idx];
            FieldElement acc{static_cast<std::uint32_t>(idx)};
            std::uint64_t e = t;
            for (unsigned i = 1; i < n_; ++i) {
                e = e * p_ % (q_ - 1);
                acc = add(acc, exp_[e]);
            }
            // the trace lies in the prime subfield (a constant polynomial)
            trace_[idx] = acc.idx;
        }
    }

    std::uint64_t p_ = 0;
    unsigned n_ = 0;
    std::uint64_t q_ = 0;
    std::vector<std::uint64_t> pow_p_;
    Poly modulus_;  // candidate scratch during choose_modulus, fixed afterwards
    FieldElement generator_;
    std::vector<FieldElement> exp_;
    std::vector<std::uint32_t> dlog_;
    std::vector<std::uint32_t> trace_;
};

inline Field make_field(std::uint64_t p, unsigned n, std::uint64_t size_limit = Field::kDefaultSizeLimit) {
    return Field(p, n, size_limit);
}

// Field from a prime power q.
inline Field make_field_q(std::uint64_t q, std::uint64_t size_limit = Field::kDefaultSizeLimit) {
    auto pn = prime_power_decompose(q);
    if (!pn) throw NotPrimeError(std::to_string(q) + " is not a prime power");
    return Field(pn->first, pn->second, size_limit);
}

}  // namespace fermat
