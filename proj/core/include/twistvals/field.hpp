#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistvals/checked.hpp"
#include "twistvals/rational.hpp"

namespace twistvals {

// Element a + b*w of Z_F, w = (1+sqrt(d))/2 when d = 1 mod 4, else w = sqrt(d).
// Field-independent structure; arithmetic that needs w^2 lives on QuadraticField.
struct FieldElement {
    int128 a = 0;
    int128 b = 0;

    FieldElement() = default;
    FieldElement(int128 a_, int128 b_) : a(a_), b(b_) {}

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    friend FieldElement operator+(const FieldElement& x, const FieldElement& y) {
        return {checked_add(x.a, y.a), checked_add(x.b, y.b)};
    }
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y) {
        return {checked_sub(x.a, y.a), checked_sub(x.b, y.b)};
    }
    FieldElement operator-() const { return {checked_neg(a), checked_neg(b)}; }
    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

struct PrimeElement {
    FieldElement pi;       // totally positive generator, minimal trace
    int64_t p = 0;         // rational prime below
    int residue_degree = 1;  // 1 or 2
    friend bool operator==(const PrimeElement&, const PrimeElement&) = default;
};

// Certified real embedding values; |error| bounds the distance to the true value.
struct EmbeddedPair {
    double v1 = 0, v2 = 0;
    double error = 0;
};

class QuadraticField {
public:
    int64_t d;          // squarefree, from the supported allowlist
    bool one_mod4;      // d = 1 mod 4: w = (1+sqrt d)/2, else w = sqrt d
    int64_t wp, wq;     // w^2 = wp*w + wq
    FieldElement eta;   // fundamental unit (norm -1 for supported fields)
    FieldElement eps;   // eta^2: generator of Z_F^{x2}, normalized v1(eps) > v2(eps)
    FieldElement eps_inv;
    int64_t gamma;      // Tr(eps)

    // Supported d (narrow class number 1, fundamental unit of norm -1): 2, 5, 13.
    static const QuadraticField& get(int64_t d);

    // --- basic arithmetic ---
    FieldElement mul(const FieldElement& x, const FieldElement& y) const {
        int128 bb = checked_mul(x.b, y.b);
        return {checked_add(checked_mul(x.a, y.a), checked_mul(wq, bb)),
                checked_add(checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a)),
                            checked_mul(wp, bb))};
    }
    FieldElement conj(const FieldElement& x) const {
        return {checked_add(x.a, checked_mul(wp, x.b)), checked_neg(x.b)};
    }
    int128 trace(const FieldElement& x) const {
        return checked_add(checked_mul(2, x.a), checked_mul(wp, x.b));
    }
    int128 norm(const FieldElement& x) const {
        return checked_sub(checked_add(checked_mul(x.a, x.a), checked_mul(wp, checked_mul(x.a, x.b))),
                           checked_mul(wq, checked_mul(x.b, x.b)));
    }
    FieldElement mul_int(const FieldElement& x, int128 k) const {
        return {checked_mul(x.a, k), checked_mul(x.b, k)};
    }
    FieldElement pow(FieldElement x, int64_t e) const;  // e may be negative for units

    // --- embeddings and order ---
    // v1 sends w to the larger root; exact sign predicates never use floats.
    int sign_v1(const FieldElement& x) const;
    int sign_v2(const FieldElement& x) const;
    bool is_totally_positive(const FieldElement& x) const {
        return trace(x) > 0 && norm(x) > 0;
    }
    EmbeddedPair embed(const FieldElement& x, int precision_bits = 53) const;

    // --- Shintani reduction (cone 1 <= v1/v2 < v1(eps)/v2(eps), half-open) ---
    bool in_shintani_cone(const FieldElement& x) const;
    std::pair<FieldElement, int64_t> shintani_reduce(FieldElement x) const;

    // --- divisibility ---
    // exact division x / y, or nullopt when not divisible in Z_F
    std::optional<FieldElement> div_exact(const FieldElement& x, const FieldElement& y) const;
    // rounded Euclidean division (norm of remainder < |norm of y|)
    FieldElement div_round(const FieldElement& x, const FieldElement& y) const;
    FieldElement gcd(FieldElement x, FieldElement y) const;
    bool is_unit(const FieldElement& x) const { return iabs(norm(x)) == 1; }

    // --- primes and factoring ---
    // all primes above a rational prime, canonically normalized
    std::vector<PrimeElement> prime_elements_above(int64_t p) const;
    // x = unit * prod pi^e; throws FactorTooLarge beyond the supported range
    std::pair<FieldElement, std::vector<std::pair<PrimeElement, int>>>
    factor(const FieldElement& x) const;
    // totally positive associate of minimal trace (ties broken by lex (a,b))
    FieldElement canonical_generator(FieldElement x) const;
    int valuation(FieldElement x, const PrimeElement& q) const;
    bool divides(const PrimeElement& q, const FieldElement& x) const {
        return div_exact(x, q.pi).has_value();
    }

    // --- characters ---
    bool is_square_mod4(const FieldElement& x) const;
    // residue symbol (D | q) in {-1,0,+1}; throws EvenPrime when N(q) is even
    int quadratic_character(const FieldElement& D, const PrimeElement& q) const;

    // --- serialization: "a+b*w" (optional sign, integer, optional +/- integer "*w") ---
    std::string format(const FieldElement& x) const;
    FieldElement parse(const std::string& s) const;

private:
    explicit QuadraticField(int64_t d);
    std::array<bool, 16> sq_mod4_{};  // indexed by (a mod 4) * 4 + (b mod 4)
    int sign_pair(int128 s, int128 t) const;  // sign of s + t*sqrt(d)
};

// Element of F with rational coordinates, for exact spherical-polynomial work.
struct FieldRat {
    Rational a, b;  // a + b*w
    FieldRat() = default;
    FieldRat(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}
    static FieldRat of(const FieldElement& x) { return {Rational(x.a), Rational(x.b)}; }
    bool is_rational() const { return b.is_zero(); }
    friend FieldRat operator+(const FieldRat& x, const FieldRat& y) { return {x.a + y.a, x.b + y.b}; }
    friend FieldRat operator-(const FieldRat& x, const FieldRat& y) { return {x.a - y.a, x.b - y.b}; }
};

inline FieldRat mul(const QuadraticField& F, const FieldRat& x, const FieldRat& y) {
    Rational bb = x.b * y.b;
    return {x.a * y.a + Rational(F.wq) * bb, x.a * y.b + x.b * y.a + Rational(F.wp) * bb};
}
inline FieldRat conj(const QuadraticField& F, const FieldRat& x) {
    return {x.a + Rational(F.wp) * x.b, -x.b};
}

}  // namespace twistvals
