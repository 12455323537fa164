#pragma once

#include <compare>
#include <string>

#include "twistvals/checked.hpp"

namespace twistvals {

// Exact rational on checked 128-bit integers, always normalized with den > 0.
struct Rational {
    int128 num = 0;
    int128 den = 1;

    Rational() = default;
    Rational(int128 n) : num(n), den(1) {}
    Rational(int128 n, int128 d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw DivisionByZero("rational with zero denominator");
        if (den < 0) {
            num = checked_neg(num);
            den = checked_neg(den);
        }
        int128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                        checked_mul(a.den, b.den));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(checked_sub(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                        checked_mul(a.den, b.den));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw DivisionByZero();
        return Rational(checked_mul(a.num, b.den), checked_mul(a.den, b.num));
    }
    Rational operator-() const {
        Rational r;
        r.num = checked_neg(num);
        r.den = den;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int128 l = checked_mul(a.num, b.den), r = checked_mul(b.num, a.den);
        return l < r ? std::strong_ordering::less
             : l > r ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    double to_double() const { return double(num) / double(den); }

    std::string str() const {
        if (den == 1) return to_string(num);
        return to_string(num) + "/" + to_string(den);
    }
};

}  // namespace twistvals
