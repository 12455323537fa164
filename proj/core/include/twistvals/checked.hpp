#pragma once

#include <cstdint>
#include <string>

#include "twistvals/errors.hpp"

namespace twistvals {

using int128 = __int128;

inline int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
    return r;
}

inline int128 checked_sub(int128 a, int128 b) {
    int128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError();
    return r;
}

inline int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
    return r;
}

inline int128 checked_neg(int128 a) { return checked_sub(0, a); }

inline int128 iabs(int128 a) { return a < 0 ? checked_neg(a) : a; }

inline int128 gcd128(int128 a, int128 b) {
    a = iabs(a);
    b = iabs(b);
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// floor square root of a nonnegative integer
inline int128 isqrt128(int128 n) {
    if (n < 0) throw Error("isqrt of negative value");
    if (n == 0) return 0;
    int128 x = n, y = (x + 1) / 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    while (x * x > n) --x;
    return x;
}

// smallest t with t*t >= n
inline int128 ceil_sqrt128(int128 n) {
    int128 s = isqrt128(n);
    return s * s == n ? s : s + 1;
}

inline std::string to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-(v + 1)) + 1 : (unsigned __int128)v;
    char buf[48];
    int i = 48;
    while (u > 0) {
        buf[--i] = char('0' + int(u % 10));
        u /= 10;
    }
    if (neg) buf[--i] = '-';
    return std::string(buf + i, 48 - i);
}

inline int128 parse_int128(const std::string& s, size_t* pos = nullptr) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    if (i >= s.size() || !isdigit((unsigned char)s[i])) throw ParseError("expected integer: '" + s + "'");
    int128 v = 0;
    for (; i < s.size() && isdigit((unsigned char)s[i]); ++i)
        v = checked_add(checked_mul(v, 10), s[i] - '0');
    if (pos) *pos = i;
    else if (i != s.size()) throw ParseError("trailing characters in integer: '" + s + "'");
    return neg ? -v : v;
}

}  // namespace twistvals
