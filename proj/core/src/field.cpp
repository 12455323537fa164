#include "twistvals/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace twistvals {

namespace {

// ---- 64-bit modular arithmetic (moduli < 2^63) ----
uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)((unsigned __int128)a * b % m);
}
uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // deterministic for n < 2^64
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

uint64_t inv_mod(uint64_t a, uint64_t p) { return powmod(a % p, p - 2, p); }

// Tonelli-Shanks, p an odd prime, a a quadratic residue mod p
uint64_t sqrt_mod(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if ((p & 3) == 3) return powmod(a, (p + 1) / 4, p);
    uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) q >>= 1, ++s;
    uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    uint64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        uint64_t t2 = t;
        uint64_t i = 0;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            if (++i == m) throw Error("sqrt_mod: not a residue");
        }
        uint64_t b = powmod(c, 1ull << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

const std::vector<int64_t>& small_primes() {
    static std::vector<int64_t> primes = [] {
        const int N = 1'000'000;
        std::vector<bool> comp(N + 1, false);
        std::vector<int64_t> out;
        for (int64_t i = 2; i <= N; ++i) {
            if (!comp[i]) {
                out.push_back(i);
                for (int64_t j = i * i; j <= N; j += i) comp[j] = true;
            }
        }
        return out;
    }();
    return primes;
}

int64_t mod_pos(int128 v, int64_t m) {
    int64_t r = int64_t(v % m);
    return r < 0 ? r + m : r;
}

}  // namespace

QuadraticField::QuadraticField(int64_t d_) : d(d_) {
    one_mod4 = (d % 4 == 1);
    if (one_mod4) {
        wp = 1;
        wq = (d - 1) / 4;
    } else {
        wp = 0;
        wq = d;
    }
    // fundamental unit eta (norm -1) per supported field; eps = eta^2
    switch (d) {
        case 2: eta = {1, 1}; break;   // 1 + sqrt2
        case 5: eta = {0, 1}; break;   // w
        case 13: eta = {1, 1}; break;  // 1 + w = (3+sqrt13)/2
        default: throw Error("unsupported field: d = " + std::to_string(d));
    }
    if (norm(eta) != -1) throw Error("field table corrupt: eta must have norm -1");
    eps = mul(eta, eta);
    // normalize so v1(eps) > v2(eps); the other choice mirrors the cone
    if (eps.b < 0) eps = conj(eps);
    if (!(eps.b > 0)) throw Error("eps normalization failed");
    eps_inv = conj(eps);  // N(eps) = 1
    int128 g = trace(eps);
    gamma = int64_t(g);
    // squares mod 4: t^2 depends on t mod 2, exhaust 16 residues anyway
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            FieldElement t{a, b};
            FieldElement s = mul(t, t);
            sq_mod4_[size_t(mod_pos(s.a, 4) * 4 + mod_pos(s.b, 4))] = true;
        }
}

const QuadraticField& QuadraticField::get(int64_t d) {
    static std::mutex mu;
    static std::map<int64_t, const QuadraticField*> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(d);
    if (it == cache.end()) {
        if (d != 2 && d != 5 && d != 13)
            throw Error("field d=" + std::to_string(d) +
                        " is not in the supported narrow-class-number-1 table {2, 5, 13}");
        it = cache.emplace(d, new QuadraticField(d)).first;
    }
    return *it->second;
}

FieldElement QuadraticField::pow(FieldElement x, int64_t e) const {
    if (e < 0) {
        int128 n = norm(x);
        if (iabs(n) != 1) throw Error("negative power of a non-unit");
        FieldElement inv = conj(x);
        if (n == -1) inv = -inv;
        x = inv;
        e = -e;
    }
    FieldElement r{1, 0};
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

int QuadraticField::sign_pair(int128 s, int128 t) const {
    // sign of s + t*sqrt(d), exact
    if (t == 0) return s > 0 ? 1 : s < 0 ? -1 : 0;
    if (s == 0) return t > 0 ? 1 : -1;
    if (s > 0 && t > 0) return 1;
    if (s < 0 && t < 0) return -1;
    int128 s2 = checked_mul(s, s), dt2 = checked_mul(d, checked_mul(t, t));
    if (s > 0) return s2 > dt2 ? 1 : s2 < dt2 ? -1 : 0;
    return dt2 > s2 ? 1 : dt2 < s2 ? -1 : 0;
}

int QuadraticField::sign_v1(const FieldElement& x) const {
    // v1(a+bw) ~ (s + t*sqrt d)/2 with (s,t) = (2a + wp*b, b)
    return sign_pair(checked_add(checked_mul(2, x.a), checked_mul(wp, x.b)), x.b);
}
int QuadraticField::sign_v2(const FieldElement& x) const {
    return sign_pair(checked_add(checked_mul(2, x.a), checked_mul(wp, x.b)), checked_neg(x.b));
}

EmbeddedPair QuadraticField::embed(const FieldElement& x, int precision_bits) const {
    if (precision_bits < 32) throw Error("embed: precision must be >= 32 bits");
    int p = std::min(precision_bits, 60);
    // sqrt(d) in [s, s+1] / 2^p
    int128 scale = int128(1) << p;
    int128 s = isqrt128(checked_mul(int128(d), checked_mul(scale, scale)));
    double lo = double(s) / double(scale);
    double hi = double(s + 1) / double(scale);
    double sq_mid = 0.5 * (lo + hi);
    double sq_err = 0.5 * (hi - lo);
    double aa = double(x.a), bb = double(x.b);
    EmbeddedPair out;
    if (one_mod4) {
        out.v1 = aa + bb * (1 + sq_mid) / 2;
        out.v2 = aa + bb * (1 - sq_mid) / 2;
        out.error = std::abs(bb) * sq_err / 2;
    } else {
        out.v1 = aa + bb * sq_mid;
        out.v2 = aa - bb * sq_mid;
        out.error = std::abs(bb) * sq_err;
    }
    // coarse slack for double rounding of the affine combination
    out.error += 1e-15 * (std::abs(out.v1) + std::abs(out.v2) + 1.0);
    return out;
}

bool QuadraticField::in_shintani_cone(const FieldElement& x) const {
    if (!is_totally_positive(x)) return false;
    if (x.b < 0) return false;  // v1 >= v2 iff b >= 0
    FieldElement z = mul(x, conj(eps));
    return z.b < 0;  // v1(x)/v2(x) < v1(eps)/v2(eps)
}

std::pair<FieldElement, int64_t> QuadraticField::shintani_reduce(FieldElement x) const {
    if (!is_totally_positive(x)) throw Error("shintani_reduce: element not totally positive");
    int64_t k = 0;
    while (x.b < 0) {
        x = mul(x, eps);
        ++k;
    }
    while (true) {
        FieldElement z = mul(x, conj(eps));
        if (z.b < 0) break;
        x = mul(x, eps_inv);
        --k;
    }
    return {x, k};
}

std::optional<FieldElement> QuadraticField::div_exact(const FieldElement& x,
                                                      const FieldElement& y) const {
    int128 n = norm(y);
    if (n == 0) throw DivisionByZero("division by zero field element");
    FieldElement z = mul(x, conj(y));
    if (z.a % n != 0 || z.b % n != 0) return std::nullopt;
    return FieldElement{z.a / n, z.b / n};
}

FieldElement QuadraticField::div_round(const FieldElement& x, const FieldElement& y) const {
    int128 n = norm(y);
    if (n == 0) throw DivisionByZero("division by zero field element");
    FieldElement z = mul(x, conj(y));
    auto rdiv = [](int128 a, int128 b) {  // round to nearest
        int128 q = a / b, r = a % b;
        if (r != 0) {
            int128 half = iabs(b);
            if (2 * iabs(r) > half || (2 * iabs(r) == half && ((a < 0) != (b < 0))))
                q += ((a < 0) == (b < 0)) ? 1 : -1;
        }
        return q;
    };
    FieldElement base{rdiv(z.a, n), rdiv(z.b, n)};
    int128 ny = iabs(n);
    for (int da = 0; da < 3; ++da)
        for (int db = 0; db < 3; ++db) {
            static const int off[3] = {0, 1, -1};
            FieldElement q{checked_add(base.a, off[da]), checked_add(base.b, off[db])};
            FieldElement r = x - mul(q, y);
            if (iabs(norm(r)) < ny) return q;
        }
    throw Error("euclidean division failed (field not norm-euclidean under search)");
}

FieldElement QuadraticField::gcd(FieldElement x, FieldElement y) const {
    while (!y.is_zero()) {
        FieldElement q = div_round(x, y);
        FieldElement r = x - mul(q, y);
        x = y;
        y = r;
    }
    return x;
}

FieldElement QuadraticField::canonical_generator(FieldElement x) const {
    if (x.is_zero()) throw Error("canonical_generator of zero");
    // move to a totally positive associate
    if (norm(x) < 0) x = mul(x, eta);
    if (trace(x) < 0) x = -x;
    if (!is_totally_positive(x)) throw Error("canonical_generator: normalization failed");
    auto [rep, k] = shintani_reduce(x);
    // minimal trace is unimodal along the eps-orbit; walk both ways from the cone rep
    auto better = [&](const FieldElement& u, const FieldElement& v) {
        int128 tu = trace(u), tv = trace(v);
        if (tu != tv) return tu < tv;
        if (u.a != v.a) return u.a < v.a;
        return u.b < v.b;
    };
    FieldElement best = rep;
    for (int dir = 0; dir < 2; ++dir) {
        FieldElement cur = rep;
        const FieldElement& step = dir == 0 ? eps : eps_inv;
        for (int i = 0; i < 64; ++i) {
            cur = mul(cur, step);
            if (trace(cur) > trace(best) && !better(cur, best)) break;
            if (better(cur, best)) best = cur;
        }
    }
    return best;
}

std::vector<PrimeElement> QuadraticField::prime_elements_above(int64_t p) const {
    if (p < 2) throw Error("prime_elements_above: not a prime");
    std::vector<PrimeElement> out;
    // roots of x^2 - wp x - wq mod p
    std::vector<int64_t> roots;
    if (p == 2) {
        for (int64_t r = 0; r < 2; ++r)
            if (((r * r - wp * r - wq) % 2 + 2) % 2 == 0) roots.push_back(r);
    } else {
        int64_t disc = wp * wp + 4 * wq;  // = d or 4d
        int64_t dm = ((disc % p) + p) % p;
        if (dm == 0) {
            roots.push_back(mod_pos(checked_mul(wp, (p + 1) / 2), p));  // wp/2 mod p
        } else if (powmod(uint64_t(dm), uint64_t((p - 1) / 2), uint64_t(p)) == 1) {
            uint64_t s = sqrt_mod(uint64_t(dm), uint64_t(p));
            uint64_t half = inv_mod(2, uint64_t(p));
            roots.push_back(int64_t(mulmod((uint64_t(mod_pos(wp, p)) + s) % p, half, p)));
            roots.push_back(int64_t(mulmod((uint64_t(mod_pos(wp, p)) + p - s) % p, half, p)));
            if (roots[0] == roots[1]) roots.pop_back();
        }
    }
    if (roots.empty()) {
        out.push_back({canonical_generator({p, 0}), p, 2});
        return out;
    }
    std::sort(roots.begin(), roots.end());
    for (int64_t r : roots) {
        FieldElement g = gcd({p, 0}, FieldElement{-r, 1});  // gcd(p, w - r)
        if (iabs(norm(g)) != p) throw Error("prime_elements_above: bad gcd");
        out.push_back({canonical_generator(g), p, 1});
    }
    return out;
}

int QuadraticField::valuation(FieldElement x, const PrimeElement& q) const {
    if (x.is_zero()) throw Error("valuation of zero");
    int e = 0;
    while (true) {
        auto y = div_exact(x, q.pi);
        if (!y) return e;
        x = *y;
        ++e;
    }
}

std::pair<FieldElement, std::vector<std::pair<PrimeElement, int>>>
QuadraticField::factor(const FieldElement& x) const {
    if (x.is_zero()) throw Error("factor of zero");
    int128 N = iabs(norm(x));
    if (N > (int128(1) << 63)) throw FactorTooLarge();
    std::vector<std::pair<PrimeElement, int>> factors;
    FieldElement rem = x;
    auto strip = [&](int64_t p) {
        for (const PrimeElement& q : prime_elements_above(p)) {
            int e = 0;
            while (true) {
                auto y = div_exact(rem, q.pi);
                if (!y) break;
                rem = *y;
                ++e;
            }
            if (e) factors.push_back({q, e});
        }
    };
    uint64_t n = uint64_t(N);
    for (int64_t p : small_primes()) {
        if (uint64_t(p) * uint64_t(p) > n) break;
        if (n % uint64_t(p) == 0) {
            while (n % uint64_t(p) == 0) n /= uint64_t(p);
            strip(p);
        }
    }
    if (n > 1) {
        if (!miller_rabin(n))
            throw FactorTooLarge("cofactor " + std::to_string(n) +
                                 " is composite beyond the trial-division bound");
        strip(int64_t(n));
    }
    if (!is_unit(rem)) throw Error("factor: residual is not a unit");
    return {rem, factors};
}

bool QuadraticField::is_square_mod4(const FieldElement& x) const {
    return sq_mod4_[size_t(mod_pos(x.a, 4) * 4 + mod_pos(x.b, 4))];
}

int QuadraticField::quadratic_character(const FieldElement& D, const PrimeElement& q) const {
    if (q.p == 2) throw EvenPrime();
    uint64_t p = uint64_t(q.p);
    if (q.residue_degree == 1) {
        // w = r mod q with r = -a/b for q.pi = a + b w
        uint64_t bp = uint64_t(mod_pos(q.pi.b, q.p));
        uint64_t r = mulmod(uint64_t(mod_pos(-q.pi.a, q.p)), inv_mod(bp, p), p);
        uint64_t v = (uint64_t(mod_pos(D.a, q.p)) + mulmod(uint64_t(mod_pos(D.b, q.p)), r, p)) % p;
        if (v == 0) return 0;
        return powmod(v, (p - 1) / 2, p) == 1 ? 1 : -1;
    }
    // residue field F_{p^2} = F_p[w]
    uint64_t u = uint64_t(mod_pos(D.a, q.p)), v = uint64_t(mod_pos(D.b, q.p));
    if (u == 0 && v == 0) return 0;
    uint64_t P = uint64_t(mod_pos(wp, q.p)), Q = uint64_t(mod_pos(wq, q.p));
    auto f2mul = [&](std::pair<uint64_t, uint64_t> x, std::pair<uint64_t, uint64_t> y) {
        uint64_t bb = mulmod(x.second, y.second, p);
        uint64_t a = (mulmod(x.first, y.first, p) + mulmod(Q, bb, p)) % p;
        uint64_t b = (mulmod(x.first, y.second, p) + mulmod(x.second, y.first, p) +
                      mulmod(P, bb, p)) % p;
        return std::make_pair(a, b);
    };
    std::pair<uint64_t, uint64_t> base{u, v}, acc{1, 0};
    uint64_t e = (p * p - 1) / 2;
    while (e) {
        if (e & 1) acc = f2mul(acc, base);
        base = f2mul(base, base);
        e >>= 1;
    }
    if (acc == std::make_pair(uint64_t(1), uint64_t(0))) return 1;
    if (acc == std::make_pair(p - 1, uint64_t(0))) return -1;
    throw Error("quadratic_character: exponentiation did not land in {1,-1}");
}

std::string QuadraticField::format(const FieldElement& x) const {
    std::string s = to_string(x.a);
    if (x.b != 0) {
        if (x.b > 0) s += "+";
        s += to_string(x.b) + "*w";
    }
    return s;
}

FieldElement QuadraticField::parse(const std::string& s) const {
    size_t pos = 0;
    int128 a = parse_int128(s, &pos);
    if (pos == s.size()) return {a, 0};
    if (s[pos] != '+' && s[pos] != '-') throw ParseError("bad field element: '" + s + "'");
    std::string rest = s.substr(pos);
    size_t pos2 = 0;
    int128 b = parse_int128(rest, &pos2);
    if (rest.substr(pos2) != "*w") throw ParseError("bad field element: '" + s + "'");
    return {a, b};
}

}  // namespace twistvals
