#include "rsred/gf2m.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

namespace rsred {

namespace {

// ---------------------------------------------------------------------------
// 128-bit modular arithmetic for the primality and factoring machinery.
// ---------------------------------------------------------------------------

Uint128 gcd_u128(Uint128 a, Uint128 b) {
    while (b != 0) {
        Uint128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

Uint128 addmod_u128(Uint128 a, Uint128 b, Uint128 n) {
    // a, b already < n
    Uint128 space = n - a;
    return b >= space ? b - space : a + b;
}

Uint128 mulmod_u128(Uint128 a, Uint128 b, Uint128 n) {
    if (n <= 0xffffffffffffffffULL) {
        return (Uint128)((a % n) * (b % n)) % n;
    }
    a %= n;
    b %= n;
    Uint128 r = 0;
    while (b != 0) {
        if (b & 1) r = addmod_u128(r, a, n);
        a = addmod_u128(a, a, n);
        b >>= 1;
    }
    return r;
}

Uint128 powmod_u128(Uint128 a, Uint128 e, Uint128 n) {
    Uint128 r = 1 % n;
    a %= n;
    while (e != 0) {
        if (e & 1) r = mulmod_u128(r, a, n);
        a = mulmod_u128(a, a, n);
        e >>= 1;
    }
    return r;
}

constexpr std::uint32_t kMrBases[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                      43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Deterministic Pollard rho (Floyd cycle finding, fixed increment schedule,
// gcd batched over 64 steps with a per-step replay when the batch overshoots).
Uint128 pollard_rho(Uint128 n) {
    auto step = [n](Uint128 v, Uint128 c) { return addmod_u128(mulmod_u128(v, v, n), c, n); };
    for (Uint128 c = 1; c <= 64; ++c) {
        Uint128 x = 2, y = 2, q = 1;
        const std::uint64_t budget = std::uint64_t{1} << 26;
        std::uint64_t steps = 0;
        while (steps < budget) {
            Uint128 sx = x, sy = y;
            bool cycled = false;
            for (int i = 0; i < 64 && steps < budget; ++i, ++steps) {
                x = step(x, c);
                y = step(step(y, c), c);
                Uint128 diff = x > y ? x - y : y - x;
                if (diff == 0) {
                    cycled = true;
                    break;
                }
                q = mulmod_u128(q, diff, n);
            }
            Uint128 d = gcd_u128(q, n);
            if (d == n) {
                // replay the batch taking a gcd per step
                x = sx;
                y = sy;
                for (int i = 0; i < 64; ++i) {
                    x = step(x, c);
                    y = step(step(y, c), c);
                    Uint128 diff = x > y ? x - y : y - x;
                    if (diff == 0) break;
                    d = gcd_u128(diff, n);
                    if (d != 1 && d != n) return d;
                }
                break;  // next increment
            }
            if (d != 1) return d;
            if (cycled) break;
        }
    }
    throw FactorBudgetError("factoring budget exhausted for " + u128_to_string(n));
}

void factor_rec(Uint128 n, std::vector<Uint128>& out) {
    if (n == 1) return;
    if (is_prime_u128(n)) {
        out.push_back(n);
        return;
    }
    Uint128 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

// ---------------------------------------------------------------------------
// GF(2)[X] helpers used only while searching for the reduction polynomial.
// 256 bits of headroom cover squarings of degree < 128 operands.
// ---------------------------------------------------------------------------

struct P256 {
    std::array<std::uint64_t, 4> w{};

    friend bool operator==(const P256&, const P256&) = default;
};

P256 p256_from_bit(unsigned i) {
    P256 p;
    p.w[i / 64] = std::uint64_t{1} << (i % 64);
    return p;
}

P256 p256_one() { return p256_from_bit(0); }
P256 p256_x() { return p256_from_bit(1); }

bool p256_is_zero(const P256& p) { return (p.w[0] | p.w[1] | p.w[2] | p.w[3]) == 0; }

bool p256_bit(const P256& p, unsigned i) { return (p.w[i / 64] >> (i % 64)) & 1; }

void p256_flip(P256& p, unsigned i) { p.w[i / 64] ^= std::uint64_t{1} << (i % 64); }

int p256_deg(const P256& p) {
    for (int k = 3; k >= 0; --k)
        if (p.w[k] != 0) return k * 64 + 63 - __builtin_clzll(p.w[k]);
    return -1;
}

void p256_xor(P256& a, const P256& b) {
    for (int i = 0; i < 4; ++i) a.w[i] ^= b.w[i];
}

// a ^= b << s
void p256_xor_shifted(P256& a, const P256& b, unsigned s) {
    unsigned word = s / 64, bit = s % 64;
    for (int i = 3; i >= 0; --i) {
        std::uint64_t v = 0;
        if (i >= (int)word) v = b.w[i - word] << bit;
        if (bit != 0 && i >= (int)word + 1) v |= b.w[i - word - 1] >> (64 - bit);
        a.w[i] ^= v;
    }
}

P256 p256_mod(P256 a, const P256& f) {
    int df = p256_deg(f);
    for (int da = p256_deg(a); da >= df; da = p256_deg(a)) p256_xor_shifted(a, f, da - df);
    return a;
}

P256 p256_gcd(P256 a, P256 b) {
    while (!p256_is_zero(b)) {
        P256 r = p256_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

P256 p256_shl1(const P256& a) {
    P256 r;
    r.w[0] = a.w[0] << 1;
    r.w[1] = (a.w[1] << 1) | (a.w[0] >> 63);
    r.w[2] = (a.w[2] << 1) | (a.w[1] >> 63);
    r.w[3] = (a.w[3] << 1) | (a.w[2] >> 63);
    return r;
}

// a * b mod f, deg f = m, operands reduced.  Xoring the full f (monic bit
// included) both clears the overflow bit and applies the low part.
P256 p256_mulmod(P256 a, const P256& b, const P256& f, unsigned m) {
    P256 r;
    int db = p256_deg(b);
    for (int i = 0; i <= db; ++i) {
        if (p256_bit(b, i)) p256_xor(r, a);
        a = p256_shl1(a);
        if (p256_bit(a, m)) p256_xor(a, f);
    }
    return r;
}

P256 p256_powmod(P256 a, Uint128 e, const P256& f, unsigned m) {
    P256 r = p256_one();
    while (e != 0) {
        if (e & 1) r = p256_mulmod(r, a, f, m);
        a = p256_mulmod(a, a, f, m);
        e >>= 1;
    }
    return r;
}

// gcd(f, X^(2^i) - X) == 1 for i = 1 .. m/2 rejects every proper factor.
bool p256_irreducible(const P256& f, unsigned m) {
    if (m == 1) return true;
    P256 r = p256_x();
    for (unsigned i = 1; i <= m / 2; ++i) {
        r = p256_mulmod(r, r, f, m);
        P256 g = r;
        p256_flip(g, 1);  // r + X
        g = p256_gcd(f, g);
        if (p256_deg(g) != 0) return false;
    }
    return true;
}

bool p256_primitive(const P256& f, unsigned m, Uint128 order, const std::vector<Uint128>& primes) {
    for (Uint128 p : primes) {
        if (p256_powmod(p256_x(), order / p, f, m) == p256_one()) return false;
    }
    return true;
}

std::vector<Uint128> unique_sorted(const std::vector<Uint128>& v) {
    std::vector<Uint128> u = v;
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

}  // namespace

bool is_prime_u128(Uint128 n) {
    if (n < 2) return false;
    for (std::uint32_t p : kMrBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Uint128 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint32_t b : kMrBases) {
        Uint128 x = powmod_u128(b, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod_u128(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<Uint128> factor_u128(Uint128 n) {
    std::vector<Uint128> out;
    if (n <= 1) return out;
    for (std::uint64_t d = 2; d <= 1000000 && (Uint128)d * d <= n; d = (d == 2 ? 3 : d + 2)) {
        while (n % d == 0) {
            out.push_back(d);
            n /= d;
        }
    }
    if (n > 1) factor_rec(n, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::string u128_to_string(Uint128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s.push_back(char('0' + (unsigned)(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

FieldElement fe_all_ones(unsigned m) {
    FieldElement r;
    if (m >= 64) {
        r.lo = ~std::uint64_t{0};
        r.hi = m == 128 ? ~std::uint64_t{0} : (std::uint64_t{1} << (m - 64)) - 1;
    } else {
        r.lo = (std::uint64_t{1} << m) - 1;
    }
    return r;
}

bool fe_fits(unsigned m, FieldElement a) {
    if (m >= 128) return true;
    if (m >= 64) return (a.hi >> (m - 64)) == 0;
    return a.hi == 0 && (a.lo >> m) == 0;
}

FieldElement add(FieldElement a, FieldElement b) { return {a.lo ^ b.lo, a.hi ^ b.hi}; }

namespace {

FieldElement mul_generic(const FieldContext& fc, FieldElement a, FieldElement b) {
    FieldElement r;
    while ((b.lo | b.hi) != 0) {
        if (b.lo & 1) {
            r.lo ^= a.lo;
            r.hi ^= a.hi;
        }
        b.lo = (b.lo >> 1) | (b.hi << 63);
        b.hi >>= 1;
        std::uint64_t carry = a.hi >> 63;
        a.hi = (a.hi << 1) | (a.lo >> 63);
        a.lo <<= 1;
        bool overflow = fc.m == 128 ? carry != 0 : fe_bit(a, fc.m);
        if (overflow) {
            if (fc.m < 128) {
                if (fc.m < 64)
                    a.lo ^= std::uint64_t{1} << fc.m;
                else
                    a.hi ^= std::uint64_t{1} << (fc.m - 64);
            }
            a.lo ^= fc.modulus_low.lo;
            a.hi ^= fc.modulus_low.hi;
        }
    }
    return r;
}

}  // namespace

FieldElement mul(const FieldContext& fc, FieldElement a, FieldElement b) {
    if (!fc.exp_tab.empty()) {
        if (is_zero(a) || is_zero(b)) return {};
        std::uint64_t q1 = (std::uint64_t)fc.order;
        std::uint64_t s = (std::uint64_t)fc.log_tab[a.lo] + fc.log_tab[b.lo];
        if (s >= q1) s -= q1;
        return {fc.exp_tab[s], 0};
    }
    return mul_generic(fc, a, b);
}

FieldElement pow(const FieldContext& fc, FieldElement a, Uint128 e) {
    if (is_zero(a)) return e == 0 ? fe_one() : fe_zero();
    if (!fc.exp_tab.empty()) {
        std::uint64_t q1 = (std::uint64_t)fc.order;
        std::uint64_t le = (std::uint64_t)(e % q1);
        std::uint64_t idx = (std::uint64_t)fc.log_tab[a.lo] * le % q1;
        return {fc.exp_tab[idx], 0};
    }
    FieldElement r = fe_one();
    while (e != 0) {
        if (e & 1) r = mul_generic(fc, r, a);
        a = mul_generic(fc, a, a);
        e >>= 1;
    }
    return r;
}

FieldElement inv(const FieldContext& fc, FieldElement a) {
    if (is_zero(a)) throw ZeroDivisionError();
    if (!fc.exp_tab.empty()) {
        std::uint64_t q1 = (std::uint64_t)fc.order;
        std::uint64_t idx = (q1 - fc.log_tab[a.lo]) % q1;
        return {fc.exp_tab[idx], 0};
    }
    return pow(fc, a, fc.order - 1);  // a^(2^m - 2)
}

FieldContext build_field(unsigned m) {
    if (m < 1 || m > 128) throw std::invalid_argument("field degree must be in [1, 128]");
    FieldContext fc;
    fc.m = m;
    fc.order = m == 128 ? ~Uint128{0} : (Uint128{1} << m) - 1;
    fc.factors = factor_u128(fc.order);
    std::vector<Uint128> primes = unique_sorted(fc.factors);

    // Scan candidates X^m + low ascending; a nonzero constant term is necessary,
    // so only odd lows are considered.
    bool found = false;
    Uint128 limit = m == 128 ? ~Uint128{0} : (Uint128{1} << m) - 1;
    for (Uint128 low = 1;; low += 2) {
        P256 f;
        f.w[0] = (std::uint64_t)low;
        f.w[1] = (std::uint64_t)(low >> 64);
        p256_flip(f, m);
        if (p256_irreducible(f, m) && p256_primitive(f, m, fc.order, primes)) {
            fc.modulus_low.lo = (std::uint64_t)low;
            fc.modulus_low.hi = (std::uint64_t)(low >> 64);
            found = true;
            break;
        }
        if (low >= limit) break;
    }
    if (!found) throw std::logic_error("no primitive polynomial found");  // unreachable

    fc.alpha = m == 1 ? fe_one() : FieldElement{2, 0};

    if (m <= 16) {
        std::uint64_t q1 = (std::uint64_t)fc.order;
        fc.exp_tab.resize(q1);
        fc.log_tab.assign(q1 + 1, 0);
        FieldElement cur = fe_one();
        for (std::uint64_t i = 0; i < q1; ++i) {
            fc.exp_tab[i] = (std::uint32_t)cur.lo;
            if (i != 0 && cur.lo == 1) throw std::logic_error("generator order too small");
            fc.log_tab[cur.lo] = (std::uint32_t)i;
            cur = mul_generic(fc, cur, fc.alpha);
        }
        if (!(cur == fe_one())) throw std::logic_error("generator order mismatch");
    }
    return fc;
}

bool certify_field(const FieldContext& fc) {
    if (fc.m < 1 || fc.m > 128) return false;
    Uint128 expect = fc.m == 128 ? ~Uint128{0} : (Uint128{1} << fc.m) - 1;
    if (fc.order != expect) return false;
    // factors multiply back exactly and are each prime
    Uint128 prod = 1;
    for (Uint128 p : fc.factors) {
        if (p < 2 || !is_prime_u128(p)) return false;
        if (prod > fc.order / p + 1) return false;
        prod *= p;
        if (prod > fc.order) return false;
    }
    if (fc.order > 1 && prod != fc.order) return false;
    if (fc.order == 1 && !fc.factors.empty()) return false;
    if (!std::is_sorted(fc.factors.begin(), fc.factors.end())) return false;
    // modulus shape: constant term set, no stray bits at or above m
    if (!fe_bit(fc.modulus_low, 0)) return false;
    if (!fe_fits(fc.m, fc.modulus_low)) return false;
    // alpha generates the full unit group
    if (!(pow(fc, fc.alpha, fc.order) == fe_one())) return false;
    for (Uint128 p : unique_sorted(fc.factors)) {
        if (pow(fc, fc.alpha, fc.order / p) == fe_one()) return false;
    }
    return true;
}

std::string to_hex(FieldElement a) {
    char buf[36];
    if (a.hi != 0)
        std::snprintf(buf, sizeof buf, "0x%llx%016llx", (unsigned long long)a.hi,
                      (unsigned long long)a.lo);
    else
        std::snprintf(buf, sizeof buf, "0x%llx", (unsigned long long)a.lo);
    return buf;
}

FieldElement from_hex(const std::string& s) {
    if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X'))
        throw std::invalid_argument("hex literal must start with 0x: " + s);
    std::string digits = s.substr(2);
    if (digits.size() > 32) throw std::invalid_argument("hex literal wider than 128 bits: " + s);
    FieldElement r;
    for (char c : digits) {
        unsigned v;
        if (c >= '0' && c <= '9')
            v = c - '0';
        else if (c >= 'a' && c <= 'f')
            v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            v = c - 'A' + 10;
        else
            throw std::invalid_argument("bad hex digit in " + s);
        r.hi = (r.hi << 4) | (r.lo >> 60);
        r.lo = (r.lo << 4) | v;
    }
    return r;
}

std::string modulus_hex(const FieldContext& fc) {
    if (fc.m == 128) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "0x1%016llx%016llx", (unsigned long long)fc.modulus_low.hi,
                      (unsigned long long)fc.modulus_low.lo);
        return buf;
    }
    FieldElement full = fc.modulus_low;
    fe_set_bit(full, fc.m);
    return to_hex(full);
}

}  // namespace rsred
