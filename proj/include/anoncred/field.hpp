// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// 256-bit prime field arithmetic (Montgomery form, 4x64 limbs) for the two
// fields of the BN254 / Grumpkin curve cycle:
//
//   Fr — the BN254 scalar field. All protocol values (attribute encodings,
//        hashes, commitment roots, Grumpkin coordinates) live here.
//   Fq — the BN254 base field, which is also the Grumpkin scalar field.

#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace anoncred {

// =============================================================================
// U256: little-endian 4-limb unsigned integer
// =============================================================================

struct U256 {
    uint64_t v[4];

    constexpr U256() : v{0, 0, 0, 0} {}
    constexpr explicit U256(uint64_t x) : v{x, 0, 0, 0} {}
    constexpr U256(uint64_t a, uint64_t b, uint64_t c, uint64_t d) : v{a, b, c, d} {}

    bool is_zero() const { return (v[0] | v[1] | v[2] | v[3]) == 0; }

    bool operator==(const U256& o) const {
        return v[0] == o.v[0] && v[1] == o.v[1] && v[2] == o.v[2] && v[3] == o.v[3];
    }
    bool operator!=(const U256& o) const { return !(*this == o); }

    // integer comparison
    int cmp(const U256& o) const {
        for (int i = 3; i >= 0; --i) {
            if (v[i] < o.v[i]) return -1;
            if (v[i] > o.v[i]) return 1;
        }
        return 0;
    }
    bool operator<(const U256& o) const { return cmp(o) < 0; }
    bool operator>=(const U256& o) const { return cmp(o) >= 0; }

    bool bit(size_t i) const { return (v[i / 64] >> (i % 64)) & 1; }

    size_t bit_length() const {
        for (int i = 3; i >= 0; --i) {
            if (v[i]) return 64 * i + (64 - __builtin_clzll(v[i]));
        }
        return 0;
    }

    U256 shr1() const {
        U256 r;
        for (int i = 0; i < 4; ++i) {
            r.v[i] = v[i] >> 1;
            if (i < 3) r.v[i] |= v[i + 1] << 63;
        }
        return r;
    }
};

inline uint64_t adc64(uint64_t a, uint64_t b, uint64_t& carry) {
    unsigned __int128 s = (unsigned __int128)a + b + carry;
    carry = (uint64_t)(s >> 64);
    return (uint64_t)s;
}

inline uint64_t sbb64(uint64_t a, uint64_t b, uint64_t& borrow) {
    unsigned __int128 d = (unsigned __int128)a - b - borrow;
    borrow = (d >> 64) ? 1 : 0;
    return (uint64_t)d;
}

// returns carry-out
inline uint64_t u256_add(U256& r, const U256& a, const U256& b) {
    uint64_t c = 0;
    for (int i = 0; i < 4; ++i) r.v[i] = adc64(a.v[i], b.v[i], c);
    return c;
}

// returns borrow-out
inline uint64_t u256_sub(U256& r, const U256& a, const U256& b) {
    uint64_t br = 0;
    for (int i = 0; i < 4; ++i) r.v[i] = sbb64(a.v[i], b.v[i], br);
    return br;
}

inline void u256_mul_wide(const U256& a, const U256& b, uint64_t out[8]) {
    std::memset(out, 0, 8 * sizeof(uint64_t));
    for (int i = 0; i < 4; ++i) {
        uint64_t carry = 0;
        for (int j = 0; j < 4; ++j) {
            unsigned __int128 t = (unsigned __int128)a.v[i] * b.v[j] + out[i + j] + carry;
            out[i + j] = (uint64_t)t;
            carry = (uint64_t)(t >> 64);
        }
        out[i + 4] = carry;
    }
}

// =============================================================================
// Montgomery field element
// =============================================================================

// BN254 scalar field r
struct FrParams {
    static constexpr U256 MOD{0x43e1f593f0000001ull, 0x2833e84879b97091ull,
                              0xb85045b68181585dull, 0x30644e72e131a029ull};
    static constexpr U256 R{0xac96341c4ffffffbull, 0x36fc76959f60cd29ull,
                            0x666ea36f7879462eull, 0x0e0a77c19a07df2full};
    static constexpr U256 R2{0x1bb8e645ae216da7ull, 0x53fe3ab1e35c59e3ull,
                             0x8c49833d53bb8085ull, 0x0216d0b17f4e44a5ull};
    static constexpr uint64_t INV = 0xc2e1f593efffffffull;
    static constexpr uint64_t GENERATOR = 5;  // multiplicative generator of Fr*
    static constexpr size_t TWO_ADICITY = 28;
    // GENERATOR^((r-1)/2^28): primitive 2^28-th root of unity
    static constexpr U256 ROOT_OF_UNITY{0x9bd61b6e725b19f0ull, 0x402d111e41112ed4ull,
                                        0x00e0a7eb8ef62abcull, 0x2a3c09f0a58a7e85ull};
};

// BN254 base field p (= Grumpkin group order)
struct FqParams {
    static constexpr U256 MOD{0x3c208c16d87cfd47ull, 0x97816a916871ca8dull,
                              0xb85045b68181585dull, 0x30644e72e131a029ull};
    static constexpr U256 R{0xd35d438dc58f0d9dull, 0x0a78eb28f5c70b3dull,
                            0x666ea36f7879462cull, 0x0e0a77c19a07df2full};
    static constexpr U256 R2{0xf32cfc5b538afa89ull, 0xb5e71911d44501fbull,
                             0x47ab1eff0a417ff6ull, 0x06d89f71cab8351full};
    static constexpr uint64_t INV = 0x87d20782e4866389ull;
    static constexpr uint64_t GENERATOR = 3;
    static constexpr size_t TWO_ADICITY = 1;
    static constexpr U256 ROOT_OF_UNITY{0, 0, 0, 0};  // unused for Fq
};

template <typename P>
struct Fp256 {
    U256 m;  // Montgomery representation: m = value * R mod MOD

    constexpr Fp256() : m{} {}

    static Fp256 zero() { return Fp256{}; }
    static Fp256 one() { Fp256 r; r.m = P::R; return r; }

    static Fp256 from_u64(uint64_t x) { return from_u256(U256(x)); }

    // canonical integer (must be < MOD) -> field element
    static Fp256 from_u256(const U256& x) {
        Fp256 r;
        r.m = mont_mul(x, P::R2);
        return r;
    }

    U256 to_u256() const {
        uint64_t t[8] = {m.v[0], m.v[1], m.v[2], m.v[3], 0, 0, 0, 0};
        return mont_reduce(t);
    }

    bool is_zero() const { return m.is_zero(); }
    bool operator==(const Fp256& o) const { return m == o.m; }
    bool operator!=(const Fp256& o) const { return !(m == o.m); }

    Fp256 operator+(const Fp256& o) const {
        Fp256 r;
        uint64_t carry = u256_add(r.m, m, o.m);
        if (carry || r.m >= P::MOD) {
            U256 t;
            u256_sub(t, r.m, P::MOD);
            r.m = t;
        }
        return r;
    }

    Fp256 operator-(const Fp256& o) const {
        Fp256 r;
        if (u256_sub(r.m, m, o.m)) {
            U256 t;
            u256_add(t, r.m, P::MOD);
            r.m = t;
        }
        return r;
    }

    Fp256 operator-() const { return zero() - *this; }

    Fp256 operator*(const Fp256& o) const {
        Fp256 r;
        r.m = mont_mul(m, o.m);
        return r;
    }

    Fp256& operator+=(const Fp256& o) { *this = *this + o; return *this; }
    Fp256& operator-=(const Fp256& o) { *this = *this - o; return *this; }
    Fp256& operator*=(const Fp256& o) { *this = *this * o; return *this; }

    Fp256 square() const { return *this * *this; }

    Fp256 dbl() const { return *this + *this; }

    Fp256 pow(const U256& e) const {
        Fp256 acc = one();
        size_t n = e.bit_length();
        for (size_t i = n; i-- > 0;) {
            acc = acc.square();
            if (e.bit(i)) acc *= *this;
        }
        return acc;
    }

    Fp256 pow(uint64_t e) const { return pow(U256(e)); }

    // exponent given as little-endian limb span (for >256-bit exponents)
    Fp256 pow(std::span<const uint64_t> limbs) const {
        Fp256 acc = one();
        size_t bits = limbs.size() * 64;
        while (bits > 0 && !((limbs[(bits - 1) / 64] >> ((bits - 1) % 64)) & 1)) --bits;
        for (size_t i = bits; i-- > 0;) {
            acc = acc.square();
            if ((limbs[i / 64] >> (i % 64)) & 1) acc *= *this;
        }
        return acc;
    }

    // Fermat inversion; inverse of zero is zero
    Fp256 inverse() const {
        U256 e;
        u256_sub(e, P::MOD, U256(2));
        return pow(e);
    }

    // compares canonical integer values (used for sorted revocation lists)
    int cmp(const Fp256& o) const { return to_u256().cmp(o.to_u256()); }

    // ---- canonical 32-byte little-endian encoding ----

    std::array<uint8_t, 32> to_bytes() const {
        U256 c = to_u256();
        std::array<uint8_t, 32> out;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 8; ++j) out[8 * i + j] = (uint8_t)(c.v[i] >> (8 * j));
        return out;
    }

    // rejects non-canonical encodings (value >= MOD)
    static std::optional<Fp256> from_bytes(std::span<const uint8_t> in) {
        if (in.size() != 32) return std::nullopt;
        U256 c;
        for (int i = 0; i < 4; ++i) {
            c.v[i] = 0;
            for (int j = 7; j >= 0; --j) c.v[i] = (c.v[i] << 8) | in[8 * i + j];
        }
        if (c >= P::MOD) return std::nullopt;
        return from_u256(c);
    }

    // uniform-ish element from 64 bytes (little-endian 512-bit integer mod MOD)
    static Fp256 from_uniform_bytes(std::span<const uint8_t, 64> in) {
        U256 lo, hi;
        for (int i = 0; i < 4; ++i) {
            lo.v[i] = 0;
            hi.v[i] = 0;
            for (int j = 7; j >= 0; --j) {
                lo.v[i] = (lo.v[i] << 8) | in[8 * i + j];
                hi.v[i] = (hi.v[i] << 8) | in[32 + 8 * i + j];
            }
        }
        // value = lo + hi*2^256; Montgomery form of hi*2^256 is hi*R^2,
        // obtained as mont_mul(hi*R, R2).
        Fp256 l, h;
        l.m = mont_mul(lo, P::R2);
        h.m = mont_mul(hi, P::R2);
        h.m = mont_mul(h.m, P::R2);
        return l + h;
    }

    static const char* name() { return std::is_same_v<P, FrParams> ? "Fr" : "Fq"; }

    // ---- internals ----

    static U256 mont_reduce(uint64_t t[8]) {
        for (int i = 0; i < 4; ++i) {
            uint64_t k = t[i] * P::INV;
            uint64_t carry = 0;
            for (int j = 0; j < 4; ++j) {
                unsigned __int128 s = (unsigned __int128)k * P::MOD.v[j] + t[i + j] + carry;
                t[i + j] = (uint64_t)s;
                carry = (uint64_t)(s >> 64);
            }
            for (int j = i + 4; j < 8 && carry; ++j) {
                unsigned __int128 s = (unsigned __int128)t[j] + carry;
                t[j] = (uint64_t)s;
                carry = (uint64_t)(s >> 64);
            }
        }
        U256 r(t[4], t[5], t[6], t[7]);
        if (r >= P::MOD) {
            U256 s;
            u256_sub(s, r, P::MOD);
            r = s;
        }
        return r;
    }

    static U256 mont_mul(const U256& a, const U256& b) {
        uint64_t t[8];
        u256_mul_wide(a, b, t);
        return mont_reduce(t);
    }
};

using Fr = Fp256<FrParams>;
using Fq = Fp256<FqParams>;

// =============================================================================
// square roots (Tonelli-Shanks), generic over the parameter struct
// =============================================================================

template <typename P>
std::optional<Fp256<P>> sqrt(const Fp256<P>& a) {
    using F = Fp256<P>;
    if (a.is_zero()) return F::zero();

    U256 pm1;
    u256_sub(pm1, P::MOD, U256(1));
    U256 half = pm1.shr1();
    if (a.pow(half) != F::one()) return std::nullopt;  // non-residue

    // MOD - 1 = q * 2^s with q odd
    size_t s = 0;
    U256 q = pm1;
    while (!q.bit(0)) {
        q = q.shr1();
        ++s;
    }
    F z = F::from_u64(P::GENERATOR);  // generator is a non-residue
    F c = z.pow(q);
    F t = a.pow(q);
    U256 qp1;
    u256_add(qp1, q, U256(1));
    F r = a.pow(qp1.shr1());
    size_t m = s;
    while (t != F::one()) {
        size_t i = 0;
        F t2 = t;
        while (t2 != F::one()) {
            t2 = t2.square();
            ++i;
        }
        F b = c;
        for (size_t j = 0; j < m - i - 1; ++j) b = b.square();
        m = i;
        c = b.square();
        t = t * c;
        r = r * b;
    }
    return r;
}

}  // namespace anoncred
