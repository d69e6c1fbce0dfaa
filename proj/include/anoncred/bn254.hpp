// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// BN254 pairing arithmetic for the proving system: the Fq2/Fq6/Fq12 tower
// (i^2 = -1, v^3 = 9+i, w^2 = v), both source groups, multi-scalar and
// fixed-base multiplication, and the optimal ate pairing with an affine
// Miller loop.

#pragma once

#include <span>
#include <vector>

#include "anoncred/field.hpp"

namespace anoncred {

// =============================================================================
// tower fields
// =============================================================================

struct Fq2 {
    Fq c0, c1;

    static Fq2 zero() { return {}; }
    static Fq2 one() { return {Fq::one(), Fq::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
    bool operator==(const Fq2& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fq2& o) const { return !(*this == o); }

    Fq2 operator+(const Fq2& o) const { return {c0 + o.c0, c1 + o.c1}; }
    Fq2 operator-(const Fq2& o) const { return {c0 - o.c0, c1 - o.c1}; }
    Fq2 operator-() const { return {-c0, -c1}; }
    Fq2 operator*(const Fq2& o) const {
        Fq a = c0 * o.c0;
        Fq b = c1 * o.c1;
        Fq cc = (c0 + c1) * (o.c0 + o.c1);
        return {a - b, cc - a - b};
    }
    Fq2 square() const {
        Fq a = c0 + c1;
        Fq b = c0 - c1;
        Fq cc = c0 * c1;
        return {a * b, cc + cc};
    }
    Fq2 dbl() const { return {c0 + c0, c1 + c1}; }
    Fq2 conj() const { return {c0, -c1}; }
    Fq2 scale(const Fq& k) const { return {c0 * k, c1 * k}; }
    Fq2 mul_by_xi() const {  // (9 + i) * this
        Fq nine = Fq::from_u64(9);
        return {c0 * nine - c1, c1 * nine + c0};
    }
    Fq2 inverse() const {
        Fq norm = c0 * c0 + c1 * c1;
        Fq ni = norm.inverse();
        return {c0 * ni, -(c1 * ni)};
    }
};

struct Fq6 {
    Fq2 c0, c1, c2;

    static Fq6 zero() { return {}; }
    static Fq6 one() { return {Fq2::one(), {}, {}}; }

    bool operator==(const Fq6& o) const { return c0 == o.c0 && c1 == o.c1 && c2 == o.c2; }

    Fq6 operator+(const Fq6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
    Fq6 operator-(const Fq6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
    Fq6 operator-() const { return {-c0, -c1, -c2}; }
    Fq6 operator*(const Fq6& o) const;
    Fq6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }
    Fq6 inverse() const;
    Fq6 frobenius() const;
};

struct Fq12 {
    Fq6 c0, c1;

    static Fq12 one() { return {Fq6::one(), {}}; }

    bool operator==(const Fq12& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fq12& o) const { return !(*this == o); }

    Fq12 operator*(const Fq12& o) const;
    Fq12 square() const;
    Fq12 conj() const { return {c0, -c1}; }
    Fq12 inverse() const;
    Fq12 frobenius() const;
    Fq12 pow(std::span<const uint64_t> exp_limbs) const;
};

// =============================================================================
// groups
// =============================================================================

struct G1Affine {
    Fq x, y;
    bool inf = true;

    G1Affine() = default;
    G1Affine(const Fq& x_, const Fq& y_) : x(x_), y(y_), inf(false) {}

    static const G1Affine& generator();  // (1, 2)
    bool on_curve() const;               // y^2 = x^3 + 3
    bool operator==(const G1Affine& o) const {
        if (inf || o.inf) return inf == o.inf;
        return x == o.x && y == o.y;
    }
    G1Affine neg() const { return inf ? *this : G1Affine(x, -y); }
};

struct G1 {
    Fq x, y, z;  // jacobian, z == 0 encodes infinity

    static G1 infinity() { return {Fq::zero(), Fq::one(), Fq::zero()}; }
    static G1 from_affine(const G1Affine& p);
    bool is_infinity() const { return z.is_zero(); }
    G1 dbl() const;
    G1 add(const G1& o) const;
    G1 add_mixed(const G1Affine& o) const;
    G1Affine to_affine() const;
};

struct G2Affine {
    Fq2 x, y;
    bool inf = true;

    G2Affine() = default;
    G2Affine(const Fq2& x_, const Fq2& y_) : x(x_), y(y_), inf(false) {}

    static const G2Affine& generator();
    static const Fq2& curve_b();  // 3 / (9 + i)
    bool on_curve() const;
    bool operator==(const G2Affine& o) const {
        if (inf || o.inf) return inf == o.inf;
        return x == o.x && y == o.y;
    }
    G2Affine neg() const { return inf ? *this : G2Affine(x, -y); }
};

struct G2 {
    Fq2 x, y, z;

    static G2 infinity() { return {Fq2::zero(), Fq2::one(), Fq2::zero()}; }
    static G2 from_affine(const G2Affine& p);
    bool is_infinity() const { return z.is_zero(); }
    G2 dbl() const;
    G2 add(const G2& o) const;
    G2 add_mixed(const G2Affine& o) const;
    G2Affine to_affine() const;
};

G1 g1_mul(const G1Affine& base, const U256& scalar);
G2 g2_mul(const G2Affine& base, const U256& scalar);

// batch conversion (one shared inversion)
std::vector<G1Affine> g1_batch_to_affine(std::span<const G1> points);
std::vector<G2Affine> g2_batch_to_affine(std::span<const G2> points);

// =============================================================================
// multi-scalar multiplication (Pippenger) and fixed-base combs
// =============================================================================

G1 g1_msm(std::span<const G1Affine> bases, std::span<const Fr> scalars);
G2 g2_msm(std::span<const G2Affine> bases, std::span<const Fr> scalars);

class G1FixedBase {
public:
    explicit G1FixedBase(const G1Affine& base);
    G1 mul(const Fr& scalar) const;

private:
    std::vector<G1Affine> table_;  // 32 windows x 256 entries
};

class G2FixedBase {
public:
    explicit G2FixedBase(const G2Affine& base);
    G2 mul(const Fr& scalar) const;

private:
    std::vector<G2Affine> table_;
};

// =============================================================================
// pairing
// =============================================================================

Fq12 miller_loop(const G1Affine& p, const G2Affine& q);
Fq12 final_exponentiation(const Fq12& f);

inline Fq12 pairing(const G1Affine& p, const G2Affine& q) {
    return final_exponentiation(miller_loop(p, q));
}

// product of pairings == 1 check (single shared final exponentiation);
// infinity entries contribute the identity
bool pairing_product_is_one(std::span<const std::pair<G1Affine, G2Affine>> pairs);

// ---- serialization: x||y, 32-byte little-endian coords, zeroes = infinity ----

std::array<uint8_t, 64> g1_to_bytes(const G1Affine& p);
std::optional<G1Affine> g1_from_bytes(std::span<const uint8_t> data);
std::array<uint8_t, 128> g2_to_bytes(const G2Affine& p);
std::optional<G2Affine> g2_from_bytes(std::span<const uint8_t> data);

}  // namespace anoncred
