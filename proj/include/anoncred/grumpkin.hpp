// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// Grumpkin: y^2 = x^3 - 17 over Fr, with group order q equal to the BN254 base
// field prime — the other half of the BN254 curve cycle. Point coordinates are
// native Fr values, which keeps issuer signatures verifiable inside the
// presentation circuit without foreign-field arithmetic.
//
// The issuer signature scheme is Schnorr over Grumpkin with a Poseidon
// challenge: sig = (R, s), R = k·G, e = H(Rx, Ry, Px, Py, m), s = k + e·sk.

#pragma once

#include <optional>

#include "anoncred/field.hpp"
#include "anoncred/poseidon.hpp"
#include "anoncred/rng.hpp"

namespace anoncred {

struct GrumpkinAffine {
    Fr x, y;
    bool inf = true;

    GrumpkinAffine() = default;
    GrumpkinAffine(const Fr& x_, const Fr& y_) : x(x_), y(y_), inf(false) {}

    bool on_curve() const;
    bool operator==(const GrumpkinAffine& o) const {
        if (inf || o.inf) return inf == o.inf;
        return x == o.x && y == o.y;
    }
    GrumpkinAffine neg() const { return inf ? *this : GrumpkinAffine(x, -y); }

    static GrumpkinAffine infinity() { return {}; }
    static const GrumpkinAffine& generator();  // (1, sqrt(-16))
};

struct GrumpkinJacobian {
    Fr x, y, z;  // z == 0 encodes infinity

    static GrumpkinJacobian infinity() {
        return {Fr::zero(), Fr::one(), Fr::zero()};
    }
    static GrumpkinJacobian from_affine(const GrumpkinAffine& p);

    bool is_infinity() const { return z.is_zero(); }
    GrumpkinJacobian dbl() const;
    GrumpkinJacobian add(const GrumpkinJacobian& o) const;
    GrumpkinJacobian add_mixed(const GrumpkinAffine& o) const;
    GrumpkinAffine to_affine() const;
};

// scalar given as canonical integer (the Grumpkin scalar field is Fq)
GrumpkinJacobian grumpkin_mul(const GrumpkinAffine& base, const U256& scalar);

inline GrumpkinJacobian grumpkin_mul(const GrumpkinAffine& base, const Fq& scalar) {
    return grumpkin_mul(base, scalar.to_u256());
}

// deterministic try-and-increment point derivation (ladder offsets, test aids);
// the discrete log of the result relative to the generator is unknown
GrumpkinAffine grumpkin_hash_to_curve(std::string_view tag);

// =============================================================================
// issuer signature scheme
// =============================================================================

struct SigningKey {
    Fq sk;
};

struct VerifyingKey {
    GrumpkinAffine pk;

    bool operator==(const VerifyingKey& o) const { return pk == o.pk; }
};

struct Signature {
    Fr rx, ry;  // nonce commitment R
    Fq s;
};

std::pair<SigningKey, VerifyingKey> sig_keygen(Rng& rng);

// public key re-derivation (consistency checks, tests)
VerifyingKey sig_derive_vk(const SigningKey& sk);

Signature sig_sign(const SigningKey& sk, const Fr& msg, Rng& rng);

bool sig_verify(const VerifyingKey& vk, const Fr& msg, const Signature& sig);

// Poseidon challenge shared by the native verifier and the circuit gadget
Fr sig_challenge(const Fr& rx, const Fr& ry, const GrumpkinAffine& pk, const Fr& msg);

// canonical encodings: vk = x||y (64 bytes), sig = rx||ry||s (96 bytes)
std::array<uint8_t, 64> vk_to_bytes(const VerifyingKey& vk);
std::optional<VerifyingKey> vk_from_bytes(std::span<const uint8_t> data);
std::array<uint8_t, 96> sig_to_bytes(const Signature& sig);
std::optional<Signature> sig_from_bytes(std::span<const uint8_t> data);

}  // namespace anoncred
