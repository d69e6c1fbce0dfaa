// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// Circuit gadgets mirroring the native primitives bit for bit: Poseidon
// permutation/sponge, Merkle path recomputation, boolean decomposition,
// canonical-range assertions, integer comparison, Grumpkin arithmetic and
// Schnorr verification.
//
// Incomplete-addition ladders run on an accumulator offset by a fixed
// nothing-up-my-sleeve point, so honest traces never pass through the point
// at infinity; every incomplete addition carries an explicit x1 != x2 guard.

#pragma once

#include "anoncred/grumpkin.hpp"
#include "anoncred/r1cs.hpp"

namespace anoncred {

// ---- booleans and ranges ----

// allocates a bit wire constrained to {0,1}
LinComb g_boolean(CircuitBuilder& bld, bool hint);

// little-endian decomposition; booleanity plus packing Σ 2^i b_i = x.
// NOTE: for n >= 254 the decomposition alone is ambiguous mod r; callers
// needing the canonical representative must also call g_assert_lt_const.
std::vector<LinComb> g_bits(CircuitBuilder& bld, const LinComb& x, size_t n);

// asserts value(bits) < bound as integers (bits little-endian, bound nonzero)
void g_assert_lt_const(CircuitBuilder& bld, std::span<const LinComb> bits, const U256& bound);

// result bit = 1 iff a < b, where both operands are known < 2^k, k <= 126
LinComb g_lt_bounded(CircuitBuilder& bld, const LinComb& a, const LinComb& b, size_t k);

// result bit = 1 iff x == 0
LinComb g_is_zero(CircuitBuilder& bld, const LinComb& x);

// bit ? t : f (one multiplication)
LinComb g_select(CircuitBuilder& bld, const LinComb& bit, const LinComb& t, const LinComb& f);

// asserts x < y as canonical 254-bit integers (decomposes and range-asserts
// both operands); used by the revocation gap check
void g_assert_lt_canonical(CircuitBuilder& bld, const LinComb& x, const LinComb& y);

// decompose-once variant so shared operands are not decomposed repeatedly
struct CanonicalBits {
    std::vector<LinComb> bits;  // 254, little-endian, asserted < r
    LinComb lo, hi;             // 127-bit limb packings
};
CanonicalBits g_canonical_bits(CircuitBuilder& bld, const LinComb& x);
void g_assert_lt(CircuitBuilder& bld, const CanonicalBits& x, const CanonicalBits& y);

// ---- Poseidon ----

std::array<LinComb, 3> g_poseidon(CircuitBuilder& bld, std::array<LinComb, 3> state);

LinComb g_hash2_tagged(CircuitBuilder& bld, uint64_t tag, const LinComb& l, const LinComb& r);

// raw sponge (no endpoint-exclusion retry; the native retry fires with
// probability ~2^-253 and is accepted as a completeness gap)
LinComb g_sponge(CircuitBuilder& bld, uint64_t domain, std::span<const LinComb> elems);

// ---- Merkle ----

// recomputes the root from a leaf, path direction bits (LSB first) and
// sibling wires; the caller binds the result to a root wire or input
LinComb g_merkle_root(CircuitBuilder& bld, uint64_t node_tag, const LinComb& leaf,
                      std::span<const LinComb> index_bits, std::span<const LinComb> siblings);

// ---- Grumpkin ----

struct PointVar {
    LinComb x, y;
};

void g_assert_on_curve(CircuitBuilder& bld, const PointVar& p);

PointVar g_point_dbl(CircuitBuilder& bld, const PointVar& p);

// incomplete addition with x1 != x2 guard
PointVar g_point_add(CircuitBuilder& bld, const PointVar& p, const PointVar& q);

// scalar multiplication, bits little-endian (as produced by g_bits); the
// base is either a compile-time constant point or a witness point
PointVar g_scalar_mul_const(CircuitBuilder& bld, std::span<const LinComb> bits,
                            const GrumpkinAffine& base, const GrumpkinAffine& offset);
PointVar g_scalar_mul(CircuitBuilder& bld, std::span<const LinComb> bits, const PointVar& base,
                      const GrumpkinAffine& offset);

// ladder offset points (fixed, derived by try-and-increment hashing)
const GrumpkinAffine& g_ladder_offset1();
const GrumpkinAffine& g_ladder_offset2();

// ---- Schnorr ----

struct SchnorrWitnessVar {
    PointVar pk;
    PointVar r;
    std::vector<LinComb> s_bits;  // 254, little-endian, asserted < q
    LinComb s_lo, s_hi;           // 127-bit limbs of s (credential-hash absorb)
};

// allocates and constrains sig/pk witness wires (hints from concrete values)
SchnorrWitnessVar g_schnorr_witness(CircuitBuilder& bld, const VerifyingKey& vk,
                                    const Signature& sig);

// enforces s·G == R + e·pk with e = sponge(SIG_CHALLENGE, Rx,Ry,Px,Py,msg)
void g_schnorr_verify(CircuitBuilder& bld, const SchnorrWitnessVar& w, const LinComb& msg);

}  // namespace anoncred
