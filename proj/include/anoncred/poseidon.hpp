// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// Algebraic sponge hash over Fr (Poseidon, t=3, x^5 S-box, 8 full + 57 partial
// rounds). Round constants come from the Grain LFSR procedure; the MDS matrix
// is the Cauchy matrix 1/(x_i + y_j) with x_i = i, y_j = t + j.
//
// One permutation serves several personalities, separated by the capacity lane:
//   - hash2(l, r)                : two-to-one compression, Merkle node combiner
//   - sponge(domain, elems)      : variable-length absorb over field elements
//   - hash_to_field(bytes)       : byte strings -> Fr, output in (0, r-1) open

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "anoncred/field.hpp"

namespace anoncred {

struct PoseidonParams {
    static constexpr size_t T = 3;
    static constexpr size_t FULL_ROUNDS = 8;
    static constexpr size_t PARTIAL_ROUNDS = 57;
    static constexpr size_t ROUNDS = FULL_ROUNDS + PARTIAL_ROUNDS;

    std::array<std::array<Fr, T>, ROUNDS> rc;
    std::array<std::array<Fr, T>, T> mds;

    static const PoseidonParams& get();
};

void poseidon_permute(std::array<Fr, 3>& state);

// capacity-lane domain tags
namespace dom {
inline constexpr uint64_t HASH2 = 0;          // plain two-to-one / pair leaves
inline constexpr uint64_t NODE_ATTR = 1;      // attribute-tree node combiner
inline constexpr uint64_t NODE_REVOC = 2;     // revocation-tree node combiner
inline constexpr uint64_t NODE_ISSUER = 3;    // issuer-tree node combiner
inline constexpr uint64_t PK_DIGEST = 5;      // public key -> field digest
inline constexpr uint64_t CRED_HASH = 6;      // credential hash (revocation)
inline constexpr uint64_t SIG_CHALLENGE = 7;  // Schnorr challenge
inline constexpr uint64_t BYTES = 8;          // hash_to_field absorb
inline constexpr uint64_t RETRY = 9;          // endpoint-exclusion re-hash
inline constexpr uint64_t KDF = 10;           // proving-parameter derivation
}  // namespace dom

// state = [tag, l, r]; output = state[1] after one permutation
Fr hash2_tagged(uint64_t tag, const Fr& l, const Fr& r);

inline Fr hash2(const Fr& l, const Fr& r) { return hash2_tagged(dom::HASH2, l, r); }

// capacity = domain + 2^64 * count, rate-2 absorb, squeeze one element
Fr sponge(uint64_t domain, std::span<const Fr> elems);

// re-hashes with an appended counter while the digest is 0 or r-1
Fr exclude_endpoints(Fr h);

// injective map bytes -> Fr strictly inside (0, r-1): 31-byte little-endian
// chunks absorbed under dom::BYTES with the byte length in the capacity
Fr hash_to_field(std::span<const uint8_t> data);

// field-element variant with the same endpoint-exclusion rule
Fr hash_to_field_elems(uint64_t domain, std::span<const Fr> elems);

}  // namespace anoncred
