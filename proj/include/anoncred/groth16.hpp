// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// Groth16 over BN254 for the R1CS produced by relation_build. Key generation
// is deterministic from a caller-supplied trapdoor seed so that prover and
// verifier derive byte-identical keys independently; see the zk layer for the
// trust consequences and caching.

#pragma once

#include <optional>

#include "anoncred/bn254.hpp"
#include "anoncred/r1cs.hpp"
#include "anoncred/rng.hpp"

namespace anoncred {

// radix-2 NTT over the 2-adic subgroup of Fr; in-place, size a power of two
void fft(std::vector<Fr>& values, bool inverse);

// process-wide generator combs shared by every key generation
const G1FixedBase& g1_generator_comb();
const G2FixedBase& g2_generator_comb();

struct Groth16ProvingKey {
    G1Affine alpha_g1, beta_g1, delta_g1;
    G2Affine beta_g2, delta_g2;
    std::vector<G1Affine> a_query;     // [u_i(tau)]_1 per wire
    std::vector<G1Affine> b_g1_query;  // [v_i(tau)]_1 per wire
    std::vector<G2Affine> b_g2_query;  // [v_i(tau)]_2 per wire
    std::vector<G1Affine> l_query;     // [(beta u_i + alpha v_i + w_i)/delta]_1, aux wires
    std::vector<G1Affine> h_query;     // [tau^j Z(tau)/delta]_1, j < N-1
    uint32_t num_inputs = 0;
    uint32_t domain_size = 0;
};

struct Groth16VerifyingKey {
    G1Affine alpha_g1;
    G2Affine beta_g2, gamma_g2, delta_g2;
    std::vector<G1Affine> ic;  // [(beta u_i + alpha v_i + w_i)/gamma]_1, ONE + inputs

    bool operator==(const Groth16VerifyingKey& o) const;
};

struct Groth16Keys {
    Groth16ProvingKey pk;
    Groth16VerifyingKey vk;
};

struct Groth16Proof {
    G1Affine a;
    G2Affine b;
    G1Affine c;
};

// deterministic setup: the trapdoor scalars are derived from the seed elements
Groth16Keys groth16_setup(const ConstraintSystem& cs, std::span<const Fr> trapdoor_seed);

// assignment must satisfy cs; r/s blinding comes from rng
Groth16Proof groth16_prove(const Groth16ProvingKey& pk, const ConstraintSystem& cs,
                           std::span<const Fr> assignment, Rng& rng);

// public_inputs excludes the leading ONE
bool groth16_verify(const Groth16VerifyingKey& vk, std::span<const Fr> public_inputs,
                    const Groth16Proof& proof);

// ---- serialization ----

std::vector<uint8_t> groth16_proof_to_bytes(const Groth16Proof& proof);
std::optional<Groth16Proof> groth16_proof_from_bytes(std::span<const uint8_t> data);

std::vector<uint8_t> groth16_vk_to_bytes(const Groth16VerifyingKey& vk);
std::optional<Groth16VerifyingKey> groth16_vk_from_bytes(std::span<const uint8_t> data);

std::vector<uint8_t> groth16_pk_to_bytes(const Groth16ProvingKey& pk);
std::optional<Groth16ProvingKey> groth16_pk_from_bytes(std::span<const uint8_t> data);

}  // namespace anoncred
