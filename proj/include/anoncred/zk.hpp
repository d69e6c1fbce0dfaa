// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// Proving-system boundary. Two backends sit behind one interface:
//
//   Production — Groth16 over BN254. Keys are derived deterministically from
//     the parameter seed, so prover and verifier regenerate identical keys per
//     relation without coordination. The trapdoor is derivable from the public
//     seed; a deployment would replace this with a ceremony and distribute the
//     key material instead.
//
//   Test — transparent replay backend: the "proof" carries the serialized
//     witness plus a statement binding and the verifier reruns the native
//     relation check. Not zero-knowledge. Exists for differential testing and
//     is refused by the CLI outside test mode.
//
// The session context never enters the circuit: its hash is the leading
// public input, so both backends reject any ctx mismatch.

#pragma once

#include <map>
#include <memory>
#include <shared_mutex>

#include "anoncred/groth16.hpp"
#include "anoncred/relation.hpp"

namespace anoncred {

enum class ZkBackendKind : uint8_t { Production = 1, Test = 2 };

struct ZkParams {
    uint32_t max_constraints = 0;      // power of two
    std::array<uint8_t, 32> seed{};    // key-derivation seed

    std::vector<Fr> seed_elements() const;
    std::vector<uint8_t> to_bytes() const;
    static std::optional<ZkParams> from_bytes(std::span<const uint8_t> data);
};

// security parameter is fixed by the curve choice (~128 bits); it is checked,
// not dialed. Seeded rngs reproduce identical parameters.
ZkParams zk_setup(uint32_t security, uint32_t max_constraints, Rng& rng);

struct ZkProverKey {
    ZkBackendKind kind = ZkBackendKind::Production;
    RelationDescription desc;
    std::shared_ptr<const ConstraintSystem> cs;  // production only
    std::shared_ptr<const Groth16ProvingKey> groth16;
};

struct ZkVerifierKey {
    ZkBackendKind kind = ZkBackendKind::Production;
    RelationDescription desc;
    std::shared_ptr<const Groth16VerifyingKey> groth16;

    std::vector<uint8_t> to_bytes() const;
    static std::optional<ZkVerifierKey> from_bytes(std::span<const uint8_t> data);
};

struct ZkKeypair {
    ZkProverKey pk;
    ZkVerifierKey vk;
};

struct ZkProof {
    ZkBackendKind kind = ZkBackendKind::Production;
    std::vector<uint8_t> payload;

    std::vector<uint8_t> to_bytes() const;  // kind byte followed by the payload
    static std::optional<ZkProof> from_bytes(std::span<const uint8_t> data);
};

// deterministic per (params, description); throws CircuitTooLarge when the
// relation does not fit the configured capacity
ZkKeypair zk_keygen(const ZkParams& pp, const RelationDescription& desc, ZkBackendKind kind);

// checks relation_check before proving; throws UnsatisfiedWitness otherwise
ZkProof zk_prove(const ZkProverKey& pk, const Statement& stmt, const Witness& w, Rng& rng);

bool zk_verify(const ZkVerifierKey& vk, const Statement& stmt, const ZkProof& proof);

// shape-id keyed cache shared by the holder and verifier paths; read-mostly
class KeyCache {
public:
    std::shared_ptr<const ZkKeypair> get_or_create(const ZkParams& pp,
                                                   const RelationDescription& desc,
                                                   ZkBackendKind kind);
    void clear();

private:
    std::shared_mutex mutex_;
    std::map<std::vector<uint8_t>, std::shared_ptr<const ZkKeypair>> cache_;
};

}  // namespace anoncred
