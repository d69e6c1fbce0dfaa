// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#include "anoncred/zk.hpp"

#include <mutex>

#include "anoncred/encoding.hpp"
#include "anoncred/errors.hpp"
#include "anoncred/poseidon.hpp"

namespace anoncred {

namespace {

// test-backend proofs bind the full public input vector (ctx hash included)
Fr statement_binding(const RelationDescription& desc, const Statement& stmt) {
    auto inputs = statement_inputs(desc, stmt);
    return hash_to_field_elems(dom::KDF, inputs);
}

// shape id extended with a description blob so keys round-trip through files
std::vector<uint8_t> desc_to_bytes(const RelationDescription& desc) {
    return desc.shape_id();  // the shape id is a complete structural encoding
}

std::optional<RelationDescription> desc_from_bytes(std::span<const uint8_t> data) {
    Decoder dec(data);
    auto ver = dec.u8();
    if (!ver || *ver != 1) return std::nullopt;
    RelationDescription d;
    auto na = dec.u32();
    auto nr = dec.u32();
    auto ni = dec.u32();
    auto bw = dec.u32();
    auto slots = dec.u32();
    auto n_clauses = dec.u32();
    if (!na || !nr || !ni || !bw || !slots || !n_clauses) return std::nullopt;
    d.n_attr = *na;
    d.n_revoc = *nr;
    d.n_issuer = *ni;
    d.bit_width = *bw;
    d.shape.num_slots = *slots;
    for (uint32_t i = 0; i < *n_clauses; ++i) {
        ClauseShape cs;
        auto kind = dec.u8();
        auto slot = dec.u32();
        auto op = dec.u8();
        auto numeric = dec.u8();
        auto members = dec.u32();
        auto depth = dec.u32();
        if (!kind || !slot || !op || !numeric || !members || !depth) return std::nullopt;
        cs.kind = (ClauseShape::Kind)*kind;
        cs.slot = *slot;
        cs.op = (CmpOp)*op;
        cs.numeric = *numeric != 0;
        cs.member_count = *members;
        cs.list_depth = *depth;
        d.shape.clauses.push_back(cs);
    }
    if (!dec.done()) return std::nullopt;
    return d;
}

}  // namespace

std::vector<Fr> ZkParams::seed_elements() const {
    std::vector<Fr> out;
    out.push_back(Fr::from_u64(max_constraints));
    for (size_t i = 0; i < 32; i += 31) {
        U256 v;
        for (size_t j = i; j < std::min<size_t>(i + 31, 32); ++j)
            v.v[(j - i) / 8] |= (uint64_t)seed[j] << (8 * ((j - i) % 8));
        out.push_back(Fr::from_u256(v));
    }
    return out;
}

std::vector<uint8_t> ZkParams::to_bytes() const {
    Encoder enc;
    enc.u32(max_constraints);
    enc.append(seed);
    return enc.take();
}

std::optional<ZkParams> ZkParams::from_bytes(std::span<const uint8_t> data) {
    Decoder dec(data);
    ZkParams pp;
    auto mc = dec.u32();
    auto sd = dec.take(32);
    if (!mc || !sd || !dec.done()) return std::nullopt;
    pp.max_constraints = *mc;
    std::copy(sd->begin(), sd->end(), pp.seed.begin());
    return pp;
}

ZkParams zk_setup(uint32_t security, uint32_t max_constraints, Rng& rng) {
    if (security != 128)
        fail(Err::InvalidInput, "the BN254 instantiation provides the 128-bit level only");
    if (max_constraints < 2 || (max_constraints & (max_constraints - 1)) != 0)
        fail(Err::InvalidInput, "max_constraints must be a power of two");
    if (max_constraints > (1u << FrParams::TWO_ADICITY))
        fail(Err::InvalidInput, "max_constraints exceeds the FFT-friendly range");
    ZkParams pp;
    pp.max_constraints = max_constraints;
    rng.fill(pp.seed);
    // warm the universal generator tables; they are part of the working set
    // every keygen shares
    (void)g1_generator_comb();
    (void)g2_generator_comb();
    return pp;
}

ZkKeypair zk_keygen(const ZkParams& pp, const RelationDescription& desc, ZkBackendKind kind) {
    ZkKeypair keys;
    keys.pk.kind = kind;
    keys.pk.desc = desc;
    keys.vk.kind = kind;
    keys.vk.desc = desc;
    if (kind == ZkBackendKind::Test) return keys;

    auto cs = std::make_shared<ConstraintSystem>(relation_build(desc));
    if (cs->num_constraints() > pp.max_constraints)
        fail(Err::CircuitTooLarge,
             "relation needs " + std::to_string(cs->num_constraints()) +
                 " constraints, parameters allow " + std::to_string(pp.max_constraints));

    // bind the trapdoor derivation to the relation shape
    std::vector<Fr> seed = pp.seed_elements();
    auto id = desc.shape_id();
    seed.push_back(hash_to_field(id));
    auto g16 = groth16_setup(*cs, seed);
    keys.pk.cs = cs;
    keys.pk.groth16 = std::make_shared<Groth16ProvingKey>(std::move(g16.pk));
    keys.vk.groth16 = std::make_shared<Groth16VerifyingKey>(std::move(g16.vk));
    return keys;
}

ZkProof zk_prove(const ZkProverKey& pk, const Statement& stmt, const Witness& w, Rng& rng) {
    if (!relation_check(pk.desc, stmt, w))
        fail(Err::UnsatisfiedWitness, "witness does not satisfy the presentation relation");

    ZkProof proof;
    proof.kind = pk.kind;
    if (pk.kind == ZkBackendKind::Test) {
        Encoder enc;
        enc.field(statement_binding(pk.desc, stmt));
        enc.append(witness_to_bytes(pk.desc, w));
        proof.payload = enc.take();
        return proof;
    }

    auto built = relation_assign(pk.desc, stmt, w);
    proof.payload = groth16_proof_to_bytes(groth16_prove(*pk.groth16, *pk.cs, built.assignment, rng));
    return proof;
}

bool zk_verify(const ZkVerifierKey& vk, const Statement& stmt, const ZkProof& proof) {
    try {
        if (proof.kind != vk.kind) return false;
        if (vk.kind == ZkBackendKind::Test) {
            Decoder dec(proof.payload);
            auto bind = dec.field();
            if (!bind) return false;
            auto rest = dec.take(dec.remaining());
            if (!rest) return false;
            auto w = witness_from_bytes(vk.desc, *rest);
            if (!w) return false;
            if (*bind != statement_binding(vk.desc, stmt)) return false;
            return relation_check(vk.desc, stmt, *w);
        }
        auto g16 = groth16_proof_from_bytes(proof.payload);
        if (!g16) return false;
        auto inputs = statement_inputs(vk.desc, stmt);
        return groth16_verify(*vk.groth16, inputs, *g16);
    } catch (const std::exception&) {
        return false;
    }
}

// =============================================================================
// serialization
// =============================================================================

std::vector<uint8_t> ZkProof::to_bytes() const {
    std::vector<uint8_t> out;
    out.reserve(payload.size() + 1);
    out.push_back((uint8_t)kind);
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

std::optional<ZkProof> ZkProof::from_bytes(std::span<const uint8_t> data) {
    if (data.empty()) return std::nullopt;
    if (data[0] != (uint8_t)ZkBackendKind::Production && data[0] != (uint8_t)ZkBackendKind::Test)
        return std::nullopt;
    ZkProof proof;
    proof.kind = (ZkBackendKind)data[0];
    proof.payload.assign(data.begin() + 1, data.end());
    return proof;
}

std::vector<uint8_t> ZkVerifierKey::to_bytes() const {
    Encoder enc;
    enc.u8((uint8_t)kind);
    enc.bytes(desc_to_bytes(desc));
    if (kind == ZkBackendKind::Production) enc.bytes(groth16_vk_to_bytes(*groth16));
    return enc.take();
}

std::optional<ZkVerifierKey> ZkVerifierKey::from_bytes(std::span<const uint8_t> data) {
    Decoder dec(data);
    auto kind = dec.u8();
    if (!kind) return std::nullopt;
    if (*kind != (uint8_t)ZkBackendKind::Production && *kind != (uint8_t)ZkBackendKind::Test)
        return std::nullopt;
    ZkVerifierKey vk;
    vk.kind = (ZkBackendKind)*kind;
    auto desc_bytes = dec.bytes();
    if (!desc_bytes) return std::nullopt;
    auto desc = desc_from_bytes(*desc_bytes);
    if (!desc) return std::nullopt;
    vk.desc = *desc;
    if (vk.kind == ZkBackendKind::Production) {
        auto g16_bytes = dec.bytes();
        if (!g16_bytes) return std::nullopt;
        auto g16 = groth16_vk_from_bytes(*g16_bytes);
        if (!g16) return std::nullopt;
        vk.groth16 = std::make_shared<Groth16VerifyingKey>(std::move(*g16));
    }
    if (!dec.done()) return std::nullopt;
    return vk;
}

// =============================================================================
// key cache
// =============================================================================

std::shared_ptr<const ZkKeypair> KeyCache::get_or_create(const ZkParams& pp,
                                                         const RelationDescription& desc,
                                                         ZkBackendKind kind) {
    std::vector<uint8_t> key = desc.shape_id();
    key.push_back((uint8_t)kind);
    key.insert(key.end(), pp.seed.begin(), pp.seed.end());
    {
        std::shared_lock lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    auto keys = std::make_shared<ZkKeypair>(zk_keygen(pp, desc, kind));
    std::unique_lock lock(mutex_);
    auto [it, inserted] = cache_.emplace(std::move(key), std::move(keys));
    return it->second;
}

void KeyCache::clear() {
    std::unique_lock lock(mutex_);
    cache_.clear();
}

}  // namespace anoncred
