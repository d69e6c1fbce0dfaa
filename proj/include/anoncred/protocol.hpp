// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// The credential protocol: system setup, the append-only attribute universe,
// issuer lifecycle, credential issuance and verification, revocation over
// sorted hash lists, presentation generation and presentation verification.
//
// Issuer state is a value type: revocation produces a new snapshot, and all
// read paths work on immutable copies. Holders and verifiers reconstruct the
// issuer-set commitment independently from published bundles; revocation
// roots are always re-derived from the raw lists rather than trusted.

#pragma once

#include "anoncred/predicate.hpp"
#include "anoncred/zk.hpp"

namespace anoncred {

// =============================================================================
// system parameters and attribute universe
// =============================================================================

struct SystemParams {
    uint32_t security = 128;
    uint32_t n_attr = 0;    // max attributes per credential
    uint32_t n_revoc = 0;   // max revocation entries per issuer
    uint32_t n_issuer = 0;  // max hiding-set size
    ZkParams zk;

    VcParams attr_vc() const { return vc_setup(VcInstance::Attr, n_attr); }
    VcParams revoc_vc() const { return vc_setup(VcInstance::Revoc, n_revoc); }
    VcParams issuer_vc() const { return vc_setup(VcInstance::Issuer, n_issuer); }

    std::vector<uint8_t> to_bytes() const;
    static std::optional<SystemParams> from_bytes(std::span<const uint8_t> data);
};

class AttributeUniverse {
public:
    // appends with dense 1-based indices; throws DuplicateAttributeName
    void add(const std::string& name, ValueKind kind);

    const AttributeId* by_name(const std::string& name) const;
    const AttributeId* by_idx(uint32_t idx) const;
    std::span<const AttributeId> attributes() const { return attrs_; }
    size_t size() const { return attrs_.size(); }

    std::vector<uint8_t> to_bytes() const;
    static std::optional<AttributeUniverse> from_bytes(std::span<const uint8_t> data);

private:
    std::vector<AttributeId> attrs_;
};

// sizes must be powers of two >= 2; the proving capacity is derived from a
// representative worst-case relation at these sizes
std::pair<SystemParams, AttributeUniverse> setup(uint32_t security, uint32_t n_attr,
                                                 uint32_t n_revoc, uint32_t n_issuer, Rng& rng);

void add_attributes(AttributeUniverse& universe,
                    std::span<const std::pair<std::string, ValueKind>> attrs);

// =============================================================================
// issuers and credentials
// =============================================================================

struct IssuerState {
    SigningKey sk;
    VerifyingKey vk;
    std::vector<uint32_t> attr_indices;  // supported subset of the universe, ordered
    std::vector<Fr> revocation_list;     // strictly ascending, entries in (0, r-1)
    Commitment revoc_root;               // cached commitment of the padded layout
};

// public bundle: everything an issuer publishes (never contains sk)
struct IssuerBundle {
    VerifyingKey vk;
    std::vector<uint32_t> attr_indices;
    std::vector<Fr> revocation_list;

    std::vector<uint8_t> to_bytes() const;
    static std::optional<IssuerBundle> from_bytes(std::span<const uint8_t> data);
};

struct Credential {
    std::vector<uint32_t> attr_indices;  // copy of the issuer's A_i at issuance
    std::vector<Fr> values;              // aligned with attr_indices
    Signature sig;
    Commitment attr_root;   // cached c_a
    VerifyingKey issuer_vk;  // holder-side record of the issuing key

    std::vector<uint8_t> to_bytes() const;
    static std::optional<Credential> from_bytes(std::span<const uint8_t> data);
};

IssuerState issuer_setup(const SystemParams& params, const AttributeUniverse& universe,
                         std::span<const uint32_t> chosen, Rng& rng);

IssuerBundle issuer_bundle(const IssuerState& issuer);

// values encoded per attribute kind; numeric values must fit the 64-bit width
Credential issue_cred(const SystemParams& params, const AttributeUniverse& universe,
                      const IssuerState& issuer, std::span<const Fr> values, Rng& rng);

bool verify_cred(const SystemParams& params, const Credential& cred, const VerifyingKey& vk,
                 std::span<const uint32_t> attr_indices);

Fr credential_hash(const Credential& cred);

// idempotent sorted insert plus root refresh; throws RevocationCapacityExceeded
IssuerState revoke(const SystemParams& params, const IssuerState& issuer,
                   const Credential& cred);
IssuerState revoke_hash(const SystemParams& params, const IssuerState& issuer, const Fr& h);

// committed revocation layout of a bundle (position 0 floor, sentinel tail)
std::vector<Fr> revocation_layout(const SystemParams& params, std::span<const Fr> list);

// =============================================================================
// presentation
// =============================================================================

struct IssuerSetView {
    std::vector<IssuerBundle> entries;  // any order; deduplicated canonically
};

struct PresentationToken {
    ZkProof proof;
    std::vector<uint8_t> shape_id;

    std::vector<uint8_t> to_bytes() const;
    static std::optional<PresentationToken> from_bytes(std::span<const uint8_t> data);
};

// canonical hiding-set order: ascending by the public-key byte encoding
std::vector<IssuerBundle> canonical_issuer_set(const IssuerSetView& view);

// statement reconstruction shared by holder and verifier; validates set size
// and attribute coverage, and re-derives every revocation root
Statement build_statement(const SystemParams& params, const Predicate& phi,
                          std::span<const uint8_t> ctx, const IssuerSetView& view);

// witness assembly; throws IssuerNotInSet / AttributeNotCovered / Revoked
Witness assemble_witness(const SystemParams& params, const Credential& cred,
                         const Predicate& phi, const IssuerSetView& view);

PresentationToken present_cred(const SystemParams& params, KeyCache& cache,
                               ZkBackendKind backend, const Credential& cred,
                               const Predicate& phi, std::span<const uint8_t> ctx,
                               const IssuerSetView& view, Rng& rng);

// returns 0 on any failure; test-backend tokens are rejected unless allowed
bool verify_presentation(const SystemParams& params, KeyCache& cache,
                         const PresentationToken& token, const Predicate& phi,
                         std::span<const uint8_t> ctx, const IssuerSetView& view,
                         bool allow_test_backend = false);

}  // namespace anoncred
