// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#include "anoncred/protocol.hpp"

#include <algorithm>
#include <mutex>

#include "anoncred/encoding.hpp"
#include "anoncred/errors.hpp"

namespace anoncred {

namespace {

bool is_pow2_ge2(uint32_t n) { return n >= 2 && (n & (n - 1)) == 0; }

const Fr& sentinel() {
    static const Fr s = -Fr::one();
    return s;
}

// representative worst-case relation for capacity planning: an ordered
// comparison, a small membership set, and a committed-list check at the
// revocation size, over three distinct slots
Predicate capacity_predicate(uint32_t n_revoc) {
    Predicate phi;
    phi.clauses.push_back(CompareClause{1, CmpOp::Gt, Fr::zero(), true});
    MemberClause m{2, {}};
    for (int i = 0; i < 4; ++i) m.members.push_back(Fr::from_u64(i));
    phi.clauses.push_back(m);
    phi.clauses.push_back(NotInListClause{3, {}, n_revoc});
    return phi;
}

uint32_t next_pow2_u32(uint64_t v) {
    uint32_t p = 2;
    while (p < v) p <<= 1;
    return p;
}

}  // namespace

// =============================================================================
// setup and universe
// =============================================================================

std::pair<SystemParams, AttributeUniverse> setup(uint32_t security, uint32_t n_attr,
                                                 uint32_t n_revoc, uint32_t n_issuer, Rng& rng) {
    if (!is_pow2_ge2(n_attr) || !is_pow2_ge2(n_revoc) || !is_pow2_ge2(n_issuer))
        fail(Err::InvalidInput, "setup: sizes must be powers of two, at least 2");
    SystemParams params;
    params.security = security;
    params.n_attr = n_attr;
    params.n_revoc = n_revoc;
    params.n_issuer = n_issuer;

    auto rep = RelationDescription::make(capacity_predicate(n_revoc), n_attr, n_revoc, n_issuer);
    size_t rep_count = relation_constraint_count(rep);
    uint32_t capacity = next_pow2_u32(rep_count * 2);  // headroom for richer predicates
    params.zk = zk_setup(security, capacity, rng);
    return {std::move(params), AttributeUniverse{}};
}

void AttributeUniverse::add(const std::string& name, ValueKind kind) {
    if (name.empty()) fail(Err::InvalidInput, "attribute name must not be empty");
    if (by_name(name)) fail(Err::DuplicateAttributeName, "attribute already exists: " + name);
    AttributeId attr;
    attr.idx = (uint32_t)attrs_.size() + 1;  // dense, 1-based, never reused
    attr.name = name;
    attr.kind = kind;
    attrs_.push_back(std::move(attr));
}

const AttributeId* AttributeUniverse::by_name(const std::string& name) const {
    for (const auto& a : attrs_)
        if (a.name == name) return &a;
    return nullptr;
}

const AttributeId* AttributeUniverse::by_idx(uint32_t idx) const {
    if (idx == 0 || idx > attrs_.size()) return nullptr;
    return &attrs_[idx - 1];
}

void add_attributes(AttributeUniverse& universe,
                    std::span<const std::pair<std::string, ValueKind>> attrs) {
    for (const auto& [name, kind] : attrs) universe.add(name, kind);
}

// =============================================================================
// issuers
// =============================================================================

IssuerState issuer_setup(const SystemParams& params, const AttributeUniverse& universe,
                         std::span<const uint32_t> chosen, Rng& rng) {
    if (chosen.size() > params.n_attr)
        fail(Err::TooManyAttributes, "issuer subset exceeds the per-credential capacity");
    IssuerState issuer;
    for (uint32_t idx : chosen) {
        if (!universe.by_idx(idx))
            fail(Err::InvalidInput, "unknown attribute index " + std::to_string(idx));
        if (std::count(issuer.attr_indices.begin(), issuer.attr_indices.end(), idx))
            fail(Err::DuplicateAttributeName, "duplicate attribute in issuer subset");
        issuer.attr_indices.push_back(idx);
    }
    std::tie(issuer.sk, issuer.vk) = sig_keygen(rng);
    issuer.revoc_root =
        vc_commit(params.revoc_vc(), revocation_layout(params, issuer.revocation_list));
    return issuer;
}

IssuerBundle issuer_bundle(const IssuerState& issuer) {
    return {issuer.vk, issuer.attr_indices, issuer.revocation_list};
}

std::vector<Fr> revocation_layout(const SystemParams& params, std::span<const Fr> list) {
    return list_layout(list, params.n_revoc);
}

// =============================================================================
// credentials
// =============================================================================

namespace {

// leaves of the padded attribute vector: (idx, value) pairs, then (0, 0)
std::vector<Fr> attr_leaves(const SystemParams& params, std::span<const uint32_t> indices,
                            std::span<const Fr> values) {
    std::vector<Fr> leaves;
    leaves.reserve(params.n_attr);
    for (size_t i = 0; i < indices.size(); ++i)
        leaves.push_back(vc_leaf_attr(Fr::from_u64(indices[i]), values[i]));
    leaves.resize(params.n_attr, vc_leaf_attr(Fr::zero(), Fr::zero()));
    return leaves;
}

const U256 kNumericBound{0, 1, 0, 0};  // 2^64

}  // namespace

Credential issue_cred(const SystemParams& params, const AttributeUniverse& universe,
                      const IssuerState& issuer, std::span<const Fr> values, Rng& rng) {
    if (values.size() != issuer.attr_indices.size())
        fail(Err::LengthMismatch, "value count does not match the issuer's attribute set");
    for (size_t i = 0; i < values.size(); ++i) {
        const AttributeId* attr = universe.by_idx(issuer.attr_indices[i]);
        if (!attr) fail(Err::InvalidInput, "issuer references an unknown attribute");
        if (attr->kind == ValueKind::Numeric && !(values[i].to_u256() < kNumericBound))
            fail(Err::ValueOutOfRange, "numeric value exceeds the declared bit width: " +
                                           attr->name);
    }
    Credential cred;
    cred.attr_indices.assign(issuer.attr_indices.begin(), issuer.attr_indices.end());
    cred.values.assign(values.begin(), values.end());
    cred.attr_root =
        vc_commit(params.attr_vc(), attr_leaves(params, cred.attr_indices, cred.values));
    cred.sig = sig_sign(issuer.sk, cred.attr_root.root, rng);
    cred.issuer_vk = issuer.vk;
    return cred;
}

bool verify_cred(const SystemParams& params, const Credential& cred, const VerifyingKey& vk,
                 std::span<const uint32_t> attr_indices) {
    if (cred.values.size() != attr_indices.size()) return false;
    if (attr_indices.size() > params.n_attr) return false;
    Commitment root = vc_commit(params.attr_vc(), attr_leaves(params, attr_indices, cred.values));
    return sig_verify(vk, root.root, cred.sig);
}

Fr credential_hash(const Credential& cred) {
    return credential_hash_parts(cred.attr_root.root, cred.sig);
}

IssuerState revoke_hash(const SystemParams& params, const IssuerState& issuer, const Fr& h) {
    if (h.is_zero() || h == sentinel())
        fail(Err::InvalidInput, "revocation entries must lie strictly inside (0, r-1)");
    IssuerState next = issuer;
    auto& list = next.revocation_list;
    auto it = std::lower_bound(list.begin(), list.end(), h,
                               [](const Fr& a, const Fr& b) { return a.cmp(b) < 0; });
    if (it != list.end() && *it == h) return next;  // idempotent
    // the layout always needs its position-0 floor and at least one sentinel
    if (list.size() >= (size_t)params.n_revoc - 2)
        fail(Err::RevocationCapacityExceeded, "revocation list is full");
    list.insert(it, h);
    next.revoc_root = vc_commit(params.revoc_vc(), revocation_layout(params, list));
    return next;
}

IssuerState revoke(const SystemParams& params, const IssuerState& issuer,
                   const Credential& cred) {
    return revoke_hash(params, issuer, credential_hash(cred));
}

// =============================================================================
// presentation
// =============================================================================

std::vector<IssuerBundle> canonical_issuer_set(const IssuerSetView& view) {
    std::vector<IssuerBundle> entries(view.entries.begin(), view.entries.end());
    std::sort(entries.begin(), entries.end(), [](const IssuerBundle& a, const IssuerBundle& b) {
        return vk_to_bytes(a.vk) < vk_to_bytes(b.vk);
    });
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const IssuerBundle& a, const IssuerBundle& b) {
                                  return vk_to_bytes(a.vk) == vk_to_bytes(b.vk);
                              }),
                  entries.end());
    return entries;
}

namespace {

struct SetData {
    std::vector<IssuerBundle> entries;  // canonical order
    std::vector<Fr> revoc_roots;        // re-derived per entry
    std::vector<Fr> leaves;
    Commitment root;
};

// memoized layout commitments: re-deriving a root is linear in n_revoc, and
// hiding sets repeat identical lists (most prominently the empty layout)
Fr layout_root_cached(const SystemParams& params, std::span<const Fr> list) {
    static std::mutex mtx;
    static std::map<std::vector<uint8_t>, Fr> cache;
    Encoder key_enc;
    key_enc.u32(params.n_revoc);
    for (const Fr& h : list) key_enc.field(h);
    std::vector<uint8_t> key = key_enc.take();
    {
        std::lock_guard lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Fr root = vc_commit(params.revoc_vc(), revocation_layout(params, list)).root;
    std::lock_guard lock(mtx);
    cache.emplace(std::move(key), root);
    return root;
}

SetData reconstruct_set(const SystemParams& params, const Predicate& phi,
                        const IssuerSetView& view) {
    SetData data;
    data.entries = canonical_issuer_set(view);
    if (data.entries.empty()) fail(Err::InvalidInput, "hiding set is empty");
    if (data.entries.size() > params.n_issuer)
        fail(Err::HidingSetTooLarge, "hiding set exceeds the committed capacity");

    auto required = pred_required_attrs(phi);
    for (const auto& entry : data.entries) {
        for (uint32_t idx : required) {
            if (!std::count(entry.attr_indices.begin(), entry.attr_indices.end(), idx))
                fail(Err::AttributeNotCovered,
                     "an issuer in the hiding set does not support attribute index " +
                         std::to_string(idx));
        }
    }
    for (const auto& entry : data.entries) {
        // never trust published roots: re-derive from the raw list
        Fr root = layout_root_cached(params, entry.revocation_list);
        data.revoc_roots.push_back(root);
        data.leaves.push_back(vc_leaf_issuer(entry.vk.pk, root));
    }
    data.root = vc_commit(params.issuer_vc(), data.leaves);
    return data;
}

}  // namespace

Statement build_statement(const SystemParams& params, const Predicate& phi,
                          std::span<const uint8_t> ctx, const IssuerSetView& view) {
    Statement stmt;
    stmt.phi = phi;
    stmt.issuer_set_root = reconstruct_set(params, phi, view).root;
    stmt.ctx.assign(ctx.begin(), ctx.end());
    return stmt;
}

Witness assemble_witness(const SystemParams& params, const Credential& cred,
                         const Predicate& phi, const IssuerSetView& view) {
    SetData set = reconstruct_set(params, phi, view);

    // locate the credential's issuer in the canonical order
    auto issuer_key = vk_to_bytes(cred.issuer_vk);
    size_t issuer_pos = set.entries.size();
    for (size_t i = 0; i < set.entries.size(); ++i) {
        if (vk_to_bytes(set.entries[i].vk) == issuer_key) {
            issuer_pos = i;
            break;
        }
    }
    if (issuer_pos == set.entries.size())
        fail(Err::IssuerNotInSet, "credential's issuer is not part of the hiding set");
    const IssuerBundle& issuer = set.entries[issuer_pos];

    Witness w;
    w.attr_root = cred.attr_root;
    w.sig = cred.sig;
    w.issuer_pk = issuer.vk;
    w.revoc_root = {set.revoc_roots[issuer_pos]};
    w.issuer_position = (uint32_t)issuer_pos;
    {
        MerkleTree set_tree(params.issuer_vc(), set.leaves);
        w.issuer_proof = set_tree.open((uint32_t)issuer_pos);
    }

    MerkleTree attr_tree(params.attr_vc(),
                         attr_leaves(params, cred.attr_indices, cred.values));
    std::map<uint32_t, Fr> assignment;
    for (uint32_t idx : pred_slot_indices(phi)) {
        auto it = std::find(cred.attr_indices.begin(), cred.attr_indices.end(), idx);
        if (it == cred.attr_indices.end())
            fail(Err::AttributeNotCovered,
                 "credential does not carry attribute index " + std::to_string(idx));
        WitnessAttr a;
        a.position = (uint32_t)(it - cred.attr_indices.begin());
        a.idx = Fr::from_u64(idx);
        a.value = cred.values[a.position];
        a.proof = attr_tree.open(a.position);
        assignment[idx] = a.value;
        w.attrs.push_back(std::move(a));
    }

    // committed-list gaps for NotInList clauses
    for (const auto& clause : phi.clauses) {
        const auto* nil = std::get_if<NotInListClause>(&clause);
        if (!nil) continue;
        auto layout = list_layout(nil->list, nil->capacity);
        auto gap = find_gap(layout, assignment.at(nil->idx));
        WitnessGap wg;
        if (gap) {
            MerkleTree tree(vc_setup(VcInstance::Revoc, nil->capacity), layout);
            wg.left_position = gap->left_position;
            wg.left = gap->left;
            wg.right = gap->right;
            wg.left_proof = tree.open(gap->left_position);
            wg.right_proof = tree.open(gap->left_position + 1);
        }
        // a missing gap means the predicate itself fails; leave the zero gap
        // in place so the failure surfaces as UnsatisfiedWitness at proving
        w.list_gaps.push_back(std::move(wg));
    }

    // revocation gap under the issuer's current list
    auto layout = revocation_layout(params, issuer.revocation_list);
    Fr h = credential_hash(cred);
    auto gap = find_gap(layout, h);
    if (!gap) fail(Err::Revoked, "credential hash appears in the issuer's revocation list");
    MerkleTree revoc_tree(params.revoc_vc(), layout);
    w.gap.left_position = gap->left_position;
    w.gap.left = gap->left;
    w.gap.right = gap->right;
    w.gap.left_proof = revoc_tree.open(gap->left_position);
    w.gap.right_proof = revoc_tree.open(gap->left_position + 1);
    return w;
}

PresentationToken present_cred(const SystemParams& params, KeyCache& cache,
                               ZkBackendKind backend, const Credential& cred,
                               const Predicate& phi, std::span<const uint8_t> ctx,
                               const IssuerSetView& view, Rng& rng) {
    Statement stmt = build_statement(params, phi, ctx, view);
    Witness w = assemble_witness(params, cred, phi, view);
    auto desc = RelationDescription::make(phi, params.n_attr, params.n_revoc, params.n_issuer);
    auto keys = cache.get_or_create(params.zk, desc, backend);

    PresentationToken token;
    token.proof = zk_prove(keys->pk, stmt, w, rng);
    token.shape_id = desc.shape_id();
    return token;
}

bool verify_presentation(const SystemParams& params, KeyCache& cache,
                         const PresentationToken& token, const Predicate& phi,
                         std::span<const uint8_t> ctx, const IssuerSetView& view,
                         bool allow_test_backend) {
    try {
        if (token.proof.kind == ZkBackendKind::Test && !allow_test_backend) return false;
        auto desc =
            RelationDescription::make(phi, params.n_attr, params.n_revoc, params.n_issuer);
        if (token.shape_id != desc.shape_id()) return false;
        Statement stmt = build_statement(params, phi, ctx, view);
        auto keys = cache.get_or_create(params.zk, desc, token.proof.kind);
        return zk_verify(keys->vk, stmt, token.proof);
    } catch (const std::exception&) {
        return false;
    }
}

// =============================================================================
// serialization
// =============================================================================

std::vector<uint8_t> SystemParams::to_bytes() const {
    Encoder enc;
    enc.u8(1);  // format version
    enc.u32(security);
    enc.u32(n_attr);
    enc.u32(n_revoc);
    enc.u32(n_issuer);
    enc.bytes(zk.to_bytes());
    return enc.take();
}

std::optional<SystemParams> SystemParams::from_bytes(std::span<const uint8_t> data) {
    Decoder dec(data);
    auto ver = dec.u8();
    if (!ver || *ver != 1) return std::nullopt;
    SystemParams p;
    auto sec = dec.u32();
    auto na = dec.u32();
    auto nr = dec.u32();
    auto ni = dec.u32();
    auto zkb = dec.bytes();
    if (!sec || !na || !nr || !ni || !zkb || !dec.done()) return std::nullopt;
    auto zk = ZkParams::from_bytes(*zkb);
    if (!zk) return std::nullopt;
    p.security = *sec;
    p.n_attr = *na;
    p.n_revoc = *nr;
    p.n_issuer = *ni;
    p.zk = *zk;
    return p;
}

std::vector<uint8_t> AttributeUniverse::to_bytes() const {
    Encoder enc;
    enc.u8(1);
    enc.u32((uint32_t)attrs_.size());
    for (const auto& a : attrs_) {
        enc.u8(a.kind == ValueKind::Numeric ? 0 : 1);
        enc.bytes({reinterpret_cast<const uint8_t*>(a.name.data()), a.name.size()});
    }
    return enc.take();
}

std::optional<AttributeUniverse> AttributeUniverse::from_bytes(std::span<const uint8_t> data) {
    Decoder dec(data);
    auto ver = dec.u8();
    if (!ver || *ver != 1) return std::nullopt;
    auto count = dec.u32();
    if (!count) return std::nullopt;
    AttributeUniverse u;
    for (uint32_t i = 0; i < *count; ++i) {
        auto kind = dec.u8();
        auto name = dec.bytes();
        if (!kind || !name) return std::nullopt;
        AttributeId attr;
        attr.idx = i + 1;
        attr.kind = *kind == 0 ? ValueKind::Numeric : ValueKind::Categorical;
        attr.name.assign(name->begin(), name->end());
        u.attrs_.push_back(std::move(attr));
    }
    if (!dec.done()) return std::nullopt;
    return u;
}

std::vector<uint8_t> IssuerBundle::to_bytes() const {
    Encoder enc;
    enc.u8(1);
    enc.append(vk_to_bytes(vk));
    enc.u32((uint32_t)attr_indices.size());
    for (uint32_t idx : attr_indices) enc.u32(idx);
    enc.u32((uint32_t)revocation_list.size());
    for (const Fr& h : revocation_list) enc.field(h);
    return enc.take();
}

std::optional<IssuerBundle> IssuerBundle::from_bytes(std::span<const uint8_t> data) {
    Decoder dec(data);
    auto ver = dec.u8();
    if (!ver || *ver != 1) return std::nullopt;
    auto vkb = dec.take(64);
    if (!vkb) return std::nullopt;
    auto vk = vk_from_bytes(*vkb);
    if (!vk) return std::nullopt;
    IssuerBundle b;
    b.vk = *vk;
    auto n_attrs = dec.u32();
    if (!n_attrs) return std::nullopt;
    for (uint32_t i = 0; i < *n_attrs; ++i) {
        auto idx = dec.u32();
        if (!idx) return std::nullopt;
        b.attr_indices.push_back(*idx);
    }
    auto n_revoc = dec.u32();
    if (!n_revoc) return std::nullopt;
    Fr prev = Fr::zero();
    for (uint32_t i = 0; i < *n_revoc; ++i) {
        auto h = dec.field();
        if (!h) return std::nullopt;
        if (h->cmp(prev) <= 0) return std::nullopt;  // must be strictly ascending
        b.revocation_list.push_back(*h);
        prev = *h;
    }
    if (!dec.done()) return std::nullopt;
    return b;
}

std::vector<uint8_t> Credential::to_bytes() const {
    Encoder enc;
    enc.u8(1);
    enc.u32((uint32_t)attr_indices.size());
    for (size_t i = 0; i < attr_indices.size(); ++i) {
        enc.u32(attr_indices[i]);
        enc.field(values[i]);
    }
    enc.append(sig_to_bytes(sig));
    enc.field(attr_root.root);
    enc.append(vk_to_bytes(issuer_vk));
    return enc.take();
}

std::optional<Credential> Credential::from_bytes(std::span<const uint8_t> data) {
    Decoder dec(data);
    auto ver = dec.u8();
    if (!ver || *ver != 1) return std::nullopt;
    auto count = dec.u32();
    if (!count) return std::nullopt;
    Credential c;
    for (uint32_t i = 0; i < *count; ++i) {
        auto idx = dec.u32();
        auto value = dec.field();
        if (!idx || !value) return std::nullopt;
        c.attr_indices.push_back(*idx);
        c.values.push_back(*value);
    }
    auto sigb = dec.take(96);
    if (!sigb) return std::nullopt;
    auto sig = sig_from_bytes(*sigb);
    if (!sig) return std::nullopt;
    c.sig = *sig;
    auto root = dec.field();
    if (!root) return std::nullopt;
    c.attr_root.root = *root;
    auto vkb = dec.take(64);
    if (!vkb) return std::nullopt;
    auto ivk = vk_from_bytes(*vkb);
    if (!ivk || !dec.done()) return std::nullopt;
    c.issuer_vk = *ivk;
    return c;
}

std::vector<uint8_t> PresentationToken::to_bytes() const {
    Encoder enc;
    enc.u8(1);
    enc.bytes(shape_id);
    enc.bytes(proof.to_bytes());
    return enc.take();
}

std::optional<PresentationToken> PresentationToken::from_bytes(std::span<const uint8_t> data) {
    Decoder dec(data);
    auto ver = dec.u8();
    if (!ver || *ver != 1) return std::nullopt;
    auto shape = dec.bytes();
    if (!shape) return std::nullopt;
    auto proof_bytes = dec.bytes();
    if (!proof_bytes) return std::nullopt;
    auto proof = ZkProof::from_bytes(*proof_bytes);
    if (!proof || !dec.done()) return std::nullopt;
    PresentationToken t;
    t.shape_id.assign(shape->begin(), shape->end());
    t.proof = std::move(*proof);
    return t;
}

}  // namespace anoncred
