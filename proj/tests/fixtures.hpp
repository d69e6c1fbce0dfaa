// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// Hand-built protocol instances for the relation and proving-system tests.
// Construction here is deliberately independent of the protocol module: trees,
// layouts and witnesses are assembled from the primitives directly.

#pragma once

#include <map>
#include <vector>

#include "anoncred/relation.hpp"
#include "anoncred/rng.hpp"

namespace anoncred::testfix {

struct TestIssuer {
    SigningKey sk;
    VerifyingKey vk;
    std::vector<Fr> revoc_layout;  // [0, sorted hashes..., sentinel...]
    Commitment c_r;
};

struct TestWorld {
    uint32_t n = 8;  // shared capacity for all three trees
    RelationDescription desc;
    Statement stmt;
    Witness wit;

    // issuer-set internals, kept for re-deriving after revocations
    std::vector<TestIssuer> issuers;
    size_t credential_issuer = 0;
    Commitment attr_root;
    Signature sig;
    std::vector<Fr> attr_leaves;
};

inline TestIssuer make_issuer(Rng& rng, uint32_t n) {
    TestIssuer is;
    std::tie(is.sk, is.vk) = sig_keygen(rng);
    is.revoc_layout = list_layout({}, n);
    is.c_r = vc_commit(vc_setup(VcInstance::Revoc, n), is.revoc_layout);
    return is;
}

inline Commitment issuer_set_root(const std::vector<TestIssuer>& issuers, uint32_t n) {
    std::vector<Fr> leaves;
    for (const auto& is : issuers) leaves.push_back(vc_leaf_issuer(is.vk.pk, is.c_r.root));
    return vc_commit(vc_setup(VcInstance::Issuer, n), leaves);
}

inline void revoke_in(TestIssuer& is, const Fr& h, uint32_t n) {
    std::vector<Fr> entries;
    for (const Fr& e : is.revoc_layout) {
        if (!e.is_zero() && e != -Fr::one()) entries.push_back(e);
    }
    entries.push_back(h);
    std::sort(entries.begin(), entries.end(),
              [](const Fr& a, const Fr& b) { return a.cmp(b) < 0; });
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
    is.revoc_layout = list_layout(entries, n);
    is.c_r = vc_commit(vc_setup(VcInstance::Revoc, n), is.revoc_layout);
}

// credential over attributes {1:age, 2:country-ish, 3:score} under issuer 0 of 3,
// with predicate "attr1 > 18" by default
inline TestWorld make_world(Rng& rng, std::map<uint32_t, Fr> values = {},
                            Predicate phi = {}) {
    TestWorld w;
    if (values.empty())
        values = {{1, Fr::from_u64(25)}, {2, Fr::from_u64(77)}, {3, Fr::from_u64(7)}};
    if (phi.clauses.empty())
        phi.clauses.push_back(CompareClause{1, CmpOp::Gt, Fr::from_u64(18), true});

    w.desc = RelationDescription::make(phi, w.n, w.n, w.n);

    for (int i = 0; i < 3; ++i) w.issuers.push_back(make_issuer(rng, w.n));
    w.credential_issuer = 1;

    // attribute tree: pairs in ascending idx order, placeholder padding
    std::map<uint32_t, uint32_t> position_of;
    uint32_t pos = 0;
    for (const auto& [idx, value] : values) {
        w.attr_leaves.push_back(vc_leaf_attr(Fr::from_u64(idx), value));
        position_of[idx] = pos++;
    }
    w.attr_leaves.resize(w.n, vc_leaf_attr(Fr::zero(), Fr::zero()));

    auto attr_params = vc_setup(VcInstance::Attr, w.n);
    MerkleTree attr_tree(attr_params, w.attr_leaves);
    w.attr_root = attr_tree.commitment();
    w.sig = sig_sign(w.issuers[w.credential_issuer].sk, w.attr_root.root, rng);

    w.stmt.phi = std::move(phi);
    w.stmt.issuer_set_root = issuer_set_root(w.issuers, w.n);
    w.stmt.ctx = {0xde, 0xad, 0xbe, 0xef};

    // witness assembly by hand
    w.wit.attr_root = w.attr_root;
    w.wit.sig = w.sig;
    w.wit.issuer_pk = w.issuers[w.credential_issuer].vk;
    w.wit.revoc_root = w.issuers[w.credential_issuer].c_r;
    w.wit.issuer_position = (uint32_t)w.credential_issuer;
    {
        std::vector<Fr> leaves;
        for (const auto& is : w.issuers) leaves.push_back(vc_leaf_issuer(is.vk.pk, is.c_r.root));
        MerkleTree set_tree(vc_setup(VcInstance::Issuer, w.n), leaves);
        w.wit.issuer_proof = set_tree.open((uint32_t)w.credential_issuer);
    }
    for (uint32_t idx : pred_slot_indices(w.stmt.phi)) {
        WitnessAttr a;
        a.position = position_of.at(idx);
        a.idx = Fr::from_u64(idx);
        a.value = values.at(idx);
        a.proof = attr_tree.open(a.position);
        w.wit.attrs.push_back(std::move(a));
    }
    // list gaps for any NotInList clause
    for (const auto& clause : w.stmt.phi.clauses) {
        const auto* nil = std::get_if<NotInListClause>(&clause);
        if (!nil) continue;
        auto layout = list_layout(nil->list, nil->capacity);
        auto gap = find_gap(layout, values.at(nil->idx));
        WitnessGap wg;
        if (gap) {
            MerkleTree tree(vc_setup(VcInstance::Revoc, nil->capacity), layout);
            wg.left_position = gap->left_position;
            wg.left = gap->left;
            wg.right = gap->right;
            wg.left_proof = tree.open(gap->left_position);
            wg.right_proof = tree.open(gap->left_position + 1);
        }
        w.wit.list_gaps.push_back(std::move(wg));
    }
    // revocation gap
    const auto& layout = w.issuers[w.credential_issuer].revoc_layout;
    Fr h = credential_hash_parts(w.attr_root.root, w.sig);
    if (auto gap = find_gap(layout, h)) {
        MerkleTree tree(vc_setup(VcInstance::Revoc, w.n), layout);
        w.wit.gap.left_position = gap->left_position;
        w.wit.gap.left = gap->left;
        w.wit.gap.right = gap->right;
        w.wit.gap.left_proof = tree.open(gap->left_position);
        w.wit.gap.right_proof = tree.open(gap->left_position + 1);
    }
    return w;
}

// refresh the statement and issuer-side witness pieces after revocations
inline void refresh_world(TestWorld& w) {
    w.stmt.issuer_set_root = issuer_set_root(w.issuers, w.n);
    w.wit.revoc_root = w.issuers[w.credential_issuer].c_r;
    std::vector<Fr> leaves;
    for (const auto& is : w.issuers) leaves.push_back(vc_leaf_issuer(is.vk.pk, is.c_r.root));
    MerkleTree set_tree(vc_setup(VcInstance::Issuer, w.n), leaves);
    w.wit.issuer_proof = set_tree.open((uint32_t)w.credential_issuer);
    const auto& layout = w.issuers[w.credential_issuer].revoc_layout;
    Fr h = credential_hash_parts(w.attr_root.root, w.sig);
    w.wit.gap = WitnessGap{};
    if (auto gap = find_gap(layout, h)) {
        MerkleTree tree(vc_setup(VcInstance::Revoc, w.n), layout);
        w.wit.gap.left_position = gap->left_position;
        w.wit.gap.left = gap->left;
        w.wit.gap.right = gap->right;
        w.wit.gap.left_proof = tree.open(gap->left_position);
        w.wit.gap.right_proof = tree.open(gap->left_position + 1);
    }
}

}  // namespace anoncred::testfix
