// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// Merkle-tree vector commitment over Fr, instantiated three times with
// distinct node-combiner domain tags:
//
//   Attr   — per-credential attribute vectors, leaves hash2(idx, value)
//   Revoc  — sorted revocation layouts, leaves are the hash values themselves
//   Issuer — hiding sets, leaves hash2(pk_digest, revocation_root)
//
// Trees are always full power-of-two; short vectors are padded with the zero
// leaf. Openings are plain authentication paths of `depth` siblings.

#pragma once

#include <span>
#include <vector>

#include "anoncred/field.hpp"
#include "anoncred/grumpkin.hpp"
#include "anoncred/poseidon.hpp"

namespace anoncred {

enum class VcInstance : uint8_t { Attr, Revoc, Issuer };

uint64_t vc_node_tag(VcInstance inst);

struct VcParams {
    VcInstance instance = VcInstance::Attr;
    uint32_t n = 0;      // capacity, power of two
    uint32_t depth = 0;  // log2(n)

    bool operator==(const VcParams& o) const {
        return instance == o.instance && n == o.n && depth == o.depth;
    }
};

// rounds the requested length up to the next power of two (minimum 2)
VcParams vc_setup(VcInstance inst, uint64_t n);

struct Commitment {
    Fr root;

    bool operator==(const Commitment& o) const { return root == o.root; }
    bool operator!=(const Commitment& o) const { return !(root == o.root); }
};

struct OpeningProof {
    uint32_t index = 0;
    std::vector<Fr> siblings;  // leaf level first
};

// full tree kept in memory; used when several openings of one vector are needed
class MerkleTree {
public:
    MerkleTree(const VcParams& params, std::span<const Fr> leaves);

    const VcParams& params() const { return params_; }
    Commitment commitment() const { return {levels_.back()[0]}; }
    OpeningProof open(uint32_t index) const;

private:
    VcParams params_;
    std::vector<std::vector<Fr>> levels_;  // levels_[0] = padded leaves
};

Commitment vc_commit(const VcParams& params, std::span<const Fr> leaves);
OpeningProof vc_open(const VcParams& params, std::span<const Fr> leaves, uint32_t index);
bool vc_verify(const VcParams& params, const Commitment& c, uint32_t index, const Fr& leaf,
               const OpeningProof& proof);

// ---- per-instance leaf encoders ----

// attribute leaf: pair (idx, value), placeholder slots are (0, 0)
inline Fr vc_leaf_attr(const Fr& idx, const Fr& value) { return hash2(idx, value); }

// issuer-set leaf: (pk, revocation root)
Fr vc_pk_digest(const GrumpkinAffine& pk);
inline Fr vc_leaf_issuer(const GrumpkinAffine& pk, const Fr& revoc_root) {
    return hash2(vc_pk_digest(pk), revoc_root);
}

// revocation leaf: the credential hash itself
inline Fr vc_leaf_revoc(const Fr& h) { return h; }

}  // namespace anoncred
