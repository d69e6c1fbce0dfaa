// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#include "anoncred/merkle.hpp"

#include <stdexcept>

namespace anoncred {

uint64_t vc_node_tag(VcInstance inst) {
    switch (inst) {
        case VcInstance::Attr: return dom::NODE_ATTR;
        case VcInstance::Revoc: return dom::NODE_REVOC;
        case VcInstance::Issuer: return dom::NODE_ISSUER;
    }
    return dom::NODE_ATTR;
}

VcParams vc_setup(VcInstance inst, uint64_t n) {
    if (n == 0) throw std::invalid_argument("vc_setup: vector length must be positive");
    uint32_t cap = 2;
    uint32_t depth = 1;
    while (cap < n) {
        if (depth >= 31) throw std::invalid_argument("vc_setup: vector length too large");
        cap <<= 1;
        ++depth;
    }
    return {inst, cap, depth};
}

MerkleTree::MerkleTree(const VcParams& params, std::span<const Fr> leaves) : params_(params) {
    if (leaves.size() > params.n)
        throw std::length_error("vc_commit: vector longer than committed capacity");
    const uint64_t tag = vc_node_tag(params.instance);

    std::vector<Fr> level(params.n, Fr::zero());
    std::copy(leaves.begin(), leaves.end(), level.begin());
    levels_.push_back(std::move(level));
    while (levels_.back().size() > 1) {
        const auto& prev = levels_.back();
        std::vector<Fr> next(prev.size() / 2);
        for (size_t i = 0; i < next.size(); ++i)
            next[i] = hash2_tagged(tag, prev[2 * i], prev[2 * i + 1]);
        levels_.push_back(std::move(next));
    }
}

OpeningProof MerkleTree::open(uint32_t index) const {
    if (index >= params_.n) throw std::out_of_range("vc_open: index out of range");
    OpeningProof proof;
    proof.index = index;
    proof.siblings.reserve(params_.depth);
    uint32_t pos = index;
    for (uint32_t level = 0; level < params_.depth; ++level) {
        proof.siblings.push_back(levels_[level][pos ^ 1]);
        pos >>= 1;
    }
    return proof;
}

Commitment vc_commit(const VcParams& params, std::span<const Fr> leaves) {
    return MerkleTree(params, leaves).commitment();
}

OpeningProof vc_open(const VcParams& params, std::span<const Fr> leaves, uint32_t index) {
    return MerkleTree(params, leaves).open(index);
}

bool vc_verify(const VcParams& params, const Commitment& c, uint32_t index, const Fr& leaf,
               const OpeningProof& proof) {
    if (index >= params.n) return false;
    if (proof.index != index) return false;
    if (proof.siblings.size() != params.depth) return false;
    const uint64_t tag = vc_node_tag(params.instance);
    Fr cur = leaf;
    uint32_t pos = index;
    for (uint32_t level = 0; level < params.depth; ++level) {
        const Fr& sib = proof.siblings[level];
        cur = (pos & 1) ? hash2_tagged(tag, sib, cur) : hash2_tagged(tag, cur, sib);
        pos >>= 1;
    }
    return cur == c.root;
}

Fr vc_pk_digest(const GrumpkinAffine& pk) {
    std::array<Fr, 2> in = {pk.x, pk.y};
    return hash_to_field_elems(dom::PK_DIGEST, in);
}

}  // namespace anoncred
