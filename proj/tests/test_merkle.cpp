// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anoncred/merkle.hpp"
#include "anoncred/rng.hpp"

using namespace anoncred;

namespace {

// Independent straight-line Merkle builder: recursive halving, no tree storage.
// Oracle for vc_commit.
Fr oracle_root(uint64_t tag, std::vector<Fr> level) {
    if (level.size() == 1) return level[0];
    std::vector<Fr> next;
    for (size_t i = 0; i + 1 < level.size(); i += 2)
        next.push_back(hash2_tagged(tag, level[i], level[i + 1]));
    return oracle_root(tag, std::move(next));
}

std::vector<Fr> padded(std::span<const Fr> leaves, uint32_t n) {
    std::vector<Fr> out(leaves.begin(), leaves.end());
    out.resize(n, Fr::zero());
    return out;
}

std::vector<Fr> random_leaves(Rng& rng, size_t n) {
    std::vector<Fr> v(n);
    for (auto& x : v) x = rng.random_fr();
    return v;
}

}  // namespace

TEST_CASE("setup rounds to powers of two") {
    CHECK(vc_setup(VcInstance::Attr, 3).n == 4);
    CHECK(vc_setup(VcInstance::Attr, 3).depth == 2);
    CHECK(vc_setup(VcInstance::Revoc, 1ull << 15).depth == 15);
    CHECK(vc_setup(VcInstance::Attr, 1).n == 2);
    CHECK(vc_setup(VcInstance::Attr, 1).depth == 1);
    CHECK_THROWS(vc_setup(VcInstance::Attr, 0));
}

TEST_CASE("pinned roots for the canonical empty layouts") {
    // issuer instance, empty vector, n=4: all-zero leaves
    auto pi = vc_setup(VcInstance::Issuer, 4);
    CHECK(vc_commit(pi, {}).root.to_u256() ==
          U256{0x5aa878d634767573ull, 0x90f546489fc0ef0bull, 0x51eacd63652fc1a8ull,
               0x0632e449a01db9c7ull});

    // attribute instance, all-placeholder (0,0) pairs, n=4
    auto pa = vc_setup(VcInstance::Attr, 4);
    std::vector<Fr> ph(4, vc_leaf_attr(Fr::zero(), Fr::zero()));
    CHECK(vc_commit(pa, ph).root.to_u256() ==
          U256{0xed6bcff9271a6ef1ull, 0xa53da06707b71bd1ull, 0x246f1d733b40c522ull,
               0x0800c59b6b1284beull});

    // revocation instance, empty layout [0, sentinel, sentinel, sentinel], n=4
    auto pr = vc_setup(VcInstance::Revoc, 4);
    const Fr sentinel = -Fr::one();
    std::vector<Fr> layout = {Fr::zero(), sentinel, sentinel, sentinel};
    CHECK(vc_commit(pr, layout).root.to_u256() ==
          U256{0x5d1b7b00c6ae4105ull, 0x6c130681db7dacf3ull, 0x42610b70da735d27ull,
               0x0b758108419ead5cull});
}

TEST_CASE("roots equal the independent oracle for n <= 16") {
    Rng rng(17);
    for (uint32_t n : {2u, 4u, 8u, 16u}) {
        for (auto inst : {VcInstance::Attr, VcInstance::Revoc, VcInstance::Issuer}) {
            auto params = vc_setup(inst, n);
            auto leaves = random_leaves(rng, n / 2 + 1);  // short vector, zero padding
            Fr expect = oracle_root(vc_node_tag(inst), padded(leaves, n));
            CHECK(vc_commit(params, leaves).root == expect);
        }
    }
}

TEST_CASE("commit determinism and tamper sensitivity") {
    Rng rng(29);
    auto params = vc_setup(VcInstance::Attr, 8);
    auto leaves = random_leaves(rng, 8);
    CHECK(vc_commit(params, leaves) == vc_commit(params, leaves));
    for (int t = 0; t < 50; ++t) {
        auto mutated = leaves;
        mutated[rng.next_u64() % 8] += Fr::one();
        CHECK(vc_commit(params, mutated) != vc_commit(params, leaves));
    }
}

TEST_CASE("open/verify correctness at n in {2,4,8,16}") {
    Rng rng(41);
    for (uint32_t n : {2u, 4u, 8u, 16u}) {
        auto params = vc_setup(VcInstance::Revoc, n);
        auto leaves = random_leaves(rng, n);
        MerkleTree tree(params, leaves);
        auto c = tree.commitment();
        for (uint32_t i = 0; i < n; ++i) {
            auto proof = tree.open(i);
            CHECK(vc_verify(params, c, i, leaves[i], proof));
        }
    }
}

TEST_CASE("binding direction: wrong value rejected") {
    Rng rng(53);
    auto params = vc_setup(VcInstance::Attr, 8);
    auto leaves = random_leaves(rng, 8);
    MerkleTree tree(params, leaves);
    auto c = tree.commitment();
    for (uint32_t i = 0; i < 8; ++i) {
        auto proof = tree.open(i);
        CHECK(!vc_verify(params, c, i, leaves[i] + Fr::one(), proof));
    }
}

TEST_CASE("exhaustive index mismatch sweep at n=8") {
    Rng rng(67);
    auto params = vc_setup(VcInstance::Issuer, 8);
    auto leaves = random_leaves(rng, 8);
    MerkleTree tree(params, leaves);
    auto c = tree.commitment();
    for (uint32_t i = 0; i < 8; ++i) {
        auto proof = tree.open(i);
        for (uint32_t j = 0; j < 8; ++j) {
            if (j == i) continue;
            auto moved = proof;
            moved.index = j;
            CHECK(!vc_verify(params, c, j, leaves[i], moved));
        }
    }
}

TEST_CASE("malformed proofs return 0") {
    Rng rng(79);
    auto params = vc_setup(VcInstance::Attr, 8);
    auto leaves = random_leaves(rng, 8);
    MerkleTree tree(params, leaves);
    auto c = tree.commitment();
    auto proof = tree.open(3);

    auto truncated = proof;
    truncated.siblings.pop_back();
    CHECK(!vc_verify(params, c, 3, leaves[3], truncated));

    auto extended = proof;
    extended.siblings.push_back(Fr::zero());
    CHECK(!vc_verify(params, c, 3, leaves[3], extended));

    CHECK(!vc_verify(params, c, 9, leaves[3], proof));  // out-of-range index
}

TEST_CASE("randomized tamper suite rejects all mutations") {
    Rng rng(97);
    auto params = vc_setup(VcInstance::Revoc, 16);
    auto leaves = random_leaves(rng, 16);
    MerkleTree tree(params, leaves);
    auto c = tree.commitment();

    int rejected = 0;
    const int kTrials = 1000;
    for (int t = 0; t < kTrials; ++t) {
        uint32_t i = (uint32_t)(rng.next_u64() % 16);
        auto proof = tree.open(i);
        Fr value = leaves[i];
        switch (rng.next_u64() % 3) {
            case 0: value += Fr::from_u64(1 + rng.next_u64() % 1000); break;
            case 1: proof.siblings[rng.next_u64() % proof.siblings.size()] += Fr::one(); break;
            default:
                proof.index = (uint32_t)((i + 1 + rng.next_u64() % 15) % 16);
                i = proof.index;
                value = leaves[(proof.index + 5) % 16];
                break;
        }
        if (!vc_verify(params, c, i, value, proof)) ++rejected;
    }
    CHECK(rejected == kTrials);
}

TEST_CASE("capacity errors") {
    auto params = vc_setup(VcInstance::Attr, 4);
    Rng rng(5);
    auto leaves = random_leaves(rng, 5);
    CHECK_THROWS(vc_commit(params, leaves));
    CHECK_THROWS(MerkleTree(params, random_leaves(rng, 4)).open(4));
}
