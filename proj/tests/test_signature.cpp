// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anoncred/grumpkin.hpp"

using namespace anoncred;

TEST_CASE("generator lies on the curve and has order q") {
    const auto& g = GrumpkinAffine::generator();
    CHECK(g.on_curve());
    // group order equals the BN254 base field prime
    CHECK(grumpkin_mul(g, FqParams::MOD).is_infinity());
    CHECK(!grumpkin_mul(g, U256(2)).is_infinity());
}

TEST_CASE("jacobian arithmetic consistency") {
    Rng rng(11);
    const auto& g = GrumpkinAffine::generator();
    for (int i = 0; i < 20; ++i) {
        Fq a = rng.random_fq(), b = rng.random_fq();
        auto pa = grumpkin_mul(g, a);
        auto pb = grumpkin_mul(g, b);
        // (a+b)G == aG + bG
        CHECK(grumpkin_mul(g, a + b).to_affine() == pa.add(pb).to_affine());
        // 2(aG) == aG + aG
        CHECK(pa.dbl().to_affine() == pa.add(pa).to_affine());
    }
    // P + (-P) = O
    auto p = grumpkin_mul(g, U256(12345)).to_affine();
    CHECK(GrumpkinJacobian::from_affine(p).add_mixed(p.neg()).is_infinity());
}

TEST_CASE("sign/verify round trip") {
    Rng rng(22);
    for (int i = 0; i < 25; ++i) {
        auto [sk, vk] = sig_keygen(rng);
        Fr msg = rng.random_fr();
        Signature sig = sig_sign(sk, msg, rng);
        CHECK(sig_verify(vk, msg, sig));
    }
}

TEST_CASE("message binding") {
    Rng rng(33);
    auto [sk, vk] = sig_keygen(rng);
    Fr msg = rng.random_fr();
    Signature sig = sig_sign(sk, msg, rng);
    CHECK(!sig_verify(vk, msg + Fr::one(), sig));
}

TEST_CASE("key binding") {
    Rng rng(44);
    auto [sk1, vk1] = sig_keygen(rng);
    auto [sk2, vk2] = sig_keygen(rng);
    Fr msg = rng.random_fr();
    Signature sig = sig_sign(sk1, msg, rng);
    CHECK(sig_verify(vk1, msg, sig));
    CHECK(!sig_verify(vk2, msg, sig));
}

TEST_CASE("keygen freshness and derivation consistency") {
    Rng rng(55);
    auto [sk1, vk1] = sig_keygen(rng);
    auto [sk2, vk2] = sig_keygen(rng);
    CHECK(!(vk1 == vk2));
    CHECK(sig_derive_vk(sk1) == vk1);
    CHECK(sig_derive_vk(sk2) == vk2);
}

TEST_CASE("tamper sweep over encoded signatures") {
    Rng rng(66);
    auto [sk, vk] = sig_keygen(rng);
    Fr msg = rng.random_fr();
    Signature sig = sig_sign(sk, msg, rng);
    auto enc = sig_to_bytes(sig);

    int rejected = 0;
    for (int i = 0; i < 100; ++i) {
        auto flipped = enc;
        size_t bit = rng.next_u64() % (flipped.size() * 8);
        flipped[bit / 8] ^= (uint8_t)(1u << (bit % 8));
        auto dec = sig_from_bytes(flipped);
        if (!dec || !sig_verify(vk, msg, *dec)) ++rejected;
    }
    CHECK(rejected == 100);
}

TEST_CASE("signature components survive serialization") {
    Rng rng(77);
    auto [sk, vk] = sig_keygen(rng);
    Signature sig = sig_sign(sk, Fr::from_u64(99), rng);

    auto sig2 = sig_from_bytes(sig_to_bytes(sig));
    REQUIRE(sig2.has_value());
    CHECK(sig_verify(vk, Fr::from_u64(99), *sig2));

    auto vk2 = vk_from_bytes(vk_to_bytes(vk));
    REQUIRE(vk2.has_value());
    CHECK(*vk2 == vk);

    // off-curve verifying keys are rejected at decode
    auto bad = vk_to_bytes(vk);
    bad[0] ^= 1;
    auto vk3 = vk_from_bytes(bad);
    if (vk3) CHECK(vk3->pk.on_curve());
}

TEST_CASE("hash_to_curve lands on the curve deterministically") {
    auto p1 = grumpkin_hash_to_curve("ladder-offset-1");
    auto p2 = grumpkin_hash_to_curve("ladder-offset-2");
    CHECK(p1.on_curve());
    CHECK(p2.on_curve());
    CHECK(!(p1 == p2));
    CHECK(p1 == grumpkin_hash_to_curve("ladder-offset-1"));
}
