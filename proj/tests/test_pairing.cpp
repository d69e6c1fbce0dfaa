// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anoncred/bn254.hpp"
#include "anoncred/rng.hpp"

using namespace anoncred;

namespace {

Fq fq(uint64_t a, uint64_t b, uint64_t c, uint64_t d) { return Fq::from_u256(U256(a, b, c, d)); }

// e(G1, G2), computed once with an independent big-integer implementation
Fq12 golden_pairing() {
    Fq12 e;
    e.c0.c0 = {fq(0x8fca81000db9a1f5ull, 0x1bf7f61d72631e26ull, 0x510cd1707e8856f7ull,
                  0x12c70e90e12b7874ull),
               fq(0xb0552990967d4704ull, 0xdeaf3f12aa31f28cull, 0x6bc2f2ea2b897394ull,
                  0x084f330485b09e86ull)};
    e.c0.c1 = {fq(0x96b819a358d34bdeull, 0xbc27fdd375e3605full, 0xac9326b9558380e0ull,
                  0x0e841c2ac18a4003ull),
               fq(0xf6b5104c47c8c5d8ull, 0x60224ee5ae15e66aull, 0xeffa1938c754fe3cull,
                  0x2067586885c3318eull)};
    e.c0.c2 = {fq(0xbdd02236e14b3636ull, 0x86302996919d4bf4ull, 0x409c4a394bc54268ull,
                  0x01676555de427abcull),
               fq(0x95e3594468f222c4ull, 0xffc8747ea13e72daull, 0x72d86df88674c270ull,
                  0x2b03614464f04dd7ull)};
    e.c1.c0 = {fq(0x30c866276c565909ull, 0xaf25d7859cfbc12cull, 0x38fb30ddc8ac3bf0ull,
                  0x2c53748bcd21a7c0ull),
               fq(0xb2ab862411536104ull, 0x669c026360e37cc5ull, 0x6e710bbfbd2fd922ull,
                  0x27ed208e7a0b55aeull)};
    e.c1.c1 = {fq(0x9d762b47edb3b54aull, 0x17411fa48dba8d49ull, 0xac462173d31d3d61ull,
                  0x1ad9db1937fd72f4ull),
               fq(0x64889c79fc038ee3ull, 0x2b6efae421583875ull, 0x2532c7c493d8e072ull,
                  0x279db296f9d47929ull)};
    e.c1.c2 = {fq(0x17f0f6d08745a069ull, 0x0ba4c70c94b29b5full, 0x029bd441d77c221full,
                  0x0dc26f240656bbe2ull),
               fq(0x63729f5257628417ull, 0xd6cc3bda6c4d5376ull, 0x44d0f110405d3856ull,
                  0x108c19d15f9446f7ull)};
    return e;
}

Fq12 pow_u64(const Fq12& base, uint64_t e) {
    uint64_t limbs[1] = {e};
    return base.pow(limbs);
}

}  // namespace

TEST_CASE("generators lie on their curves") {
    CHECK(G1Affine::generator().on_curve());
    CHECK(G2Affine::generator().on_curve());
}

TEST_CASE("pairing of the generators matches the pinned reference value") {
    Fq12 e = pairing(G1Affine::generator(), G2Affine::generator());
    CHECK(e == golden_pairing());
    CHECK(e != Fq12::one());  // non-degenerate
}

TEST_CASE("pairing output has order r") {
    Fq12 e = pairing(G1Affine::generator(), G2Affine::generator());
    CHECK(e.pow(std::span<const uint64_t>(FrParams::MOD.v, 4)) == Fq12::one());
}

TEST_CASE("bilinearity") {
    const auto& g1 = G1Affine::generator();
    const auto& g2 = G2Affine::generator();
    Fq12 base = pairing(g1, g2);

    auto p5 = g1_mul(g1, U256(5)).to_affine();
    auto q7 = g2_mul(g2, U256(7)).to_affine();
    CHECK(pairing(p5, q7) == pow_u64(base, 35));
    CHECK(pairing(p5, g2) == pow_u64(base, 5));
    CHECK(pairing(g1, q7) == pow_u64(base, 7));

    // random-scalar check through Fr arithmetic
    Rng rng(7);
    Fr a = rng.random_fr(), b = rng.random_fr();
    auto pa = g1_mul(g1, a.to_u256()).to_affine();
    auto qb = g2_mul(g2, b.to_u256()).to_affine();
    Fr ab = a * b;
    CHECK(pairing(pa, qb) == base.pow(std::span<const uint64_t>(ab.to_u256().v, 4)));
}

TEST_CASE("pairing products cancel") {
    const auto& g1 = G1Affine::generator();
    const auto& g2 = G2Affine::generator();
    Rng rng(11);
    Fr a = rng.random_fr();
    auto pa = g1_mul(g1, a.to_u256()).to_affine();
    auto qa = g2_mul(g2, a.to_u256()).to_affine();

    std::vector<std::pair<G1Affine, G2Affine>> pairs = {{pa, g2}, {g1.neg(), qa}};
    CHECK(pairing_product_is_one(pairs));

    pairs[1].first = g1;  // breaks the cancellation
    CHECK(!pairing_product_is_one(pairs));

    // infinity entries are neutral
    std::vector<std::pair<G1Affine, G2Affine>> with_inf = {
        {pa, g2}, {g1.neg(), qa}, {G1Affine(), g2}};
    CHECK(pairing_product_is_one(with_inf));
}

TEST_CASE("group law consistency") {
    Rng rng(13);
    const auto& g1 = G1Affine::generator();
    const auto& g2 = G2Affine::generator();
    for (int t = 0; t < 10; ++t) {
        Fr a = rng.random_fr(), b = rng.random_fr();
        Fr s = a + b;
        CHECK(g1_mul(g1, a.to_u256()).add(g1_mul(g1, b.to_u256())).to_affine() ==
              g1_mul(g1, s.to_u256()).to_affine());
        CHECK(g2_mul(g2, a.to_u256()).add(g2_mul(g2, b.to_u256())).to_affine() ==
              g2_mul(g2, s.to_u256()).to_affine());
    }
    // r * G = infinity on both groups
    CHECK(g1_mul(g1, FrParams::MOD).is_infinity());
    CHECK(g2_mul(g2, FrParams::MOD).is_infinity());
}

TEST_CASE("msm agrees with naive accumulation") {
    Rng rng(17);
    const auto& g1 = G1Affine::generator();
    for (size_t n : {1u, 2u, 5u, 33u, 150u}) {
        std::vector<G1Affine> bases;
        std::vector<Fr> scalars;
        G1 expect = G1::infinity();
        for (size_t i = 0; i < n; ++i) {
            bases.push_back(g1_mul(g1, rng.random_fr().to_u256()).to_affine());
            scalars.push_back(rng.random_fr());
            expect = expect.add(g1_mul(bases.back(), scalars.back().to_u256()));
        }
        CHECK(g1_msm(bases, scalars).to_affine() == expect.to_affine());
    }
    // zero scalars and infinity bases are neutral
    std::vector<G1Affine> bases = {g1, G1Affine()};
    std::vector<Fr> scalars = {Fr::zero(), Fr::from_u64(9)};
    CHECK(g1_msm(bases, scalars).is_infinity());

    const auto& g2 = G2Affine::generator();
    std::vector<G2Affine> b2;
    std::vector<Fr> s2;
    G2 expect2 = G2::infinity();
    for (size_t i = 0; i < 20; ++i) {
        b2.push_back(g2_mul(g2, rng.random_fr().to_u256()).to_affine());
        s2.push_back(rng.random_fr());
        expect2 = expect2.add(g2_mul(b2.back(), s2.back().to_u256()));
    }
    CHECK(g2_msm(b2, s2).to_affine() == expect2.to_affine());
}

TEST_CASE("fixed-base combs match plain multiplication") {
    Rng rng(19);
    G1FixedBase fb1(G1Affine::generator());
    G2FixedBase fb2(G2Affine::generator());
    for (int t = 0; t < 10; ++t) {
        Fr k = rng.random_fr();
        CHECK(fb1.mul(k).to_affine() == g1_mul(G1Affine::generator(), k.to_u256()).to_affine());
        CHECK(fb2.mul(k).to_affine() == g2_mul(G2Affine::generator(), k.to_u256()).to_affine());
    }
    CHECK(fb1.mul(Fr::zero()).is_infinity());
}

TEST_CASE("batch affine conversion") {
    Rng rng(23);
    std::vector<G1> points;
    for (int i = 0; i < 9; ++i)
        points.push_back(g1_mul(G1Affine::generator(), rng.random_fr().to_u256()));
    points.push_back(G1::infinity());
    auto affines = g1_batch_to_affine(points);
    for (size_t i = 0; i < points.size(); ++i) CHECK(affines[i] == points[i].to_affine());
}

TEST_CASE("point serialization round trips and validates") {
    Rng rng(29);
    auto p = g1_mul(G1Affine::generator(), rng.random_fr().to_u256()).to_affine();
    auto q = g2_mul(G2Affine::generator(), rng.random_fr().to_u256()).to_affine();

    auto p2 = g1_from_bytes(g1_to_bytes(p));
    REQUIRE(p2.has_value());
    CHECK(*p2 == p);
    auto q2 = g2_from_bytes(g2_to_bytes(q));
    REQUIRE(q2.has_value());
    CHECK(*q2 == q);

    // infinity encodes as zeroes
    CHECK(g1_from_bytes(g1_to_bytes(G1Affine()))->inf);

    // off-curve points rejected
    auto bad = g1_to_bytes(p);
    bad[0] ^= 1;
    auto decoded = g1_from_bytes(bad);
    if (decoded) CHECK(decoded->on_curve());
}
