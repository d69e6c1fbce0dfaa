// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anoncred/field.hpp"
#include "anoncred/rng.hpp"

using namespace anoncred;

namespace {
const U256 A{0xfedcba9876543210ull, 0x123456789abcdef0ull, 0xfedcba9876543210ull,
             0x123456789abcdef0ull};
const U256 B{0x8796a5b4c3d2e1f0ull, 0x0f1e2d3c4b5a6978ull, 0x8796a5b4c3d2e1f0ull,
             0x0f1e2d3c4b5a6978ull};
}  // namespace

TEST_CASE("Fr arithmetic matches big-integer reference") {
    Fr a = Fr::from_u256(A);
    Fr b = Fr::from_u256(B);

    CHECK((a * b).to_u256() == U256{0x89b46055e3434700ull, 0x4325b04dcb34d7adull,
                                    0x8fe292e0d0291a14ull, 0x244750a61b54dcb7ull});
    CHECK((a + b).to_u256() == U256{0x8673604d3a271400ull, 0x215283b4e6174869ull,
                                    0x8673604d3a271400ull, 0x215283b4e6174869ull});
    CHECK(a.pow(B).to_u256() == U256{0xf10e1e0b5fb1493cull, 0x23f10e001da5868dull,
                                     0x7e1780b08931d194ull, 0x2ee8d1bffb069c80ull});
    CHECK(a.inverse().to_u256() == U256{0xc4083015afbb6868ull, 0x65c83ceed28fd46full,
                                        0x4551a7b05798fd40ull, 0x0fd586d9834f8a52ull});
}

TEST_CASE("field axioms on random elements") {
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        Fr x = rng.random_fr();
        Fr y = rng.random_fr();
        Fr z = rng.random_fr();
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK((x + y) * z == x * z + y * z);
        CHECK(x - x == Fr::zero());
        CHECK(x * Fr::one() == x);
        if (!x.is_zero()) CHECK(x * x.inverse() == Fr::one());
        CHECK(x.square() == x * x);
    }
}

TEST_CASE("Fq arithmetic sanity") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        Fq x = rng.random_fq();
        if (!x.is_zero()) CHECK(x * x.inverse() == Fq::one());
        CHECK((x + x) == x.dbl());
    }
    // moduli of the cycle differ
    CHECK(FrParams::MOD != FqParams::MOD);
}

TEST_CASE("byte encoding round trip and canonicality") {
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        Fr x = rng.random_fr();
        auto bytes = x.to_bytes();
        auto back = Fr::from_bytes(bytes);
        REQUIRE(back.has_value());
        CHECK(*back == x);
    }
    // encoding of zero is 32 zero bytes
    auto z = Fr::zero().to_bytes();
    for (auto b : z) CHECK(b == 0);
    // modulus itself is non-canonical
    std::array<uint8_t, 32> modbytes;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 8; ++j) modbytes[8 * i + j] = (uint8_t)(FrParams::MOD.v[i] >> (8 * j));
    CHECK(!Fr::from_bytes(modbytes).has_value());
}

TEST_CASE("from_uniform_bytes matches 512-bit reduction") {
    std::array<uint8_t, 64> buf;
    for (int i = 0; i < 64; ++i) buf[i] = (uint8_t)i;
    CHECK(Fr::from_uniform_bytes(buf).to_u256() ==
          U256{0x6d416d622eef20f4ull, 0x6ad1a139c06200d8ull, 0x110943e3c50c4f36ull,
               0x1a8f6c248f57427cull});
    CHECK(Fq::from_uniform_bytes(buf).to_u256() ==
          U256{0xd073a66dec9e4db3ull, 0x568f9f1dd9499b5cull, 0x762d19420eca6af9ull,
               0x2273ae640e87519bull});
}

TEST_CASE("two-adic root of unity") {
    Fr w = Fr::from_u256(FrParams::ROOT_OF_UNITY);
    Fr acc = w;
    for (size_t i = 0; i < FrParams::TWO_ADICITY - 1; ++i) acc = acc.square();
    CHECK(acc == -Fr::one());   // order exactly 2^28
    CHECK(acc.square() == Fr::one());
}

TEST_CASE("sqrt of quadratic residues") {
    Rng rng(99);
    for (int i = 0; i < 50; ++i) {
        Fr x = rng.random_fr();
        Fr sq = x.square();
        auto root = sqrt(sq);
        REQUIRE(root.has_value());
        CHECK((*root == x || *root == -x));
    }
    // generator is a non-residue
    CHECK(!sqrt(Fr::from_u64(FrParams::GENERATOR)).has_value());
}

TEST_CASE("canonical integer comparison") {
    Fr small = Fr::from_u64(5);
    Fr big = Fr::from_u64(9);
    CHECK(small.cmp(big) < 0);
    CHECK(big.cmp(small) > 0);
    CHECK(small.cmp(small) == 0);
    // p-1 is the largest canonical value
    Fr sentinel = -Fr::one();
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        Fr x = rng.random_fr();
        if (x != sentinel) CHECK(x.cmp(sentinel) < 0);
    }
}
