// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anoncred/encoding.hpp"
#include "anoncred/rng.hpp"

using namespace anoncred;

namespace {

// random structured value of bounded depth, for round-trip / injectivity sweeps
Value random_value(Rng& rng, int depth) {
    int pick = depth == 0 ? (int)(rng.next_u64() % 2) : (int)(rng.next_u64() % 4);
    switch (pick) {
        case 0: return Value::field(rng.random_fr());
        case 1: {
            std::vector<uint8_t> b(rng.next_u64() % 40);
            rng.fill(b);
            return Value::bytes(b);
        }
        case 2: return Value::pair(random_value(rng, depth - 1), random_value(rng, depth - 1));
        default: {
            size_t n = rng.next_u64() % 5;
            std::vector<Value> elems;
            for (size_t i = 0; i < n; ++i) elems.push_back(Value::field(rng.random_fr()));
            return Value::vector(std::move(elems));
        }
    }
}

}  // namespace

TEST_CASE("field zero encodes as 32 zero bytes") {
    auto enc = encode(Value::field(Fr::zero()));
    REQUIRE(enc.size() == 32);
    for (auto b : enc) CHECK(b == 0);
}

TEST_CASE("vector order changes the encoding") {
    Fr a = Fr::from_u64(1), b = Fr::from_u64(2);
    auto ab = encode(Value::vector({Value::field(a), Value::field(b)}));
    auto ba = encode(Value::vector({Value::field(b), Value::field(a)}));
    CHECK(ab != ba);
}

TEST_CASE("pair encoding carries count prefix and round-trips") {
    Rng rng(21);
    Fr pk = rng.random_fr();
    Fr c = rng.random_fr();
    Value v = Value::pair(Value::field(pk), Value::field(c));
    auto enc = encode(v);
    REQUIRE(enc.size() == 4 + 32 + 32);
    CHECK(enc[0] == 2);  // u32le(2)
    CHECK(enc[1] == 0);

    auto back = decode(Schema::of(v), enc);
    REQUIRE(back.has_value());
    CHECK(*back == v);
}

TEST_CASE("round trip over random structured values") {
    Rng rng(77);
    for (int i = 0; i < 300; ++i) {
        Value v = random_value(rng, 3);
        auto enc = encode(v);
        auto back = decode(Schema::of(v), enc);
        REQUIRE(back.has_value());
        CHECK(*back == v);
    }
}

TEST_CASE("injectivity: distinct same-shape values yield distinct encodings") {
    Rng rng(123);
    for (int i = 0; i < 300; ++i) {
        Value a = random_value(rng, 2);
        Value b = random_value(rng, 2);
        if (a == b) continue;
        CHECK(encode(a) != encode(b));
    }
}

TEST_CASE("decode rejects malformed input") {
    Value v = Value::pair(Value::field(Fr::one()), Value::field(Fr::one()));
    auto enc = encode(v);
    auto schema = Schema::of(v);

    auto longer = enc;
    longer.push_back(0);
    CHECK(!decode(schema, longer).has_value());

    std::vector<uint8_t> shorter(enc.begin(), enc.end() - 1);
    CHECK(!decode(schema, shorter).has_value());

    // non-canonical field bytes (the modulus itself)
    std::vector<uint8_t> modenc(32);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 8; ++j) modenc[8 * i + j] = (uint8_t)(FrParams::MOD.v[i] >> (8 * j));
    CHECK(!decode(Schema::field(), modenc).has_value());
}

TEST_CASE("heterogeneous vectors are rejected at construction") {
    std::vector<Value> mixed;
    mixed.push_back(Value::field(Fr::one()));
    std::vector<uint8_t> raw = {1, 2, 3};
    mixed.push_back(Value::bytes(raw));
    CHECK_THROWS(Value::vector(std::move(mixed)));
}

TEST_CASE("hex round trip") {
    Rng rng(9);
    std::vector<uint8_t> data(53);
    rng.fill(data);
    auto hex = to_hex(data);
    auto back = from_hex(hex);
    REQUIRE(back.has_value());
    CHECK(*back == data);
    CHECK(!from_hex("abc").has_value());  // odd length
    CHECK(!from_hex("zz").has_value());   // bad digit
}
