// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anoncred/groth16.hpp"
#include "fixtures.hpp"

using namespace anoncred;
using namespace anoncred::testfix;

namespace {

std::vector<Fr> seed_elems(uint64_t s) {
    return {Fr::from_u64(s), Fr::from_u64(s ^ 0xabcdef)};
}

// x * y = out0, x + y = out1 with out0/out1 public
struct TinyCircuit {
    ConstraintSystem cs;
    std::vector<Fr> assignment;
};

TinyCircuit tiny_circuit(uint64_t x, uint64_t y) {
    CircuitBuilder bld(true);
    WireId prod = bld.input(Fr::from_u64(x * y));
    WireId sum = bld.input(Fr::from_u64(x + y));
    LinComb wx = bld.witness(Fr::from_u64(x));
    LinComb wy = bld.witness(Fr::from_u64(y));
    bld.enforce(wx, wy, LinComb::wire(prod));
    bld.assert_equal(wx + wy, LinComb::wire(sum));
    // nonzero input columns
    bld.enforce(LinComb::wire(prod), Fr::one(), LinComb::wire(prod));
    bld.enforce(LinComb::wire(sum), Fr::one(), LinComb::wire(sum));
    TinyCircuit out;
    out.cs = std::move(bld.cs());
    out.assignment = bld.take_assignment();
    return out;
}

}  // namespace

TEST_CASE("fft round trip and polynomial multiplication") {
    Rng rng(40);
    std::vector<Fr> v(16);
    for (auto& x : v) x = rng.random_fr();
    auto w = v;
    fft(w, false);
    fft(w, true);
    for (size_t i = 0; i < v.size(); ++i) CHECK(w[i] == v[i]);

    // (1 + 2X) * (3 + X) = 3 + 7X + 2X^2 via evaluation domains
    std::vector<Fr> p = {Fr::from_u64(1), Fr::from_u64(2), Fr::zero(), Fr::zero()};
    std::vector<Fr> q = {Fr::from_u64(3), Fr::from_u64(1), Fr::zero(), Fr::zero()};
    fft(p, false);
    fft(q, false);
    for (size_t i = 0; i < 4; ++i) p[i] = p[i] * q[i];
    fft(p, true);
    CHECK(p[0] == Fr::from_u64(3));
    CHECK(p[1] == Fr::from_u64(7));
    CHECK(p[2] == Fr::from_u64(2));
    CHECK(p[3] == Fr::zero());
}

TEST_CASE("tiny circuit: prove and verify") {
    Rng rng(41);
    auto circ = tiny_circuit(5, 7);
    REQUIRE(circ.cs.is_satisfied(circ.assignment));
    auto keys = groth16_setup(circ.cs, seed_elems(1));

    auto proof = groth16_prove(keys.pk, circ.cs, circ.assignment, rng);
    std::vector<Fr> inputs = {Fr::from_u64(35), Fr::from_u64(12)};
    CHECK(groth16_verify(keys.vk, inputs, proof));

    // wrong public inputs rejected
    std::vector<Fr> wrong = {Fr::from_u64(36), Fr::from_u64(12)};
    CHECK(!groth16_verify(keys.vk, wrong, proof));
    std::vector<Fr> short_inputs = {Fr::from_u64(35)};
    CHECK(!groth16_verify(keys.vk, short_inputs, proof));
}

TEST_CASE("proofs are randomized but stable in size") {
    Rng rng(42);
    auto circ = tiny_circuit(3, 4);
    auto keys = groth16_setup(circ.cs, seed_elems(2));
    auto p1 = groth16_prove(keys.pk, circ.cs, circ.assignment, rng);
    auto p2 = groth16_prove(keys.pk, circ.cs, circ.assignment, rng);
    CHECK(!(p1.a == p2.a));  // fresh blinding
    auto b1 = groth16_proof_to_bytes(p1);
    auto b2 = groth16_proof_to_bytes(p2);
    CHECK(b1.size() == b2.size());
    CHECK(b1.size() == 64 + 128 + 64);
    std::vector<Fr> inputs = {Fr::from_u64(12), Fr::from_u64(7)};
    CHECK(groth16_verify(keys.vk, inputs, p1));
    CHECK(groth16_verify(keys.vk, inputs, p2));
}

TEST_CASE("setup determinism") {
    auto circ = tiny_circuit(2, 9);
    auto k1 = groth16_setup(circ.cs, seed_elems(7));
    auto k2 = groth16_setup(circ.cs, seed_elems(7));
    CHECK(k1.vk == k2.vk);
    CHECK(groth16_vk_to_bytes(k1.vk) == groth16_vk_to_bytes(k2.vk));
    CHECK(groth16_pk_to_bytes(k1.pk) == groth16_pk_to_bytes(k2.pk));

    auto k3 = groth16_setup(circ.cs, seed_elems(8));
    CHECK(!(k1.vk == k3.vk));
}

TEST_CASE("serialization round trips") {
    Rng rng(43);
    auto circ = tiny_circuit(6, 6);
    auto keys = groth16_setup(circ.cs, seed_elems(3));
    auto proof = groth16_prove(keys.pk, circ.cs, circ.assignment, rng);

    auto pb = groth16_proof_to_bytes(proof);
    auto proof2 = groth16_proof_from_bytes(pb);
    REQUIRE(proof2.has_value());
    std::vector<Fr> inputs = {Fr::from_u64(36), Fr::from_u64(12)};
    CHECK(groth16_verify(keys.vk, inputs, *proof2));

    auto vb = groth16_vk_to_bytes(keys.vk);
    auto vk2 = groth16_vk_from_bytes(vb);
    REQUIRE(vk2.has_value());
    CHECK(*vk2 == keys.vk);

    auto kb = groth16_pk_to_bytes(keys.pk);
    auto pk2 = groth16_pk_from_bytes(kb);
    REQUIRE(pk2.has_value());
    auto proof3 = groth16_prove(*pk2, circ.cs, circ.assignment, rng);
    CHECK(groth16_verify(keys.vk, inputs, proof3));

    // truncated blobs rejected
    pb.pop_back();
    CHECK(!groth16_proof_from_bytes(pb).has_value());
}

TEST_CASE("tamper sweep on proof bytes") {
    Rng rng(44);
    auto circ = tiny_circuit(11, 4);
    auto keys = groth16_setup(circ.cs, seed_elems(4));
    auto proof = groth16_prove(keys.pk, circ.cs, circ.assignment, rng);
    auto bytes = groth16_proof_to_bytes(proof);
    std::vector<Fr> inputs = {Fr::from_u64(44), Fr::from_u64(15)};
    REQUIRE(groth16_verify(keys.vk, inputs, proof));

    int rejected = 0;
    for (int t = 0; t < 60; ++t) {
        auto flipped = bytes;
        size_t bit = rng.next_u64() % (flipped.size() * 8);
        flipped[bit / 8] ^= (uint8_t)(1 << (bit % 8));
        auto dec = groth16_proof_from_bytes(flipped);
        if (!dec || !groth16_verify(keys.vk, inputs, *dec)) ++rejected;
    }
    CHECK(rejected == 60);
}

TEST_CASE("presentation relation end to end through groth16") {
    Rng rng(45);
    TestWorld w = make_world(rng);
    auto cs = relation_build(w.desc);
    auto keys = groth16_setup(cs, seed_elems(5));

    auto built = relation_assign(w.desc, w.stmt, w.wit);
    REQUIRE(built.cs.is_satisfied(built.assignment));
    auto proof = groth16_prove(keys.pk, cs, built.assignment, rng);

    auto inputs = statement_inputs(w.desc, w.stmt);
    CHECK(groth16_verify(keys.vk, inputs, proof));

    // context binding: a different ctx changes the first public input
    Statement other = w.stmt;
    other.ctx.push_back(0x99);
    auto other_inputs = statement_inputs(w.desc, other);
    CHECK(!groth16_verify(keys.vk, other_inputs, proof));

    // revocation freshness: re-deriving the statement after a revocation
    // changes the issuer-set root input
    Fr h = credential_hash_parts(w.attr_root.root, w.sig);
    revoke_in(w.issuers[w.credential_issuer], h, w.n);
    Statement fresh = w.stmt;
    fresh.issuer_set_root = issuer_set_root(w.issuers, w.n);
    CHECK(!groth16_verify(keys.vk, statement_inputs(w.desc, fresh), proof));
}
