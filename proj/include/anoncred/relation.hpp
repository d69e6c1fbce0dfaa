// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// The presentation relation: public statement (predicate constants, issuer-set
// root, session context) against the hidden credential witness. Provided in
// two forms that must agree everywhere:
//
//   relation_check   — plain native checker (testing oracle, no circuit)
//   relation_build   — R1CS emission via the gadget layer
//
// The constraint layout is a pure function of RelationDescription, so prover
// and verifier derive byte-identical circuits (and proving keys) without
// communicating.

#pragma once

#include <optional>

#include "anoncred/merkle.hpp"
#include "anoncred/predicate.hpp"
#include "anoncred/r1cs.hpp"

namespace anoncred {

struct Statement {
    Predicate phi;
    Commitment issuer_set_root;  // reconstructible from the published issuer view
    std::vector<uint8_t> ctx;
};

struct WitnessAttr {
    uint32_t position = 0;  // leaf position inside the credential's attribute tree
    Fr idx;                 // global attribute index of this slot
    Fr value;
    OpeningProof proof;
};

struct WitnessGap {
    uint32_t left_position = 0;  // right neighbor sits at left_position + 1
    Fr left, right;
    OpeningProof left_proof, right_proof;
};

struct Witness {
    Commitment attr_root;  // c_a
    Signature sig;
    uint32_t issuer_position = 0;
    VerifyingKey issuer_pk;
    Commitment revoc_root;  // c_r of the credential's issuer
    OpeningProof issuer_proof;
    std::vector<WitnessAttr> attrs;     // one entry per predicate slot, slot order
    WitnessGap gap;                     // revocation non-membership
    std::vector<WitnessGap> list_gaps;  // one per NotInList clause, clause order
};

struct RelationDescription {
    uint32_t n_attr = 0;    // attribute tree capacity (power of two)
    uint32_t n_revoc = 0;   // revocation tree capacity
    uint32_t n_issuer = 0;  // issuer tree capacity
    uint32_t bit_width = 64;
    PredicateShape shape;

    static RelationDescription make(const Predicate& phi, uint32_t n_attr, uint32_t n_revoc,
                                    uint32_t n_issuer);

    std::vector<uint8_t> shape_id() const;
    bool operator==(const RelationDescription&) const = default;
};

// ---- statement encoding ----

// fixed-order public inputs: ctx hash, issuer-set root, slot indices, then
// per-clause constants (compare constant | members | committed list root)
std::vector<Fr> statement_inputs(const RelationDescription& desc, const Statement& stmt);

// committed layout and root of a NotInList clause: [0, entries..., r-1 pad]
std::vector<Fr> list_layout(std::span<const Fr> sorted_entries, uint32_t capacity);
Fr list_layout_root(const NotInListClause& clause);

// ---- unified credential hash (revocation entries and the in-circuit check) ----

// 127-bit limb split of a Grumpkin scalar, shared with the circuit absorb
std::pair<Fr, Fr> split_scalar_127(const Fq& s);

Fr credential_hash_parts(const Fr& attr_root, const Signature& sig);

// ---- gap search over a committed sorted layout ----

struct GapResult {
    uint32_t left_position = 0;
    Fr left, right;
};

// nullopt iff h occurs in the layout (which includes the endpoints 0 and r-1)
std::optional<GapResult> find_gap(std::span<const Fr> layout, const Fr& h);

// ---- the relation itself ----

// plain checker; any malformed component returns 0
bool relation_check(const RelationDescription& desc, const Statement& stmt, const Witness& w);

// R1CS emission. When stmt/w are provided the builder also computes the full
// assignment; pass nullptr for the keygen path.
void relation_emit(CircuitBuilder& bld, const RelationDescription& desc, const Statement* stmt,
                   const Witness* w);

ConstraintSystem relation_build(const RelationDescription& desc);

struct AssignedCircuit {
    ConstraintSystem cs;
    std::vector<Fr> assignment;
};
AssignedCircuit relation_assign(const RelationDescription& desc, const Statement& stmt,
                                const Witness& w);

// upper bound used for proving-parameter capacity planning
size_t relation_constraint_count(const RelationDescription& desc);

// witness serialization (fixed length for a fixed description); used by the
// transparent test backend, which carries the witness inside its proofs
std::vector<uint8_t> witness_to_bytes(const RelationDescription& desc, const Witness& w);
std::optional<Witness> witness_from_bytes(const RelationDescription& desc,
                                          std::span<const uint8_t> data);

}  // namespace anoncred
