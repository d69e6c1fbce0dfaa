// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0
//
// The predicate language: conjunctions of clauses over global attribute
// indices. Clause kinds: ordered/equality comparison against a constant,
// set membership, and non-membership in a sorted committed list (the same
// gap technique the revocation check uses).
//
// Constants are public statement inputs, so predicates that differ only in
// their constants share one circuit shape (and one proving key).

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "anoncred/field.hpp"

namespace anoncred {

enum class ValueKind : uint8_t { Numeric, Categorical };

struct AttributeId {
    uint32_t idx = 0;  // global universe index, 1-based (0 is the padding slot)
    std::string name;
    ValueKind kind = ValueKind::Numeric;
};

// categorical labels enter the field via the byte hash
Fr encode_attribute_value(ValueKind kind, const std::string& text);

enum class CmpOp : uint8_t { Lt, Le, Eq, Ge, Gt, Ne };

const char* cmp_op_name(CmpOp op);

struct CompareClause {
    uint32_t idx = 0;
    CmpOp op = CmpOp::Eq;
    Fr constant;
    // order comparisons require numeric attributes (bit-width semantics);
    // equality forms work for categorical values too
    bool numeric = true;
};

struct MemberClause {
    uint32_t idx = 0;
    std::vector<Fr> members;
};

struct NotInListClause {
    uint32_t idx = 0;
    std::vector<Fr> list;   // strictly ascending canonical values in (0, r-1)
    uint32_t capacity = 0;  // committed tree size, power of two, >= list+2
};

using Clause = std::variant<CompareClause, MemberClause, NotInListClause>;

struct Predicate {
    std::vector<Clause> clauses;
};

// ---- plain evaluation ----

// integer semantics; throws Err::MissingAttribute when the assignment does not
// cover every referenced index
bool pred_eval(const Predicate& phi, const std::map<uint32_t, Fr>& assignment);

std::set<uint32_t> pred_required_attrs(const Predicate& phi);

// ---- circuit shape ----

struct ClauseShape {
    enum class Kind : uint8_t { Compare = 1, Member = 2, NotInList = 3 };
    Kind kind = Kind::Compare;
    uint32_t slot = 0;  // witness slot ordinal (distinct indices, first appearance)
    CmpOp op = CmpOp::Eq;
    bool numeric = true;
    uint32_t member_count = 0;
    uint32_t list_depth = 0;

    bool operator==(const ClauseShape&) const = default;
};

struct PredicateShape {
    uint32_t num_slots = 0;
    std::vector<ClauseShape> clauses;

    bool operator==(const PredicateShape&) const = default;
};

PredicateShape pred_structure(const Predicate& phi);

// distinct indices in first-appearance order; slot s holds attribute slot_indices[s]
std::vector<uint32_t> pred_slot_indices(const Predicate& phi);

// stable byte identifier of the full circuit shape (clause kinds, widths,
// slot wiring, tree sizes); public constants do not enter
std::vector<uint8_t> pred_shape_id(const Predicate& phi, uint32_t n_attr, uint32_t n_revoc,
                                   uint32_t n_issuer, uint32_t bit_width);

// ---- text format ----
//
// One clause per line, implicit conjunction; '#' starts a comment.
//
//   age > 18
//   country in { "US", "DE" }
//   status != "revoked"
//   user_id notin { 0x05, 0x09, 23 }
//   user_id notin[32] { ... }          # explicit committed capacity
//
// Numeric constants are decimal or 0x-hex (64-bit); strings are quoted and
// hashed to field elements for categorical attributes.

Predicate parse_predicate(const std::string& text, std::span<const AttributeId> universe);

std::string predicate_to_text(const Predicate& phi, std::span<const AttributeId> universe);

}  // namespace anoncred
