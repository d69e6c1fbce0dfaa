// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#include "anoncred/relation.hpp"

#include <algorithm>

#include "anoncred/encoding.hpp"
#include "anoncred/errors.hpp"
#include "anoncred/gadgets.hpp"

namespace anoncred {

namespace {

uint32_t log2_pow2(uint32_t n) {
    uint32_t d = 0;
    while ((1u << d) < n) ++d;
    return d;
}

bool is_pow2(uint32_t n) { return n >= 2 && (n & (n - 1)) == 0; }

const Fr& sentinel() {
    static const Fr s = -Fr::one();
    return s;
}

}  // namespace

RelationDescription RelationDescription::make(const Predicate& phi, uint32_t n_attr,
                                              uint32_t n_revoc, uint32_t n_issuer) {
    if (!is_pow2(n_attr) || !is_pow2(n_revoc) || !is_pow2(n_issuer))
        fail(Err::InvalidInput, "relation: tree capacities must be powers of two");
    RelationDescription d;
    d.n_attr = n_attr;
    d.n_revoc = n_revoc;
    d.n_issuer = n_issuer;
    d.bit_width = 64;
    d.shape = pred_structure(phi);
    return d;
}

std::vector<uint8_t> RelationDescription::shape_id() const {
    Encoder enc;
    enc.u8(1);  // shape format version
    enc.u32(n_attr);
    enc.u32(n_revoc);
    enc.u32(n_issuer);
    enc.u32(bit_width);
    enc.u32(shape.num_slots);
    enc.u32((uint32_t)shape.clauses.size());
    for (const auto& cs : shape.clauses) {
        enc.u8((uint8_t)cs.kind);
        enc.u32(cs.slot);
        enc.u8((uint8_t)cs.op);
        enc.u8(cs.numeric ? 1 : 0);
        enc.u32(cs.member_count);
        enc.u32(cs.list_depth);
    }
    return enc.take();
}

// ---- statement encoding ----

std::vector<Fr> statement_inputs(const RelationDescription& desc, const Statement& stmt) {
    if (pred_structure(stmt.phi) != desc.shape)
        fail(Err::UnsupportedShape, "statement predicate does not match the relation shape");

    std::vector<Fr> inputs;
    inputs.push_back(hash_to_field(stmt.ctx));
    inputs.push_back(stmt.issuer_set_root.root);
    for (uint32_t idx : pred_slot_indices(stmt.phi)) inputs.push_back(Fr::from_u64(idx));
    for (const auto& clause : stmt.phi.clauses) {
        std::visit(
            [&](const auto& cl) {
                using T = std::decay_t<decltype(cl)>;
                if constexpr (std::is_same_v<T, CompareClause>) {
                    inputs.push_back(cl.constant);
                } else if constexpr (std::is_same_v<T, MemberClause>) {
                    for (const auto& m : cl.members) inputs.push_back(m);
                } else {
                    inputs.push_back(list_layout_root(cl));
                }
            },
            clause);
    }
    return inputs;
}

std::vector<Fr> list_layout(std::span<const Fr> sorted_entries, uint32_t capacity) {
    if (sorted_entries.size() + 2 > capacity)
        fail(Err::InvalidInput, "committed list exceeds capacity");
    std::vector<Fr> layout;
    layout.reserve(capacity);
    layout.push_back(Fr::zero());
    Fr prev = Fr::zero();
    for (const Fr& e : sorted_entries) {
        if (e.cmp(prev) <= 0 || e == sentinel())
            fail(Err::InvalidInput, "list entries must be strictly ascending inside (0, r-1)");
        layout.push_back(e);
        prev = e;
    }
    layout.resize(capacity, sentinel());
    return layout;
}

Fr list_layout_root(const NotInListClause& clause) {
    auto layout = list_layout(clause.list, clause.capacity);
    auto params = vc_setup(VcInstance::Revoc, clause.capacity);
    return vc_commit(params, layout).root;
}

// ---- credential hash ----

std::pair<Fr, Fr> split_scalar_127(const Fq& s) {
    U256 v = s.to_u256();
    U256 lo(v.v[0], v.v[1] & 0x7fffffffffffffffull, 0, 0);
    U256 hi((v.v[1] >> 63) | (v.v[2] << 1), (v.v[2] >> 63) | (v.v[3] << 1), v.v[3] >> 63, 0);
    return {Fr::from_u256(lo), Fr::from_u256(hi)};
}

Fr credential_hash_parts(const Fr& attr_root, const Signature& sig) {
    auto [s_lo, s_hi] = split_scalar_127(sig.s);
    std::array<Fr, 5> in = {attr_root, sig.rx, sig.ry, s_lo, s_hi};
    return hash_to_field_elems(dom::CRED_HASH, in);
}

// ---- gap search ----

std::optional<GapResult> find_gap(std::span<const Fr> layout, const Fr& h) {
    U256 hv = h.to_u256();
    auto it = std::lower_bound(layout.begin(), layout.end(), hv,
                               [](const Fr& e, const U256& v) { return e.to_u256() < v; });
    if (it == layout.end()) return std::nullopt;  // h above the sentinel: impossible range
    if (*it == h) return std::nullopt;            // exact member
    if (it == layout.begin()) return std::nullopt;
    GapResult gap;
    gap.left_position = (uint32_t)(it - layout.begin() - 1);
    gap.left = *(it - 1);
    gap.right = *it;
    return gap;
}

// ---- native checker ----

namespace {

bool check_gap(const VcParams& params, const Commitment& root, const WitnessGap& gap,
               const Fr& h) {
    if (gap.left_position + 1 >= params.n) return false;
    if (gap.left_proof.index != gap.left_position) return false;
    if (gap.right_proof.index != gap.left_position + 1) return false;
    if (!vc_verify(params, root, gap.left_position, gap.left, gap.left_proof)) return false;
    if (!vc_verify(params, root, gap.left_position + 1, gap.right, gap.right_proof))
        return false;
    // strict integer ordering left < h < right
    return gap.left.cmp(h) < 0 && h.cmp(gap.right) < 0;
}

}  // namespace

bool relation_check(const RelationDescription& desc, const Statement& stmt, const Witness& w) {
    try {
        if (pred_structure(stmt.phi) != desc.shape) return false;
        auto slots = pred_slot_indices(stmt.phi);
        if (w.attrs.size() != slots.size()) return false;

        auto attr_params = vc_setup(VcInstance::Attr, desc.n_attr);
        auto revoc_params = vc_setup(VcInstance::Revoc, desc.n_revoc);
        auto issuer_params = vc_setup(VcInstance::Issuer, desc.n_issuer);

        // (a) committed attribute openings, slot indices as claimed
        std::map<uint32_t, Fr> assignment;
        for (size_t s = 0; s < slots.size(); ++s) {
            const auto& attr = w.attrs[s];
            if (attr.idx != Fr::from_u64(slots[s])) return false;
            Fr leaf = vc_leaf_attr(attr.idx, attr.value);
            if (attr.proof.index != attr.position) return false;
            if (!vc_verify(attr_params, w.attr_root, attr.position, leaf, attr.proof))
                return false;
            assignment[slots[s]] = attr.value;
        }

        // (b) predicate satisfaction
        if (!pred_eval(stmt.phi, assignment)) return false;

        // per-clause committed-list gaps
        size_t gap_ordinal = 0;
        for (const auto& clause : stmt.phi.clauses) {
            const auto* nil = std::get_if<NotInListClause>(&clause);
            if (!nil) continue;
            if (gap_ordinal >= w.list_gaps.size()) return false;
            const auto& gap = w.list_gaps[gap_ordinal++];
            auto params = vc_setup(VcInstance::Revoc, nil->capacity);
            Commitment root{list_layout_root(*nil)};
            if (!check_gap(params, root, gap, assignment.at(nil->idx))) return false;
        }
        if (gap_ordinal != w.list_gaps.size()) return false;

        // (c) issuer signature over the attribute commitment
        if (!sig_verify(w.issuer_pk, w.attr_root.root, w.sig)) return false;

        // (d) issuer membership in the committed hiding set
        Fr issuer_leaf = vc_leaf_issuer(w.issuer_pk.pk, w.revoc_root.root);
        if (w.issuer_proof.index != w.issuer_position) return false;
        if (!vc_verify(issuer_params, stmt.issuer_set_root, w.issuer_position, issuer_leaf,
                       w.issuer_proof))
            return false;

        // (e)(f)(g) revocation gap around the credential hash
        Fr h = credential_hash_parts(w.attr_root.root, w.sig);
        return check_gap(revoc_params, w.revoc_root, w.gap, h);
    } catch (const std::exception&) {
        return false;
    }
}

// ---- circuit emission ----

namespace {

struct GapVars {
    LinComb left, right;
    std::vector<LinComb> left_bits, right_bits;
    std::vector<LinComb> left_sibs, right_sibs;
};

// allocates gap witness wires and enforces both openings plus adjacency;
// the ordering checks against the target value stay with the caller
GapVars emit_gap(CircuitBuilder& bld, uint32_t depth, const LinComb& root,
                 const WitnessGap* gap) {
    GapVars g;
    g.left = bld.witness(gap ? gap->left : Fr::zero());
    g.right = bld.witness(gap ? gap->right : Fr::zero());

    uint32_t lpos = gap ? gap->left_position : 0;
    uint32_t rpos = lpos + 1;
    LinComb lpacked, rpacked;
    Fr pow = Fr::one();
    for (uint32_t i = 0; i < depth; ++i) {
        g.left_bits.push_back(g_boolean(bld, (lpos >> i) & 1));
        g.right_bits.push_back(g_boolean(bld, gap ? ((rpos >> i) & 1) : 0));
        lpacked += g.left_bits.back().scaled(pow);
        rpacked += g.right_bits.back().scaled(pow);
        pow = pow.dbl();
        g.left_sibs.push_back(
            bld.witness(gap && i < gap->left_proof.siblings.size() ? gap->left_proof.siblings[i]
                                                                   : Fr::zero()));
        g.right_sibs.push_back(
            bld.witness(gap && i < gap->right_proof.siblings.size()
                            ? gap->right_proof.siblings[i]
                            : Fr::zero()));
    }
    // right index = left index + 1, checked over the packed forms
    bld.assert_equal(rpacked, lpacked + LinComb(Fr::one()));

    LinComb lroot =
        g_merkle_root(bld, dom::NODE_REVOC, g.left, g.left_bits, g.left_sibs);
    bld.assert_equal(lroot, root);
    LinComb rroot =
        g_merkle_root(bld, dom::NODE_REVOC, g.right, g.right_bits, g.right_sibs);
    bld.assert_equal(rroot, root);
    return g;
}

}  // namespace

void relation_emit(CircuitBuilder& bld, const RelationDescription& desc, const Statement* stmt,
                   const Witness* w) {
    const bool proving = stmt != nullptr;
    if (proving && pred_structure(stmt->phi) != desc.shape)
        fail(Err::UnsupportedShape, "statement predicate does not match the relation shape");
    if (proving && w == nullptr) fail(Err::UnsatisfiedWitness, "witness missing");
    if (w && w->attrs.size() != desc.shape.num_slots)
        fail(Err::UnsatisfiedWitness, "witness slot count mismatch");

    const uint32_t depth_a = log2_pow2(desc.n_attr);
    const uint32_t depth_r = log2_pow2(desc.n_revoc);
    const uint32_t depth_i = log2_pow2(desc.n_issuer);

    // ---- public inputs, fixed order (must mirror statement_inputs) ----
    std::vector<Fr> input_values;
    if (proving) input_values = statement_inputs(desc, *stmt);
    size_t next_input = 0;
    auto next_in = [&]() {
        Fr v = proving ? input_values.at(next_input) : Fr::zero();
        ++next_input;
        return LinComb::wire(bld.input(v));
    };

    LinComb in_ctx = next_in();
    (void)in_ctx;  // context binding happens in the proof transcript, not in-circuit
    LinComb in_set_root = next_in();
    std::vector<LinComb> in_slot_idx;
    for (uint32_t s = 0; s < desc.shape.num_slots; ++s) in_slot_idx.push_back(next_in());
    struct ClauseInputs {
        std::vector<LinComb> constants;
    };
    std::vector<ClauseInputs> clause_in;
    for (const auto& cs : desc.shape.clauses) {
        ClauseInputs ci;
        switch (cs.kind) {
            case ClauseShape::Kind::Compare: ci.constants.push_back(next_in()); break;
            case ClauseShape::Kind::Member:
                for (uint32_t i = 0; i < cs.member_count; ++i) ci.constants.push_back(next_in());
                break;
            case ClauseShape::Kind::NotInList: ci.constants.push_back(next_in()); break;
        }
        clause_in.push_back(std::move(ci));
    }

    // ---- witness: credential commitment and issuer signature ----
    LinComb c_a = bld.witness(w ? w->attr_root.root : Fr::zero());
    VerifyingKey vk = w ? w->issuer_pk : VerifyingKey{};
    Signature sig = w ? w->sig : Signature{};
    auto schnorr = g_schnorr_witness(bld, vk, sig);
    g_schnorr_verify(bld, schnorr, c_a);

    // ---- attribute slot openings against c_a ----
    std::vector<LinComb> slot_values;
    for (uint32_t s = 0; s < desc.shape.num_slots; ++s) {
        const WitnessAttr* attr = w ? &w->attrs[s] : nullptr;
        LinComb v = bld.witness(attr ? attr->value : Fr::zero());
        slot_values.push_back(v);
        LinComb leaf = g_hash2_tagged(bld, dom::HASH2, in_slot_idx[s], v);
        std::vector<LinComb> bits, sibs;
        uint32_t pos = attr ? attr->position : 0;
        for (uint32_t i = 0; i < depth_a; ++i) {
            bits.push_back(g_boolean(bld, (pos >> i) & 1));
            sibs.push_back(bld.witness(attr && i < attr->proof.siblings.size()
                                           ? attr->proof.siblings[i]
                                           : Fr::zero()));
        }
        LinComb root = g_merkle_root(bld, dom::NODE_ATTR, leaf, bits, sibs);
        bld.assert_equal(root, c_a);
    }

    // per-slot decompositions, created on first use
    std::vector<std::optional<std::vector<LinComb>>> slot_bits64(desc.shape.num_slots);
    auto bits64_of = [&](uint32_t slot) -> const std::vector<LinComb>& {
        if (!slot_bits64[slot])
            slot_bits64[slot] = g_bits(bld, slot_values[slot], desc.bit_width);
        return *slot_bits64[slot];
    };
    std::vector<std::optional<CanonicalBits>> slot_canon(desc.shape.num_slots);
    auto canon_of = [&](uint32_t slot) -> const CanonicalBits& {
        if (!slot_canon[slot]) slot_canon[slot] = g_canonical_bits(bld, slot_values[slot]);
        return *slot_canon[slot];
    };

    // ---- predicate clauses ----
    size_t gap_ordinal = 0;
    for (size_t k = 0; k < desc.shape.clauses.size(); ++k) {
        const auto& cs = desc.shape.clauses[k];
        const LinComb& v = slot_values[cs.slot];
        switch (cs.kind) {
            case ClauseShape::Kind::Compare: {
                const LinComb& c = clause_in[k].constants[0];
                if (cs.op == CmpOp::Eq) {
                    bld.assert_equal(v, c);
                    break;
                }
                if (cs.op == CmpOp::Ne) {
                    bld.assert_zero(g_is_zero(bld, v - c));
                    break;
                }
                // ordered comparison: value range-checked to the clause width
                (void)bits64_of(cs.slot);
                LinComb v_lt_c = g_lt_bounded(bld, v, c, desc.bit_width);
                LinComb c_lt_v = g_lt_bounded(bld, c, v, desc.bit_width);
                switch (cs.op) {
                    case CmpOp::Lt: bld.assert_equal(v_lt_c, LinComb(Fr::one())); break;
                    case CmpOp::Le: bld.assert_zero(c_lt_v); break;
                    case CmpOp::Ge: bld.assert_zero(v_lt_c); break;
                    case CmpOp::Gt: bld.assert_equal(c_lt_v, LinComb(Fr::one())); break;
                    default: break;
                }
                break;
            }
            case ClauseShape::Kind::Member: {
                const auto& members = clause_in[k].constants;
                LinComb acc = v - members[0];
                for (size_t i = 1; i < members.size(); ++i) acc = bld.mul(acc, v - members[i]);
                bld.assert_zero(acc);
                break;
            }
            case ClauseShape::Kind::NotInList: {
                const WitnessGap* gap =
                    (w && gap_ordinal < w->list_gaps.size()) ? &w->list_gaps[gap_ordinal]
                                                             : nullptr;
                ++gap_ordinal;
                auto g = emit_gap(bld, cs.list_depth, clause_in[k].constants[0], gap);
                const CanonicalBits& vc = canon_of(cs.slot);
                g_assert_lt(bld, g_canonical_bits(bld, g.left), vc);
                g_assert_lt(bld, vc, g_canonical_bits(bld, g.right));
                break;
            }
        }
    }

    // ---- issuer membership ----
    LinComb c_r = bld.witness(w ? w->revoc_root.root : Fr::zero());
    std::array<LinComb, 2> pk_elems = {schnorr.pk.x, schnorr.pk.y};
    LinComb pk_digest = g_sponge(bld, dom::PK_DIGEST, pk_elems);
    LinComb issuer_leaf = g_hash2_tagged(bld, dom::HASH2, pk_digest, c_r);
    {
        std::vector<LinComb> bits, sibs;
        uint32_t pos = w ? w->issuer_position : 0;
        for (uint32_t i = 0; i < depth_i; ++i) {
            bits.push_back(g_boolean(bld, (pos >> i) & 1));
            sibs.push_back(bld.witness(w && i < w->issuer_proof.siblings.size()
                                           ? w->issuer_proof.siblings[i]
                                           : Fr::zero()));
        }
        LinComb root = g_merkle_root(bld, dom::NODE_ISSUER, issuer_leaf, bits, sibs);
        bld.assert_equal(root, in_set_root);
    }

    // ---- revocation gap around the credential hash ----
    std::array<LinComb, 5> ch_in = {c_a, schnorr.r.x, schnorr.r.y, schnorr.s_lo, schnorr.s_hi};
    LinComb cred_hash = g_sponge(bld, dom::CRED_HASH, ch_in);
    auto g = emit_gap(bld, depth_r, c_r, w ? &w->gap : nullptr);
    CanonicalBits ch_c = g_canonical_bits(bld, cred_hash);
    g_assert_lt(bld, g_canonical_bits(bld, g.left), ch_c);
    g_assert_lt(bld, ch_c, g_canonical_bits(bld, g.right));

    // every public input participates in at least one constraint so its
    // verification-key column is nonzero
    for (uint32_t i = 1; i <= bld.cs().num_inputs(); ++i)
        bld.enforce(LinComb::wire(i), Fr::one(), LinComb::wire(i));
}

ConstraintSystem relation_build(const RelationDescription& desc) {
    CircuitBuilder bld(false);
    relation_emit(bld, desc, nullptr, nullptr);
    return std::move(bld.cs());
}

AssignedCircuit relation_assign(const RelationDescription& desc, const Statement& stmt,
                                const Witness& w) {
    CircuitBuilder bld(true);
    relation_emit(bld, desc, &stmt, &w);
    AssignedCircuit out{std::move(bld.cs()), {}};
    out.assignment = bld.take_assignment();
    return out;
}

size_t relation_constraint_count(const RelationDescription& desc) {
    return relation_build(desc).num_constraints();
}

// =============================================================================
// witness serialization
// =============================================================================

namespace {

void put_proof(Encoder& enc, const OpeningProof& p, uint32_t depth) {
    enc.u32(p.index);
    for (uint32_t i = 0; i < depth; ++i)
        enc.field(i < p.siblings.size() ? p.siblings[i] : Fr::zero());
}

std::optional<OpeningProof> get_proof(Decoder& dec, uint32_t depth) {
    OpeningProof p;
    auto idx = dec.u32();
    if (!idx) return std::nullopt;
    p.index = *idx;
    for (uint32_t i = 0; i < depth; ++i) {
        auto f = dec.field();
        if (!f) return std::nullopt;
        p.siblings.push_back(*f);
    }
    return p;
}

void put_gap(Encoder& enc, const WitnessGap& g, uint32_t depth) {
    enc.u32(g.left_position);
    enc.field(g.left);
    enc.field(g.right);
    put_proof(enc, g.left_proof, depth);
    put_proof(enc, g.right_proof, depth);
}

std::optional<WitnessGap> get_gap(Decoder& dec, uint32_t depth) {
    WitnessGap g;
    auto pos = dec.u32();
    auto l = dec.field();
    auto r = dec.field();
    if (!pos || !l || !r) return std::nullopt;
    g.left_position = *pos;
    g.left = *l;
    g.right = *r;
    auto lp = get_proof(dec, depth);
    auto rp = get_proof(dec, depth);
    if (!lp || !rp) return std::nullopt;
    g.left_proof = std::move(*lp);
    g.right_proof = std::move(*rp);
    return g;
}

}  // namespace

std::vector<uint8_t> witness_to_bytes(const RelationDescription& desc, const Witness& w) {
    const uint32_t depth_a = log2_pow2(desc.n_attr);
    const uint32_t depth_r = log2_pow2(desc.n_revoc);
    const uint32_t depth_i = log2_pow2(desc.n_issuer);

    Encoder enc;
    enc.field(w.attr_root.root);
    enc.append(sig_to_bytes(w.sig));
    enc.u32(w.issuer_position);
    enc.append(vk_to_bytes(w.issuer_pk));
    enc.field(w.revoc_root.root);
    put_proof(enc, w.issuer_proof, depth_i);
    for (uint32_t s = 0; s < desc.shape.num_slots; ++s) {
        const WitnessAttr& a =
            s < w.attrs.size() ? w.attrs[s] : WitnessAttr{};
        enc.u32(a.position);
        enc.field(a.idx);
        enc.field(a.value);
        put_proof(enc, a.proof, depth_a);
    }
    put_gap(enc, w.gap, depth_r);
    size_t gap_ordinal = 0;
    for (const auto& cs : desc.shape.clauses) {
        if (cs.kind != ClauseShape::Kind::NotInList) continue;
        const WitnessGap& g = gap_ordinal < w.list_gaps.size() ? w.list_gaps[gap_ordinal]
                                                               : WitnessGap{};
        ++gap_ordinal;
        put_gap(enc, g, cs.list_depth);
    }
    return enc.take();
}

std::optional<Witness> witness_from_bytes(const RelationDescription& desc,
                                          std::span<const uint8_t> data) {
    const uint32_t depth_a = log2_pow2(desc.n_attr);
    const uint32_t depth_r = log2_pow2(desc.n_revoc);
    const uint32_t depth_i = log2_pow2(desc.n_issuer);

    Decoder dec(data);
    Witness w;
    auto root = dec.field();
    if (!root) return std::nullopt;
    w.attr_root.root = *root;
    auto sig_bytes = dec.take(96);
    if (!sig_bytes) return std::nullopt;
    auto sig = sig_from_bytes(*sig_bytes);
    if (!sig) return std::nullopt;
    w.sig = *sig;
    auto ipos = dec.u32();
    if (!ipos) return std::nullopt;
    w.issuer_position = *ipos;
    auto vk_bytes = dec.take(64);
    if (!vk_bytes) return std::nullopt;
    auto vk = vk_from_bytes(*vk_bytes);
    if (!vk) return std::nullopt;
    w.issuer_pk = *vk;
    auto rroot = dec.field();
    if (!rroot) return std::nullopt;
    w.revoc_root.root = *rroot;
    auto iproof = get_proof(dec, depth_i);
    if (!iproof) return std::nullopt;
    w.issuer_proof = std::move(*iproof);
    for (uint32_t s = 0; s < desc.shape.num_slots; ++s) {
        WitnessAttr a;
        auto pos = dec.u32();
        auto idx = dec.field();
        auto value = dec.field();
        if (!pos || !idx || !value) return std::nullopt;
        a.position = *pos;
        a.idx = *idx;
        a.value = *value;
        auto proof = get_proof(dec, depth_a);
        if (!proof) return std::nullopt;
        a.proof = std::move(*proof);
        w.attrs.push_back(std::move(a));
    }
    auto gap = get_gap(dec, depth_r);
    if (!gap) return std::nullopt;
    w.gap = std::move(*gap);
    for (const auto& cs : desc.shape.clauses) {
        if (cs.kind != ClauseShape::Kind::NotInList) continue;
        auto g = get_gap(dec, cs.list_depth);
        if (!g) return std::nullopt;
        w.list_gaps.push_back(std::move(*g));
    }
    if (!dec.done()) return std::nullopt;
    return w;
}

}  // namespace anoncred
