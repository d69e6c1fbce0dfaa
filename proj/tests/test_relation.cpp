// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anoncred/errors.hpp"
#include "fixtures.hpp"

using namespace anoncred;
using namespace anoncred::testfix;

namespace {

// circuit-side acceptance: witness generation succeeds and the system checks out
bool circuit_accepts(const RelationDescription& desc, const Statement& stmt, const Witness& w) {
    try {
        auto built = relation_assign(desc, stmt, w);
        return built.cs.is_satisfied(built.assignment);
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

TEST_CASE("honest witness satisfies both relation paths") {
    Rng rng(100);
    TestWorld w = make_world(rng);
    CHECK(relation_check(w.desc, w.stmt, w.wit));
    CHECK(circuit_accepts(w.desc, w.stmt, w.wit));
}

TEST_CASE("fresh credential under empty lists uses the boundary gap") {
    Rng rng(101);
    TestWorld w = make_world(rng);
    CHECK(w.wit.gap.left_position == 0);
    CHECK(w.wit.gap.left == Fr::zero());
    CHECK(w.wit.gap.right == -Fr::one());
}

TEST_CASE("revoking the credential invalidates the old witness") {
    Rng rng(102);
    TestWorld w = make_world(rng);
    REQUIRE(relation_check(w.desc, w.stmt, w.wit));

    Fr h = credential_hash_parts(w.attr_root.root, w.sig);
    Witness stale = w.wit;
    revoke_in(w.issuers[w.credential_issuer], h, w.n);

    // stale witness against the refreshed statement: issuer opening breaks
    Statement fresh_stmt = w.stmt;
    fresh_stmt.issuer_set_root = issuer_set_root(w.issuers, w.n);
    CHECK(!relation_check(w.desc, fresh_stmt, stale));
    CHECK(!circuit_accepts(w.desc, fresh_stmt, stale));

    // refreshed issuer data offers no gap for the revoked hash
    refresh_world(w);
    CHECK(find_gap(w.issuers[w.credential_issuer].revoc_layout, h) == std::nullopt);
    CHECK(!relation_check(w.desc, w.stmt, w.wit));
}

TEST_CASE("gap with non-adjacent right index is rejected") {
    Rng rng(103);
    TestWorld w = make_world(rng);
    // move the right opening to left_position + 2
    auto layout = w.issuers[w.credential_issuer].revoc_layout;
    MerkleTree tree(vc_setup(VcInstance::Revoc, w.n), layout);
    Witness bad = w.wit;
    bad.gap.right_proof = tree.open(bad.gap.left_position + 2);
    bad.gap.right = layout[bad.gap.left_position + 2];
    CHECK(!relation_check(w.desc, w.stmt, bad));
    CHECK(!circuit_accepts(w.desc, w.stmt, bad));
}

TEST_CASE("gap search matches brute-force membership exhaustively") {
    // all sorted lists of size <= 3 over a tiny hash domain {1..6}, sentinel layout n=8
    std::vector<std::vector<uint64_t>> lists = {{}};
    for (uint64_t a = 1; a <= 6; ++a) {
        lists.push_back({a});
        for (uint64_t b = a + 1; b <= 6; ++b) {
            lists.push_back({a, b});
            for (uint64_t c = b + 1; c <= 6; ++c) lists.push_back({a, b, c});
        }
    }
    for (const auto& list : lists) {
        std::vector<Fr> entries;
        for (uint64_t v : list) entries.push_back(Fr::from_u64(v));
        auto layout = list_layout(entries, 8);
        for (uint64_t h = 1; h <= 7; ++h) {
            Fr hv = Fr::from_u64(h);
            bool member = std::find(list.begin(), list.end(), h) != list.end();
            auto gap = find_gap(layout, hv);
            CHECK(gap.has_value() == !member);
            if (gap) {
                CHECK(gap->left.cmp(hv) < 0);
                CHECK(hv.cmp(gap->right) < 0);
                CHECK(layout[gap->left_position] == gap->left);
                CHECK(layout[gap->left_position + 1] == gap->right);
            }
        }
        // endpoints are never provable
        CHECK(find_gap(layout, Fr::zero()) == std::nullopt);
        CHECK(find_gap(layout, -Fr::one()) == std::nullopt);
    }
}

TEST_CASE("statement encoding is injective over constants, root and ctx") {
    Rng rng(104);
    TestWorld w = make_world(rng);
    auto base = statement_inputs(w.desc, w.stmt);

    Statement s2 = w.stmt;
    std::get<CompareClause>(s2.phi.clauses[0]).constant = Fr::from_u64(21);
    CHECK(statement_inputs(w.desc, s2) != base);

    Statement s3 = w.stmt;
    s3.ctx.push_back(0x01);
    CHECK(statement_inputs(w.desc, s3) != base);

    Statement s4 = w.stmt;
    s4.issuer_set_root.root += Fr::one();
    CHECK(statement_inputs(w.desc, s4) != base);

    // mismatched shape is refused outright
    Statement s5 = w.stmt;
    s5.phi.clauses.push_back(CompareClause{1, CmpOp::Lt, Fr::from_u64(99), true});
    CHECK_THROWS_AS(statement_inputs(w.desc, s5), Error);
}

TEST_CASE("oracle equivalence under randomized mutations") {
    Rng rng(105);
    int agreements = 0;
    const int kTrials = 60;
    for (int t = 0; t < kTrials; ++t) {
        TestWorld w = make_world(rng);
        Statement stmt = w.stmt;
        Witness wit = w.wit;
        switch (t % 10) {
            case 0: break;  // honest
            case 1: wit.attrs[0].value += Fr::one(); break;
            case 2: wit.attrs[0].position ^= 1; break;
            case 3: wit.gap.left += Fr::one(); break;
            case 4: wit.sig.s += Fq::one(); break;
            case 5: stmt.issuer_set_root.root += Fr::one(); break;
            case 6: wit.issuer_position ^= 1; break;
            case 7: wit.attr_root.root += Fr::one(); break;
            case 8: wit.gap.right_proof.siblings[0] += Fr::one(); break;
            case 9: std::swap(wit.gap.left, wit.gap.right); break;
        }
        bool native = relation_check(w.desc, stmt, wit);
        bool circuit = circuit_accepts(w.desc, stmt, wit);
        CHECK(native == circuit);
        if (t % 10 == 0) CHECK(native);  // honest cases must accept
        if (t % 10 != 0) CHECK(!native);
        agreements += (native == circuit);
    }
    CHECK(agreements == kTrials);
}

TEST_CASE("predicate failure rejects even with consistent trees") {
    Rng rng(106);
    // age 15 fails "age > 18" although every opening is honest
    TestWorld w = make_world(
        rng, {{1, Fr::from_u64(15)}, {2, Fr::from_u64(77)}, {3, Fr::from_u64(7)}});
    CHECK(!relation_check(w.desc, w.stmt, w.wit));
    CHECK(!circuit_accepts(w.desc, w.stmt, w.wit));
}

TEST_CASE("multi-clause predicate with membership and committed list") {
    Rng rng(107);
    Predicate phi;
    phi.clauses.push_back(CompareClause{1, CmpOp::Gt, Fr::from_u64(18), true});
    phi.clauses.push_back(MemberClause{2, {Fr::from_u64(66), Fr::from_u64(77)}});
    phi.clauses.push_back(NotInListClause{3, {Fr::from_u64(5), Fr::from_u64(9)}, 8});

    TestWorld w = make_world(rng, {}, phi);
    CHECK(relation_check(w.desc, w.stmt, w.wit));
    CHECK(circuit_accepts(w.desc, w.stmt, w.wit));

    // list membership violation: score 5 sits in the committed list
    TestWorld bad = make_world(
        rng, {{1, Fr::from_u64(25)}, {2, Fr::from_u64(77)}, {3, Fr::from_u64(5)}}, phi);
    CHECK(!relation_check(bad.desc, bad.stmt, bad.wit));
    CHECK(!circuit_accepts(bad.desc, bad.stmt, bad.wit));
}

TEST_CASE("relation description determinism and size reporting") {
    Rng rng(108);
    TestWorld w = make_world(rng);
    auto cs1 = relation_build(w.desc);
    auto cs2 = relation_build(w.desc);
    CHECK(cs1.structural_digest() == cs2.structural_digest());
    CHECK(cs1.num_constraints() == cs2.num_constraints());
    CHECK(w.desc.shape_id() ==
          pred_shape_id(w.stmt.phi, w.desc.n_attr, w.desc.n_revoc, w.desc.n_issuer, 64));

    // assigned and keygen circuits share one layout
    auto built = relation_assign(w.desc, w.stmt, w.wit);
    CHECK(built.cs.structural_digest() == cs1.structural_digest());
    MESSAGE("toy relation constraints: ", cs1.num_constraints());
}

TEST_CASE("credential hash splits the scalar consistently") {
    Rng rng(109);
    for (int i = 0; i < 20; ++i) {
        Fq s = rng.random_fq();
        auto [lo, hi] = split_scalar_127(s);
        // recompose: lo + hi * 2^127
        Fr two127 = Fr::one();
        for (int j = 0; j < 127; ++j) two127 = two127.dbl();
        CHECK(lo + hi * two127 == Fr::from_u256(s.to_u256()));
    }
    // distinct signatures over one commitment hash differently
    auto [sk, vk] = sig_keygen(rng);
    Fr root = rng.random_fr();
    Signature s1 = sig_sign(sk, root, rng);
    Signature s2 = sig_sign(sk, root, rng);
    CHECK(credential_hash_parts(root, s1) != credential_hash_parts(root, s2));
}
