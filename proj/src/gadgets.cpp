// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#include "anoncred/gadgets.hpp"

#include "anoncred/poseidon.hpp"

namespace anoncred {

LinComb g_boolean(CircuitBuilder& bld, bool hint) {
    LinComb b = bld.witness(hint ? Fr::one() : Fr::zero());
    bld.enforce(b, b - Fr::one(), LinComb());
    return b;
}

std::vector<LinComb> g_bits(CircuitBuilder& bld, const LinComb& x, size_t n) {
    U256 v = bld.proving() ? bld.value(x).to_u256() : U256();
    std::vector<LinComb> bits;
    bits.reserve(n);
    LinComb packed;
    Fr pow = Fr::one();
    for (size_t i = 0; i < n; ++i) {
        LinComb b = g_boolean(bld, i < 256 && v.bit(i));
        packed += b.scaled(pow);
        pow = pow.dbl();
        bits.push_back(std::move(b));
    }
    bld.assert_equal(packed, x);
    return bits;
}

void g_assert_lt_const(CircuitBuilder& bld, std::span<const LinComb> bits, const U256& bound) {
    // values below 2^n are trivially below a larger bound
    if (bound.bit_length() > bits.size()) return;
    // prefix-equality chain, most significant bit first: while the prefix
    // still equals the bound's, a 1-bit where the bound has 0 is forbidden
    LinComb eq = Fr::one();
    for (size_t i = bits.size(); i-- > 0;) {
        if (bound.bit(i)) {
            eq = bld.mul(eq, bits[i]);
        } else {
            bld.enforce(eq, bits[i], LinComb());
        }
    }
    bld.assert_zero(eq);  // exact equality with the bound is also rejected
}

LinComb g_lt_bounded(CircuitBuilder& bld, const LinComb& a, const LinComb& b, size_t k) {
    // both operands < 2^k, k <= 126: bit k of (2^k + b - a - 1) is [a < b]
    Fr two_k = Fr::one();
    for (size_t i = 0; i < k; ++i) two_k = two_k.dbl();
    LinComb diff = LinComb(two_k) + b - a - LinComb(Fr::one());
    auto bits = g_bits(bld, diff, k + 1);
    return bits[k];
}

LinComb g_is_zero(CircuitBuilder& bld, const LinComb& x) {
    Fr xv = bld.proving() ? bld.value(x) : Fr::zero();
    LinComb z = bld.witness(xv.is_zero() ? Fr::one() : Fr::zero());
    LinComb inv = bld.witness(xv.is_zero() ? Fr::zero() : xv.inverse());
    bld.enforce(x, inv, LinComb(Fr::one()) - z);
    bld.enforce(x, z, LinComb());
    return z;
}

LinComb g_select(CircuitBuilder& bld, const LinComb& bit, const LinComb& t, const LinComb& f) {
    return f + bld.mul(bit, t - f);
}

CanonicalBits g_canonical_bits(CircuitBuilder& bld, const LinComb& x) {
    CanonicalBits out;
    out.bits = g_bits(bld, x, 254);
    g_assert_lt_const(bld, out.bits, FrParams::MOD);
    Fr pow = Fr::one();
    for (size_t i = 0; i < 127; ++i) {
        out.lo += out.bits[i].scaled(pow);
        out.hi += out.bits[127 + i].scaled(pow);
        pow = pow.dbl();
    }
    return out;
}

void g_assert_lt(CircuitBuilder& bld, const CanonicalBits& x, const CanonicalBits& y) {
    LinComb gt_hi = g_lt_bounded(bld, x.hi, y.hi, 127);
    LinComb eq_hi = g_is_zero(bld, x.hi - y.hi);
    LinComb gt_lo = g_lt_bounded(bld, x.lo, y.lo, 127);
    LinComb ok = gt_hi + bld.mul(eq_hi, gt_lo);
    bld.assert_equal(ok, LinComb(Fr::one()));
}

void g_assert_lt_canonical(CircuitBuilder& bld, const LinComb& x, const LinComb& y) {
    g_assert_lt(bld, g_canonical_bits(bld, x), g_canonical_bits(bld, y));
}

// ---- Poseidon ----

namespace {

LinComb g_pow5(CircuitBuilder& bld, const LinComb& x) {
    LinComb x2 = bld.mul(x, x);
    LinComb x4 = bld.mul(x2, x2);
    return bld.mul(x4, x);
}

const Fr& two64() {
    static const Fr v = Fr::from_u256(U256(0, 1, 0, 0));
    return v;
}

}  // namespace

std::array<LinComb, 3> g_poseidon(CircuitBuilder& bld, std::array<LinComb, 3> s) {
    const auto& p = PoseidonParams::get();
    constexpr size_t HALF = PoseidonParams::FULL_ROUNDS / 2;
    for (size_t r = 0; r < PoseidonParams::ROUNDS; ++r) {
        for (size_t i = 0; i < 3; ++i) s[i] += LinComb(p.rc[r][i]);
        const bool full = r < HALF || r >= HALF + PoseidonParams::PARTIAL_ROUNDS;
        s[0] = g_pow5(bld, s[0]);
        if (full) {
            s[1] = g_pow5(bld, s[1]);
            s[2] = g_pow5(bld, s[2]);
        }
        std::array<LinComb, 3> mixed;
        for (size_t i = 0; i < 3; ++i)
            mixed[i] = s[0].scaled(p.mds[i][0]) + s[1].scaled(p.mds[i][1]) +
                       s[2].scaled(p.mds[i][2]);
        s = std::move(mixed);
    }
    return s;
}

LinComb g_hash2_tagged(CircuitBuilder& bld, uint64_t tag, const LinComb& l, const LinComb& r) {
    auto out = g_poseidon(bld, {LinComb(Fr::from_u64(tag)), l, r});
    return out[1];
}

LinComb g_sponge(CircuitBuilder& bld, uint64_t domain, std::span<const LinComb> elems) {
    Fr cap = Fr::from_u64(domain) + Fr::from_u64((uint64_t)elems.size()) * two64();
    std::array<LinComb, 3> s = {LinComb(cap), LinComb(), LinComb()};
    if (elems.empty()) {
        s = g_poseidon(bld, std::move(s));
        return s[1];
    }
    for (size_t i = 0; i < elems.size(); i += 2) {
        s[1] += elems[i];
        if (i + 1 < elems.size()) s[2] += elems[i + 1];
        s = g_poseidon(bld, std::move(s));
    }
    return s[1];
}

// ---- Merkle ----

LinComb g_merkle_root(CircuitBuilder& bld, uint64_t node_tag, const LinComb& leaf,
                      std::span<const LinComb> index_bits, std::span<const LinComb> siblings) {
    LinComb cur = leaf;
    for (size_t level = 0; level < siblings.size(); ++level) {
        const LinComb& sib = siblings[level];
        // bit = 1 means the current node is the right child
        LinComb l = g_select(bld, index_bits[level], sib, cur);
        LinComb r = cur + sib - l;
        cur = g_hash2_tagged(bld, node_tag, l, r);
    }
    return cur;
}

// ---- Grumpkin ----

namespace {

const Fr& curve_b() {
    static const Fr b = -Fr::from_u64(17);
    return b;
}

PointVar const_point(const GrumpkinAffine& p) {
    return {LinComb(p.x), LinComb(p.y)};
}

}  // namespace

void g_assert_on_curve(CircuitBuilder& bld, const PointVar& p) {
    LinComb xsq = bld.mul(p.x, p.x);
    LinComb ysq = bld.mul(p.y, p.y);
    bld.enforce(xsq, p.x, ysq - LinComb(curve_b()));
}

PointVar g_point_dbl(CircuitBuilder& bld, const PointVar& p) {
    const bool prove = bld.proving();
    Fr xv = prove ? bld.value(p.x) : Fr::zero();
    Fr yv = prove ? bld.value(p.y) : Fr::zero();

    LinComb xsq = bld.mul(p.x, p.x);
    Fr lam_v = prove ? (xv.square() * Fr::from_u64(3)) * yv.dbl().inverse() : Fr::zero();
    LinComb lam = bld.witness(lam_v);
    bld.enforce(lam, p.y.scaled(Fr::from_u64(2)), xsq.scaled(Fr::from_u64(3)));

    Fr x3_v = prove ? lam_v.square() - xv.dbl() : Fr::zero();
    LinComb x3 = bld.witness(x3_v);
    bld.enforce(lam, lam, x3 + p.x.scaled(Fr::from_u64(2)));

    LinComb y3 = bld.witness(prove ? lam_v * (xv - x3_v) - yv : Fr::zero());
    bld.enforce(lam, p.x - x3, y3 + p.y);
    return {x3, y3};
}

PointVar g_point_add(CircuitBuilder& bld, const PointVar& p, const PointVar& q) {
    const bool prove = bld.proving();
    Fr px = prove ? bld.value(p.x) : Fr::zero();
    Fr py = prove ? bld.value(p.y) : Fr::zero();
    Fr qx = prove ? bld.value(q.x) : Fr::zero();
    Fr qy = prove ? bld.value(q.y) : Fr::zero();

    LinComb dx = q.x - p.x;
    Fr dx_v = qx - px;
    // guard: incomplete addition is undefined (and unsound) when x1 == x2
    LinComb inv = bld.witness(prove ? dx_v.inverse() : Fr::zero());
    bld.enforce(dx, inv, LinComb(Fr::one()));

    Fr lam_v = prove ? (qy - py) * dx_v.inverse() : Fr::zero();
    LinComb lam = bld.witness(lam_v);
    bld.enforce(lam, dx, q.y - p.y);

    Fr x3_v = prove ? lam_v.square() - px - qx : Fr::zero();
    LinComb x3 = bld.witness(x3_v);
    bld.enforce(lam, lam, x3 + p.x + q.x);

    LinComb y3 = bld.witness(prove ? lam_v * (px - x3_v) - py : Fr::zero());
    bld.enforce(lam, p.x - x3, y3 + p.y);
    return {x3, y3};
}

namespace {

PointVar g_ladder(CircuitBuilder& bld, std::span<const LinComb> bits, const PointVar* var_base,
                  const GrumpkinAffine* const_base, const GrumpkinAffine& offset) {
    PointVar acc = const_point(offset);
    for (size_t i = bits.size(); i-- > 0;) {
        acc = g_point_dbl(bld, acc);
        PointVar cand = var_base ? g_point_add(bld, acc, *var_base)
                                 : g_point_add(bld, acc, const_point(*const_base));
        acc.x = g_select(bld, bits[i], cand.x, acc.x);
        acc.y = g_select(bld, bits[i], cand.y, acc.y);
    }
    // remove the accumulated offset 2^n * D
    U256 shift;
    size_t n = bits.size();
    shift.v[n / 64] = 1ull << (n % 64);
    GrumpkinAffine tail = grumpkin_mul(offset, shift).to_affine().neg();
    return g_point_add(bld, acc, const_point(tail));
}

}  // namespace

PointVar g_scalar_mul_const(CircuitBuilder& bld, std::span<const LinComb> bits,
                            const GrumpkinAffine& base, const GrumpkinAffine& offset) {
    return g_ladder(bld, bits, nullptr, &base, offset);
}

PointVar g_scalar_mul(CircuitBuilder& bld, std::span<const LinComb> bits, const PointVar& base,
                      const GrumpkinAffine& offset) {
    return g_ladder(bld, bits, &base, nullptr, offset);
}

const GrumpkinAffine& g_ladder_offset1() {
    static const GrumpkinAffine p = grumpkin_hash_to_curve("ladder-offset-1");
    return p;
}

const GrumpkinAffine& g_ladder_offset2() {
    static const GrumpkinAffine p = grumpkin_hash_to_curve("ladder-offset-2");
    return p;
}

// ---- Schnorr ----

SchnorrWitnessVar g_schnorr_witness(CircuitBuilder& bld, const VerifyingKey& vk,
                                    const Signature& sig) {
    SchnorrWitnessVar w;
    w.pk = {bld.witness(vk.pk.x), bld.witness(vk.pk.y)};
    w.r = {bld.witness(sig.rx), bld.witness(sig.ry)};

    U256 s = sig.s.to_u256();
    w.s_bits.reserve(254);
    Fr pow = Fr::one();
    for (size_t i = 0; i < 254; ++i) {
        LinComb b = g_boolean(bld, s.bit(i));
        if (i < 127)
            w.s_lo += b.scaled(pow);
        else
            w.s_hi += b.scaled(pow);
        pow = (i == 126) ? Fr::one() : pow.dbl();
        w.s_bits.push_back(std::move(b));
    }
    // canonical scalar: without this bound a shifted encoding s+q of the same
    // signature would change the credential hash and dodge revocation
    g_assert_lt_const(bld, w.s_bits, FqParams::MOD);
    return w;
}

void g_schnorr_verify(CircuitBuilder& bld, const SchnorrWitnessVar& w, const LinComb& msg) {
    g_assert_on_curve(bld, w.pk);
    g_assert_on_curve(bld, w.r);

    std::array<LinComb, 5> ch = {w.r.x, w.r.y, w.pk.x, w.pk.y, msg};
    LinComb e = g_sponge(bld, dom::SIG_CHALLENGE, ch);
    auto e_bits = g_bits(bld, e, 254);
    g_assert_lt_const(bld, e_bits, FrParams::MOD);

    PointVar lhs =
        g_scalar_mul_const(bld, w.s_bits, GrumpkinAffine::generator(), g_ladder_offset1());
    PointVar ep = g_scalar_mul(bld, e_bits, w.pk, g_ladder_offset2());
    PointVar rhs = g_point_add(bld, ep, w.r);

    bld.assert_equal(lhs.x, rhs.x);
    bld.assert_equal(lhs.y, rhs.y);
}

}  // namespace anoncred
