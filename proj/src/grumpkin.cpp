// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#include "anoncred/grumpkin.hpp"

#include "anoncred/encoding.hpp"

namespace anoncred {

namespace {
const Fr& curve_b() {
    static const Fr b = -Fr::from_u64(17);
    return b;
}
}  // namespace

bool GrumpkinAffine::on_curve() const {
    if (inf) return false;
    return y.square() == x.square() * x + curve_b();
}

const GrumpkinAffine& GrumpkinAffine::generator() {
    static const GrumpkinAffine g(
        Fr::from_u64(1),
        Fr::from_u256(U256{0x833fc48d823f272cull, 0x2d270d45f1181294ull, 0xcf135e7506a45d63ull,
                           0x0000000000000002ull}));
    return g;
}

GrumpkinJacobian GrumpkinJacobian::from_affine(const GrumpkinAffine& p) {
    if (p.inf) return infinity();
    return {p.x, p.y, Fr::one()};
}

// dbl-2009-l (a = 0)
GrumpkinJacobian GrumpkinJacobian::dbl() const {
    if (is_infinity()) return *this;
    Fr a = x.square();
    Fr b = y.square();
    Fr c = b.square();
    Fr d = ((x + b).square() - a - c).dbl();
    Fr e = a + a + a;
    Fr f = e.square();
    Fr x3 = f - d.dbl();
    Fr y3 = e * (d - x3) - c.dbl().dbl().dbl();
    Fr z3 = (y * z).dbl();
    return {x3, y3, z3};
}

GrumpkinJacobian GrumpkinJacobian::add(const GrumpkinJacobian& o) const {
    if (is_infinity()) return o;
    if (o.is_infinity()) return *this;
    Fr z1z1 = z.square();
    Fr z2z2 = o.z.square();
    Fr u1 = x * z2z2;
    Fr u2 = o.x * z1z1;
    Fr s1 = y * o.z * z2z2;
    Fr s2 = o.y * z * z1z1;
    if (u1 == u2) {
        if (s1 == s2) return dbl();
        return infinity();
    }
    Fr h = u2 - u1;
    Fr i = h.dbl().square();
    Fr j = h * i;
    Fr rr = (s2 - s1).dbl();
    Fr v = u1 * i;
    Fr x3 = rr.square() - j - v.dbl();
    Fr y3 = rr * (v - x3) - (s1 * j).dbl();
    Fr z3 = ((z + o.z).square() - z1z1 - z2z2) * h;
    return {x3, y3, z3};
}

GrumpkinJacobian GrumpkinJacobian::add_mixed(const GrumpkinAffine& o) const {
    if (o.inf) return *this;
    if (is_infinity()) return from_affine(o);
    Fr z1z1 = z.square();
    Fr u2 = o.x * z1z1;
    Fr s2 = o.y * z * z1z1;
    if (x == u2) {
        if (y == s2) return dbl();
        return infinity();
    }
    Fr h = u2 - x;
    Fr hh = h.square();
    Fr i = hh.dbl().dbl();
    Fr j = h * i;
    Fr rr = (s2 - y).dbl();
    Fr v = x * i;
    Fr x3 = rr.square() - j - v.dbl();
    Fr y3 = rr * (v - x3) - (y * j).dbl();
    Fr z3 = (z + h).square() - z1z1 - hh;
    return {x3, y3, z3};
}

GrumpkinAffine GrumpkinJacobian::to_affine() const {
    if (is_infinity()) return GrumpkinAffine::infinity();
    Fr zi = z.inverse();
    Fr zi2 = zi.square();
    return GrumpkinAffine(x * zi2, y * zi2 * zi);
}

GrumpkinJacobian grumpkin_mul(const GrumpkinAffine& base, const U256& scalar) {
    GrumpkinJacobian acc = GrumpkinJacobian::infinity();
    size_t n = scalar.bit_length();
    for (size_t i = n; i-- > 0;) {
        acc = acc.dbl();
        if (scalar.bit(i)) acc = acc.add_mixed(base);
    }
    return acc;
}

GrumpkinAffine grumpkin_hash_to_curve(std::string_view tag) {
    for (uint32_t ctr = 0;; ++ctr) {
        Encoder enc;
        enc.append({reinterpret_cast<const uint8_t*>(tag.data()), tag.size()});
        enc.u32(ctr);
        Fr x = hash_to_field(enc.data());
        Fr rhs = x.square() * x + curve_b();
        if (auto y = sqrt(rhs)) {
            Fr yc = *y;
            if ((-yc).to_u256() < yc.to_u256()) yc = -yc;  // canonical sign
            return GrumpkinAffine(x, yc);
        }
    }
}

// =============================================================================
// Schnorr signatures
// =============================================================================

std::pair<SigningKey, VerifyingKey> sig_keygen(Rng& rng) {
    SigningKey sk{rng.random_nonzero<Fq>()};
    return {sk, sig_derive_vk(sk)};
}

VerifyingKey sig_derive_vk(const SigningKey& sk) {
    return {grumpkin_mul(GrumpkinAffine::generator(), sk.sk).to_affine()};
}

Fr sig_challenge(const Fr& rx, const Fr& ry, const GrumpkinAffine& pk, const Fr& msg) {
    std::array<Fr, 5> in = {rx, ry, pk.x, pk.y, msg};
    return sponge(dom::SIG_CHALLENGE, in);
}

Signature sig_sign(const SigningKey& sk, const Fr& msg, Rng& rng) {
    const auto& g = GrumpkinAffine::generator();
    for (;;) {
        Fq k = rng.random_nonzero<Fq>();
        GrumpkinAffine r = grumpkin_mul(g, k).to_affine();
        if (r.inf) continue;
        Fr e = sig_challenge(r.x, r.y, sig_derive_vk(sk).pk, msg);
        Fq s = k + Fq::from_u256(e.to_u256()) * sk.sk;
        if (s.is_zero()) continue;
        return {r.x, r.y, s};
    }
}

bool sig_verify(const VerifyingKey& vk, const Fr& msg, const Signature& sig) {
    if (!vk.pk.on_curve()) return false;
    GrumpkinAffine r(sig.rx, sig.ry);
    if (!r.on_curve()) return false;
    Fr e = sig_challenge(sig.rx, sig.ry, vk.pk, msg);
    GrumpkinAffine lhs = grumpkin_mul(GrumpkinAffine::generator(), sig.s).to_affine();
    GrumpkinAffine rhs =
        grumpkin_mul(vk.pk, Fq::from_u256(e.to_u256())).add_mixed(r).to_affine();
    return lhs == rhs;
}

std::array<uint8_t, 64> vk_to_bytes(const VerifyingKey& vk) {
    std::array<uint8_t, 64> out;
    auto x = vk.pk.x.to_bytes();
    auto y = vk.pk.y.to_bytes();
    std::copy(x.begin(), x.end(), out.begin());
    std::copy(y.begin(), y.end(), out.begin() + 32);
    return out;
}

std::optional<VerifyingKey> vk_from_bytes(std::span<const uint8_t> data) {
    if (data.size() != 64) return std::nullopt;
    auto x = Fr::from_bytes(data.subspan(0, 32));
    auto y = Fr::from_bytes(data.subspan(32, 32));
    if (!x || !y) return std::nullopt;
    VerifyingKey vk{GrumpkinAffine(*x, *y)};
    if (!vk.pk.on_curve()) return std::nullopt;
    return vk;
}

std::array<uint8_t, 96> sig_to_bytes(const Signature& sig) {
    std::array<uint8_t, 96> out;
    auto rx = sig.rx.to_bytes();
    auto ry = sig.ry.to_bytes();
    auto s = sig.s.to_bytes();
    std::copy(rx.begin(), rx.end(), out.begin());
    std::copy(ry.begin(), ry.end(), out.begin() + 32);
    std::copy(s.begin(), s.end(), out.begin() + 64);
    return out;
}

std::optional<Signature> sig_from_bytes(std::span<const uint8_t> data) {
    if (data.size() != 96) return std::nullopt;
    auto rx = Fr::from_bytes(data.subspan(0, 32));
    auto ry = Fr::from_bytes(data.subspan(32, 32));
    auto s = Fq::from_bytes(data.subspan(64, 32));
    if (!rx || !ry || !s) return std::nullopt;
    return Signature{*rx, *ry, *s};
}

}  // namespace anoncred
