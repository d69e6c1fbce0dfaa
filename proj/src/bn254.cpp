// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#include "anoncred/bn254.hpp"

#include <algorithm>

namespace anoncred {

namespace {

Fq fq(uint64_t a, uint64_t b, uint64_t c, uint64_t d) { return Fq::from_u256(U256(a, b, c, d)); }

// Frobenius coefficients: xi^((p-1)/3), xi^(2(p-1)/3), xi^((p-1)/6), xi^((p-1)/2)
const Fq2& frob6_c1() {
    static const Fq2 v = {fq(0x99e39557176f553dull, 0xb78cc310c2c3330cull, 0x4c0bec3cf559b143ull,
                             0x2fb347984f7911f7ull),
                          fq(0x1665d51c640fcba2ull, 0x32ae2a1d0b7c9dceull, 0x4ba4cc8bd75a0794ull,
                             0x16c9e55061ebae20ull)};
    return v;
}
const Fq2& frob6_c2() {
    static const Fq2 v = {fq(0x848a1f55921ea762ull, 0xd33365f7be94ec72ull, 0x80f3c0b75a181e84ull,
                             0x05b54f5e64eea801ull),
                          fq(0xc13b4711cd2b8126ull, 0x3685d2ea1bdec763ull, 0x9f3a80b03b0b1c92ull,
                             0x2c145edbe7fd8aeeull)};
    return v;
}
const Fq2& frob12_c1() {
    static const Fq2 v = {fq(0xd60b35dadcc9e470ull, 0x5c521e08292f2176ull, 0xe8b99fdd76e68b60ull,
                             0x1284b71c2865a7dfull),
                          fq(0xca5cf05f80f362acull, 0x747992778eeec7e5ull, 0xa6327cfe12150b8eull,
                             0x246996f3b4fae7e6ull)};
    return v;
}
// untwist-frobenius-twist coefficients for the G2 endomorphism
const Fq2& g2_frob_x() { return frob6_c1(); }  // xi^((p-1)/3)
const Fq2& g2_frob_y() {
    static const Fq2 v = {fq(0xdc54014671a0135aull, 0xdbaae0eda9c95998ull, 0xdc5ec698b6e2f9b9ull,
                             0x063cf305489af5dcull),
                          fq(0x82d37f632623b0e3ull, 0x21807dc98fa25bd2ull, 0x0704b5a7ec796f2bull,
                             0x07c03cbcac41049aull)};
    return v;
}

// |6u + 2| for the ate loop, most significant bit first
const char* kAteLoopBits = "11001110101111001011100000011100110111110011101100011101110101000";

// (p^4 - p^2 + 1) / r, little-endian limbs (hard part of the final exponentiation)
constexpr uint64_t kHardExp[12] = {
    0xe81bb482ccdf42b1ull, 0x5abf5cc4f49c36d4ull, 0xf1154e7e1da014fdull, 0xdcc7b44c87cdbacfull,
    0xaaa441e3954bcf8aull, 0x6b887d56d5095f23ull, 0x79581e16f3fd90c6ull, 0x3b1b1355d189227dull,
    0x4e529a5861876f6bull, 0x6c0eb522d5b12278ull, 0x331ec15183177fafull, 0x01baaa710b0759adull};

}  // namespace

// =============================================================================
// Fq6 / Fq12
// =============================================================================

Fq6 Fq6::operator*(const Fq6& o) const {
    Fq2 t0 = c0 * o.c0;
    Fq2 t1 = c1 * o.c1;
    Fq2 t2 = c2 * o.c2;
    Fq2 r0 = t0 + ((c1 + c2) * (o.c1 + o.c2) - t1 - t2).mul_by_xi();
    Fq2 r1 = (c0 + c1) * (o.c0 + o.c1) - t0 - t1 + t2.mul_by_xi();
    Fq2 r2 = (c0 + c2) * (o.c0 + o.c2) - t0 - t2 + t1;
    return {r0, r1, r2};
}

Fq6 Fq6::inverse() const {
    Fq2 a = c0.square() - (c1 * c2).mul_by_xi();
    Fq2 b = c2.square().mul_by_xi() - c0 * c1;
    Fq2 cc = c1.square() - c0 * c2;
    Fq2 t = ((c2 * b + c1 * cc).mul_by_xi() + c0 * a).inverse();
    return {a * t, b * t, cc * t};
}

Fq6 Fq6::frobenius() const {
    return {c0.conj(), c1.conj() * frob6_c1(), c2.conj() * frob6_c2()};
}

Fq12 Fq12::operator*(const Fq12& o) const {
    Fq6 t0 = c0 * o.c0;
    Fq6 t1 = c1 * o.c1;
    Fq6 r0 = t0 + t1.mul_by_v();
    Fq6 r1 = (c0 + c1) * (o.c0 + o.c1) - t0 - t1;
    return {r0, r1};
}

Fq12 Fq12::square() const { return *this * *this; }

Fq12 Fq12::inverse() const {
    Fq6 t = (c0 * c0 - (c1 * c1).mul_by_v()).inverse();
    return {c0 * t, -(c1 * t)};
}

Fq12 Fq12::frobenius() const {
    Fq6 r0 = c0.frobenius();
    Fq6 r1 = c1.frobenius();
    return {r0, {r1.c0 * frob12_c1(), r1.c1 * frob12_c1(), r1.c2 * frob12_c1()}};
}

Fq12 Fq12::pow(std::span<const uint64_t> exp_limbs) const {
    Fq12 acc = one();
    size_t bits = exp_limbs.size() * 64;
    while (bits > 0 && !((exp_limbs[(bits - 1) / 64] >> ((bits - 1) % 64)) & 1)) --bits;
    for (size_t i = bits; i-- > 0;) {
        acc = acc.square();
        if ((exp_limbs[i / 64] >> (i % 64)) & 1) acc = acc * *this;
    }
    return acc;
}

// =============================================================================
// G1 / G2 arithmetic (jacobian, a = 0 curves)
// =============================================================================

const G1Affine& G1Affine::generator() {
    static const G1Affine g(Fq::from_u64(1), Fq::from_u64(2));
    return g;
}

bool G1Affine::on_curve() const {
    if (inf) return false;
    return y.square() == x.square() * x + Fq::from_u64(3);
}

G1 G1::from_affine(const G1Affine& p) {
    if (p.inf) return infinity();
    return {p.x, p.y, Fq::one()};
}

// the group formulas below mirror the embedded-curve code; coordinate field
// and curve constant are the only differences
#define ANONCRED_JAC_DBL(G, F)                              \
    G G::dbl() const {                                      \
        if (is_infinity()) return *this;                    \
        F a = x.square();                                   \
        F b = y.square();                                   \
        F c = b.square();                                   \
        F d = ((x + b).square() - a - c).dbl();             \
        F e = a + a + a;                                    \
        F f = e.square();                                   \
        F x3 = f - d.dbl();                                 \
        F y3 = e * (d - x3) - c.dbl().dbl().dbl();          \
        F z3 = (y * z).dbl();                               \
        return {x3, y3, z3};                                \
    }

#define ANONCRED_JAC_ADD(G, F)                              \
    G G::add(const G& o) const {                            \
        if (is_infinity()) return o;                        \
        if (o.is_infinity()) return *this;                  \
        F z1z1 = z.square();                                \
        F z2z2 = o.z.square();                              \
        F u1 = x * z2z2;                                    \
        F u2 = o.x * z1z1;                                  \
        F s1 = y * o.z * z2z2;                              \
        F s2 = o.y * z * z1z1;                              \
        if (u1 == u2) {                                     \
            if (s1 == s2) return dbl();                     \
            return infinity();                              \
        }                                                   \
        F h = u2 - u1;                                      \
        F i = h.dbl().square();                             \
        F j = h * i;                                        \
        F rr = (s2 - s1).dbl();                             \
        F v = u1 * i;                                       \
        F x3 = rr.square() - j - v.dbl();                   \
        F y3 = rr * (v - x3) - (s1 * j).dbl();              \
        F z3 = ((z + o.z).square() - z1z1 - z2z2) * h;      \
        return {x3, y3, z3};                                \
    }

#define ANONCRED_JAC_ADD_MIXED(G, GA, F)                    \
    G G::add_mixed(const GA& o) const {                     \
        if (o.inf) return *this;                            \
        if (is_infinity()) return from_affine(o);           \
        F z1z1 = z.square();                                \
        F u2 = o.x * z1z1;                                  \
        F s2 = o.y * z * z1z1;                              \
        if (x == u2) {                                      \
            if (y == s2) return dbl();                      \
            return infinity();                              \
        }                                                   \
        F h = u2 - x;                                       \
        F hh = h.square();                                  \
        F i = hh.dbl().dbl();                               \
        F j = h * i;                                        \
        F rr = (s2 - y).dbl();                              \
        F v = x * i;                                        \
        F x3 = rr.square() - j - v.dbl();                   \
        F y3 = rr * (v - x3) - (y * j).dbl();               \
        F z3 = (z + h).square() - z1z1 - hh;                \
        return {x3, y3, z3};                                \
    }

ANONCRED_JAC_DBL(G1, Fq)
ANONCRED_JAC_ADD(G1, Fq)
ANONCRED_JAC_ADD_MIXED(G1, G1Affine, Fq)
ANONCRED_JAC_DBL(G2, Fq2)
ANONCRED_JAC_ADD(G2, Fq2)
ANONCRED_JAC_ADD_MIXED(G2, G2Affine, Fq2)

#undef ANONCRED_JAC_DBL
#undef ANONCRED_JAC_ADD
#undef ANONCRED_JAC_ADD_MIXED

G1Affine G1::to_affine() const {
    if (is_infinity()) return G1Affine();
    Fq zi = z.inverse();
    Fq zi2 = zi.square();
    return G1Affine(x * zi2, y * zi2 * zi);
}

const Fq2& G2Affine::curve_b() {
    static const Fq2 b = {fq(0x3267e6dc24a138e5ull, 0xb5b4c5e559dbefa3ull, 0x81be18991be06ac3ull,
                             0x2b149d40ceb8aaaeull),
                          fq(0xe4a2bd0685c315d2ull, 0xa74fa084e52d1852ull, 0xcd2cafadeed8fdf4ull,
                             0x009713b03af0fed4ull)};
    return b;
}

const G2Affine& G2Affine::generator() {
    static const G2Affine g(
        {fq(0x46debd5cd992f6edull, 0x674322d4f75edaddull, 0x426a00665e5c4479ull,
            0x1800deef121f1e76ull),
         fq(0x97e485b7aef312c2ull, 0xf1aa493335a9e712ull, 0x7260bfb731fb5d25ull,
            0x198e9393920d483aull)},
        {fq(0x4ce6cc0166fa7daaull, 0xe3d1e7690c43d37bull, 0x4aab71808dcb408full,
            0x12c85ea5db8c6debull),
         fq(0x55acdadcd122975bull, 0xbc4b313370b38ef3ull, 0xec9e99ad690c3395ull,
            0x090689d0585ff075ull)});
    return g;
}

bool G2Affine::on_curve() const {
    if (inf) return false;
    return y.square() == x.square() * x + curve_b();
}

G2 G2::from_affine(const G2Affine& p) {
    if (p.inf) return infinity();
    return {p.x, p.y, Fq2::one()};
}

G2Affine G2::to_affine() const {
    if (is_infinity()) return G2Affine();
    Fq2 zi = z.inverse();
    Fq2 zi2 = zi.square();
    return G2Affine(x * zi2, y * zi2 * zi);
}

G1 g1_mul(const G1Affine& base, const U256& scalar) {
    G1 acc = G1::infinity();
    for (size_t i = scalar.bit_length(); i-- > 0;) {
        acc = acc.dbl();
        if (scalar.bit(i)) acc = acc.add_mixed(base);
    }
    return acc;
}

G2 g2_mul(const G2Affine& base, const U256& scalar) {
    G2 acc = G2::infinity();
    for (size_t i = scalar.bit_length(); i-- > 0;) {
        acc = acc.dbl();
        if (scalar.bit(i)) acc = acc.add_mixed(base);
    }
    return acc;
}

namespace {

// Montgomery's trick: z^-2, z^-3 for every point with one field inversion
template <typename Jac, typename Aff, typename F>
std::vector<Aff> batch_to_affine(std::span<const Jac> points) {
    std::vector<Aff> out(points.size());
    std::vector<F> zs;
    zs.reserve(points.size());
    for (const auto& p : points) zs.push_back(p.is_infinity() ? F::one() : p.z);

    std::vector<F> prefix(points.size());
    F acc = F::one();
    for (size_t i = 0; i < zs.size(); ++i) {
        prefix[i] = acc;
        acc = acc * zs[i];
    }
    F inv = acc.inverse();
    for (size_t i = zs.size(); i-- > 0;) {
        F zi = inv * prefix[i];
        inv = inv * zs[i];
        if (points[i].is_infinity()) continue;
        F zi2 = zi.square();
        out[i] = Aff(points[i].x * zi2, points[i].y * zi2 * zi);
    }
    return out;
}

}  // namespace

std::vector<G1Affine> g1_batch_to_affine(std::span<const G1> points) {
    return batch_to_affine<G1, G1Affine, Fq>(points);
}

std::vector<G2Affine> g2_batch_to_affine(std::span<const G2> points) {
    return batch_to_affine<G2, G2Affine, Fq2>(points);
}

// =============================================================================
// Pippenger MSM
// =============================================================================

namespace {

template <typename Jac, typename Aff>
Jac msm_impl(std::span<const Aff> bases, std::span<const Fr> scalars) {
    const size_t n = std::min(bases.size(), scalars.size());
    if (n == 0) return Jac::infinity();

    size_t c = 3;
    if (n >= 32) c = 7;
    if (n >= 1024) c = 10;
    if (n >= 8192) c = 12;
    if (n >= 65536) c = 14;
    const size_t windows = (254 + c - 1) / c;

    std::vector<U256> nat(n);
    for (size_t i = 0; i < n; ++i) nat[i] = scalars[i].to_u256();

    Jac result = Jac::infinity();
    std::vector<Jac> buckets((size_t)1 << c);
    for (size_t w = windows; w-- > 0;) {
        for (size_t k = 0; k < c; ++k) result = result.dbl();
        std::fill(buckets.begin(), buckets.end(), Jac::infinity());
        const size_t shift = w * c;
        for (size_t i = 0; i < n; ++i) {
            size_t limb = shift / 64, off = shift % 64;
            uint64_t digit = nat[i].v[limb] >> off;
            if (off + c > 64 && limb + 1 < 4) digit |= nat[i].v[limb + 1] << (64 - off);
            digit &= (((uint64_t)1 << c) - 1);
            if (digit) buckets[digit] = buckets[digit].add_mixed(bases[i]);
        }
        // running-sum bucket reduction
        Jac sum = Jac::infinity();
        Jac total = Jac::infinity();
        for (size_t b = buckets.size() - 1; b >= 1; --b) {
            sum = sum.add(buckets[b]);
            total = total.add(sum);
        }
        result = result.add(total);
    }
    return result;
}

}  // namespace

G1 g1_msm(std::span<const G1Affine> bases, std::span<const Fr> scalars) {
    return msm_impl<G1, G1Affine>(bases, scalars);
}

G2 g2_msm(std::span<const G2Affine> bases, std::span<const Fr> scalars) {
    return msm_impl<G2, G2Affine>(bases, scalars);
}

// =============================================================================
// fixed-base combs (8-bit windows)
// =============================================================================

namespace {

template <typename Jac, typename Aff>
std::vector<Aff> build_comb(const Aff& base) {
    std::vector<Jac> table;
    table.reserve(32 * 256);
    Jac window_base = Jac::from_affine(base);
    for (int w = 0; w < 32; ++w) {
        Jac acc = Jac::infinity();
        for (int b = 0; b < 256; ++b) {
            table.push_back(acc);
            acc = acc.add(window_base);
        }
        window_base = acc;  // base * 2^(8(w+1))
    }
    return batch_to_affine<Jac, Aff, decltype(Jac::x)>(table);
}

template <typename Jac, typename Aff>
Jac comb_mul(const std::vector<Aff>& table, const Fr& scalar) {
    U256 v = scalar.to_u256();
    Jac acc = Jac::infinity();
    for (int w = 0; w < 32; ++w) {
        uint8_t byte = (uint8_t)(v.v[w / 8] >> (8 * (w % 8)));
        if (byte) acc = acc.add_mixed(table[(size_t)w * 256 + byte]);
    }
    return acc;
}

}  // namespace

G1FixedBase::G1FixedBase(const G1Affine& base) { table_ = build_comb<G1, G1Affine>(base); }
G1 G1FixedBase::mul(const Fr& scalar) const { return comb_mul<G1, G1Affine>(table_, scalar); }

G2FixedBase::G2FixedBase(const G2Affine& base) { table_ = build_comb<G2, G2Affine>(base); }
G2 G2FixedBase::mul(const Fr& scalar) const { return comb_mul<G2, G2Affine>(table_, scalar); }

// =============================================================================
// pairing (affine Miller loop, tower untwist)
// =============================================================================

namespace {

G2Affine g2_frobenius(const G2Affine& q) {
    return {q.x.conj() * g2_frob_x(), q.y.conj() * g2_frob_y()};
}

// line through t (doubling) or through t,q (addition) evaluated at p;
// sparse tower element 1*c0 + w*cw + w^3*cw3
struct LineEval {
    Fq c0;
    Fq2 cw, cw3;
};

Fq2 slope_add(const G2Affine& t, const G2Affine& q) {
    return (q.y - t.y) * (q.x - t.x).inverse();
}

Fq2 slope_dbl(const G2Affine& t) {
    return t.x.square().scale(Fq::from_u64(3)) * t.y.dbl().inverse();
}

LineEval line_eval(const G2Affine& t, const Fq2& lambda, const G1Affine& p) {
    return {p.y, lambda.scale(-p.x), lambda * t.x - t.y};
}

G2Affine apply_slope(const G2Affine& t, const G2Affine& q, const Fq2& lambda) {
    Fq2 x3 = lambda.square() - t.x - q.x;
    Fq2 y3 = lambda * (t.x - x3) - t.y;
    return {x3, y3};
}

// f *= line, exploiting the sparse (1, w, w^3) form
Fq12 mul_by_line(const Fq12& f, const LineEval& l) {
    Fq12 sparse;
    sparse.c0.c0 = {l.c0, Fq::zero()};
    sparse.c1.c0 = l.cw;
    sparse.c1.c1 = l.cw3;
    return f * sparse;
}

}  // namespace

Fq12 miller_loop(const G1Affine& p, const G2Affine& q) {
    if (p.inf || q.inf) return Fq12::one();
    Fq12 f = Fq12::one();
    G2Affine t = q;
    for (const char* bit = kAteLoopBits + 1; *bit; ++bit) {
        Fq2 lam = slope_dbl(t);
        f = mul_by_line(f.square(), line_eval(t, lam, p));
        t = apply_slope(t, t, lam);
        if (*bit == '1') {
            lam = slope_add(t, q);
            f = mul_by_line(f, line_eval(t, lam, p));
            t = apply_slope(t, q, lam);
        }
    }
    G2Affine q1 = g2_frobenius(q);
    G2Affine q2 = g2_frobenius(q1).neg();
    Fq2 lam = slope_add(t, q1);
    f = mul_by_line(f, line_eval(t, lam, p));
    t = apply_slope(t, q1, lam);
    lam = slope_add(t, q2);
    f = mul_by_line(f, line_eval(t, lam, p));
    return f;
}

Fq12 final_exponentiation(const Fq12& f) {
    // easy part: f^((p^6 - 1)(p^2 + 1))
    Fq12 g = f.conj() * f.inverse();
    g = g.frobenius().frobenius() * g;
    // hard part: g^((p^4 - p^2 + 1) / r)
    return g.pow(kHardExp);
}

bool pairing_product_is_one(std::span<const std::pair<G1Affine, G2Affine>> pairs) {
    Fq12 acc = Fq12::one();
    for (const auto& [p, q] : pairs) acc = acc * miller_loop(p, q);
    return final_exponentiation(acc) == Fq12::one();
}

// =============================================================================
// serialization
// =============================================================================

std::array<uint8_t, 64> g1_to_bytes(const G1Affine& p) {
    std::array<uint8_t, 64> out{};
    if (p.inf) return out;
    auto x = p.x.to_bytes();
    auto y = p.y.to_bytes();
    std::copy(x.begin(), x.end(), out.begin());
    std::copy(y.begin(), y.end(), out.begin() + 32);
    return out;
}

std::optional<G1Affine> g1_from_bytes(std::span<const uint8_t> data) {
    if (data.size() != 64) return std::nullopt;
    bool all_zero = std::all_of(data.begin(), data.end(), [](uint8_t b) { return b == 0; });
    if (all_zero) return G1Affine();
    auto x = Fq::from_bytes(data.subspan(0, 32));
    auto y = Fq::from_bytes(data.subspan(32, 32));
    if (!x || !y) return std::nullopt;
    G1Affine p(*x, *y);
    if (!p.on_curve()) return std::nullopt;
    return p;
}

std::array<uint8_t, 128> g2_to_bytes(const G2Affine& p) {
    std::array<uint8_t, 128> out{};
    if (p.inf) return out;
    auto write = [&](const Fq& v, size_t off) {
        auto b = v.to_bytes();
        std::copy(b.begin(), b.end(), out.begin() + off);
    };
    write(p.x.c0, 0);
    write(p.x.c1, 32);
    write(p.y.c0, 64);
    write(p.y.c1, 96);
    return out;
}

std::optional<G2Affine> g2_from_bytes(std::span<const uint8_t> data) {
    if (data.size() != 128) return std::nullopt;
    bool all_zero = std::all_of(data.begin(), data.end(), [](uint8_t b) { return b == 0; });
    if (all_zero) return G2Affine();
    auto xc0 = Fq::from_bytes(data.subspan(0, 32));
    auto xc1 = Fq::from_bytes(data.subspan(32, 32));
    auto yc0 = Fq::from_bytes(data.subspan(64, 32));
    auto yc1 = Fq::from_bytes(data.subspan(96, 32));
    if (!xc0 || !xc1 || !yc0 || !yc1) return std::nullopt;
    G2Affine p({*xc0, *xc1}, {*yc0, *yc1});
    if (!p.on_curve()) return std::nullopt;
    return p;
}

}  // namespace anoncred
