// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#include "anoncred/poseidon.hpp"

namespace anoncred {

namespace {

// Grain LFSR parameter generator (the procedure from the Poseidon reference
// implementation): 80-bit state seeded with the instance description, 160
// warm-up steps, von Neumann-filtered output bits, rejection sampling to Fr.
class Grain {
public:
    Grain(uint32_t n_bits, uint32_t t, uint32_t rf, uint32_t rp) {
        size_t pos = 0;
        auto pack = [&](uint64_t value, int width) {
            for (int i = width - 1; i >= 0; --i) state_[pos++] = (uint8_t)((value >> i) & 1);
        };
        pack(1, 2);  // field: prime
        pack(0, 4);  // sbox: x^alpha
        pack(n_bits, 12);
        pack(t, 12);
        pack(rf, 10);
        pack(rp, 10);
        for (int i = 0; i < 30; ++i) state_[pos++] = 1;
        for (int i = 0; i < 160; ++i) next();
    }

    Fr field_element() {
        for (;;) {
            U256 v;
            for (int i = 253; i >= 0; --i) {
                if (bit()) v.v[i / 64] |= 1ull << (i % 64);
            }
            if (v < FrParams::MOD) return Fr::from_u256(v);
        }
    }

private:
    uint8_t next() {
        uint8_t nb = state_[62] ^ state_[51] ^ state_[38] ^ state_[23] ^ state_[13] ^ state_[0];
        for (int i = 0; i < 79; ++i) state_[i] = state_[i + 1];
        state_[79] = nb;
        return nb;
    }
    uint8_t bit() {
        for (;;) {
            uint8_t b1 = next();
            uint8_t b2 = next();
            if (b1) return b2;
        }
    }
    std::array<uint8_t, 80> state_{};
};

PoseidonParams build_params() {
    PoseidonParams p;
    Grain g(254, PoseidonParams::T, PoseidonParams::FULL_ROUNDS, PoseidonParams::PARTIAL_ROUNDS);
    for (auto& round : p.rc)
        for (auto& c : round) c = g.field_element();
    for (size_t i = 0; i < PoseidonParams::T; ++i)
        for (size_t j = 0; j < PoseidonParams::T; ++j)
            p.mds[i][j] = Fr::from_u64(i + PoseidonParams::T + j).inverse();
    return p;
}

inline Fr pow5(const Fr& x) {
    Fr x2 = x.square();
    return x2.square() * x;
}

const Fr TWO64 = Fr::from_u256(U256(0, 1, 0, 0));

Fr absorb_all(Fr cap, std::span<const Fr> elems) {
    std::array<Fr, 3> s = {cap, Fr::zero(), Fr::zero()};
    if (elems.empty()) {
        poseidon_permute(s);
        return s[1];
    }
    for (size_t i = 0; i < elems.size(); i += 2) {
        s[1] += elems[i];
        if (i + 1 < elems.size()) s[2] += elems[i + 1];
        poseidon_permute(s);
    }
    return s[1];
}

}  // namespace

const PoseidonParams& PoseidonParams::get() {
    static const PoseidonParams params = build_params();
    return params;
}

void poseidon_permute(std::array<Fr, 3>& s) {
    const auto& p = PoseidonParams::get();
    constexpr size_t HALF = PoseidonParams::FULL_ROUNDS / 2;
    for (size_t r = 0; r < PoseidonParams::ROUNDS; ++r) {
        s[0] += p.rc[r][0];
        s[1] += p.rc[r][1];
        s[2] += p.rc[r][2];
        const bool full = r < HALF || r >= HALF + PoseidonParams::PARTIAL_ROUNDS;
        s[0] = pow5(s[0]);
        if (full) {
            s[1] = pow5(s[1]);
            s[2] = pow5(s[2]);
        }
        Fr t0 = p.mds[0][0] * s[0] + p.mds[0][1] * s[1] + p.mds[0][2] * s[2];
        Fr t1 = p.mds[1][0] * s[0] + p.mds[1][1] * s[1] + p.mds[1][2] * s[2];
        Fr t2 = p.mds[2][0] * s[0] + p.mds[2][1] * s[1] + p.mds[2][2] * s[2];
        s = {t0, t1, t2};
    }
}

Fr hash2_tagged(uint64_t tag, const Fr& l, const Fr& r) {
    std::array<Fr, 3> s = {Fr::from_u64(tag), l, r};
    poseidon_permute(s);
    return s[1];
}

Fr sponge(uint64_t domain, std::span<const Fr> elems) {
    // capacity binds both the domain and the element count
    Fr cap = Fr::from_u64(domain) + Fr::from_u64((uint64_t)elems.size()) * TWO64;
    return absorb_all(cap, elems);
}

Fr exclude_endpoints(Fr h) {
    const Fr sentinel = -Fr::one();
    uint64_t ctr = 1;
    while (h.is_zero() || h == sentinel) {
        std::array<Fr, 2> in = {h, Fr::from_u64(ctr)};
        h = sponge(dom::RETRY, in);
        ++ctr;
    }
    return h;
}

Fr hash_to_field(std::span<const uint8_t> data) {
    std::vector<Fr> elems;
    elems.reserve(data.size() / 31 + 1);
    for (size_t off = 0; off < data.size(); off += 31) {
        size_t n = std::min<size_t>(31, data.size() - off);
        U256 v;
        for (size_t i = 0; i < n; ++i) v.v[i / 8] |= (uint64_t)data[off + i] << (8 * (i % 8));
        elems.push_back(Fr::from_u256(v));  // chunks are < 2^248, always canonical
    }
    // the capacity carries the byte length, which together with the fixed
    // 31-byte chunking makes the absorb injective
    Fr cap = Fr::from_u64(dom::BYTES) + Fr::from_u64((uint64_t)data.size()) * TWO64;
    return exclude_endpoints(absorb_all(cap, elems));
}

Fr hash_to_field_elems(uint64_t domain, std::span<const Fr> elems) {
    return exclude_endpoints(sponge(domain, elems));
}

}  // namespace anoncred
