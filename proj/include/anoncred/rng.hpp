// Copyright (c) 2026 The anoncred developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "anoncred/field.hpp"

namespace anoncred {

// Randomness source for key generation and proof blinding. Default-constructed
// instances draw their seed from the OS; seeded instances replay exactly
// (used by the CLI --seed flag and the test harness).
class Rng {
public:
    Rng() {
        std::random_device rd;
        std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
        gen_.seed(seq);
    }
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    void fill(std::span<uint8_t> out) {
        size_t i = 0;
        while (i < out.size()) {
            uint64_t w = next_u64();
            for (int j = 0; j < 8 && i < out.size(); ++j, ++i) out[i] = (uint8_t)(w >> (8 * j));
        }
    }

    template <typename F>
    F random_element() {
        std::array<uint8_t, 64> buf;
        fill(buf);
        return F::from_uniform_bytes(buf);
    }

    Fr random_fr() { return random_element<Fr>(); }
    Fq random_fq() { return random_element<Fq>(); }

    // nonzero variant (keys, blinding factors)
    template <typename F>
    F random_nonzero() {
        F x = random_element<F>();
        while (x.is_zero()) x = random_element<F>();
        return x;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace anoncred
